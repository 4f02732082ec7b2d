//! Identity orderings of simple connected graphs: the trail map they induce,
//! the closed-trail conditions that characterize them, the Euler-formula
//! feasibility bound, and a budgeted exhaustive search.

use std::collections::{HashMap, HashSet};

use crate::enumerate::{face_count_at, RotationScratch, RotationSpace};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexId};
use crate::ordering::{permutation_of_ordering, EdgeOrdering};
use crate::rotation::{dart_out_of, orderable, rotation_from_ordering, trace_faces, FaceTrace};
use crate::search::Budget;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A closed walk that repeats no edge, as label sequences:
/// `vertices[i] —edges[i]— vertices[i+1]`, wrapping at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedTrail {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

impl ClosedTrail {
    /// Checks the walk structure against `g`: every step is an edge of `g`
    /// with the stated endpoints, the walk closes up, and no edge repeats.
    pub fn is_closed_trail_in(&self, g: &Multigraph) -> bool {
        if self.vertices.len() != self.edges.len() || self.edges.is_empty() {
            return false;
        }
        let k = self.edges.len();
        for i in 0..k {
            let (Ok(e), Ok(a), Ok(b)) = (
                g.edge_id(&self.edges[i]),
                g.vertex_id(&self.vertices[i]),
                g.vertex_id(&self.vertices[(i + 1) % k]),
            ) else {
                return false;
            };
            let (u, v) = g.endpoints(e);
            if (a, b) != (u, v) && (a, b) != (v, u) {
                return false;
            }
        }
        let distinct: HashSet<&String> = self.edges.iter().collect();
        distinct.len() == k
    }

    fn edge_set(&self) -> Vec<&String> {
        let mut s: Vec<&String> = self.edges.iter().collect();
        s.sort();
        s
    }
}

/// The checks an identity ordering's trail map must satisfy, each computed
/// directly from the trails rather than assumed.
#[derive(Clone, Debug)]
pub struct EdenReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// The trail through each vertex, in graph vertex order.
    pub trails: Vec<(String, ClosedTrail)>,
    /// Every trail is a closed trail of the host graph.
    pub trails_are_closed: bool,
    /// Distinct vertices get distinct trails (as edge sets).
    pub bijective: bool,
    /// Each vertex lies on its own trail.
    pub every_vertex_on_own_trail: bool,
    /// Sum of trail lengths over all vertices.
    pub total_edge_occurrences: usize,
    /// That sum equals `2|E|`.
    pub total_is_twice_edge_count: bool,
    /// Each edge lies on exactly two of the trails.
    pub each_edge_on_two_trails: bool,
    /// `|E|` is even.
    pub edge_count_even: bool,
}

impl EdenReport {
    pub fn all_conditions_hold(&self) -> bool {
        self.trails_are_closed
            && self.bijective
            && self.every_vertex_on_own_trail
            && self.total_is_twice_edge_count
            && self.each_edge_on_two_trails
            && self.edge_count_even
    }
}

/// Builds the trail map of an identity ordering of a simple connected graph
/// and evaluates all the conditions on it.
///
/// The trail through `v` is the face of the induced embedding entered at
/// `(e, v, ·)` for the first `v`-incident edge `e` of the ordering, read as
/// an undirected closed walk starting at `v`.
pub fn check_eden_conditions(g: &Multigraph, ordering: &EdgeOrdering) -> Result<EdenReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some((a, b)) = g.parallel_pair() {
        return Err(Error::NotSimple(
            g.edge_label(a).to_string(),
            g.edge_label(b).to_string(),
        ));
    }
    if !permutation_of_ordering(g, ordering)?.is_identity() {
        return Err(Error::NotIdentityOrdering);
    }
    let rho = rotation_from_ordering(g, ordering)?;
    let trace = trace_faces(g, &rho)?;
    let ids = ordering.resolve(g)?;
    let trails: Vec<(String, ClosedTrail)> = (0..g.vertex_count())
        .map(|v| {
            (
                g.vertex_label(v).to_string(),
                trail_through(g, &trace, &ids, v),
            )
        })
        .collect();
    Ok(report_from_trails(g, trails))
}

fn trail_through(g: &Multigraph, trace: &FaceTrace, ids: &[usize], v: VertexId) -> ClosedTrail {
    let e = *ids
        .iter()
        .find(|&&e| {
            let (a, b) = g.endpoints(e);
            a == v || b == v
        })
        .expect("connected graph with ≥ 2 vertices: every vertex has an edge");
    let entry = dart_out_of(g, e, v);
    let cycle = trace.face_dart_ids(trace.face_of_dart(entry));
    let at = cycle
        .iter()
        .position(|&d| d == entry)
        .expect("entry dart lies on its face");
    let mut vertices = Vec::with_capacity(cycle.len());
    let mut edges = Vec::with_capacity(cycle.len());
    for i in 0..cycle.len() {
        let d = cycle[(at + i) % cycle.len()];
        let eid = (d / 2) as usize;
        let (du, dv) = g.endpoints(eid);
        let source = if d.is_multiple_of(2) { du } else { dv };
        vertices.push(g.vertex_label(source).to_string());
        edges.push(g.edge_label(eid).to_string());
    }
    ClosedTrail { vertices, edges }
}

fn report_from_trails(g: &Multigraph, trails: Vec<(String, ClosedTrail)>) -> EdenReport {
    let m = g.edge_count();
    let trails_are_closed = trails.iter().all(|(_, t)| t.is_closed_trail_in(g));
    let edge_sets: Vec<Vec<&String>> = trails.iter().map(|(_, t)| t.edge_set()).collect();
    let bijective = {
        let distinct: HashSet<&Vec<&String>> = edge_sets.iter().collect();
        distinct.len() == trails.len()
    };
    let every_vertex_on_own_trail = trails.iter().all(|(v, t)| t.vertices.contains(v));
    let total_edge_occurrences: usize = trails.iter().map(|(_, t)| t.edges.len()).sum();
    let each_edge_on_two_trails = (0..m).all(|e| {
        let label = g.edge_label(e).to_string();
        trails
            .iter()
            .filter(|(_, t)| t.edges.contains(&label))
            .count()
            == 2
    });
    EdenReport {
        vertex_count: g.vertex_count(),
        edge_count: m,
        trails,
        trails_are_closed,
        bijective,
        every_vertex_on_own_trail,
        total_edge_occurrences,
        total_is_twice_edge_count: total_edge_occurrences == 2 * m,
        each_edge_on_two_trails,
        edge_count_even: m.is_multiple_of(2),
    }
}

/// Necessary conditions for an identity ordering to exist: the permutation
/// is even only when `|E|` is, and `n` vertex orbits force `n` faces, which
/// the Euler formula caps at `|E| ≥ 2|V| − 2`.
pub fn identity_ordering_feasible(g: &Multigraph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (n, m) = (g.vertex_count(), g.edge_count());
    Ok(m % 2 == 0 && m + 2 >= 2 * n)
}

/// Finds an ordering whose transposition product is the identity, or `None`
/// when no ordering is. Scans rotation systems with exactly `|V|` faces and
/// asks which of those an ordering can induce; any ordering inducing such a
/// system has `|V|` vertex orbits and hence the identity product, so the
/// scan is exhaustive. Parallel when the `parallel` feature is on, with the
/// same (lowest-index) witness either way.
pub fn find_identity_ordering(g: &Multigraph, budget: Budget) -> Result<Option<EdgeOrdering>> {
    find_identity_scan(g, budget, cfg!(feature = "parallel"))
}

/// Sequential variant, available regardless of features.
pub fn find_identity_ordering_seq(g: &Multigraph, budget: Budget) -> Result<Option<EdgeOrdering>> {
    find_identity_scan(g, budget, false)
}

fn find_identity_scan(
    g: &Multigraph,
    budget: Budget,
    parallel: bool,
) -> Result<Option<EdgeOrdering>> {
    if !identity_ordering_feasible(g)? {
        return Ok(None);
    }
    if g.edge_count() == 0 {
        // A single vertex: the empty product is already the identity.
        return Ok(Some(EdgeOrdering::new(Vec::new())));
    }
    let space = RotationSpace::new(g);
    let total = budget.admit(space.count())?;
    let n = g.vertex_count();
    let hit = if parallel {
        scan_identity_par(&space, total, g, n)
    } else {
        (0..total).find(|&index| identity_candidate(&space, index, g, n))
    };
    let Some(index) = hit else {
        return Ok(None);
    };
    let witness = orderable(g, &space.rotation_at(index))?
        .expect("scan only reports realizable rotation systems");
    if !permutation_of_ordering(g, &witness)?.is_identity() {
        return Err(Error::InternalVerificationFailure(
            "ordering realizing an n-face rotation system must multiply to the identity".into(),
        ));
    }
    Ok(Some(witness))
}

fn identity_candidate(space: &RotationSpace, index: u64, g: &Multigraph, n: usize) -> bool {
    let mut scratch = RotationScratch::new(g);
    face_count_at(space, index, &mut scratch) == n
        && orderable(g, &space.rotation_at(index))
            .expect("enumerated rotation systems are valid")
            .is_some()
}

#[cfg(feature = "parallel")]
fn scan_identity_par(space: &RotationSpace, total: u64, g: &Multigraph, n: usize) -> Option<u64> {
    (0..total)
        .into_par_iter()
        .find_first(|&index| identity_candidate(space, index, g, n))
}

#[cfg(not(feature = "parallel"))]
fn scan_identity_par(space: &RotationSpace, total: u64, g: &Multigraph, n: usize) -> Option<u64> {
    (0..total).find(|&index| identity_candidate(space, index, g, n))
}

/// The checks run by [`verify_eden12_fixture`], with their outcomes.
#[derive(Clone, Debug)]
pub struct Eden12Report {
    pub checks: Vec<(&'static str, bool)>,
    pub trails: Vec<(String, ClosedTrail)>,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Minimum edge count an identity ordering would require (`2|V| − 2`).
    pub required_edge_count: usize,
}

impl Eden12Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

/// Validates the bundled 12-vertex, 20-edge example: its twelve closed
/// trails satisfy every structural condition, yet no identity ordering can
/// exist because 20 edges fall short of the 22 the Euler formula demands.
pub fn verify_eden12_fixture() -> Result<Eden12Report> {
    let g = crate::fixtures::eden12();
    let mut by_pair: HashMap<(VertexId, VertexId), String> = HashMap::new();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        by_pair.insert((u.min(v), u.max(v)), g.edge_label(e).to_string());
    }
    let trails: Vec<(String, ClosedTrail)> = crate::fixtures::eden12_trail_walks()
        .into_iter()
        .map(|(v, walk)| {
            // walks are written with the starting vertex repeated at the end
            let walk = &walk[..walk.len() - 1];
            let vertices: Vec<String> = walk.iter().map(|s| s.to_string()).collect();
            let edges: Vec<String> = (0..walk.len())
                .map(|i| {
                    let a = g.vertex_id(walk[i])?;
                    let b = g.vertex_id(walk[(i + 1) % walk.len()])?;
                    by_pair.get(&(a.min(b), a.max(b))).cloned().ok_or_else(|| {
                        Error::UnknownEdge(format!("{}-{}", walk[i], walk[(i + 1) % walk.len()]))
                    })
                })
                .collect::<Result<_>>()?;
            Ok((v.to_string(), ClosedTrail { vertices, edges }))
        })
        .collect::<Result<_>>()?;

    let report = report_from_trails(&g, trails);
    let feasible = identity_ordering_feasible(&g)?;
    let checks = vec![
        ("trails_are_closed_trails", report.trails_are_closed),
        ("trail_map_bijective", report.bijective),
        (
            "every_vertex_on_own_trail",
            report.every_vertex_on_own_trail,
        ),
        (
            "total_edge_occurrences_is_40",
            report.total_edge_occurrences == 40,
        ),
        ("each_edge_on_two_trails", report.each_edge_on_two_trails),
        ("edge_count_even", report.edge_count_even),
        ("identity_ordering_infeasible", !feasible),
    ];
    Ok(Eden12Report {
        checks,
        trails: report.trails,
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        required_edge_count: 2 * g.vertex_count() - 2,
    })
}

//! Darts, rotation systems, face tracing, and the correspondence between an
//! ordering's vertex orbits and the faces of its induced embedding.
//!
//! A dart is an edge with a chosen direction. Internally dart ids are
//! `2e` (the stored orientation of edge `e`) and `2e + 1` (reversed), so the
//! reversal `alpha` is just `id ^ 1`. The face successor is
//! `phi = sigma ∘ alpha`, where `sigma` steps to the next dart out of the
//! same source vertex in its cyclic rotation; faces are the `phi`-orbits.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::ordering::{permutation_of_ordering, EdgeOrdering};

/// An edge with a chosen direction, as label triples for I/O.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: String,
    pub source: String,
    pub target: String,
}

impl Dart {
    pub fn new(
        edge: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Dart {
            edge: edge.into(),
            source: source.into(),
            target: target.into(),
        }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.edge, self.source, self.target)
    }
}

/// Reverses a dart's direction; an involution without fixed points.
pub fn alpha(d: &Dart) -> Dart {
    Dart {
        edge: d.edge.clone(),
        source: d.target.clone(),
        target: d.source.clone(),
    }
}

pub(crate) type DartId = u32;

pub(crate) fn dart_source(g: &Multigraph, d: DartId) -> VertexId {
    let (u, v) = g.endpoints((d / 2) as EdgeId);
    if d.is_multiple_of(2) {
        u
    } else {
        v
    }
}

pub(crate) fn dart_target(g: &Multigraph, d: DartId) -> VertexId {
    dart_source(g, d ^ 1)
}

/// The out-dart of edge `e` whose source is `v`.
pub(crate) fn dart_out_of(g: &Multigraph, e: EdgeId, v: VertexId) -> DartId {
    let (u, _) = g.endpoints(e);
    if u == v {
        2 * e as DartId
    } else {
        2 * e as DartId + 1
    }
}

fn dart_to_labels(g: &Multigraph, d: DartId) -> Dart {
    Dart {
        edge: g.edge_label((d / 2) as EdgeId).to_string(),
        source: g.vertex_label(dart_source(g, d)).to_string(),
        target: g.vertex_label(dart_target(g, d)).to_string(),
    }
}

fn dart_from_labels(g: &Multigraph, d: &Dart) -> Result<DartId> {
    let not_in_graph = || Error::DartNotInGraph {
        edge: d.edge.clone(),
        from: d.source.clone(),
        to: d.target.clone(),
    };
    let e = g.edge_id(&d.edge).map_err(|_| not_in_graph())?;
    let s = g.vertex_id(&d.source).map_err(|_| not_in_graph())?;
    let t = g.vertex_id(&d.target).map_err(|_| not_in_graph())?;
    let (u, v) = g.endpoints(e);
    if (s, t) == (u, v) {
        Ok(2 * e as DartId)
    } else if (s, t) == (v, u) {
        Ok(2 * e as DartId + 1)
    } else {
        Err(not_in_graph())
    }
}

/// All `2|E|` darts, both directions of each edge, in edge order.
pub fn darts(g: &Multigraph) -> Vec<Dart> {
    (0..2 * g.edge_count() as DartId)
        .map(|d| dart_to_labels(g, d))
        .collect()
}

/// A cyclic order of the incident edges at every vertex; determines a 2-cell
/// embedding. Stored against a fixed graph's vertex/edge ids with each cycle
/// cut so its lexicographically least edge label comes first, which makes
/// equality structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    rotations: Vec<Vec<EdgeId>>,
}

impl RotationSystem {
    /// Validates one cyclic order per vertex against `g`: every vertex
    /// covered exactly once, each cycle a permutation of the incident edges.
    pub fn from_label_orders(
        g: &Multigraph,
        orders: Vec<(String, Vec<String>)>,
    ) -> Result<RotationSystem> {
        let mut rotations: Vec<Option<Vec<EdgeId>>> = vec![None; g.vertex_count()];
        for (vertex, edges) in orders {
            let v = g.vertex_id(&vertex)?;
            if rotations[v].is_some() {
                return Err(Error::InvalidRotation(format!(
                    "vertex `{vertex}` listed twice"
                )));
            }
            let mut ids = Vec::with_capacity(edges.len());
            for label in &edges {
                let e = g
                    .edge_id(label)
                    .map_err(|_| Error::InvalidRotation(format!("unknown edge `{label}`")))?;
                let (a, b) = g.endpoints(e);
                if a != v && b != v {
                    return Err(Error::InvalidRotation(format!(
                        "edge `{label}` is not incident to `{vertex}`"
                    )));
                }
                if ids.contains(&e) {
                    return Err(Error::InvalidRotation(format!(
                        "edge `{label}` repeated at `{vertex}`"
                    )));
                }
                ids.push(e);
            }
            if ids.len() != g.degree(v) {
                return Err(Error::InvalidRotation(format!(
                    "vertex `{vertex}` lists {} edges, has degree {}",
                    ids.len(),
                    g.degree(v)
                )));
            }
            rotations[v] = Some(ids);
        }
        let rotations: Vec<Vec<EdgeId>> = rotations
            .into_iter()
            .enumerate()
            .map(|(v, r)| {
                r.ok_or_else(|| {
                    Error::InvalidRotation(format!(
                        "no rotation for vertex `{}`",
                        g.vertex_label(v)
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_vertex_orders_unchecked(g, rotations))
    }

    /// Skips validation (callers produce valid-by-construction cycles) but
    /// still applies the canonical cut.
    pub(crate) fn from_vertex_orders_unchecked(
        g: &Multigraph,
        mut rotations: Vec<Vec<EdgeId>>,
    ) -> RotationSystem {
        for r in &mut rotations {
            canonical_cut(g, r);
        }
        RotationSystem { rotations }
    }

    /// The cyclic order at `v`, canonical cut.
    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotations[v]
    }

    pub fn rotation_labels(&self, g: &Multigraph, v: VertexId) -> Vec<String> {
        self.rotations[v]
            .iter()
            .map(|&e| g.edge_label(e).to_string())
            .collect()
    }

    /// Cheap shape check for operations that take an untrusted `(g, ρ)` pair.
    pub(crate) fn validate_for(&self, g: &Multigraph) -> Result<()> {
        if self.rotations.len() != g.vertex_count() {
            return Err(Error::InvalidRotation(format!(
                "{} rotations for {} vertices",
                self.rotations.len(),
                g.vertex_count()
            )));
        }
        for (v, r) in self.rotations.iter().enumerate() {
            if r.len() != g.degree(v) {
                return Err(Error::InvalidRotation(format!(
                    "vertex `{}` rotation has {} edges, degree is {}",
                    g.vertex_label(v),
                    r.len(),
                    g.degree(v)
                )));
            }
            for &e in r {
                if e >= g.edge_count() {
                    return Err(Error::InvalidRotation(format!("edge id {e} out of range")));
                }
                let (a, b) = g.endpoints(e);
                if a != v && b != v {
                    return Err(Error::InvalidRotation(format!(
                        "edge `{}` not incident to `{}`",
                        g.edge_label(e),
                        g.vertex_label(v)
                    )));
                }
            }
            let mut sorted = r.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != r.len() {
                return Err(Error::InvalidRotation(format!(
                    "repeated edge at `{}`",
                    g.vertex_label(v)
                )));
            }
        }
        Ok(())
    }
}

fn canonical_cut(g: &Multigraph, r: &mut [EdgeId]) {
    if r.len() < 2 {
        return;
    }
    let least = (0..r.len())
        .min_by(|&i, &j| g.edge_label(r[i]).cmp(g.edge_label(r[j])))
        .unwrap();
    r.rotate_left(least);
}

/// σ-table: for each dart `d`, the next dart out of `d`'s source vertex.
pub(crate) fn sigma_table(g: &Multigraph, rho: &RotationSystem) -> Vec<DartId> {
    let mut sigma = vec![0 as DartId; 2 * g.edge_count()];
    fill_sigma_table(g, &rho.rotations, &mut sigma);
    sigma
}

pub(crate) fn fill_sigma_table(g: &Multigraph, rotations: &[Vec<EdgeId>], sigma: &mut [DartId]) {
    for (v, r) in rotations.iter().enumerate() {
        let s = r.len();
        for i in 0..s {
            let from = dart_out_of(g, r[i], v);
            let to = dart_out_of(g, r[(i + 1) % s], v);
            sigma[from as usize] = to;
        }
    }
}

/// Counts orbits of φ(d) = σ(α(d)); `seen` is caller-provided scratch.
pub(crate) fn count_orbits(sigma: &[DartId], seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|b| *b = false);
    let mut faces = 0;
    for d in 0..sigma.len() {
        if seen[d] {
            continue;
        }
        faces += 1;
        let mut cur = d as DartId;
        while !seen[cur as usize] {
            seen[cur as usize] = true;
            cur = sigma[(cur ^ 1) as usize];
        }
    }
    faces
}

/// The next dart after `d` in the cyclic rotation at `d`'s source.
pub fn sigma(g: &Multigraph, rho: &RotationSystem, d: &Dart) -> Result<Dart> {
    rho.validate_for(g)?;
    let id = dart_from_labels(g, d)?;
    let v = dart_source(g, id);
    let r = rho.rotation(v);
    let pos = r
        .iter()
        .position(|&e| dart_out_of(g, e, v) == id)
        .expect("validated rotation covers incident edges");
    Ok(dart_to_labels(g, dart_out_of(g, r[(pos + 1) % r.len()], v)))
}

/// The face successor φ = σ ∘ α.
pub fn phi(g: &Multigraph, rho: &RotationSystem, d: &Dart) -> Result<Dart> {
    sigma(g, rho, &alpha(d))
}

/// The φ-orbit partition of the darts: the faces of the embedding.
///
/// Face numbering is deterministic: each orbit is entered at its least dart
/// under (edge label, source label, target label) order, and orbits are
/// listed by that entry dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTrace {
    faces: Vec<Vec<DartId>>,
    face_of: Vec<u32>,
}

impl FaceTrace {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Total darts across all faces (= 2|E|).
    pub fn dart_count(&self) -> usize {
        self.face_of.len()
    }

    pub fn face_darts(&self, g: &Multigraph, k: usize) -> Vec<Dart> {
        self.faces[k]
            .iter()
            .map(|&d| dart_to_labels(g, d))
            .collect()
    }

    /// Length of face `k` in darts.
    pub fn face_len(&self, k: usize) -> usize {
        self.faces[k].len()
    }

    /// Index of the face whose closed walk contains `d`.
    pub fn face_containing(&self, g: &Multigraph, d: &Dart) -> Result<usize> {
        Ok(self.face_of[dart_from_labels(g, d)? as usize] as usize)
    }

    pub(crate) fn face_of_dart(&self, d: DartId) -> usize {
        self.face_of[d as usize] as usize
    }

    pub(crate) fn face_dart_ids(&self, k: usize) -> &[DartId] {
        &self.faces[k]
    }

    /// Edges traversed twice by face `k` (both darts in the same orbit); a
    /// face with no such edge corresponds to a closed trail when directions
    /// are forgotten.
    pub fn doubled_edges(&self, g: &Multigraph, k: usize) -> Vec<String> {
        let mut seen = vec![false; g.edge_count()];
        let mut doubled = Vec::new();
        for &d in &self.faces[k] {
            let e = (d / 2) as EdgeId;
            if seen[e] {
                doubled.push(g.edge_label(e).to_string());
            }
            seen[e] = true;
        }
        doubled
    }
}

pub fn trace_faces(g: &Multigraph, rho: &RotationSystem) -> Result<FaceTrace> {
    rho.validate_for(g)?;
    let sigma = sigma_table(g, rho);
    let total = sigma.len();
    let mut order: Vec<DartId> = (0..total as DartId).collect();
    order.sort_by(|&a, &b| {
        let key = |d: DartId| {
            (
                g.edge_label((d / 2) as EdgeId),
                g.vertex_label(dart_source(g, d)),
                g.vertex_label(dart_target(g, d)),
            )
        };
        key(a).cmp(&key(b))
    });
    let mut face_of = vec![u32::MAX; total];
    let mut faces = Vec::new();
    for &start in &order {
        if face_of[start as usize] != u32::MAX {
            continue;
        }
        let k = faces.len() as u32;
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            face_of[cur as usize] = k;
            cycle.push(cur);
            cur = sigma[(cur ^ 1) as usize];
            if cur == start {
                break;
            }
        }
        faces.push(cycle);
    }
    Ok(FaceTrace { faces, face_of })
}

/// Euler-formula genus of the embedding `(g, ρ)`: `2 − 2γ = |V| − |E| + f`.
///
/// An edgeless (single-vertex) graph has no darts and hence no φ-orbits, but
/// its embedding in the sphere has one face; it gets genus 0 directly.
pub fn genus_of(g: &Multigraph, rho: &RotationSystem) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.edge_count() == 0 {
        rho.validate_for(g)?;
        return Ok(0);
    }
    let faces = trace_faces(g, rho)?.face_count();
    genus_from_counts(g.vertex_count(), g.edge_count(), faces)
}

pub(crate) fn genus_from_counts(vertices: usize, edges: usize, faces: usize) -> Result<usize> {
    let doubled = 2 + edges as i64 - vertices as i64 - faces as i64;
    if doubled < 0 {
        return Err(Error::NegativeGenus {
            vertices,
            edges,
            faces,
        });
    }
    if doubled % 2 != 0 {
        return Err(Error::NonIntegerGenus {
            vertices,
            edges,
            faces,
        });
    }
    Ok((doubled / 2) as usize)
}

/// The rotation system induced by an ordering: at each vertex, the cyclic
/// closure of the ordering restricted to the incident edges.
pub fn rotation_from_ordering(g: &Multigraph, ordering: &EdgeOrdering) -> Result<RotationSystem> {
    let ids = ordering.resolve(g)?;
    Ok(rotation_from_edge_positions(g, &ids))
}

/// Same, from the resolved id sequence (positions = ordering ranks).
pub(crate) fn rotation_from_edge_positions(g: &Multigraph, ids: &[EdgeId]) -> RotationSystem {
    let mut rank = vec![0usize; g.edge_count()];
    for (pos, &e) in ids.iter().enumerate() {
        rank[e] = pos;
    }
    let rotations: Vec<Vec<EdgeId>> = (0..g.vertex_count())
        .map(|v| {
            let mut inc = g.incident_edges(v).to_vec();
            inc.sort_by_key(|&e| rank[e]);
            inc
        })
        .collect();
    RotationSystem::from_vertex_orders_unchecked(g, rotations)
}

/// One vertex orbit paired with the face holding its entry dart.
#[derive(Clone, Debug)]
pub struct OrbitFacePair {
    /// Vertex labels along the orbit, starting at its least vertex.
    pub orbit: Vec<String>,
    /// The dart `(e, v, τ_e(v))` for the orbit's representative `v` and the
    /// first `v`-incident edge `e` of the ordering.
    pub entry_dart: Dart,
    /// Index of the face containing `entry_dart` in `trace_faces` numbering.
    pub face: usize,
}

/// The orbit–face correspondence: vertex orbits of the ordering's
/// permutation map one-to-one onto the faces of the induced embedding, so
/// the orbit count ℓ equals the face count.
#[derive(Clone, Debug)]
pub struct OrbitFaceMap {
    pub pairs: Vec<OrbitFacePair>,
    pub face_count: usize,
}

impl OrbitFaceMap {
    pub fn orbit_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.face_count];
        for p in &self.pairs {
            if hit[p.face] {
                return false;
            }
            hit[p.face] = true;
        }
        self.pairs.len() == self.face_count
    }
}

/// Builds the correspondence for `(g, ω)` and verifies it is a bijection.
pub fn orbit_face_correspondence(g: &Multigraph, ordering: &EdgeOrdering) -> Result<OrbitFaceMap> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let ids = ordering.resolve(g)?;
    if ids.is_empty() {
        // No darts, so no faces to pair the single vertex orbit with.
        return Err(Error::InvalidOrdering(
            "orbit-face correspondence needs at least one edge".into(),
        ));
    }
    let pi = permutation_of_ordering(g, ordering)?;
    let rho = rotation_from_edge_positions(g, &ids);
    let trace = trace_faces(g, &rho)?;
    let mut pairs = Vec::new();
    for cycle in pi.cycles() {
        let v = cycle[0];
        let e = *ids
            .iter()
            .find(|&&e| {
                let (a, b) = g.endpoints(e);
                a == v || b == v
            })
            .expect("connected graph with an edge: every vertex has one");
        let d = dart_out_of(g, e, v);
        pairs.push(OrbitFacePair {
            orbit: cycle
                .iter()
                .map(|&u| g.vertex_label(u).to_string())
                .collect(),
            entry_dart: dart_to_labels(g, d),
            face: trace.face_of_dart(d),
        });
    }
    let map = OrbitFaceMap {
        pairs,
        face_count: trace.face_count(),
    };
    if !map.is_bijective() {
        return Err(Error::InternalVerificationFailure(
            "orbit-face correspondence is not a bijection".into(),
        ));
    }
    Ok(map)
}

/// Finds an ordering that induces `ρ`, or `None` if no ordering does.
///
/// For each vertex of degree ≥ 3, some cut of its cyclic rotation must be the
/// increasing run of its incident edges in the ordering; vertices of degree
/// ≤ 2 impose nothing. The search walks all cut combinations, keeping the
/// union of the implied chains acyclic, and reads the witness off the first
/// acyclic combination by smallest-index topological selection.
pub fn orderable(g: &Multigraph, rho: &RotationSystem) -> Result<Option<EdgeOrdering>> {
    rho.validate_for(g)?;
    let m = g.edge_count();
    let constrained: Vec<VertexId> = (0..g.vertex_count())
        .filter(|&v| g.degree(v) >= 3)
        .collect();
    let mut arcs = ArcSet::new(m);
    let mut search = CutSearch {
        rho,
        constrained: &constrained,
        arcs: &mut arcs,
    };
    Ok(search.run(0).map(|ids| {
        debug_assert_eq!(&rotation_from_edge_positions(g, &ids), rho);
        EdgeOrdering::from_edge_ids(g, &ids)
    }))
}

/// Arc multiset on edge ids with an acyclicity test.
struct ArcSet {
    count: Vec<u8>,
    m: usize,
}

impl ArcSet {
    fn new(m: usize) -> Self {
        ArcSet {
            count: vec![0; m * m],
            m,
        }
    }

    fn add_chain(&mut self, chain: &[EdgeId]) {
        for w in chain.windows(2) {
            self.count[w[0] * self.m + w[1]] += 1;
        }
    }

    fn remove_chain(&mut self, chain: &[EdgeId]) {
        for w in chain.windows(2) {
            self.count[w[0] * self.m + w[1]] -= 1;
        }
    }

    fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm, always removing the smallest available edge id.
    fn topological_order(&self) -> Option<Vec<EdgeId>> {
        let m = self.m;
        let mut indegree = vec![0usize; m];
        for row in self.count.chunks(m) {
            for (deg, &c) in indegree.iter_mut().zip(row) {
                if c > 0 {
                    *deg += 1;
                }
            }
        }
        let mut emitted = vec![false; m];
        let mut order = Vec::with_capacity(m);
        for _ in 0..m {
            let next = (0..m).find(|&e| !emitted[e] && indegree[e] == 0)?;
            emitted[next] = true;
            order.push(next);
            let row = &self.count[next * m..(next + 1) * m];
            for (deg, &c) in indegree.iter_mut().zip(row) {
                if c > 0 {
                    *deg -= 1;
                }
            }
        }
        Some(order)
    }
}

struct CutSearch<'a> {
    rho: &'a RotationSystem,
    constrained: &'a [VertexId],
    arcs: &'a mut ArcSet,
}

impl CutSearch<'_> {
    fn run(&mut self, depth: usize) -> Option<Vec<EdgeId>> {
        if depth == self.constrained.len() {
            return self.arcs.topological_order();
        }
        let v = self.constrained[depth];
        let r = self.rho.rotation(v);
        let s = r.len();
        let mut chain = Vec::with_capacity(s);
        for cut in 0..s {
            chain.clear();
            chain.extend((0..s).map(|i| r[(cut + i) % s]));
            self.arcs.add_chain(&chain);
            if self.arcs.is_acyclic() {
                if let Some(found) = self.run(depth + 1) {
                    return Some(found);
                }
            }
            self.arcs.remove_chain(&chain);
        }
        None
    }
}

//! Brute-force maximum genus, upper embeddability via spanning-tree
//! deficiency, and constructive production of full cyclic orderings.

use crate::enumerate::{face_count_at, RotationScratch, RotationSpace};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, SpanningTree};
use crate::ordering::{
    is_full_cyclic_ordering, orbit_count_of_ordering, smooth_ordering, EdgeOrdering,
};
use crate::rotation::{genus_from_counts, trace_faces, RotationSystem};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Cap on how many rotation systems a brute-force scan may visit. Scans
/// refuse up front (`BudgetExceeded`) when the full space is larger, so a
/// completed scan is always exhaustive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(u64);

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 10_000_000;

    pub fn new(limit: u64) -> Self {
        Budget(limit)
    }

    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.0
    }

    pub(crate) fn admit(&self, required: u128) -> Result<u64> {
        if required > self.0 as u128 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(required as u64)
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(Self::DEFAULT_LIMIT)
    }
}

/// Outcome of a maximum-genus scan over all rotation systems.
#[derive(Clone, Debug)]
pub struct MaxGenusResult {
    pub gamma_max: usize,
    /// Face count of the witness; the minimum over all rotation systems.
    pub face_count: usize,
    /// The first system (in enumeration order) attaining the minimum.
    pub witness: RotationSystem,
}

/// Maximum genus of `g` by exhaustive scan over its rotation systems,
/// minimizing the face count. Parallel when the `parallel` feature is on;
/// the result is identical either way.
pub fn max_genus_bruteforce(g: &Multigraph, budget: Budget) -> Result<MaxGenusResult> {
    #[cfg(feature = "parallel")]
    {
        max_genus_scan(g, budget, true)
    }
    #[cfg(not(feature = "parallel"))]
    {
        max_genus_scan(g, budget, false)
    }
}

/// Sequential variant, available regardless of features (used by the bench
/// suite as the comparison baseline).
pub fn max_genus_bruteforce_seq(g: &Multigraph, budget: Budget) -> Result<MaxGenusResult> {
    max_genus_scan(g, budget, false)
}

fn max_genus_scan(g: &Multigraph, budget: Budget, parallel: bool) -> Result<MaxGenusResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.edge_count() == 0 {
        // One vertex on the sphere: a single face, genus zero.
        return Ok(MaxGenusResult {
            gamma_max: 0,
            face_count: 1,
            witness: RotationSystem::from_label_orders(
                g,
                vec![(g.vertex_label(0).to_string(), vec![])],
            )?,
        });
    }
    let space = RotationSpace::new(g);
    let total = budget.admit(space.count())?;
    let (best_faces, best_index) = if parallel {
        scan_min_par(&space, total, g)
    } else {
        scan_min_seq(&space, total, g)
    };
    let faces = best_faces;
    let gamma_max = genus_from_counts(g.vertex_count(), g.edge_count(), faces)?;
    debug_assert_eq!(2 * gamma_max + faces, g.betti()? + 1);
    Ok(MaxGenusResult {
        gamma_max,
        face_count: faces,
        witness: space.rotation_at(best_index),
    })
}

fn scan_min_seq(space: &RotationSpace, total: u64, g: &Multigraph) -> (usize, u64) {
    let mut scratch = RotationScratch::new(g);
    let mut best = (usize::MAX, 0u64);
    for index in 0..total {
        let faces = face_count_at(space, index, &mut scratch);
        if faces < best.0 {
            best = (faces, index);
            if faces == 1 {
                break;
            }
        }
    }
    best
}

#[cfg(feature = "parallel")]
fn scan_min_par(space: &RotationSpace, total: u64, g: &Multigraph) -> (usize, u64) {
    (0..total)
        .into_par_iter()
        .map_init(
            || RotationScratch::new(g),
            |scratch, index| (face_count_at(space, index, scratch), index),
        )
        .min()
        .expect("space has at least one rotation system")
}

#[cfg(not(feature = "parallel"))]
fn scan_min_par(space: &RotationSpace, total: u64, g: &Multigraph) -> (usize, u64) {
    scan_min_seq(space, total, g)
}

/// Decides upper embeddability: `Some(tree)` when `g` has a spanning tree
/// whose co-tree components can all be paired up save at most one odd one.
///
/// The deficiency of a tree (its number of odd co-tree components) always
/// has the parity of the cycle rank β, so the scan can stop at the first
/// tree attaining deficiency `β mod 2`; the witness is the
/// lexicographically least such tree. `None` means every spanning tree has
/// deficiency ≥ 2, and then the maximum genus falls short of ⌊β/2⌋.
pub fn is_upper_embeddable(g: &Multigraph) -> Result<Option<SpanningTree>> {
    let beta = g.betti()?;
    let target = beta % 2;
    let mut witness: Option<SpanningTree> = None;
    g.visit_spanning_trees(|tree| {
        if g.cotree_odd_components(tree) == target {
            witness = Some(SpanningTree::from_labels(
                tree.iter().map(|&e| g.edge_label(e)),
            ));
            false
        } else {
            true
        }
    })?;
    Ok(witness)
}

/// Whether some ordering of `g`'s edges multiplies out to a single cycle on
/// all vertices: the cycle rank must be even and `g` upper embeddable.
pub fn has_fcp_ordering(g: &Multigraph) -> Result<bool> {
    Ok(g.betti()? % 2 == 0 && is_upper_embeddable(g)?.is_some())
}

/// One smoothing stage of the constructive pipeline.
#[derive(Clone, Debug)]
pub struct SmoothingStep {
    /// The degree-2 vertex removed.
    pub vertex: String,
    /// Vertex orbit count of the ordering after this step (must stay 1).
    pub orbit_count: usize,
}

/// Full record of a constructed full cyclic ordering: the one-face rotation
/// system it started from, the subdivided graph and ordering realized on it,
/// and every smoothing stage on the way back down.
#[derive(Clone, Debug)]
pub struct FcpConstruction {
    pub rotation: RotationSystem,
    pub subdivided: Multigraph,
    pub subdivided_ordering: EdgeOrdering,
    pub steps: Vec<SmoothingStep>,
    pub ordering: EdgeOrdering,
}

/// Constructs an ordering whose transposition product is a full cycle, or
/// `None` when no such ordering exists.
pub fn construct_fcp_ordering(g: &Multigraph, budget: Budget) -> Result<Option<EdgeOrdering>> {
    Ok(construct_fcp_ordering_traced(g, budget)?.map(|c| c.ordering))
}

/// As [`construct_fcp_ordering`], but returns the whole construction trace.
///
/// Pipeline: find a one-face rotation system; subdivide every edge so the
/// per-vertex rotations become edge-disjoint blocks; concatenate the blocks
/// into an ordering of the subdivided graph, which then has a single vertex
/// orbit; smooth the midpoints away one at a time (each step preserves the
/// single orbit); finally map the merged labels back onto the original
/// edges. Every stage re-verifies its invariant and reports
/// `InternalVerificationFailure` on violation.
pub fn construct_fcp_ordering_traced(
    g: &Multigraph,
    budget: Budget,
) -> Result<Option<FcpConstruction>> {
    if !has_fcp_ordering(g)? {
        return Ok(None);
    }
    if g.edge_count() == 0 {
        // The single-vertex graph: the empty ordering is already full cyclic.
        let empty = EdgeOrdering::new(Vec::new());
        return Ok(Some(FcpConstruction {
            rotation: RotationSystem::from_label_orders(
                g,
                vec![(g.vertex_label(0).to_string(), vec![])],
            )?,
            subdivided: g.clone(),
            subdivided_ordering: empty.clone(),
            steps: Vec::new(),
            ordering: empty,
        }));
    }

    let found = max_genus_bruteforce(g, budget)?;
    if found.face_count != 1 {
        return Err(Error::InternalVerificationFailure(format!(
            "expected a one-face rotation system, best has {} faces",
            found.face_count
        )));
    }
    let rho = &found.witness;

    // Subdivide every edge at a fresh midpoint `<edge>.m`.
    let mut subdivided = g.clone();
    let mut midpoints = Vec::with_capacity(g.edge_count());
    for label in g.edge_labels().to_vec() {
        let mut w = format!("{label}.m");
        while subdivided.vertex_id(&w).is_ok() {
            w.push_str(".m");
        }
        subdivided = subdivided.subdivide_edge(&label, &w)?;
        midpoints.push(w);
    }

    // Lift the rotation system: originals keep their cyclic orders with each
    // edge replaced by its half, midpoints take their unique 2-rotation.
    let lifted = lift_rotation(g, rho, &subdivided)?;
    if trace_faces(&subdivided, &lifted)?.face_count() != 1 {
        return Err(Error::InternalVerificationFailure(
            "lifted rotation system is not one-face".into(),
        ));
    }

    // In the subdivided graph each edge touches exactly one branch vertex
    // (degree ≥ 3), so the branch rotations are disjoint blocks: listing
    // them consecutively realizes the lifted system, and vertices of degree
    // ≤ 2 are unconstrained.
    let mut sequence = Vec::with_capacity(subdivided.edge_count());
    let mut listed = vec![false; subdivided.edge_count()];
    for v in 0..subdivided.vertex_count() {
        if subdivided.degree(v) < 3 {
            continue;
        }
        for &e in lifted.rotation(v) {
            debug_assert!(!listed[e]);
            listed[e] = true;
            sequence.push(subdivided.edge_label(e).to_string());
        }
    }
    for (e, &seen) in listed.iter().enumerate() {
        if !seen {
            sequence.push(subdivided.edge_label(e).to_string());
        }
    }
    let subdivided_ordering = EdgeOrdering::new(sequence);
    if orbit_count_of_ordering(&subdivided, &subdivided_ordering)? != 1 {
        return Err(Error::InternalVerificationFailure(
            "ordering built from the one-face rotation is not full cyclic".into(),
        ));
    }

    // Smooth the midpoints back out in ascending label order; the single
    // vertex orbit must survive every step.
    let mut current_graph = subdivided.clone();
    let mut current_ordering = subdivided_ordering.clone();
    let mut steps = Vec::with_capacity(midpoints.len());
    let mut order = midpoints.clone();
    order.sort();
    for w in order {
        let (next_graph, next_ordering) = smooth_ordering(&current_graph, &current_ordering, &w)?;
        let orbit_count = orbit_count_of_ordering(&next_graph, &next_ordering)?;
        steps.push(SmoothingStep {
            vertex: w,
            orbit_count,
        });
        if orbit_count != 1 {
            return Err(Error::InternalVerificationFailure(
                "smoothing step broke the single vertex orbit".into(),
            ));
        }
        current_graph = next_graph;
        current_ordering = next_ordering;
    }

    let ordering = relabel_onto_original(g, &current_graph, &current_ordering)?;
    if !is_full_cyclic_ordering(g, &ordering)? {
        return Err(Error::InternalVerificationFailure(
            "constructed ordering is not full cyclic on the original graph".into(),
        ));
    }
    Ok(Some(FcpConstruction {
        rotation: found.witness,
        subdivided,
        subdivided_ordering,
        steps,
        ordering,
    }))
}

fn lift_rotation(
    g: &Multigraph,
    rho: &RotationSystem,
    subdivided: &Multigraph,
) -> Result<RotationSystem> {
    let mut rotations = Vec::with_capacity(subdivided.vertex_count());
    for v in 0..g.vertex_count() {
        let mut order = Vec::with_capacity(g.degree(v));
        for &e in rho.rotation(v) {
            let side = if g.endpoints(e).0 == v { 1 } else { 2 };
            order.push(subdivided.edge_id(&format!("{}.{side}", g.edge_label(e)))?);
        }
        rotations.push(order);
    }
    for w in g.vertex_count()..subdivided.vertex_count() {
        rotations.push(subdivided.incident_edges(w).to_vec());
    }
    Ok(RotationSystem::from_vertex_orders_unchecked(
        subdivided, rotations,
    ))
}

/// After all smoothings the graph matches the original edge-for-edge in
/// stored order (subdivision splits in place, smoothing merges in place);
/// map the merged labels back positionally.
fn relabel_onto_original(
    g: &Multigraph,
    smoothed: &Multigraph,
    ordering: &EdgeOrdering,
) -> Result<EdgeOrdering> {
    if smoothed.edge_count() != g.edge_count() {
        return Err(Error::InternalVerificationFailure(format!(
            "smoothed graph has {} edges, original {}",
            smoothed.edge_count(),
            g.edge_count()
        )));
    }
    for e in 0..g.edge_count() {
        let (su, sv) = smoothed.endpoints(e);
        let (gu, gv) = g.endpoints(e);
        if smoothed.vertex_label(su) != g.vertex_label(gu)
            || smoothed.vertex_label(sv) != g.vertex_label(gv)
        {
            return Err(Error::InternalVerificationFailure(format!(
                "edge slot {e} endpoints moved during subdivision round trip"
            )));
        }
    }
    let sequence = ordering
        .labels()
        .iter()
        .map(|label| Ok(g.edge_label(smoothed.edge_id(label)?).to_string()))
        .collect::<Result<Vec<_>>>()?;
    Ok(EdgeOrdering::new(sequence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ordering::permutation_of_ordering;

    #[test]
    fn butterfly_max_genus_is_one_with_a_single_face() {
        let g = fixtures::butterfly();
        let r = max_genus_bruteforce(&g, Budget::default()).unwrap();
        assert_eq!((r.gamma_max, r.face_count), (1, 1));
        assert_eq!(trace_faces(&g, &r.witness).unwrap().face_count(), 1);
        let seq = max_genus_bruteforce_seq(&g, Budget::default()).unwrap();
        assert_eq!((seq.gamma_max, seq.face_count), (1, 1));
        assert_eq!(seq.witness, r.witness);
    }

    #[test]
    fn k4_and_dumbbell_max_genus() {
        let k4 = fixtures::k4();
        let r = max_genus_bruteforce(&k4, Budget::default()).unwrap();
        assert_eq!((r.gamma_max, r.face_count), (1, 2));

        let db = fixtures::dumbbell();
        let r = max_genus_bruteforce(&db, Budget::default()).unwrap();
        assert_eq!((r.gamma_max, r.face_count), (0, 3));
    }

    #[test]
    fn budget_refusal_reports_requirements() {
        let g = fixtures::butterfly();
        match max_genus_bruteforce(&g, Budget::new(5)) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!((required, budget), (6, 5));
            }
            other => panic!("expected budget refusal, got {other:?}"),
        }
        assert!(max_genus_bruteforce(&g, Budget::new(6)).is_ok());
    }

    #[test]
    fn single_vertex_graph_scans_cleanly() {
        let g = Multigraph::new(["1"], Vec::<(String, String, String)>::new()).unwrap();
        let r = max_genus_bruteforce(&g, Budget::default()).unwrap();
        assert_eq!((r.gamma_max, r.face_count), (0, 1));
    }

    #[test]
    fn butterfly_is_upper_embeddable_with_lex_least_tree() {
        let g = fixtures::butterfly();
        let t = is_upper_embeddable(&g).unwrap().expect("upper embeddable");
        assert_eq!(t.edges(), ["e1", "e2", "e3", "e4"]);
        assert!(has_fcp_ordering(&g).unwrap());
    }

    #[test]
    fn dumbbell_is_not_upper_embeddable() {
        let g = fixtures::dumbbell();
        assert!(is_upper_embeddable(&g).unwrap().is_none());
        assert!(!has_fcp_ordering(&g).unwrap());
    }

    #[test]
    fn k4_is_upper_embeddable_but_beta_is_odd() {
        let g = fixtures::k4();
        assert!(is_upper_embeddable(&g).unwrap().is_some());
        assert_eq!(g.betti().unwrap(), 3);
        assert!(!has_fcp_ordering(&g).unwrap());
    }

    #[test]
    fn trees_admit_fcp_orderings() {
        let path = fixtures::path3();
        assert!(has_fcp_ordering(&path).unwrap());
        let w = construct_fcp_ordering(&path, Budget::default())
            .unwrap()
            .expect("trees always order fully cyclically");
        assert!(is_full_cyclic_ordering(&path, &w).unwrap());
    }

    #[test]
    fn constructed_butterfly_ordering_is_full_cyclic() {
        let g = fixtures::butterfly();
        let c = construct_fcp_ordering_traced(&g, Budget::default())
            .unwrap()
            .expect("butterfly has even cycle rank and is upper embeddable");
        assert_eq!(
            orbit_count_of_ordering(&c.subdivided, &c.subdivided_ordering).unwrap(),
            1
        );
        assert_eq!(c.steps.len(), 6);
        assert!(c.steps.iter().all(|s| s.orbit_count == 1));
        assert!(permutation_of_ordering(&g, &c.ordering)
            .unwrap()
            .is_full_cycle());
    }

    #[test]
    fn construct_refuses_odd_or_deficient_graphs() {
        assert!(construct_fcp_ordering(&fixtures::k4(), Budget::default())
            .unwrap()
            .is_none());
        assert!(
            construct_fcp_ordering(&fixtures::dumbbell(), Budget::default())
                .unwrap()
                .is_none()
        );
    }
}

//! Cross-module invariants at desk scale: exhaustive sweeps over small
//! censuses plus seeded random sampling. Random cases are driven by a
//! `ChaCha8Rng` seeded from a proptest-chosen `u64`, so every failure is
//! reproducible from the seed proptest reports.

use std::collections::HashSet;

use cycletrace::enumerate::{
    connected_multigraphs, random_connected_multigraph, random_ordering, random_tree,
    visit_edge_orderings, RotationSpace,
};
use cycletrace::ordering::{
    is_full_cyclic_ordering, orbit_count_of_ordering, permutation_of_ordering, smooth_ordering,
    subdivide_ordering, EdgeOrdering,
};
use cycletrace::rotation::{
    genus_of, orbit_face_correspondence, orderable, phi, rotation_from_ordering, trace_faces,
    RotationSystem,
};
use cycletrace::{
    check_eden_conditions, find_identity_ordering, find_identity_ordering_seq, fixtures, Budget,
    Error, Multigraph,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random connected multigraph together with a random ordering of it.
fn random_instance(seed: u64, max_vertices: usize, max_edges: usize) -> (Multigraph, EdgeOrdering) {
    let mut rng = rng_from(seed);
    let g = random_connected_multigraph(&mut rng, max_vertices, max_edges);
    let ordering = random_ordering(&mut rng, &g);
    (g, ordering)
}

fn orbits(g: &Multigraph, ordering: &EdgeOrdering) -> usize {
    orbit_count_of_ordering(g, ordering).unwrap()
}

/// A rotation system of `g` drawn uniformly from the whole space.
fn random_rotation(rng: &mut impl Rng, g: &Multigraph) -> RotationSystem {
    let space = RotationSpace::new(g);
    let count = u64::try_from(space.count()).expect("desk-scale space");
    space.rotation_at(rng.random_range(0..count))
}

fn all_rotations(g: &Multigraph) -> Vec<RotationSystem> {
    let space = RotationSpace::new(g);
    let count = u64::try_from(space.count()).expect("desk-scale space");
    (0..count).map(|i| space.rotation_at(i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// The transposition product of a circular shift is conjugate to the
    /// original, so its cycle type is unchanged; shifting all the way
    /// around restores the ordering itself.
    #[test]
    fn circular_shift_preserves_cycle_type(seed: u64) {
        let (g, ordering) = random_instance(seed, 8, 8);
        let pi = permutation_of_ordering(&g, &ordering).unwrap();
        let shifted = ordering.circular_shift().unwrap();
        let pi_shifted = permutation_of_ordering(&g, &shifted).unwrap();
        prop_assert_eq!(pi.cycle_type(), pi_shifted.cycle_type());
        prop_assert_eq!(pi.orbit_count(), pi_shifted.orbit_count());

        let mut around = ordering.clone();
        for _ in 0..ordering.len() {
            around = around.circular_shift().unwrap();
        }
        prop_assert_eq!(around, ordering);
    }

    /// Each transposition flips the sign, so sign(π) = (−1)^|E|.
    #[test]
    fn sign_matches_edge_count_parity(seed: u64) {
        let (g, ordering) = random_instance(seed, 8, 9);
        let pi = permutation_of_ordering(&g, &ordering).unwrap();
        let expected = if g.edge_count() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(pi.sign(), expected);
    }

    /// Subdividing an edge extends the ordering without changing the number
    /// of vertex orbits.
    #[test]
    fn subdivision_preserves_orbit_count(seed: u64) {
        let (g, ordering) = random_instance(seed, 7, 7);
        let mut rng = rng_from(seed.wrapping_add(1));
        let e = g.edge_label(rng.random_range(0..g.edge_count())).to_string();
        let before = orbits(&g, &ordering);
        let (g2, ordering2) = subdivide_ordering(&g, &ordering, &e, "m0").unwrap();
        prop_assert_eq!(g2.edge_count(), g.edge_count() + 1);
        prop_assert_eq!(g2.vertex_count(), g.vertex_count() + 1);
        prop_assert_eq!(&ordering2.labels()[0], &format!("{e}.1"));
        prop_assert_eq!(&ordering2.labels()[1], &format!("{e}.2"));
        prop_assert_eq!(orbits(&g2, &ordering2), before);
    }

    /// A subdivision round trip smooths back to an edge-relabeled copy of
    /// the original graph with the orbit count intact. When the subdivided
    /// product has a fixed point the smoothing must refuse instead.
    #[test]
    fn smoothing_preserves_orbit_count_or_refuses(seed: u64) {
        let (g, ordering) = random_instance(seed, 7, 7);
        let mut rng = rng_from(seed.wrapping_add(2));
        let e = g.edge_label(rng.random_range(0..g.edge_count())).to_string();
        let (g2, ordering2) = subdivide_ordering(&g, &ordering, &e, "m0").unwrap();
        let pi2 = permutation_of_ordering(&g2, &ordering2).unwrap();
        match smooth_ordering(&g2, &ordering2, "m0") {
            Ok((g3, ordering3)) => {
                prop_assert!(!pi2.has_fixed_point());
                prop_assert!(g3.same_up_to_edge_relabeling(&g));
                prop_assert_eq!(orbits(&g3, &ordering3), orbits(&g2, &ordering2));
            }
            Err(Error::FixedPointPrecondition(_)) => prop_assert!(pi2.has_fixed_point()),
            Err(other) => return Err(TestCaseError::fail(format!("unexpected error: {other}"))),
        }
    }

    /// Tree orderings are always full cyclic, hence fixed-point-free; their
    /// subdivision round trips always satisfy the smoothing precondition.
    #[test]
    fn tree_round_trips_always_smooth(seed: u64) {
        let mut rng = rng_from(seed);
        let n = rng.random_range(2..=8);
        let g = random_tree(&mut rng, n);
        let ordering = random_ordering(&mut rng, &g);
        prop_assert_eq!(orbits(&g, &ordering), 1);
        let e = g.edge_label(rng.random_range(0..g.edge_count())).to_string();
        let (g2, ordering2) = subdivide_ordering(&g, &ordering, &e, "m0").unwrap();
        let (g3, ordering3) = smooth_ordering(&g2, &ordering2, "m0").unwrap();
        prop_assert!(g3.same_up_to_edge_relabeling(&g));
        prop_assert_eq!(orbits(&g3, &ordering3), 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Sampled counterpart of the exhaustive small-tree sweep: every
    /// ordering of a tree multiplies to a full cycle.
    #[test]
    fn sampled_tree_orderings_are_full_cyclic(seed: u64) {
        let mut rng = rng_from(seed);
        let n = rng.random_range(2..=7);
        let g = random_tree(&mut rng, n);
        for _ in 0..5 {
            let ordering = random_ordering(&mut rng, &g);
            prop_assert!(is_full_cyclic_ordering(&g, &ordering).unwrap());
        }
    }

    /// The vertex orbits of π_ω and the faces of ρ_ω correspond one to one.
    #[test]
    fn orbit_face_correspondence_is_bijective(seed: u64) {
        let (g, ordering) = random_instance(seed, 9, 10);
        let map = orbit_face_correspondence(&g, &ordering).unwrap();
        prop_assert!(map.is_bijective());
        let pi = permutation_of_ordering(&g, &ordering).unwrap();
        prop_assert_eq!(map.orbit_count(), pi.orbit_count());
        let rho = rotation_from_ordering(&g, &ordering).unwrap();
        prop_assert_eq!(map.face_count, trace_faces(&g, &rho).unwrap().face_count());
    }

    /// Face traces partition the darts into closed walks that follow φ, and
    /// the Euler formula never produces a negative or fractional genus.
    #[test]
    fn face_traces_partition_darts_into_closed_walks(seed: u64) {
        let mut rng = rng_from(seed);
        let g = random_connected_multigraph(&mut rng, 9, 8);
        let rho = random_rotation(&mut rng, &g);
        let trace = trace_faces(&g, &rho).unwrap();
        let mut seen = HashSet::new();
        let mut total = 0;
        for k in 0..trace.face_count() {
            let cycle = trace.face_darts(&g, k);
            total += cycle.len();
            for (i, d) in cycle.iter().enumerate() {
                prop_assert!(seen.insert(d.clone()), "dart on two faces: {d}");
                let next = &cycle[(i + 1) % cycle.len()];
                prop_assert_eq!(&d.target, &next.source);
                prop_assert_eq!(&phi(&g, &rho, d).unwrap(), next);
            }
        }
        prop_assert_eq!(total, 2 * g.edge_count());
        genus_of(&g, &rho).unwrap();
    }

    /// An edge's two darts land on one face (recorded as doubled) or on two.
    #[test]
    fn alpha_pairs_span_one_or_two_faces(seed: u64) {
        let mut rng = rng_from(seed);
        let g = random_connected_multigraph(&mut rng, 7, 7);
        let rho = random_rotation(&mut rng, &g);
        let trace = trace_faces(&g, &rho).unwrap();
        for d in cycletrace::darts(&g) {
            let f = trace.face_containing(&g, &d).unwrap();
            let f_rev = trace.face_containing(&g, &cycletrace::alpha(&d)).unwrap();
            let doubled = trace.doubled_edges(&g, f);
            prop_assert_eq!(f == f_rev, doubled.contains(&d.edge));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// After subdividing every edge, the branch vertices share no edges, so
    /// every rotation system is realized by some ordering.
    #[test]
    fn fully_subdivided_graphs_are_always_orderable(seed: u64) {
        let mut rng = rng_from(seed);
        let mut g = random_connected_multigraph(&mut rng, 5, 6);
        for e in g.edge_labels().to_vec() {
            g = g.subdivide_edge(&e, &format!("{e}x")).unwrap();
        }
        for _ in 0..3 {
            let rho = random_rotation(&mut rng, &g);
            let ordering = orderable(&g, &rho).unwrap().expect("disjoint rotation blocks");
            prop_assert_eq!(rotation_from_ordering(&g, &ordering).unwrap(), rho);
        }
    }
}

#[test]
fn shifted_butterfly_product_is_the_conjugate_cycle() {
    let g = fixtures::butterfly();
    let ordering = EdgeOrdering::from_labels(&["e1", "e2", "e3", "e4", "e5", "e6"]);
    let shifted = ordering.circular_shift().unwrap();
    assert_eq!(shifted.labels(), ["e2", "e3", "e4", "e5", "e6", "e1"]);
    let pi = permutation_of_ordering(&g, &shifted).unwrap();
    assert_eq!(pi.to_string(), "(1 5 4 2 3)");
}

#[test]
fn product_applies_the_first_listed_edge_first() {
    let g = fixtures::butterfly();
    let ordering = EdgeOrdering::graph_order(&g);
    let pi = permutation_of_ordering(&g, &ordering).unwrap();
    assert_eq!(pi.to_string(), "(1 3 2 5 4)");
    assert_eq!(
        (0..5).map(|i| pi.apply(i)).collect::<Vec<_>>(),
        [2, 4, 1, 0, 3]
    );
    // The opposite composition convention would produce the inverse.
    assert_ne!(pi, pi.inverse());
}

#[test]
fn subdivision_examples() {
    let g = fixtures::butterfly();
    let ordering = EdgeOrdering::graph_order(&g);

    let (g2, ordering2) = subdivide_ordering(&g, &ordering, "e1", "w").unwrap();
    assert_eq!(
        ordering2.labels(),
        ["e1.1", "e1.2", "e2", "e3", "e4", "e5", "e6"]
    );
    assert_eq!(g2.vertex_count(), 6);
    assert_eq!(orbits(&g2, &ordering2), 1);

    // The subdivided edge may sit anywhere, even last: it is shifted to the
    // front before splitting.
    let (g3, ordering3) = subdivide_ordering(&g, &ordering, "e6", "w").unwrap();
    assert_eq!(
        ordering3.labels(),
        ["e6.1", "e6.2", "e1", "e2", "e3", "e4", "e5"]
    );
    assert_eq!(orbits(&g3, &ordering3), 1);

    let path2 = Multigraph::from_edges(&[("e", "1", "2")]).unwrap();
    let ordering = EdgeOrdering::from_labels(&["e"]);
    let (path3, ordering2) = subdivide_ordering(&path2, &ordering, "e", "w").unwrap();
    assert_eq!(path3.vertex_count(), 3);
    let pi = permutation_of_ordering(&path3, &ordering2).unwrap();
    assert!(pi.is_full_cycle());
    assert_eq!(pi.cycle_type(), [3]);
}

#[test]
fn butterfly_round_trips_on_every_edge() {
    let g = fixtures::butterfly();
    let ordering = EdgeOrdering::graph_order(&g);
    for e in g.edge_labels().to_vec() {
        let (g2, ordering2) = subdivide_ordering(&g, &ordering, &e, "w").unwrap();
        assert_eq!(orbits(&g2, &ordering2), 1, "subdividing {e}");
        let (g3, ordering3) = smooth_ordering(&g2, &ordering2, "w").unwrap();
        assert!(g3.same_up_to_edge_relabeling(&g), "smoothing {e}");
        assert_eq!(orbits(&g3, &ordering3), 1, "smoothing {e}");
    }
}

#[test]
fn smoothing_a_three_vertex_path_keeps_one_orbit() {
    let g = Multigraph::from_edges(&[("a", "1", "3"), ("b", "2", "3")]).unwrap();
    let ordering = EdgeOrdering::from_labels(&["a", "b"]);
    let pi = permutation_of_ordering(&g, &ordering).unwrap();
    assert!(!pi.has_fixed_point());
    assert_eq!(pi.orbit_count(), 1);
    let (g2, ordering2) = smooth_ordering(&g, &ordering, "3").unwrap();
    assert_eq!(g2.edge_count(), 1);
    assert_eq!(ordering2.labels(), ["3.s"]);
    let pi2 = permutation_of_ordering(&g2, &ordering2).unwrap();
    assert!(pi2.is_full_cycle());
    assert_eq!(pi2.orbit_count(), 1);
}

#[test]
fn smoothing_refuses_a_fixed_point() {
    let g = fixtures::dipole().subdivide_edge("e1", "w").unwrap();
    // τ_{e1.2} ∘ τ_{e2} ∘ τ_{e1.1} fixes the subdivision vertex.
    let ordering = EdgeOrdering::from_labels(&["e1.1", "e2", "e1.2"]);
    let pi = permutation_of_ordering(&g, &ordering).unwrap();
    assert_eq!(pi.fixed_points().count(), 1);
    match smooth_ordering(&g, &ordering, "w") {
        Err(Error::FixedPointPrecondition(v)) => assert_eq!(v, "w"),
        other => panic!("expected a fixed-point refusal, got {other:?}"),
    }
}

#[test]
fn every_ordering_of_every_small_tree_is_full_cyclic() {
    for g in connected_multigraphs(5) {
        if g.betti().unwrap() != 0 {
            continue;
        }
        visit_edge_orderings(&g, |ids, pi| {
            assert!(
                pi.is_full_cycle(),
                "tree ordering {ids:?} gave {pi} on {}",
                cycletrace::write_graph(&g),
            );
            true
        });
    }
}

/// True when every parallel class of `g` has odd multiplicity and the
/// underlying simple graph (one edge per class) is a tree.
fn is_odd_thickened_tree(g: &Multigraph) -> bool {
    let mut classes: std::collections::HashMap<(usize, usize), usize> = Default::default();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        *classes.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    }
    classes.values().all(|&k| k % 2 == 1) && classes.len() == g.vertex_count() - 1
}

/// The converse of the tree property needs a caveat for multigraphs: odd
/// thickenings of trees (every parallel class of odd size over a tree) are
/// full cyclic under every ordering too, e.g. three parallel edges always
/// multiply to their common transposition. All other small non-trees admit
/// a non-full-cyclic ordering.
#[test]
fn small_non_trees_with_a_non_full_cyclic_ordering_are_exactly_the_non_odd_thickenings() {
    for g in connected_multigraphs(5) {
        if g.betti().unwrap() == 0 {
            continue;
        }
        let mut found = false;
        visit_edge_orderings(&g, |_, pi| {
            found = !pi.is_full_cycle();
            !found
        });
        assert_eq!(
            found,
            !is_odd_thickened_tree(&g),
            "unexpected ordering behavior on {}",
            cycletrace::write_graph(&g),
        );
    }
}

#[test]
fn odd_betti_graphs_have_no_full_cyclic_ordering() {
    connected_multigraphs(5)
        .par_iter()
        .filter(|g| g.betti().unwrap() % 2 == 1)
        .for_each(|g| {
            visit_edge_orderings(g, |ids, pi| {
                assert!(
                    !pi.is_full_cycle(),
                    "odd-betti graph admitted full cyclic ordering {ids:?}",
                );
                true
            });
        });
}

#[test]
fn every_rotation_system_of_a_small_graph_has_valid_genus() {
    connected_multigraphs(5).par_iter().for_each(|g| {
        for rho in all_rotations(g) {
            genus_of(g, &rho).unwrap();
        }
    });
}

#[test]
fn every_rotation_system_of_a_small_tree_has_one_face() {
    for g in connected_multigraphs(5) {
        if g.betti().unwrap() != 0 || g.edge_count() == 0 {
            continue;
        }
        for rho in all_rotations(&g) {
            assert_eq!(trace_faces(&g, &rho).unwrap().face_count(), 1);
        }
    }
}

#[test]
fn orderable_agrees_with_bruteforce_on_small_graphs() {
    connected_multigraphs(5).par_iter().for_each(|g| {
        if g.edge_count() == 0 {
            return;
        }
        let mut realizable: Vec<RotationSystem> = Vec::new();
        visit_edge_orderings(g, |ids, _| {
            let ordering = EdgeOrdering::from_edge_ids(g, ids);
            let rho = rotation_from_ordering(g, &ordering).unwrap();
            if !realizable.contains(&rho) {
                realizable.push(rho);
            }
            true
        });
        for rho in all_rotations(g) {
            let witness = orderable(g, &rho).unwrap();
            assert_eq!(
                witness.is_some(),
                realizable.contains(&rho),
                "orderable disagrees with brute force on {}",
                cycletrace::write_graph(g),
            );
            if let Some(ordering) = witness {
                assert_eq!(rotation_from_ordering(g, &ordering).unwrap(), rho);
            }
        }
    });
}

#[test]
fn identity_search_agrees_with_bruteforce_on_small_graphs() {
    connected_multigraphs(5).par_iter().for_each(|g| {
        let mut exists = false;
        visit_edge_orderings(g, |_, pi| {
            exists = pi.is_identity();
            !exists
        });
        let found = find_identity_ordering(g, Budget::default()).unwrap();
        assert_eq!(
            found.is_some(),
            exists,
            "identity search disagrees with brute force on {}",
            cycletrace::write_graph(g),
        );
        let found_seq = find_identity_ordering_seq(g, Budget::default()).unwrap();
        assert_eq!(found, found_seq, "parallel and sequential witnesses differ");
        if let Some(ordering) = found {
            assert!(permutation_of_ordering(g, &ordering).unwrap().is_identity());
        }
    });
}

#[test]
fn eden_conditions_hold_for_every_found_identity_ordering() {
    let mut exercised = 0;
    for g in connected_multigraphs(6) {
        if !g.is_simple() || g.edge_count() < 2 {
            continue;
        }
        let Some(ordering) = find_identity_ordering(&g, Budget::default()).unwrap() else {
            continue;
        };
        let report = check_eden_conditions(&g, &ordering).unwrap();
        assert!(
            report.all_conditions_hold(),
            "trail conditions failed on {}: {report:?}",
            cycletrace::write_graph(&g),
        );
        exercised += 1;
    }
    // The census must contain at least one simple graph with an identity
    // ordering (the complete graph on four vertices).
    assert!(exercised >= 1);
}

//! The acceptance gate: ten pinned results checked end to end at their
//! stated time bounds, one pass line each. Run with `--nocapture` to see
//! the lines on success; any failure panics with the criterion number.

use std::time::{Duration, Instant};

use cycletrace::enumerate::{
    connected_multigraphs, random_connected_multigraph, random_ordering, random_tree,
    visit_edge_orderings,
};
use cycletrace::ordering::{
    is_full_cyclic_ordering, orbit_count_of_ordering, permutation_of_ordering, smooth_ordering,
    subdivide_ordering, EdgeOrdering,
};
use cycletrace::rotation::{genus_of, rotation_from_ordering, trace_faces};
use cycletrace::search::{
    construct_fcp_ordering_traced, has_fcp_ordering, is_upper_embeddable, max_genus_bruteforce,
    Budget,
};
use cycletrace::{check_eden_conditions, fixtures, identity_ordering_feasible, Multigraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn timed<R>(f: impl FnOnce() -> R) -> (R, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

fn pass(n: usize, elapsed: Duration, bound: Duration, detail: &str) {
    assert!(
        elapsed <= bound,
        "criterion {n}: exceeded {bound:?} (took {elapsed:?})"
    );
    println!("criterion {n}: PASS — {detail} ({elapsed:.2?})");
}

fn orbits(g: &Multigraph, ordering: &EdgeOrdering) -> usize {
    orbit_count_of_ordering(g, ordering).unwrap()
}

/// Whether some ordering of `g` multiplies to a full cycle, by exhaustive
/// scan over all |E|! orderings with early exit.
fn bruteforce_has_fcp(g: &Multigraph) -> bool {
    let mut found = false;
    visit_edge_orderings(g, |_, pi| {
        found = pi.is_full_cycle();
        !found
    });
    found
}

#[test]
fn acceptance() {
    let butterfly = fixtures::butterfly();
    let file_order = EdgeOrdering::graph_order(&butterfly);

    // 1. The butterfly's file ordering multiplies to exactly (1 3 2 5 4).
    let (pi, t) = timed(|| permutation_of_ordering(&butterfly, &file_order).unwrap());
    assert_eq!(pi.to_string(), "(1 3 2 5 4)");
    assert!(pi.is_full_cycle());
    pass(
        1,
        t,
        Duration::from_millis(1),
        "butterfly product is (1 3 2 5 4)",
    );

    // 2. The induced rotation system embeds the butterfly with one face on
    // the torus.
    let (result, t) = timed(|| {
        let rho = rotation_from_ordering(&butterfly, &file_order).unwrap();
        let faces = trace_faces(&butterfly, &rho).unwrap().face_count();
        (faces, genus_of(&butterfly, &rho).unwrap())
    });
    assert_eq!(result, (1, 1));
    pass(
        2,
        t,
        Duration::from_millis(1),
        "butterfly embedding has 1 face, genus 1",
    );

    // 3. The dumbbell has no full cyclic ordering: the decision procedure
    // says so, and all 7! = 5040 orderings confirm it.
    let dumbbell = fixtures::dumbbell();
    let (count, t) = timed(|| {
        assert!(!has_fcp_ordering(&dumbbell).unwrap());
        assert!(is_upper_embeddable(&dumbbell).unwrap().is_none());
        let mut count = 0u32;
        visit_edge_orderings(&dumbbell, |_, pi| {
            assert!(!pi.is_full_cycle());
            count += 1;
            true
        });
        count
    });
    assert_eq!(count, 5040);
    pass(
        3,
        t,
        Duration::from_secs(5),
        "dumbbell: none of the 5040 orderings is full cyclic",
    );

    // 4. Trees: every ordering of every tree on ≤ 5 vertices is full
    // cyclic, and so are 200 random orderings of each of 200 random trees
    // on ≤ 9 vertices.
    let ((exhaustive, sampled), t) = timed(|| {
        let mut exhaustive = 0u32;
        for g in connected_multigraphs(4) {
            if g.betti().unwrap() != 0 {
                continue;
            }
            visit_edge_orderings(&g, |_, pi| {
                assert!(pi.is_full_cycle());
                exhaustive += 1;
                true
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut sampled = 0u32;
        for _ in 0..200 {
            let n = rng.random_range(2..=9);
            let g = random_tree(&mut rng, n);
            for _ in 0..200 {
                let ordering = random_ordering(&mut rng, &g);
                assert!(is_full_cyclic_ordering(&g, &ordering).unwrap());
                sampled += 1;
            }
        }
        (exhaustive, sampled)
    });
    assert_eq!(sampled, 40_000);
    pass(
        4,
        t,
        Duration::from_secs(30),
        &format!(
        "trees are full cyclic under every ordering ({exhaustive} exhaustive, {sampled} sampled)"
    ),
    );

    // 5. Vertex orbits of the product match faces of the induced rotation
    // system: 1000 random pairs up to 12 edges, then every ordering of
    // every connected multigraph with ≤ 5 edges.
    let ((random_pairs, exhaustive_pairs), t) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let g = random_connected_multigraph(&mut rng, 13, 12);
            let ordering = random_ordering(&mut rng, &g);
            let rho = rotation_from_ordering(&g, &ordering).unwrap();
            assert_eq!(
                orbits(&g, &ordering),
                trace_faces(&g, &rho).unwrap().face_count(),
            );
        }
        // The edgeless single vertex has no darts at all, so there is no
        // face side to compare; the correspondence concerns |E| ≥ 1.
        let exhaustive_pairs: usize = connected_multigraphs(5)
            .par_iter()
            .filter(|g| g.edge_count() > 0)
            .map(|g| {
                let mut pairs = 0usize;
                visit_edge_orderings(g, |ids, pi| {
                    let ordering = EdgeOrdering::from_edge_ids(g, ids);
                    let rho = rotation_from_ordering(g, &ordering).unwrap();
                    assert_eq!(pi.orbit_count(), trace_faces(g, &rho).unwrap().face_count(),);
                    pairs += 1;
                    true
                });
                pairs
            })
            .sum();
        (1000, exhaustive_pairs)
    });
    pass(5, t, Duration::from_secs(60), &format!(
        "orbit count equals face count ({random_pairs} random + {exhaustive_pairs} exhaustive pairs)"
    ));

    // 6. Three-way equivalence on every connected multigraph with ≤ 6
    // edges: some ordering is full cyclic ⟺ some rotation system has one
    // face ⟺ β is even and a spanning tree with even co-tree components
    // exists.
    let census = connected_multigraphs(6);
    let (positives, t) = timed(|| {
        let verdicts: Vec<bool> = census
            .par_iter()
            .map(|g| {
                let by_orderings = bruteforce_has_fcp(g);
                let by_faces = max_genus_bruteforce(g, Budget::default())
                    .unwrap()
                    .face_count
                    == 1;
                let by_criterion = has_fcp_ordering(g).unwrap();
                assert_eq!(by_orderings, by_faces, "on {}", cycletrace::write_graph(g));
                assert_eq!(
                    by_orderings,
                    by_criterion,
                    "on {}",
                    cycletrace::write_graph(g)
                );
                by_orderings
            })
            .collect();
        verdicts
            .iter()
            .enumerate()
            .filter_map(|(i, &yes)| yes.then_some(i))
            .collect::<Vec<_>>()
    });
    pass(
        6,
        t,
        Duration::from_secs(600),
        &format!(
        "ordering search, face minimum, and tree criterion agree on all {} graphs ({} positive)",
        census.len(),
        positives.len(),
    ),
    );

    // 7. The constructive pipeline succeeds on every positive instance
    // from criterion 6 plus the butterfly, and every stage verifies.
    let ((constructed, smoothing_steps), t) = timed(|| {
        let verify = |g: &Multigraph| -> usize {
            let c = construct_fcp_ordering_traced(g, Budget::default())
                .unwrap()
                .unwrap_or_else(|| panic!("no construction on {}", cycletrace::write_graph(g)));
            if g.edge_count() > 0 {
                assert_eq!(
                    trace_faces(g, &c.rotation).unwrap().face_count(),
                    1,
                    "witness rotation system is not one-face",
                );
            }
            assert_eq!(orbits(&c.subdivided, &c.subdivided_ordering), 1);
            for step in &c.steps {
                assert_eq!(
                    step.orbit_count, 1,
                    "smoothing {} broke the orbit",
                    step.vertex
                );
            }
            assert!(is_full_cyclic_ordering(g, &c.ordering).unwrap());
            c.steps.len()
        };
        let steps: usize = positives.par_iter().map(|&i| verify(&census[i])).sum();
        (positives.len() + 1, steps + verify(&butterfly))
    });
    pass(7, t, Duration::from_secs(600), &format!(
        "constructed and verified {constructed} full cyclic orderings ({smoothing_steps} smoothing steps, all single-orbit)"
    ));

    // 8. The complete graph on 4 vertices: its file ordering is an
    // identity ordering whose trail map is exactly the reference one.
    let k4 = fixtures::k4();
    let (report, t) = timed(|| {
        let ordering = EdgeOrdering::graph_order(&k4);
        let pi = permutation_of_ordering(&k4, &ordering).unwrap();
        assert!(pi.is_identity());
        check_eden_conditions(&k4, &ordering).unwrap()
    });
    let expected = [
        ("1", vec!["e1", "e4", "e5"]),
        ("2", vec!["e1", "e3", "e6"]),
        ("3", vec!["e2", "e4", "e6"]),
        ("4", vec!["e2", "e3", "e5"]),
    ];
    assert_eq!(report.trails.len(), expected.len());
    for ((vertex, trail), (want_vertex, want_edges)) in report.trails.iter().zip(&expected) {
        let mut edges = trail.edges.clone();
        edges.sort();
        assert_eq!(vertex, want_vertex);
        assert_eq!(edges, *want_edges, "trail through vertex {vertex}");
    }
    assert!(report.all_conditions_hold());
    assert_eq!(report.total_edge_occurrences, 12);
    pass(
        8,
        t,
        Duration::from_millis(1),
        "K4 identity ordering reproduces the reference trail map",
    );

    // 9. The 12-vertex counterexample: the reference trails satisfy every
    // closed-trail condition, yet 20 edges fall short of the 22 an
    // identity ordering would require.
    let (report, t) = timed(|| {
        let report = cycletrace::verify_eden12_fixture().unwrap();
        assert!(!identity_ordering_feasible(&fixtures::eden12()).unwrap());
        report
    });
    assert!(report.all_passed(), "failed checks: {:?}", report.checks);
    assert_eq!((report.edge_count, report.required_edge_count), (20, 22));
    pass(
        9,
        t,
        Duration::from_millis(1),
        "trail conditions pass but 20 < 22 edges, so no identity ordering",
    );

    // 10. The ordering surgeries preserve orbit counts: 1000 circular
    // shifts, 1000 subdivisions, 1000 smoothings of fixed-point-free
    // subdivision round trips.
    let (smoothed_trees, t) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..1000 {
            let g = random_connected_multigraph(&mut rng, 8, 8);
            let ordering = random_ordering(&mut rng, &g);
            let pi = permutation_of_ordering(&g, &ordering).unwrap();
            let shifted = ordering.circular_shift().unwrap();
            let pi_shifted = permutation_of_ordering(&g, &shifted).unwrap();
            assert_eq!(pi.cycle_type(), pi_shifted.cycle_type());
        }
        for _ in 0..1000 {
            let g = random_connected_multigraph(&mut rng, 8, 8);
            let ordering = random_ordering(&mut rng, &g);
            let e = g
                .edge_label(rng.random_range(0..g.edge_count()))
                .to_string();
            let (g2, ordering2) = subdivide_ordering(&g, &ordering, &e, "m0").unwrap();
            assert_eq!(orbits(&g2, &ordering2), orbits(&g, &ordering));
        }
        let mut fell_back = 0u32;
        for _ in 0..1000 {
            let (g, ordering) = {
                let g = random_connected_multigraph(&mut rng, 8, 8);
                let ordering = random_ordering(&mut rng, &g);
                if permutation_of_ordering(&g, &ordering)
                    .unwrap()
                    .has_fixed_point()
                {
                    // A tree ordering is always fixed-point-free.
                    fell_back += 1;
                    let n = rng.random_range(2..=8);
                    let g = random_tree(&mut rng, n);
                    let ordering = random_ordering(&mut rng, &g);
                    (g, ordering)
                } else {
                    (g, ordering)
                }
            };
            let e = g
                .edge_label(rng.random_range(0..g.edge_count()))
                .to_string();
            let (g2, ordering2) = subdivide_ordering(&g, &ordering, &e, "m0").unwrap();
            let before = orbits(&g2, &ordering2);
            let (g3, ordering3) = smooth_ordering(&g2, &ordering2, "m0").unwrap();
            assert!(g3.same_up_to_edge_relabeling(&g));
            assert_eq!(orbits(&g3, &ordering3), before);
        }
        fell_back
    });
    pass(
        10,
        t,
        Duration::from_secs(60),
        &format!(
        "3000 surgery cases preserve orbit counts ({smoothed_trees} smoothings used tree instances)"
    ),
    );
}

//! Enumeration of rotation systems, edge orderings, and small connected
//! multigraphs, plus seeded random generators for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::ordering::EdgeOrdering;
use crate::perm::Permutation;
use crate::rotation::{count_orbits, fill_sigma_table, DartId, RotationSystem};

const FACTORIALS: [u128; 28] = {
    let mut f = [1u128; 28];
    let mut i = 1;
    while i < 28 {
        f[i] = f[i - 1] * i as u128;
        i += 1;
    }
    f
};

fn factorial(k: usize) -> u128 {
    if k < FACTORIALS.len() {
        FACTORIALS[k]
    } else {
        u128::MAX
    }
}

/// The space of all rotation systems of a graph, indexable without
/// materialization.
///
/// At each vertex the first incident edge is pinned as the cut anchor, so a
/// vertex of degree `d` contributes a factor of `(d−1)!`; indices decompose
/// in mixed radix with vertex 0 varying fastest. Distinct indices give
/// distinct systems and every system appears exactly once.
pub struct RotationSpace<'g> {
    g: &'g Multigraph,
    radices: Vec<u128>,
    count: u128,
}

impl<'g> RotationSpace<'g> {
    pub fn new(g: &'g Multigraph) -> Self {
        let radices: Vec<u128> = (0..g.vertex_count())
            .map(|v| factorial(g.degree(v).saturating_sub(1)))
            .collect();
        let count = radices.iter().fold(1u128, |acc, &r| acc.saturating_mul(r));
        RotationSpace { g, radices, count }
    }

    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn graph(&self) -> &'g Multigraph {
        self.g
    }

    /// Materializes the system at `index` (canonical cut applied).
    pub fn rotation_at(&self, index: u64) -> RotationSystem {
        assert!((index as u128) < self.count, "rotation index out of range");
        let mut pool = Vec::new();
        let mut rest = index as u128;
        let rotations: Vec<Vec<EdgeId>> = (0..self.g.vertex_count())
            .map(|v| {
                let digit = (rest % self.radices[v]) as u64;
                rest /= self.radices[v];
                let mut rotation = Vec::with_capacity(self.g.degree(v));
                self.fill_vertex_rotation(v, digit, &mut rotation, &mut pool);
                rotation
            })
            .collect();
        RotationSystem::from_vertex_orders_unchecked(self.g, rotations)
    }

    /// Writes the σ-table of the system at `index` into `sigma` without
    /// allocating; the hot path for face-count scans.
    pub(crate) fn fill_sigma_at(
        &self,
        index: u64,
        sigma: &mut [DartId],
        scratch: &mut RotationScratch,
    ) {
        let mut rest = index as u128;
        if scratch.rotations.len() != self.g.vertex_count() {
            scratch.rotations.resize(self.g.vertex_count(), Vec::new());
        }
        for v in 0..self.g.vertex_count() {
            let digit = (rest % self.radices[v]) as u64;
            rest /= self.radices[v];
            let mut rotation = std::mem::take(&mut scratch.rotations[v]);
            self.fill_vertex_rotation(v, digit, &mut rotation, &mut scratch.pool);
            scratch.rotations[v] = rotation;
        }
        fill_sigma_table(self.g, &scratch.rotations, sigma);
    }

    /// Unranks permutation `digit` of the non-anchor incident edges at `v`
    /// (lexicographic by position), prepending the anchor, into `out`.
    fn fill_vertex_rotation(
        &self,
        v: VertexId,
        digit: u64,
        out: &mut Vec<EdgeId>,
        remaining: &mut Vec<EdgeId>,
    ) {
        out.clear();
        let inc = self.g.incident_edges(v);
        if inc.is_empty() {
            return;
        }
        out.push(inc[0]);
        remaining.clear();
        remaining.extend_from_slice(&inc[1..]);
        let mut rest = digit as u128;
        for k in (1..=remaining.len()).rev() {
            let block = factorial(k - 1);
            let pick = (rest / block) as usize;
            rest %= block;
            out.push(remaining.remove(pick));
        }
    }
}

/// Reusable buffers for face-count scans over a rotation space.
pub(crate) struct RotationScratch {
    pub(crate) sigma: Vec<DartId>,
    pub(crate) seen: Vec<bool>,
    rotations: Vec<Vec<EdgeId>>,
    pool: Vec<EdgeId>,
}

impl RotationScratch {
    pub(crate) fn new(g: &Multigraph) -> Self {
        RotationScratch {
            sigma: vec![0; 2 * g.edge_count()],
            seen: vec![false; 2 * g.edge_count()],
            rotations: vec![Vec::new(); g.vertex_count()],
            pool: Vec::new(),
        }
    }
}

/// Face count of the system at `index`, reusing `scratch`.
pub(crate) fn face_count_at(
    space: &RotationSpace,
    index: u64,
    scratch: &mut RotationScratch,
) -> usize {
    let mut sigma = std::mem::take(&mut scratch.sigma);
    space.fill_sigma_at(index, &mut sigma, scratch);
    scratch.sigma = sigma;
    count_orbits(&scratch.sigma, &mut scratch.seen)
}

/// All rotation systems of `g` in index order.
pub fn rotation_systems<'g>(
    g: &'g Multigraph,
) -> Result<impl Iterator<Item = RotationSystem> + 'g> {
    let space = RotationSpace::new(g);
    if space.count() > u64::MAX as u128 {
        return Err(Error::BudgetExceeded {
            required: space.count(),
            budget: u64::MAX,
        });
    }
    let count = space.count() as u64;
    Ok((0..count).map(move |i| space.rotation_at(i)))
}

/// Visits every edge ordering of `g` (as id sequence plus its transposition
/// product) in lexicographic id order; stops early when `f` returns `false`.
pub fn visit_edge_orderings(g: &Multigraph, mut f: impl FnMut(&[EdgeId], &Permutation) -> bool) {
    let m = g.edge_count();
    let mut used = vec![false; m];
    let mut seq = Vec::with_capacity(m);
    visit_orderings_rec(g, &mut used, &mut seq, &mut f);
}

fn visit_orderings_rec(
    g: &Multigraph,
    used: &mut [bool],
    seq: &mut Vec<EdgeId>,
    f: &mut impl FnMut(&[EdgeId], &Permutation) -> bool,
) -> bool {
    if seq.len() == used.len() {
        let pi = product_of(g, seq);
        return f(seq, &pi);
    }
    for e in 0..used.len() {
        if used[e] {
            continue;
        }
        used[e] = true;
        seq.push(e);
        let keep_going = visit_orderings_rec(g, used, seq, f);
        seq.pop();
        used[e] = false;
        if !keep_going {
            return false;
        }
    }
    true
}

fn product_of(g: &Multigraph, ids: &[EdgeId]) -> Permutation {
    let mut pi = Permutation::identity(g.vertex_count());
    for &e in ids {
        let (u, v) = g.endpoints(e);
        pi.swap_images_of(u, v);
    }
    pi
}

/// Visits every connected multigraph (no loops, parallels allowed) with at
/// most `max_edges` edges, up to edge relabeling: vertex labels are
/// `1..=n`, edges `e1..` assigned to a non-decreasing sequence of vertex
/// pairs. Every vertex-labeled isomorphism class appears exactly once.
pub fn visit_connected_multigraphs(max_edges: usize, mut f: impl FnMut(&Multigraph)) {
    f(&single_vertex_graph());
    for n in 2..=max_edges + 1 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut chosen = Vec::new();
        extend_multigraph(n, max_edges, &pairs, 0, &mut chosen, &mut f);
    }
}

/// Same, collected into a vector.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    visit_connected_multigraphs(max_edges, |g| out.push(g.clone()));
    out
}

fn single_vertex_graph() -> Multigraph {
    Multigraph::new(["1"], Vec::<(String, String, String)>::new()).unwrap()
}

fn extend_multigraph(
    n: usize,
    max_edges: usize,
    pairs: &[(usize, usize)],
    min_pair: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&Multigraph),
) {
    if chosen.len() >= n - 1 && spans_connected(n, pairs, chosen) {
        f(&graph_from_pairs(n, pairs, chosen));
    }
    if chosen.len() == max_edges {
        return;
    }
    for p in min_pair..pairs.len() {
        chosen.push(p);
        extend_multigraph(n, max_edges, pairs, p, chosen, f);
        chosen.pop();
    }
}

fn spans_connected(n: usize, pairs: &[(usize, usize)], chosen: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for &p in chosen {
        let (u, v) = pairs[p];
        let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            components -= 1;
        }
    }
    components == 1
}

fn graph_from_pairs(n: usize, pairs: &[(usize, usize)], chosen: &[usize]) -> Multigraph {
    let vertices: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    let edges: Vec<(String, String, String)> = chosen
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let (u, v) = pairs[p];
            (
                format!("e{}", i + 1),
                (u + 1).to_string(),
                (v + 1).to_string(),
            )
        })
        .collect();
    Multigraph::with_implied_vertices(vertices, edges).unwrap()
}

/// A uniform random recursive tree on `n` vertices: vertex `i` attaches to a
/// uniform earlier vertex.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Multigraph {
    assert!(n >= 1);
    let vertices: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    let edges: Vec<(String, String, String)> = (2..=n)
        .map(|i| {
            let parent = rng.random_range(1..i);
            (format!("e{}", i - 1), parent.to_string(), i.to_string())
        })
        .collect();
    Multigraph::new(vertices, edges).unwrap()
}

/// A random connected multigraph: a random tree plus uniformly chosen extra
/// edges (parallels allowed, loops never), `|E| ≤ max_edges`.
pub fn random_connected_multigraph(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_edges: usize,
) -> Multigraph {
    assert!(max_vertices >= 2 && max_edges >= 1);
    let n = rng.random_range(2..=max_vertices.min(max_edges + 1));
    let mut edges: Vec<(String, String, String)> = (2..=n)
        .map(|i| {
            let parent = rng.random_range(1..i);
            (format!("e{}", i - 1), parent.to_string(), i.to_string())
        })
        .collect();
    let extra = rng.random_range(0..=max_edges - (n - 1));
    for k in 0..extra {
        let u = rng.random_range(1..=n);
        let v = loop {
            let v = rng.random_range(1..=n);
            if v != u {
                break v;
            }
        };
        edges.push((format!("e{}", n + k), u.to_string(), v.to_string()));
    }
    let vertices: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    Multigraph::new(vertices, edges).unwrap()
}

/// A uniform random ordering of the edges of `g`.
pub fn random_ordering(rng: &mut impl Rng, g: &Multigraph) -> EdgeOrdering {
    let mut labels = g.edge_labels().to_vec();
    labels.shuffle(rng);
    EdgeOrdering::new(labels)
}

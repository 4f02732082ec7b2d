use std::collections::HashMap;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Labels may use ASCII letters, digits, `_` and `.`; `.` also appears in
/// derived labels produced by subdivision (`e.1`, `e.2`) and smoothing (`w.s`).
pub fn is_valid_label(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

/// A finite multigraph: parallel edges allowed, loops rejected.
///
/// Vertices and edges are identified by opaque string labels and mapped to
/// dense indices; the stored order (declaration / first occurrence for
/// vertices, declaration for edges) is the canonical order used whenever a
/// deterministic sweep is needed.
#[derive(Clone)]
pub struct Multigraph {
    vertex_labels: Vec<String>,
    edge_labels: Vec<String>,
    endpoints: Vec<(VertexId, VertexId)>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    incidence: Vec<Vec<EdgeId>>,
    connected: bool,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_labels == other.vertex_labels
            && self.edge_labels == other.edge_labels
            && self.endpoints == other.endpoints
    }
}
impl Eq for Multigraph {}

impl std::fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Multigraph(n={}, m={}, edges=[",
            self.vertex_count(),
            self.edge_count()
        )?;
        for e in 0..self.edge_count() {
            let (u, v) = self.endpoints[e];
            if e > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}={{{},{}}}",
                self.edge_labels[e], self.vertex_labels[u], self.vertex_labels[v]
            )?;
        }
        write!(f, "])")
    }
}

impl Multigraph {
    /// Strict constructor: every endpoint must be among `vertices`.
    pub fn new<V, E, S1, S2, S3, S4>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S1>,
        E: IntoIterator<Item = (S2, S3, S4)>,
        S1: Into<String>,
        S2: Into<String>,
        S3: Into<String>,
        S4: Into<String>,
    {
        Self::build(
            vertices.into_iter().map(Into::into).collect(),
            edges
                .into_iter()
                .map(|(l, u, v)| (l.into(), u.into(), v.into()))
                .collect(),
            false,
        )
    }

    /// Lenient constructor: endpoints missing from `vertices` are appended in
    /// first-occurrence order. This is what the text format uses.
    pub fn with_implied_vertices(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Self> {
        Self::build(vertices, edges, true)
    }

    /// Convenience for literals: vertices implied from the edge list.
    pub fn from_edges(edges: &[(&str, &str, &str)]) -> Result<Self> {
        Self::build(
            Vec::new(),
            edges
                .iter()
                .map(|&(l, u, v)| (l.to_string(), u.to_string(), v.to_string()))
                .collect(),
            true,
        )
    }

    fn build(
        declared: Vec<String>,
        edges: Vec<(String, String, String)>,
        imply_vertices: bool,
    ) -> Result<Self> {
        let mut vertex_labels: Vec<String> = Vec::new();
        let mut vertex_index: HashMap<String, VertexId> = HashMap::new();
        for label in declared {
            if !is_valid_label(&label) {
                return Err(Error::InvalidLabel(label));
            }
            if vertex_index
                .insert(label.clone(), vertex_labels.len())
                .is_some()
            {
                return Err(Error::DuplicateLabel(label));
            }
            vertex_labels.push(label);
        }

        let mut edge_labels: Vec<String> = Vec::new();
        let mut edge_index: HashMap<String, EdgeId> = HashMap::new();
        let mut endpoints: Vec<(VertexId, VertexId)> = Vec::new();
        for (label, u, v) in edges {
            if !is_valid_label(&label) {
                return Err(Error::InvalidLabel(label));
            }
            if u == v {
                return Err(Error::LoopEdge {
                    edge: label,
                    vertex: u,
                });
            }
            let mut resolve = |name: String, edge: &str| -> Result<VertexId> {
                if let Some(&i) = vertex_index.get(&name) {
                    return Ok(i);
                }
                if !imply_vertices {
                    return Err(Error::DanglingEndpoint {
                        edge: edge.to_string(),
                        vertex: name,
                    });
                }
                if !is_valid_label(&name) {
                    return Err(Error::InvalidLabel(name));
                }
                let id = vertex_labels.len();
                vertex_index.insert(name.clone(), id);
                vertex_labels.push(name);
                Ok(id)
            };
            let ui = resolve(u, &label)?;
            let vi = resolve(v, &label)?;
            if edge_index
                .insert(label.clone(), edge_labels.len())
                .is_some()
            {
                return Err(Error::DuplicateLabel(label));
            }
            edge_labels.push(label);
            endpoints.push((ui, vi));
        }

        if vertex_labels.is_empty() {
            return Err(Error::EmptyVertexSet);
        }

        let mut incidence = vec![Vec::new(); vertex_labels.len()];
        for (e, &(u, v)) in endpoints.iter().enumerate() {
            incidence[u].push(e);
            incidence[v].push(e);
        }

        let connected = {
            let mut dsu = Dsu::new(vertex_labels.len());
            for &(u, v) in &endpoints {
                dsu.union(u, v);
            }
            dsu.component_count() == 1
        };

        Ok(Multigraph {
            vertex_labels,
            edge_labels,
            endpoints,
            vertex_index,
            edge_index,
            incidence,
            connected,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertex_labels[v]
    }

    pub fn edge_label(&self, e: EdgeId) -> &str {
        &self.edge_labels[e]
    }

    pub fn vertex_id(&self, label: &str) -> Result<VertexId> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edge_id(&self, label: &str) -> Result<EdgeId> {
        self.edge_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(label.to_string()))
    }

    /// Endpoints in stored orientation.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.endpoints[e]
    }

    /// Given one endpoint of `e`, the other one.
    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.endpoints[e];
        debug_assert!(v == a || v == b);
        if v == a {
            b
        } else {
            a
        }
    }

    /// Incident edges of `v` in edge-index order.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    fn require_connected(&self) -> Result<()> {
        if self.connected {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// The circuit rank β = |E| − |V| + 1.
    pub fn betti(&self) -> Result<usize> {
        self.require_connected()?;
        Ok(self.edge_count() + 1 - self.vertex_count())
    }

    /// First pair of parallel edges by index, if any.
    pub fn parallel_pair(&self) -> Option<(EdgeId, EdgeId)> {
        let mut seen: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
        for (e, &(u, v)) in self.endpoints.iter().enumerate() {
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen.get(&key) {
                return Some((first, e));
            }
            seen.insert(key, e);
        }
        None
    }

    pub fn is_simple(&self) -> bool {
        self.parallel_pair().is_none()
    }

    /// Replaces edge `e = {u,v}` by a path `u — w — v`; the two new edges are
    /// labeled `<e>.1` (at `u`) and `<e>.2` (at `v`) and take `e`'s position
    /// in the edge order.
    pub fn subdivide_edge(&self, e: &str, w: &str) -> Result<Multigraph> {
        let eid = self.edge_id(e)?;
        if !is_valid_label(w) {
            return Err(Error::InvalidLabel(w.to_string()));
        }
        if self.vertex_index.contains_key(w) {
            return Err(Error::VertexLabelCollision(w.to_string()));
        }
        let (u, v) = self.endpoints[eid];
        let half1 = format!("{e}.1");
        let half2 = format!("{e}.2");

        let vertices: Vec<String> = self
            .vertex_labels
            .iter()
            .cloned()
            .chain(std::iter::once(w.to_string()))
            .collect();
        let mut edges: Vec<(String, String, String)> = Vec::with_capacity(self.edge_count() + 1);
        for (i, label) in self.edge_labels.iter().enumerate() {
            if i == eid {
                edges.push((half1.clone(), self.vertex_labels[u].clone(), w.to_string()));
                edges.push((half2.clone(), self.vertex_labels[v].clone(), w.to_string()));
            } else {
                let (a, b) = self.endpoints[i];
                edges.push((
                    label.clone(),
                    self.vertex_labels[a].clone(),
                    self.vertex_labels[b].clone(),
                ));
            }
        }
        Self::build(vertices, edges, false)
    }

    /// Removes a degree-2 vertex `w`, merging its two incident edges into one
    /// labeled `<w>.s`, placed at the earlier incident edge's position.
    pub fn smooth_vertex(&self, w: &str) -> Result<Multigraph> {
        let wid = self.vertex_id(w)?;
        let incident = &self.incidence[wid];
        if incident.len() != 2 {
            return Err(Error::DegreeNotTwo {
                vertex: w.to_string(),
                degree: incident.len(),
            });
        }
        let (f1, f2) = (incident[0], incident[1]);
        let u = self.other_endpoint(f1, wid);
        let v = self.other_endpoint(f2, wid);
        if u == v {
            return Err(Error::WouldCreateLoop(w.to_string()));
        }
        let merged = format!("{w}.s");

        let vertices: Vec<String> = self
            .vertex_labels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != wid)
            .map(|(_, l)| l.clone())
            .collect();
        let mut edges: Vec<(String, String, String)> = Vec::with_capacity(self.edge_count() - 1);
        for (i, label) in self.edge_labels.iter().enumerate() {
            if i == f1 {
                edges.push((
                    merged.clone(),
                    self.vertex_labels[u].clone(),
                    self.vertex_labels[v].clone(),
                ));
            } else if i == f2 {
                continue;
            } else {
                let (a, b) = self.endpoints[i];
                edges.push((
                    label.clone(),
                    self.vertex_labels[a].clone(),
                    self.vertex_labels[b].clone(),
                ));
            }
        }
        Self::build(vertices, edges, false)
    }

    /// True when the two graphs have the same vertex labels and the same
    /// multiset of endpoint pairs, i.e. they differ only in edge labels.
    pub fn same_up_to_edge_relabeling(&self, other: &Multigraph) -> bool {
        let mut mine: Vec<&str> = self.vertex_labels.iter().map(String::as_str).collect();
        let mut theirs: Vec<&str> = other.vertex_labels.iter().map(String::as_str).collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return false;
        }
        let pairs = |g: &Multigraph| -> Vec<(String, String)> {
            let mut out: Vec<(String, String)> = (0..g.edge_count())
                .map(|e| {
                    let (u, v) = g.endpoints(e);
                    let (a, b) = (g.vertex_label(u), g.vertex_label(v));
                    if a <= b {
                        (a.to_string(), b.to_string())
                    } else {
                        (b.to_string(), a.to_string())
                    }
                })
                .collect();
            out.sort();
            out
        };
        pairs(self) == pairs(other)
    }

    /// Calls `f` with each spanning tree (as a sorted edge-id slice) in
    /// lexicographic order of edge-id sequences; `f` returns `false` to stop.
    pub fn visit_spanning_trees(&self, mut f: impl FnMut(&[EdgeId]) -> bool) -> Result<()> {
        self.require_connected()?;
        let n = self.vertex_count();
        let m = self.edge_count();
        if n == 1 {
            f(&[]);
            return Ok(());
        }
        let mut chosen: Vec<EdgeId> = Vec::with_capacity(n - 1);
        let mut dsu = RollbackDsu::new(n);
        visit_trees_rec(self, 0, n - 1, m, &mut chosen, &mut dsu, &mut f);
        Ok(())
    }

    /// All spanning trees, in deterministic (lexicographic) order.
    pub fn spanning_trees(&self) -> Result<Vec<SpanningTree>> {
        let mut out = Vec::new();
        self.visit_spanning_trees(|edges| {
            out.push(SpanningTree {
                edges: edges.iter().map(|&e| self.edge_labels[e].clone()).collect(),
            });
            true
        })?;
        Ok(out)
    }

    pub(crate) fn check_spanning_tree(&self, t: &SpanningTree) -> Result<Vec<EdgeId>> {
        let n = self.vertex_count();
        if t.edges.len() + 1 != n {
            return Err(Error::NotASpanningTree(format!(
                "{} edges for {} vertices",
                t.edges.len(),
                n
            )));
        }
        let mut ids = Vec::with_capacity(t.edges.len());
        let mut dsu = Dsu::new(n);
        for label in &t.edges {
            let e = self
                .edge_id(label)
                .map_err(|_| Error::NotASpanningTree(format!("unknown edge `{label}`")))?;
            if ids.contains(&e) {
                return Err(Error::NotASpanningTree(format!("edge `{label}` repeated")));
            }
            let (u, v) = self.endpoints[e];
            if !dsu.union(u, v) {
                return Err(Error::NotASpanningTree(format!(
                    "edge `{label}` closes a cycle"
                )));
            }
            ids.push(e);
        }
        // n-1 acyclic edges on n vertices always span
        ids.sort_unstable();
        Ok(ids)
    }

    /// Connected components of the co-tree subgraph (the graph formed by the
    /// non-tree edges and their endpoints). Components are ordered by their
    /// smallest edge id; edges within a component likewise.
    pub fn cotree_components(&self, t: &SpanningTree) -> Result<Vec<EdgeSubset>> {
        let tree_ids = self.check_spanning_tree(t)?;
        let cotree: Vec<EdgeId> = (0..self.edge_count())
            .filter(|e| !tree_ids.contains(e))
            .collect();
        let mut dsu = Dsu::new(self.vertex_count());
        for &e in &cotree {
            let (u, v) = self.endpoints[e];
            dsu.union(u, v);
        }
        let mut by_root: Vec<(VertexId, Vec<EdgeId>)> = Vec::new();
        for &e in &cotree {
            let root = dsu.find(self.endpoints[e].0);
            match by_root.iter_mut().find(|(r, _)| *r == root) {
                Some((_, edges)) => edges.push(e),
                None => by_root.push((root, vec![e])),
            }
        }
        Ok(by_root
            .into_iter()
            .map(|(_, edges)| EdgeSubset {
                edges: edges.iter().map(|&e| self.edge_labels[e].clone()).collect(),
            })
            .collect())
    }

    /// Number of odd-size co-tree edge components for a tree given as a
    /// sorted edge-id slice; the hot path of the spanning-tree scan.
    pub(crate) fn cotree_odd_components(&self, tree: &[EdgeId]) -> usize {
        let mut dsu = Dsu::new(self.vertex_count());
        for e in 0..self.edge_count() {
            if tree.binary_search(&e).is_err() {
                let (u, v) = self.endpoints[e];
                dsu.union(u, v);
            }
        }
        let mut sizes = vec![0usize; self.vertex_count()];
        for e in 0..self.edge_count() {
            if tree.binary_search(&e).is_err() {
                sizes[dsu.find(self.endpoints[e].0)] += 1;
            }
        }
        sizes.iter().filter(|&&s| s % 2 == 1).count()
    }
}

fn visit_trees_rec(
    g: &Multigraph,
    next_edge: EdgeId,
    still_needed: usize,
    m: usize,
    chosen: &mut Vec<EdgeId>,
    dsu: &mut RollbackDsu,
    f: &mut impl FnMut(&[EdgeId]) -> bool,
) -> bool {
    if still_needed == 0 {
        return f(chosen);
    }
    if m - next_edge < still_needed {
        return true;
    }
    for e in next_edge..m {
        if m - e < still_needed {
            break;
        }
        let (u, v) = g.endpoints(e);
        if !dsu.union(u, v) {
            continue;
        }
        chosen.push(e);
        let keep_going = visit_trees_rec(g, e + 1, still_needed - 1, m, chosen, dsu, f);
        chosen.pop();
        dsu.undo();
        if !keep_going {
            return false;
        }
    }
    true
}

/// A spanning tree of some multigraph, held as sorted edge labels. Operations
/// that consume one re-validate it against the graph they are given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    edges: Vec<String>,
}

impl SpanningTree {
    pub fn from_labels(edges: impl IntoIterator<Item = impl Into<String>>) -> Self {
        let mut edges: Vec<String> = edges.into_iter().map(Into::into).collect();
        edges.sort();
        SpanningTree { edges }
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSubset {
    edges: Vec<String>,
}

impl EdgeSubset {
    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Plain union-find with path compression.
struct Dsu {
    parent: Vec<usize>,
    components: usize,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }

    fn component_count(&self) -> usize {
        self.components
    }
}

/// Union-find without path compression so unions can be undone; used by the
/// spanning-tree backtracking enumeration.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>, // (absorbed root, absorbing root)
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] > self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[ra] = rb;
        self.size[rb] += self.size[ra];
        self.history.push((ra, rb));
        true
    }

    fn undo(&mut self) {
        let (ra, rb) = self.history.pop().expect("undo without matching union");
        self.parent[ra] = ra;
        self.size[rb] -= self.size[ra];
    }
}

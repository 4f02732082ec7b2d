use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph};
use crate::perm::Permutation;

/// A linear order on the edges of some multigraph, held as edge labels.
/// Operations that consume one validate it against the graph they are given:
/// it must list every edge exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrdering {
    sequence: Vec<String>,
}

impl EdgeOrdering {
    pub fn new(sequence: Vec<String>) -> Self {
        EdgeOrdering { sequence }
    }

    pub fn from_labels(labels: &[&str]) -> Self {
        EdgeOrdering {
            sequence: labels.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// All edges of `g` in its stored (file) order.
    pub fn graph_order(g: &Multigraph) -> Self {
        EdgeOrdering {
            sequence: g.edge_labels().to_vec(),
        }
    }

    /// Labels the given id sequence against `g`.
    pub fn from_edge_ids(g: &Multigraph, ids: &[EdgeId]) -> Self {
        EdgeOrdering {
            sequence: ids.iter().map(|&e| g.edge_label(e).to_string()).collect(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Edge ids in ordering sequence, checking the exactly-once invariant.
    pub(crate) fn resolve(&self, g: &Multigraph) -> Result<Vec<EdgeId>> {
        if self.sequence.len() != g.edge_count() {
            return Err(Error::InvalidOrdering(format!(
                "{} edges listed, graph has {}",
                self.sequence.len(),
                g.edge_count()
            )));
        }
        let mut ids = Vec::with_capacity(self.sequence.len());
        let mut seen = vec![false; g.edge_count()];
        for label in &self.sequence {
            let e = g
                .edge_id(label)
                .map_err(|_| Error::InvalidOrdering(format!("unknown edge `{label}`")))?;
            if seen[e] {
                return Err(Error::InvalidOrdering(format!("edge `{label}` repeated")));
            }
            seen[e] = true;
            ids.push(e);
        }
        Ok(ids)
    }

    /// `(e_2, …, e_m, e_1)`: the product's cycle type is invariant under this.
    pub fn circular_shift(&self) -> Result<EdgeOrdering> {
        if self.sequence.is_empty() {
            return Err(Error::EmptyOrdering);
        }
        let mut sequence = self.sequence[1..].to_vec();
        sequence.push(self.sequence[0].clone());
        Ok(EdgeOrdering { sequence })
    }
}

/// The transposition swapping the endpoints of `e`.
pub fn transposition_of_edge(g: &Multigraph, e: &str) -> Result<Permutation> {
    let eid = g.edge_id(e)?;
    let (u, v) = g.endpoints(eid);
    Ok(Permutation::transposition(g.vertex_count(), u, v))
}

/// The product of endpoint transpositions over `ids`, first edge applied first.
pub(crate) fn permutation_of_edge_ids(g: &Multigraph, ids: &[EdgeId]) -> Permutation {
    // Build incrementally: appending edge e means composing tau_e on the left,
    // which swaps the two table positions that currently map to e's endpoints.
    let n = g.vertex_count();
    let mut images: Vec<usize> = (0..n).collect();
    let mut preimage: Vec<usize> = (0..n).collect();
    for &e in ids {
        let (u, v) = g.endpoints(e);
        let (pu, pv) = (preimage[u], preimage[v]);
        images.swap(pu, pv);
        preimage.swap(u, v);
    }
    Permutation::from_images(images).expect("transposition products are bijections")
}

/// The permutation of the ordering: edges applied first-to-last.
pub fn permutation_of_ordering(g: &Multigraph, ordering: &EdgeOrdering) -> Result<Permutation> {
    Ok(permutation_of_edge_ids(g, &ordering.resolve(g)?))
}

/// ℓ: the number of orbits of the ordering's permutation on the vertex set,
/// fixed points included.
pub fn orbit_count_of_ordering(g: &Multigraph, ordering: &EdgeOrdering) -> Result<usize> {
    Ok(permutation_of_ordering(g, ordering)?.orbit_count())
}

/// True iff the ordering's permutation is a single cycle through all vertices.
pub fn is_full_cyclic_ordering(g: &Multigraph, ordering: &EdgeOrdering) -> Result<bool> {
    Ok(permutation_of_ordering(g, ordering)?.is_full_cycle())
}

/// True iff the ordering's permutation is the identity.
pub fn is_identity_ordering(g: &Multigraph, ordering: &EdgeOrdering) -> Result<bool> {
    Ok(permutation_of_ordering(g, ordering)?.is_identity())
}

/// Subdivides `e` through a new vertex `w` and extends the ordering so the
/// orbit count is preserved: shift `e` to the front, then replace it by its
/// two halves, `<e>.1` (at `e`'s first endpoint) first.
pub fn subdivide_ordering(
    g: &Multigraph,
    ordering: &EdgeOrdering,
    e: &str,
    w: &str,
) -> Result<(Multigraph, EdgeOrdering)> {
    ordering.resolve(g)?;
    let subdivided = g.subdivide_edge(e, w)?;
    let pos = ordering
        .sequence
        .iter()
        .position(|l| l == e)
        .expect("resolve checked coverage");
    let mut sequence = Vec::with_capacity(ordering.len() + 1);
    sequence.push(format!("{e}.1"));
    sequence.push(format!("{e}.2"));
    sequence.extend(ordering.sequence[pos + 1..].iter().cloned());
    sequence.extend(ordering.sequence[..pos].iter().cloned());
    let new_ordering = EdgeOrdering { sequence };
    debug_assert_eq!(
        orbit_count_of_ordering(&subdivided, &new_ordering).unwrap(),
        orbit_count_of_ordering(g, ordering).unwrap(),
    );
    Ok((subdivided, new_ordering))
}

/// Smooths the degree-2 vertex `w` and contracts the ordering so the orbit
/// count is preserved. The two `w`-incident edges are removed and the merged
/// edge `<w>.s` takes a slot in the cyclic order; the natural slot (that of
/// the first incident edge, with the ordering shifted so the merged edge
/// leads) almost always preserves the count, but bundle-heavy graphs can
/// defeat it, so the slot is the first in a deterministic sweep that does.
///
/// Requires the ordering's permutation to be fixed-point-free; otherwise no
/// slot is guaranteed to exist and the operation refuses.
pub fn smooth_ordering(
    g: &Multigraph,
    ordering: &EdgeOrdering,
    w: &str,
) -> Result<(Multigraph, EdgeOrdering)> {
    let ids = ordering.resolve(g)?;
    let smoothed = g.smooth_vertex(w)?;
    let pi = permutation_of_edge_ids(g, &ids);
    if let Some(v) = pi.fixed_points().next() {
        return Err(Error::FixedPointPrecondition(g.vertex_label(v).to_string()));
    }
    let wid = g.vertex_id(w)?;
    let positions: Vec<usize> = (0..ordering.len())
        .filter(|&i| {
            let (a, b) = g.endpoints(ids[i]);
            a == wid || b == wid
        })
        .collect();
    debug_assert_eq!(positions.len(), 2, "smooth_vertex checked the degree");
    let (first, second) = (positions[0], positions[1]);
    // The remaining edges in cyclic order starting just after `first`.
    let rest: Vec<&String> = (first + 1..ordering.len())
        .chain(0..first)
        .filter(|&i| i != second)
        .map(|i| &ordering.sequence[i])
        .collect();
    // Candidate slots for the merged edge, as offsets into `rest`: 0 puts
    // it where the first incident edge was, `second - first - 1` where the
    // second was; sweep the others as a fallback.
    let gap = second - first - 1;
    let mut slots = vec![0];
    for j in std::iter::once(gap).chain(1..rest.len()) {
        if !slots.contains(&j) && j < rest.len().max(1) {
            slots.push(j);
        }
    }
    for j in slots {
        let mut sequence = Vec::with_capacity(rest.len() + 1);
        sequence.push(format!("{w}.s"));
        sequence.extend(rest[j..].iter().chain(&rest[..j]).map(|l| (*l).clone()));
        let candidate = EdgeOrdering { sequence };
        if orbit_count_of_ordering(&smoothed, &candidate)? == pi.orbit_count() {
            return Ok((smoothed, candidate));
        }
    }
    Err(Error::InternalVerificationFailure(format!(
        "no merged-edge slot preserves the orbit count when smoothing {w}"
    )))
}

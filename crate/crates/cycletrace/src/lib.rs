//! Connected multigraphs, edge orderings, and the permutation each ordering
//! multiplies out to: every edge `{u, v}` contributes the transposition
//! `(u v)`, composed in ordering sequence. The number of vertex orbits of
//! that product equals the number of faces of the 2-cell embedding the
//! ordering induces, which turns questions about the product — is it a full
//! cycle? is it the identity? — into questions about embeddings, maximum
//! genus, and spanning-tree structure. This crate computes both sides of
//! that correspondence and the searches built on it.
//!
//! Brute-force scans over rotation systems run data-parallel under the
//! `parallel` feature (on by default) and sequentially without it; results
//! are identical either way.
//!
//! ```
//! use cycletrace::{
//!     fixtures, genus_of, permutation_of_ordering, rotation_from_ordering, trace_faces,
//!     EdgeOrdering,
//! };
//!
//! let g = fixtures::butterfly();
//! let w = EdgeOrdering::new(["e1", "e2", "e3", "e4", "e5", "e6"].map(String::from).to_vec());
//! let pi = permutation_of_ordering(&g, &w)?;
//! assert_eq!(pi.to_string(), "(1 3 2 5 4)");
//! assert!(pi.is_full_cycle());
//!
//! let rho = rotation_from_ordering(&g, &w)?;
//! assert_eq!(pi.orbit_count(), trace_faces(&g, &rho)?.face_count());
//! assert_eq!(genus_of(&g, &rho)?, 1);
//! # Ok::<(), cycletrace::Error>(())
//! ```

pub mod eden;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod ordering;
pub mod perm;
pub mod rotation;
pub mod search;

pub use eden::{
    check_eden_conditions, find_identity_ordering, find_identity_ordering_seq,
    identity_ordering_feasible, verify_eden12_fixture, ClosedTrail, Eden12Report, EdenReport,
};
pub use enumerate::{
    connected_multigraphs, random_connected_multigraph, random_ordering, random_tree,
    rotation_systems, visit_connected_multigraphs, visit_edge_orderings, RotationSpace,
};
pub use error::{Error, Result};
pub use format::{
    parse_graph, parse_ordering, parse_rotation, write_graph, write_ordering, write_rotation,
};
pub use graph::{EdgeId, EdgeSubset, Multigraph, SpanningTree, VertexId};
pub use ordering::{
    is_full_cyclic_ordering, is_identity_ordering, orbit_count_of_ordering,
    permutation_of_ordering, smooth_ordering, subdivide_ordering, transposition_of_edge,
    EdgeOrdering,
};
pub use perm::Permutation;
pub use rotation::{
    alpha, darts, genus_of, orbit_face_correspondence, orderable, phi, rotation_from_ordering,
    sigma, trace_faces, Dart, FaceTrace, OrbitFaceMap, OrbitFacePair, RotationSystem,
};
pub use search::{
    construct_fcp_ordering, construct_fcp_ordering_traced, has_fcp_ordering, is_upper_embeddable,
    max_genus_bruteforce, max_genus_bruteforce_seq, Budget, FcpConstruction, MaxGenusResult,
    SmoothingStep,
};

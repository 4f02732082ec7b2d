//! Built-in example graphs, embedded so they are addressable by name from
//! the CLI (`@butterfly`) and usable in tests without touching the
//! filesystem.

use crate::format;
use crate::graph::Multigraph;

pub const NAMES: [&str; 6] = ["butterfly", "dumbbell", "dipole", "k4", "eden12", "path3"];

/// Raw fixture text by name.
pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "butterfly" => Some(include_str!("../fixtures/butterfly.g")),
        "dumbbell" => Some(include_str!("../fixtures/dumbbell.g")),
        "dipole" => Some(include_str!("../fixtures/dipole.g")),
        "k4" => Some(include_str!("../fixtures/k4.g")),
        "eden12" => Some(include_str!("../fixtures/eden12.g")),
        "path3" => Some(include_str!("../fixtures/path3.g")),
        _ => None,
    }
}

pub fn by_name(name: &str) -> Option<Multigraph> {
    source(name).map(|text| format::parse_graph(text).expect("fixtures are well-formed"))
}

fn load(name: &str) -> Multigraph {
    by_name(name).expect("known fixture")
}

/// Two triangles sharing one vertex; β = 2.
pub fn butterfly() -> Multigraph {
    load("butterfly")
}

/// Two vertex-disjoint triangles joined by a bridge; β = 2.
pub fn dumbbell() -> Multigraph {
    load("dumbbell")
}

/// Two vertices with two parallel edges; the smallest graph with an
/// identity permutation ordering.
pub fn dipole() -> Multigraph {
    load("dipole")
}

/// Complete graph on 4 vertices; its file order is an identity permutation
/// ordering.
pub fn k4() -> Multigraph {
    load("k4")
}

/// 12 vertices, 20 edges: passes the closed-trail conditions yet has no
/// identity permutation ordering.
pub fn eden12() -> Multigraph {
    load("eden12")
}

/// Path on 3 vertices.
pub fn path3() -> Multigraph {
    load("path3")
}

/// The reference closed-trail map for `eden12`: one vertex walk per vertex,
/// each written as the cyclic vertex sequence returning to its start.
pub fn eden12_trail_walks() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("v1", vec!["v1", "v2", "v10", "v1"]),
        ("v2", vec!["v2", "v9", "v10", "v2"]),
        ("v3", vec!["v3", "v10", "v4", "v3"]),
        ("v4", vec!["v4", "v10", "v11", "v4"]),
        ("v5", vec!["v5", "v6", "v12", "v5"]),
        ("v6", vec!["v6", "v9", "v12", "v6"]),
        ("v7", vec!["v7", "v8", "v12", "v7"]),
        ("v8", vec!["v8", "v11", "v12", "v8"]),
        ("v9", vec!["v9", "v2", "v1", "v10", "v9"]),
        ("v10", vec!["v10", "v3", "v4", "v11", "v10"]),
        ("v11", vec!["v11", "v8", "v7", "v12", "v11"]),
        ("v12", vec!["v12", "v5", "v6", "v9", "v12"]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse_and_are_connected() {
        for name in NAMES {
            let g = by_name(name).unwrap();
            assert!(g.is_connected(), "{name} should be connected");
        }
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn fixture_shapes() {
        let cases = [
            ("butterfly", 5, 6, 2),
            ("dumbbell", 6, 7, 2),
            ("dipole", 2, 2, 1),
            ("k4", 4, 6, 3),
            ("eden12", 12, 20, 9),
            ("path3", 3, 2, 0),
        ];
        for (name, n, m, betti) in cases {
            let g = by_name(name).unwrap();
            assert_eq!(g.vertex_count(), n, "{name} vertices");
            assert_eq!(g.edge_count(), m, "{name} edges");
            assert_eq!(g.betti().unwrap(), betti, "{name} betti");
        }
    }

    #[test]
    fn eden12_degree_sequence() {
        let g = eden12();
        let mut degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, [2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 6, 6]);
        assert!(g.is_simple());
    }
}

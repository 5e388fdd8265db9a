//! Bundled reference graphs.

use crate::graph::{Graph, Indexing};

/// The Zachary karate-club friendship network as shipped: 34 actors,
/// 78 ties, one-based ids.
pub const KARATE_EDGE_LIST: &str = include_str!("../data/karate.edges");

/// The karate-club graph with labels `"1"`–`"34"`.
pub fn karate() -> Graph {
    Graph::parse_edge_list(KARATE_EDGE_LIST, Indexing::OneBased)
        .expect("bundled karate edge list parses")
}

/// A connected 3-regular graph on 8 vertices whose only triangle is
/// `{0, 1, 2}`. Degree-based measures are constant on it, which makes it a
/// clean probe for measures that can still discriminate vertices.
pub fn one_triangle_cubic8() -> Graph {
    Graph::from_edges(
        8,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (0, 3),
            (1, 4),
            (2, 5),
            (3, 6),
            (4, 6),
            (5, 6),
            (3, 7),
            (4, 7),
            (5, 7),
        ],
    )
}

//! Fixture graphs for the benchmarks.

use beid_core::census::{generate, GraphClass};
use beid_core::dsl::{elaborate, parse_expr};
use beid_core::Graph;

/// Graph built from a block expression; panics on invalid input since fixtures are fixed.
pub fn from_expr(text: &str) -> Graph {
    elaborate(&parse_expr(text).expect("fixture parses"))
        .expect("fixture elaborates")
        .graph
}

/// Certified graphs of increasing size, labelled for reporting.
pub fn certified_fixtures() -> Vec<(&'static str, Graph)> {
    [
        "F6",
        "F3 o F4 o F3",
        "F4 * F4 * F4",
        "F3 o F3 o F3 * F3 o F3 o F3",
        "F6 * F6 * F6",
    ]
    .into_iter()
    .map(|e| (e, from_expr(e)))
    .collect()
}

/// All connected bipartite graphs on `n` vertices up to isomorphism.
pub fn bipartite_level(n: usize) -> Vec<Graph> {
    generate(n, GraphClass::ConnectedBipartite)
}

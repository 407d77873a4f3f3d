//! Small named graphs used throughout the tests, the self-test and the docs.

use crate::graph::Graph;
use crate::ladder::LadderGraph;

/// One vertex `v` with a loop `e`.
pub fn loop_graph() -> Graph {
    Graph::from_triples(&["v"], &[("e", "v", "v")])
}

/// One vertex `v` with two loops `e`, `f`.
pub fn l2() -> Graph {
    Graph::from_triples(&["v"], &[("e", "v", "v"), ("f", "v", "v")])
}

/// Two-cycle: `e1: b → a`, `e2: a → b` (written `r(e1) = a`, `s(e1) = b`).
pub fn c2() -> Graph {
    Graph::from_triples(&["a", "b"], &[("e1", "a", "b"), ("e2", "b", "a")])
}

/// `e` with `r(e) = v`, `s(e) = w`; `w` is a source.
pub fn chain() -> Graph {
    Graph::from_triples(&["v", "w"], &[("e", "v", "w")])
}

/// `b_j = max(0, slope·j + offset)`.
pub fn ladder(slope: i64, offset: i64) -> LadderGraph {
    LadderGraph { table: Vec::new(), slope, offset }
}

pub fn by_name(name: &str) -> Option<Graph> {
    match name {
        "loop" => Some(loop_graph()),
        "l2" => Some(l2()),
        "c2" => Some(c2()),
        "chain" => Some(chain()),
        _ => None,
    }
}

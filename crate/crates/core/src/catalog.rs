//! Small named graphs and maps used throughout the examples and tests.

use crate::cantor::DomainSpace;
use crate::endo::CantorMap;
use crate::sft::DirectedGraph;

fn graph(names: &[&str], edges: &[(&str, &str)]) -> DirectedGraph {
    DirectedGraph::new(names.iter().copied(), edges.iter().copied()).expect("catalog graph")
}

/// Full shift on `{a, b}`.
pub fn full_shift() -> DirectedGraph {
    DirectedGraph::complete(["a", "b"])
}

/// Full shift on the symbols `0` and `1`.
pub fn full_shift_01() -> DirectedGraph {
    DirectedGraph::complete(["0", "1"])
}

/// Loop at `a`, edges `a -> b -> a`.
pub fn golden_mean() -> DirectedGraph {
    graph(&["a", "b"], &[("a", "a"), ("a", "b"), ("b", "a")])
}

/// `a -> b -> a`, no loops.
pub fn two_cycle() -> DirectedGraph {
    graph(&["a", "b"], &[("a", "b"), ("b", "a")])
}

pub fn single_loop() -> DirectedGraph {
    graph(&["a"], &[("a", "a")])
}

/// A 2-cycle `a b` and a 3-cycle `a c d` sharing the vertex `a`.
pub fn two_three_cycles() -> DirectedGraph {
    graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "a"), ("a", "c"), ("c", "d"), ("d", "a")])
}

/// Full shift on three symbols.
pub fn full_shift_3() -> DirectedGraph {
    DirectedGraph::complete(["a", "b", "c"])
}

/// Loop at `a` and the cycle `a -> b -> c -> a`: mixing, with a fixed point.
pub fn loop_and_triangle() -> DirectedGraph {
    graph(&["a", "b", "c"], &[("a", "a"), ("a", "b"), ("b", "c"), ("c", "a")])
}

/// `a <-> b`, `a <-> c`: irreducible of period 2, perfect, not mixing.
pub fn bipartite_star() -> DirectedGraph {
    graph(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("a", "c"), ("c", "a")])
}

/// Loop at `a` plus a cycle of length `len + 1` through `a`. Low entropy, so
/// exhaustive scans stay affordable at large window lengths.
pub fn loop_with_cycle(len: usize) -> DirectedGraph {
    let names: Vec<String> =
        std::iter::once("a".to_string()).chain((1..=len).map(|i| format!("c{i}"))).collect();
    let mut edges = vec![(names[0].clone(), names[0].clone()), (names[0].clone(), names[1].clone())];
    for i in 1..len {
        edges.push((names[i].clone(), names[i + 1].clone()));
    }
    edges.push((names[len].clone(), names[0].clone()));
    DirectedGraph::new(names.clone(), edges).expect("catalog graph")
}

pub fn full_space() -> DomainSpace {
    DomainSpace::new(full_shift()).expect("catalog space")
}

pub fn golden_space() -> DomainSpace {
    DomainSpace::new(golden_mean()).expect("catalog space")
}

/// The shift `x -> σx` on the full binary space.
pub fn full_shift_map() -> CantorMap {
    CantorMap::shift(full_space())
}

pub fn identity_map() -> CantorMap {
    CantorMap::identity(full_space())
}

/// Window-one rule: `a` when the two symbols agree, `b` otherwise.
pub fn agreement_map() -> CantorMap {
    CantorMap::from_fn(full_space(), 1, |w| if w[0] == w[1] { 0 } else { 1 }).expect("catalog map")
}

/// The shift with the windows starting `bb` redirected to `a`.
pub fn bb_twisted_shift() -> CantorMap {
    CantorMap::from_fn(full_space(), 1, |w| if w == [1, 1] { 0 } else { w[1] }).expect("catalog map")
}

/// Constant rule `a`.
pub fn constant_map() -> CantorMap {
    CantorMap::from_fn(full_space(), 0, |_| 0).expect("catalog map")
}

/// The shift on the golden-mean space.
pub fn golden_shift_map() -> CantorMap {
    CantorMap::shift(golden_space())
}

/// The shift on the space of the 2-cycle and 3-cycle sharing a vertex.
pub fn two_three_shift_map() -> CantorMap {
    CantorMap::shift(DomainSpace::new(two_three_cycles()).expect("catalog space"))
}

/// Every built-in map on the full binary space.
pub fn binary_maps() -> Vec<(&'static str, CantorMap)> {
    vec![
        ("shift", full_shift_map()),
        ("identity", identity_map()),
        ("agreement", agreement_map()),
        ("bb-twisted", bb_twisted_shift()),
        ("constant", constant_map()),
    ]
}

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DirectedGraph, Symbol};
use crate::error::{Error, Result};
use crate::point::EventuallyPeriodicPoint;
use crate::words::{is_primitive, least_rotation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MixingObstruction {
    /// No path of positive length from `from` to `to`.
    Unreachable { from: String, to: String },
    /// Every path from `from` to `to` has length congruent to `residue`
    /// modulo `period`.
    Periodic { from: String, to: String, period: usize, residue: usize },
}

impl fmt::Display for MixingObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixingObstruction::Unreachable { from, to } => write!(f, "no path from {from} to {to}"),
            MixingObstruction::Periodic { from, to, period, residue } => write!(
                f,
                "paths from {from} to {to} only have lengths = {residue} mod {period}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MixingVerdict {
    /// `B^n` is all-ones exactly for `n >= constant`.
    Mixing { constant: usize },
    NotMixing { obstruction: MixingObstruction },
}

impl MixingVerdict {
    pub fn constant(&self) -> Option<usize> {
        match self {
            MixingVerdict::Mixing { constant } => Some(*constant),
            MixingVerdict::NotMixing { .. } => None,
        }
    }

    pub fn is_mixing(&self) -> bool {
        self.constant().is_some()
    }
}

/// Primitivity test with the least constant `N` such that `B^n` is all-ones
/// for every `n >= N`.
pub fn is_mixing(g: &DirectedGraph) -> Result<MixingVerdict> {
    let n = g.len();
    if n == 0 {
        return Err(Error::input("mixing test on the empty graph"));
    }
    let bound = (n - 1) * (n - 1) + 1;
    let b = g.matrix();
    let mut power = b.clone();
    for m in 1..=bound {
        if power.is_all_ones() {
            // once all-ones, multiplying by B keeps it all-ones iff every
            // vertex has an in-edge
            if g.vertices().all(|v| !g.predecessors(v).is_empty()) {
                return Ok(MixingVerdict::Mixing { constant: m });
            }
            break;
        }
        power = power.mul(b);
    }
    Ok(MixingVerdict::NotMixing { obstruction: obstruction(g) })
}

fn obstruction(g: &DirectedGraph) -> MixingObstruction {
    let reach = reach_plus(g);
    for u in g.vertices() {
        for v in g.vertices() {
            if !reach[u as usize][v as usize] {
                return MixingObstruction::Unreachable {
                    from: g.name(u).to_string(),
                    to: g.name(v).to_string(),
                };
            }
        }
    }
    // irreducible: the period is the gcd of level differences along edges
    let level = bfs_levels(g, 0);
    let mut d = 0usize;
    for (u, v) in g.edges() {
        let diff = (level[u as usize] as i64 + 1 - level[v as usize] as i64).unsigned_abs() as usize;
        d = gcd(d, diff);
    }
    let name = g.name(0).to_string();
    MixingObstruction::Periodic { from: name.clone(), to: name, period: d, residue: 0 }
}

fn bfs_levels(g: &DirectedGraph, s: Symbol) -> Vec<usize> {
    let mut level = vec![usize::MAX; g.len()];
    level[s as usize] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in g.successors(u) {
            if level[v as usize] == usize::MAX {
                level[v as usize] = level[u as usize] + 1;
                q.push_back(v);
            }
        }
    }
    level
}

/// `r[u][v]`: a path with at least one edge leads from `u` to `v`.
pub fn reach_plus(g: &DirectedGraph) -> Vec<Vec<bool>> {
    g.vertices()
        .map(|u| {
            let mut seen = vec![false; g.len()];
            let mut stack: Vec<Symbol> = g.successors(u).to_vec();
            while let Some(v) = stack.pop() {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.extend_from_slice(g.successors(v));
                }
            }
            seen
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Following unique out-edges from `v` never reaches a branching vertex.
fn forward_deterministic(g: &DirectedGraph, v: Symbol) -> bool {
    deterministic(g, v, |x| g.successors(x))
}

fn backward_deterministic(g: &DirectedGraph, v: Symbol) -> bool {
    deterministic(g, v, |x| g.predecessors(x))
}

fn deterministic<'a>(g: &DirectedGraph, v: Symbol, next: impl Fn(Symbol) -> &'a [Symbol]) -> bool {
    let mut seen = vec![false; g.len()];
    let mut cur = v;
    loop {
        if seen[cur as usize] {
            return true;
        }
        seen[cur as usize] = true;
        match next(cur) {
            [only] => cur = *only,
            _ => return false,
        }
    }
}

/// An isolated point of the two-sided vertex shift, if there is one.
///
/// A point is isolated iff some central block pins down both of its rays,
/// i.e. iff some backward-deterministic vertex reaches a forward-deterministic
/// vertex.
pub fn isolated_point(g: &DirectedGraph) -> Option<EventuallyPeriodicPoint> {
    let fdet: Vec<bool> = g.vertices().map(|v| forward_deterministic(g, v)).collect();
    let bdet: Vec<bool> = g.vertices().map(|v| backward_deterministic(g, v)).collect();
    for u in g.vertices().filter(|&u| bdet[u as usize]) {
        for v in g.vertices().filter(|&v| fdet[v as usize]) {
            if let Some(path) = g.shortest_path(u, v, 0) {
                return Some(pin_point(g, &path));
            }
        }
    }
    None
}

/// The unique point through `path` whose first vertex is backward- and last
/// vertex forward-deterministic.
fn pin_point(g: &DirectedGraph, path: &[Symbol]) -> EventuallyPeriodicPoint {
    let ray = |start: Symbol, next: &dyn Fn(Symbol) -> Symbol| {
        let mut seq = vec![start];
        loop {
            let n = next(*seq.last().unwrap());
            if let Some(i) = seq.iter().position(|&x| x == n) {
                return (seq[..i].to_vec(), seq[i..].to_vec());
            }
            seq.push(n);
        }
    };
    let (back_tail, back_cycle) = ray(path[0], &|x| g.predecessors(x)[0]);
    let (fwd_tail, fwd_cycle) = ray(*path.last().unwrap(), &|x| g.successors(x)[0]);
    // rays list vertices moving away from the path; a ray that starts on its
    // own cycle needs the cycle rotated so it does not repeat the endpoint
    let mut left: Vec<Symbol> = back_cycle.iter().rev().copied().collect();
    if back_tail.is_empty() {
        left.rotate_right(1);
    }
    let mut right = fwd_cycle;
    if fwd_tail.is_empty() {
        right.rotate_left(1);
    }
    let mut core: Vec<Symbol> = back_tail.iter().skip(1).rev().copied().collect();
    core.extend_from_slice(path);
    core.extend(fwd_tail.iter().skip(1));
    EventuallyPeriodicPoint::new(left, core, right).expect("cycles are nonempty")
}

/// Two-sided vertex shift has no isolated point.
pub fn is_perfect(g: &DirectedGraph) -> bool {
    if g.is_empty() {
        return false;
    }
    if g.edge_count() >= 2 && is_mixing(g).map(|v| v.is_mixing()).unwrap_or(false) {
        return true;
    }
    isolated_point(g).is_none()
}

/// A vertex whose one-sided cylinder is a single point, if any.
pub fn one_sided_isolated_vertex(g: &DirectedGraph) -> Option<Symbol> {
    g.vertices().find(|&v| forward_deterministic(g, v))
}

/// One-sided vertex shift (essential graph) has no isolated point.
pub fn is_perfect_one_sided(g: &DirectedGraph) -> bool {
    !g.is_empty() && one_sided_isolated_vertex(g).is_none()
}

/// The two-sided vertex shift is a finite union of periodic orbits: every
/// cyclic component is a simple cycle and no path joins two of them.
pub fn is_finite_periodic(g: &DirectedGraph) -> bool {
    let reach = reach_plus(g);
    let cyclic: Vec<Symbol> = g.vertices().filter(|&v| reach[v as usize][v as usize]).collect();
    let same = |u: Symbol, v: Symbol| u == v || (reach[u as usize][v as usize] && reach[v as usize][u as usize]);
    for &u in &cyclic {
        let inside = g.successors(u).iter().filter(|&&w| same(u, w)).count();
        if inside != 1 {
            return false;
        }
        for &v in &cyclic {
            if !same(u, v) && reach[u as usize][v as usize] {
                return false;
            }
        }
    }
    true
}

/// A periodic orbit, represented by its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicOrbit {
    pub least_period: usize,
    pub walk: Vec<Symbol>,
}

/// Every orbit of least period `< bound`, sorted by period then walk.
pub fn periodic_orbits_upto(g: &DirectedGraph, bound: usize) -> Vec<PeriodicOrbit> {
    let mut out = Vec::new();
    for j in 1..bound {
        for s in g.vertices() {
            let mut walk = vec![s];
            closed_walks(g, s, j, &mut walk, &mut |w| {
                if is_primitive(w) && least_rotation(w) == 0 {
                    out.push(PeriodicOrbit { least_period: j, walk: w.to_vec() });
                }
            });
        }
    }
    out
}

/// Closed walks of length `j` starting at `s` whose symbols are all `>= s`.
fn closed_walks(g: &DirectedGraph, s: Symbol, j: usize, walk: &mut Vec<Symbol>, f: &mut dyn FnMut(&[Symbol])) {
    let last = *walk.last().unwrap();
    if walk.len() == j {
        if g.has_edge(last, s) {
            f(walk);
        }
        return;
    }
    for &v in g.successors(last) {
        if v >= s {
            walk.push(v);
            closed_walks(g, s, j, walk, f);
            walk.pop();
        }
    }
}

/// Number of points fixed by `σ^n` (closed walks of length `n`), saturating.
pub fn fixed_point_count(g: &DirectedGraph, n: usize) -> u128 {
    let mut total: u128 = 0;
    for s in g.vertices() {
        let mut v = vec![0u128; g.len()];
        v[s as usize] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; g.len()];
            for (a, b) in g.edges() {
                next[b as usize] = next[b as usize].saturating_add(v[a as usize]);
            }
            v = next;
        }
        total = total.saturating_add(v[s as usize]);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn mixing_examples() {
        let k2 = DirectedGraph::complete(["a", "b"]);
        assert_eq!(is_mixing(&k2).unwrap(), MixingVerdict::Mixing { constant: 1 });
        assert_eq!(is_mixing(&catalog::golden_mean()).unwrap(), MixingVerdict::Mixing { constant: 2 });
        match is_mixing(&catalog::two_cycle()).unwrap() {
            MixingVerdict::NotMixing { obstruction: MixingObstruction::Periodic { from, period, residue, .. } } => {
                assert_eq!((from.as_str(), period, residue), ("a", 2, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn perfect_examples() {
        assert!(!is_perfect(&catalog::single_loop()));
        assert!(is_perfect(&DirectedGraph::complete(["a", "b"])));
        let g = DirectedGraph::new(["a", "b", "c"], [("a", "b"), ("b", "a"), ("c", "c")]).unwrap();
        assert!(!is_perfect(&g));
        assert!(is_finite_periodic(&g));
    }

    #[test]
    fn isolated_point_between_rays() {
        // ...ccc d eee... is isolated although no vertex is deterministic
        // in both directions
        let g = DirectedGraph::new(
            ["c", "d", "e", "f"],
            [("c", "c"), ("c", "d"), ("f", "f"), ("f", "d"), ("d", "e"), ("e", "e")],
        )
        .unwrap();
        let p = isolated_point(&g).expect("isolated point");
        assert!(p.is_admissible(&g));
        assert!(!is_perfect(&g));
        assert!(!is_finite_periodic(&g));
    }

    #[test]
    fn orbit_examples() {
        let k2 = DirectedGraph::complete(["a", "b"]);
        let o = periodic_orbits_upto(&k2, 3);
        let names: Vec<String> = o.iter().map(|o| k2.render_word(&o.walk)).collect();
        assert_eq!(names, ["a", "b", "ab"]);
        assert!(periodic_orbits_upto(&catalog::two_cycle(), 2).is_empty());
        let g = catalog::golden_mean();
        let names: Vec<String> = periodic_orbits_upto(&g, 3).iter().map(|o| g.render_word(&o.walk)).collect();
        assert_eq!(names, ["a", "ab"]);
    }

    #[test]
    fn one_sided_perfectness() {
        assert!(is_perfect_one_sided(&catalog::golden_mean()));
        assert!(!is_perfect_one_sided(&catalog::two_cycle()));
        assert!(is_perfect_one_sided(&catalog::two_three_cycles()));
    }
}

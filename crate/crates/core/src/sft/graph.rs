use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::BooleanMatrix;
use crate::error::{Error, Result};

/// Vertex index. Words are sequences of vertex indices.
pub type Symbol = u16;

/// A vertex-labelled directed graph presenting the vertex shift of its
/// bi-infinite (or one-sided) walks.
#[derive(Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    names: Vec<String>,
    succ: Vec<Vec<Symbol>>,
    pred: Vec<Vec<Symbol>>,
    adj: BooleanMatrix,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    #[serde(alias = "vertices")]
    alphabet: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Serialize for DirectedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            alphabet: self.names.clone(),
            edges: self
                .edges()
                .map(|(u, v)| (self.name(u).to_string(), self.name(v).to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirectedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GraphJson::deserialize(d)?;
        DirectedGraph::new(g.alphabet, g.edges).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<String> =
            self.edges().map(|(u, v)| format!("{}->{}", self.name(u), self.name(v))).collect();
        write!(f, "DirectedGraph({:?}; {})", self.names, edges.join(" "))
    }
}

impl DirectedGraph {
    pub fn new<S: AsRef<str>>(
        names: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > Symbol::MAX as usize {
            return Err(Error::input("too many vertices"));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::input("empty vertex name"));
            }
            if index.insert(n.clone(), i as Symbol).is_some() {
                return Err(Error::input(format!("duplicate vertex {n:?}")));
            }
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            let lookup = |s: &str| {
                index.get(s).copied().ok_or_else(|| Error::input(format!("edge references unknown vertex {s:?}")))
            };
            pairs.push((lookup(u.as_ref())?, lookup(v.as_ref())?));
        }
        Ok(Self::from_indices(names, pairs))
    }

    pub(crate) fn from_indices(names: Vec<String>, edges: impl IntoIterator<Item = (Symbol, Symbol)>) -> Self {
        let n = names.len();
        let mut adj = BooleanMatrix::zeros(n);
        for (u, v) in edges {
            adj.set(u as usize, v as usize, true);
        }
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if adj.get(u, v) {
                    succ[u].push(v as Symbol);
                    pred[v].push(u as Symbol);
                }
            }
        }
        DirectedGraph { names, succ, pred, adj }
    }

    /// Complete graph (all ordered pairs, loops included).
    pub fn complete<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len() as Symbol;
        let edges: Vec<_> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
        Self::from_indices(names, edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Symbol) -> &str {
        &self.names[v as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name).map(|i| i as Symbol)
    }

    pub fn has_edge(&self, u: Symbol, v: Symbol) -> bool {
        self.adj.get(u as usize, v as usize)
    }

    pub fn successors(&self, u: Symbol) -> &[Symbol] {
        &self.succ[u as usize]
    }

    pub fn predecessors(&self, v: Symbol) -> &[Symbol] {
        &self.pred[v as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        self.succ.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u as Symbol, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn matrix(&self) -> &BooleanMatrix {
        &self.adj
    }

    pub fn vertices(&self) -> impl Iterator<Item = Symbol> {
        0..self.len() as Symbol
    }

    /// Every vertex has in-degree and out-degree at least one.
    pub fn is_essential(&self) -> bool {
        (0..self.len()).all(|v| !self.succ[v].is_empty() && !self.pred[v].is_empty())
    }

    /// Every ordered pair of vertices is an edge.
    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.len() * self.len()
    }

    pub fn is_path(&self, w: &[Symbol]) -> bool {
        w.windows(2).all(|p| self.has_edge(p[0], p[1]))
    }

    fn separator(&self) -> Option<&'static str> {
        if self.names.iter().all(|n| n.chars().count() == 1) {
            None
        } else if self.names.iter().any(|n| n.contains('.')) {
            Some(" ")
        } else {
            Some(".")
        }
    }

    /// Concatenated names when every name is one character, else joined by `.`.
    pub fn render_word(&self, w: &[Symbol]) -> String {
        match self.separator() {
            None => w.iter().map(|&s| self.name(s)).collect(),
            Some(sep) => w.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(sep),
        }
    }

    pub fn parse_word(&self, s: &str) -> Result<Vec<Symbol>> {
        if s.is_empty() {
            return Ok(Vec::new());
        }
        let lookup = |t: &str| self.index_of(t).ok_or_else(|| Error::input(format!("unknown symbol {t:?} in word {s:?}")));
        match self.separator() {
            None => s.chars().map(|c| lookup(c.encode_utf8(&mut [0; 4]))).collect(),
            Some(sep) => s.split(sep).map(lookup).collect(),
        }
    }

    /// Parse and require admissibility.
    pub fn parse_path(&self, s: &str) -> Result<Vec<Symbol>> {
        let w = self.parse_word(s)?;
        if !self.is_path(&w) {
            return Err(Error::input(format!("word {s:?} is not admissible")));
        }
        Ok(w)
    }

    /// DOT rendering: vertex names verbatim, one edge per line.
    pub fn to_dot(&self, title: &str) -> String {
        let mut out = format!("digraph {:?} {{\n", title);
        for n in &self.names {
            let _ = writeln!(out, "  {n:?};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {:?} -> {:?};", self.name(u), self.name(v));
        }
        out.push_str("}\n");
        out
    }

    /// Subgraph on the kept vertices, names and order preserved.
    pub fn induced(&self, keep: &[bool]) -> DirectedGraph {
        let mut map = vec![None; self.len()];
        let mut names = Vec::new();
        for v in 0..self.len() {
            if keep[v] {
                map[v] = Some(names.len() as Symbol);
                names.push(self.names[v].clone());
            }
        }
        let edges: Vec<_> = self
            .edges()
            .filter_map(|(u, v)| Some((map[u as usize]?, map[v as usize]?)))
            .collect();
        DirectedGraph::from_indices(names, edges)
    }

    /// Call `f` on every admissible word of length `len`, in lexicographic
    /// order of vertex indices. Stops early when `f` returns false.
    pub fn for_each_word(&self, len: usize, mut f: impl FnMut(&[Symbol]) -> bool) {
        if len == 0 {
            f(&[]);
            return;
        }
        let mut word: Vec<Symbol> = Vec::with_capacity(len);
        let mut choice: Vec<usize> = Vec::with_capacity(len);
        let n = self.len();
        // choice[i] indexes into the candidates for position i
        let candidates = |word: &[Symbol], i: usize| -> usize {
            if i == 0 {
                n
            } else {
                self.succ[word[i - 1] as usize].len()
            }
        };
        let pick = |word: &[Symbol], i: usize, c: usize| -> Symbol {
            if i == 0 {
                c as Symbol
            } else {
                self.succ[word[i - 1] as usize][c]
            }
        };
        choice.push(0);
        loop {
            let i = choice.len() - 1;
            let c = choice[i];
            if c >= candidates(&word, i) {
                choice.pop();
                if choice.is_empty() {
                    return;
                }
                word.pop();
                *choice.last_mut().unwrap() += 1;
                continue;
            }
            word.push(pick(&word, i, c));
            if word.len() == len {
                if !f(&word) {
                    return;
                }
                word.pop();
                choice[i] += 1;
            } else {
                choice.push(0);
            }
        }
    }

    /// Number of admissible words of the given length.
    pub fn count_words(&self, len: usize) -> BigUint {
        if len == 0 {
            return BigUint::from(1u8);
        }
        let mut v = vec![BigUint::from(1u8); self.len()];
        for _ in 1..len {
            let mut next = vec![BigUint::default(); self.len()];
            for (u, w) in self.edges() {
                next[w as usize] += &v[u as usize];
            }
            v = next;
        }
        v.into_iter().sum()
    }

    /// Lexicographically least shortest path `from ... to` (inclusive), or
    /// `None` when `to` is unreachable. A path of zero edges when `from == to`
    /// and `min_edges == 0`.
    pub fn shortest_path(&self, from: Symbol, to: Symbol, min_edges: usize) -> Option<Vec<Symbol>> {
        // smallest m >= min_edges with a path of exactly m edges from `from`
        let reach = self.exact_reach_to(to, self.len() * self.len() + min_edges + 1);
        let m = (min_edges..reach.len()).find(|&m| reach[m][from as usize])?;
        let mut path = vec![from];
        let mut cur = from;
        for left in (0..m).rev() {
            cur = *self.successors(cur).iter().find(|&&s| reach[left][s as usize])?;
            path.push(cur);
        }
        Some(path)
    }

    /// BFS distances (in edges) from each vertex to `to`.
    pub fn distances_to(&self, to: Symbol) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[to as usize] = Some(0);
        let mut queue = std::collections::VecDeque::from([to]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize].unwrap();
            for &u in self.predecessors(v) {
                if dist[u as usize].is_none() {
                    dist[u as usize] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// `reach[m][v]`: there is a walk of exactly `m` edges from `v` to `to`,
    /// for `m < len`.
    pub fn exact_reach_to(&self, to: Symbol, len: usize) -> Vec<Vec<bool>> {
        let mut out = Vec::with_capacity(len);
        let mut cur = vec![false; self.len()];
        cur[to as usize] = true;
        for _ in 0..len {
            let mut next = vec![false; self.len()];
            for (u, v) in self.edges() {
                if cur[v as usize] {
                    next[u as usize] = true;
                }
            }
            out.push(std::mem::replace(&mut cur, next));
        }
        out
    }
}

/// Maximal essential subgraph: iteratively drop vertices with no in-edge or
/// no out-edge. May be empty.
pub fn essentialize(g: &DirectedGraph) -> DirectedGraph {
    let n = g.len();
    let mut keep = vec![true; n];
    let mut outdeg: Vec<usize> = (0..n).map(|v| g.succ[v].len()).collect();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.pred[v].len()).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| outdeg[v] == 0 || indeg[v] == 0).collect();
    while let Some(v) = stack.pop() {
        if !keep[v] {
            continue;
        }
        keep[v] = false;
        for &w in &g.succ[v] {
            let w = w as usize;
            if keep[w] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        for &u in &g.pred[v] {
            let u = u as usize;
            if keep[u] {
                outdeg[u] -= 1;
                if outdeg[u] == 0 {
                    stack.push(u);
                }
            }
        }
    }
    g.induced(&keep)
}

/// All admissible words of length `k`, in lexicographic order.
pub fn words(g: &DirectedGraph, k: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    g.for_each_word(k, |w| {
        out.push(w.to_vec());
        true
    });
    out
}

/// Vertex names contained and edges contained (matched by name).
pub fn is_subgraph(g: &DirectedGraph, h: &DirectedGraph) -> bool {
    let map: Option<Vec<Symbol>> = g.names.iter().map(|n| h.index_of(n)).collect();
    let Some(map) = map else { return false };
    g.edges().all(|(u, v)| h.has_edge(map[u as usize], map[v as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn essentialize_examples() {
        let k2 = DirectedGraph::complete(["a", "b"]);
        assert_eq!(essentialize(&k2), k2);
        let path = DirectedGraph::new(["a", "b"], [("a", "b")]).unwrap();
        assert!(essentialize(&path).is_empty());
        let dangling = DirectedGraph::new(["a", "b"], [("a", "a"), ("a", "b")]).unwrap();
        let e = essentialize(&dangling);
        assert_eq!(e.names(), ["a"]);
        assert!(e.has_edge(0, 0));
    }

    #[test]
    fn words_examples() {
        let g = catalog::golden_mean();
        let w: Vec<String> = words(&g, 2).iter().map(|w| g.render_word(w)).collect();
        assert_eq!(w, ["aa", "ab", "ba"]);
        assert_eq!(words(&DirectedGraph::complete(["a", "b"]), 3).len(), 8);
        let c = catalog::two_cycle();
        let w: Vec<String> = words(&c, 3).iter().map(|w| c.render_word(w)).collect();
        assert_eq!(w, ["aba", "bab"]);
        assert_eq!(g.count_words(10), BigUint::from(144u32));
    }

    #[test]
    fn subgraph_examples() {
        let g = catalog::golden_mean();
        let k2 = DirectedGraph::complete(["a", "b"]);
        assert!(is_subgraph(&g, &k2));
        assert!(!is_subgraph(&k2, &g));
        let empty = DirectedGraph::new(Vec::<&str>::new(), Vec::<(&str, &str)>::new()).unwrap();
        assert!(is_subgraph(&empty, &g));
    }

    #[test]
    fn json_round_trip_and_words() {
        let g = catalog::golden_mean();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"alphabet":["a","b"],"edges":[["a","a"],["a","b"],["b","a"]]}"#);
        let back: DirectedGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let multi = DirectedGraph::complete(["x0", "x1"]);
        assert_eq!(multi.render_word(&[0, 1, 1]), "x0.x1.x1");
        assert_eq!(multi.parse_word("x0.x1.x1").unwrap(), vec![0, 1, 1]);
        assert!(g.parse_path("bb").is_err());
    }

    #[test]
    fn shortest_paths() {
        let g = catalog::golden_mean();
        assert_eq!(g.shortest_path(1, 1, 1).unwrap(), vec![1, 0, 1]);
        assert_eq!(g.shortest_path(0, 1, 0).unwrap(), vec![0, 1]);
        assert_eq!(g.shortest_path(0, 0, 0).unwrap(), vec![0]);
    }
}

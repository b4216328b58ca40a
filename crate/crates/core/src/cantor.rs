//! The Cantor set as a one-sided vertex shift with the metric
//! `d(x, y) = 2^(-i)`, `i` the first index where `x` and `y` differ.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Refusal, Result};
use crate::sft::{self, words, DirectedGraph, Symbol};

/// Ordered list of at least two distinct symbol names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<S: AsRef<str>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let v: Vec<String> = symbols.into_iter().map(|s| s.as_ref().to_string()).collect();
        if v.len() < 2 {
            return Err(Error::input("an alphabet needs at least two symbols"));
        }
        let distinct: BTreeSet<&String> = v.iter().collect();
        if distinct.len() != v.len() {
            return Err(Error::input("duplicate symbol in alphabet"));
        }
        Ok(Alphabet(v.into()))
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parse a word, one character per symbol when all names are single
    /// characters, else `.`-separated.
    pub fn word(&self, s: &str) -> Result<Word> {
        let g = DirectedGraph::new(self.0.iter(), std::iter::empty::<(&String, &String)>())?;
        Ok(Word { alphabet: self.clone(), symbols: g.parse_word(s)? })
    }
}

/// A finite word tagged with its alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }
}

/// A metric value: exact, or an upper bound when the compared words ran out
/// before differing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    pub value: Dyadic,
    pub exact: bool,
}

/// Distance between the points represented by two finite words.
pub fn metric_dist(x: &Word, y: &Word) -> Result<Distance> {
    if x.alphabet != y.alphabet {
        return Err(Error::input("words over different alphabets"));
    }
    Ok(word_distance(&x.symbols, &y.symbols))
}

pub fn word_distance(x: &[Symbol], y: &[Symbol]) -> Distance {
    match x.iter().zip(y).position(|(a, b)| a != b) {
        Some(i) => Distance { value: Dyadic::pow2_neg(i as i32), exact: true },
        None => Distance { value: Dyadic::pow2_neg(x.len().min(y.len()) as i32), exact: false },
    }
}

/// One-sided vertex shift on an essential graph with at least two symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainSpace {
    alphabet: Alphabet,
    graph: DirectedGraph,
}

impl Serialize for DomainSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.graph.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DomainSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = DirectedGraph::deserialize(d)?;
        DomainSpace::new(g).map_err(serde::de::Error::custom)
    }
}

impl DomainSpace {
    pub fn new(graph: DirectedGraph) -> Result<Self> {
        let alphabet = Alphabet::new(graph.names())?;
        if !graph.is_essential() {
            return Err(Error::input("domain graph must be essential (in- and out-degree at least one)"));
        }
        Ok(DomainSpace { alphabet, graph })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn word(&self, s: &str) -> Result<Vec<Symbol>> {
        self.graph.parse_path(s)
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        self.graph.render_word(w)
    }

    /// The space has no isolated point.
    pub fn is_perfect(&self) -> bool {
        sft::is_perfect_one_sided(&self.graph)
    }

    fn children(&self, w: &[Symbol]) -> Vec<Vec<Symbol>> {
        let last = *w.last().expect("cylinders are nonempty");
        self.graph
            .successors(last)
            .iter()
            .map(|&s| {
                let mut c = w.to_vec();
                c.push(s);
                c
            })
            .collect()
    }

    /// Index at which the points of `[w]` first disagree, or `None` if the
    /// cylinder is a single point.
    fn branch_index(&self, w: &[Symbol]) -> Option<usize> {
        let mut t = w.len();
        let mut cur = *w.last()?;
        let mut seen = BTreeSet::new();
        loop {
            match self.graph.successors(cur) {
                [only] => {
                    if !seen.insert(cur) {
                        return None;
                    }
                    cur = *only;
                    t += 1;
                }
                _ => return Some(t),
            }
        }
    }

    /// Extend `w` along forced symbols up to its first branching, returning
    /// the branches, or an error naming the cylinder if it is a single point.
    fn split_point(&self, w: &[Symbol]) -> Result<Vec<Vec<Symbol>>> {
        let t = self.branch_index(w).ok_or_else(|| {
            Error::Refused(Refusal::NotPerfect {
                reason: format!("cylinder {} has a unique infinite extension", self.render(w)),
            })
        })?;
        let mut stem = w.to_vec();
        while stem.len() < t {
            let next = self.graph.successors(*stem.last().unwrap())[0];
            stem.push(next);
        }
        Ok(self.children(&stem))
    }
}

/// Finite union of cylinders in canonical form: no cylinder contains another
/// and no complete family of siblings is left unmerged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClopenSet {
    cylinders: Vec<Vec<Symbol>>,
}

impl ClopenSet {
    pub fn new(space: &DomainSpace, cylinders: impl IntoIterator<Item = Vec<Symbol>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for c in cylinders {
            if c.is_empty() {
                return Err(Error::input("cylinders have depth at least one"));
            }
            if !space.graph.is_path(&c) {
                return Err(Error::input(format!("cylinder {} is not admissible", space.render(&c))));
            }
            set.insert(c);
        }
        Ok(Self::normalize(space, set))
    }

    pub fn parse(space: &DomainSpace, words: &[&str]) -> Result<Self> {
        let cyl: Result<Vec<_>> = words.iter().map(|w| space.word(w)).collect();
        Self::new(space, cyl?)
    }

    pub fn cylinder(space: &DomainSpace, w: Vec<Symbol>) -> Result<Self> {
        Self::new(space, [w])
    }

    pub fn whole(space: &DomainSpace) -> Self {
        Self::normalize(space, space.graph.vertices().map(|v| vec![v]).collect())
    }

    fn normalize(space: &DomainSpace, mut set: BTreeSet<Vec<Symbol>>) -> Self {
        let contained: Vec<Vec<Symbol>> = set
            .iter()
            .filter(|w| (1..w.len()).any(|l| set.contains(&w[..l])))
            .cloned()
            .collect();
        for w in contained {
            set.remove(&w);
        }
        loop {
            let mut merged = None;
            for w in set.iter().filter(|w| w.len() >= 2) {
                let parent = &w[..w.len() - 1];
                if space.children(parent).iter().all(|c| set.contains(c)) {
                    merged = Some(parent.to_vec());
                    break;
                }
            }
            match merged {
                Some(p) => {
                    for c in space.children(&p) {
                        set.remove(&c);
                    }
                    set.insert(p);
                }
                None => break,
            }
        }
        ClopenSet { cylinders: set.into_iter().collect() }
    }

    pub fn cylinders(&self) -> &[Vec<Symbol>] {
        &self.cylinders
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    pub fn union(&self, space: &DomainSpace, other: &ClopenSet) -> ClopenSet {
        Self::normalize(space, self.cylinders.iter().chain(&other.cylinders).cloned().collect())
    }

    pub fn is_disjoint(&self, other: &ClopenSet) -> bool {
        self.cylinders.iter().all(|a| {
            other.cylinders.iter().all(|b| {
                let l = a.len().min(b.len());
                a[..l] != b[..l]
            })
        })
    }

    /// All admissible words of length `depth` lying in the set; `depth` must
    /// be at least the deepest cylinder.
    pub fn expand(&self, space: &DomainSpace, depth: usize) -> BTreeSet<Vec<Symbol>> {
        let mut out = BTreeSet::new();
        for c in &self.cylinders {
            assert!(c.len() <= depth, "expansion depth below cylinder depth");
            let mut layer = vec![c.clone()];
            while layer[0].len() < depth {
                layer = layer.iter().flat_map(|w| space.children(w)).collect();
            }
            out.extend(layer);
        }
        out
    }

    pub fn max_depth(&self) -> usize {
        self.cylinders.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn render(&self, space: &DomainSpace) -> Vec<String> {
        self.cylinders.iter().map(|c| space.render(c)).collect()
    }
}

/// Exact diameter of a nonempty clopen set.
pub fn diam(space: &DomainSpace, s: &ClopenSet) -> Result<Dyadic> {
    if s.is_empty() {
        return Err(Error::input("diameter of the empty set"));
    }
    let mut best = Dyadic::ZERO;
    for pair in s.cylinders.windows(2) {
        let lcp = pair[0].iter().zip(&pair[1]).take_while(|(a, b)| a == b).count();
        best = best.max(Dyadic::pow2_neg(lcp as i32));
    }
    // the minimal common prefix over all pairs is attained by neighbours in
    // sorted order, so the loop above covers every pair
    for c in &s.cylinders {
        if let Some(t) = space.branch_index(c) {
            best = best.max(Dyadic::pow2_neg(t as i32));
        }
    }
    Ok(best)
}

/// A cover of the space by pairwise disjoint nonempty clopen sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPartition {
    parts: Vec<ClopenSet>,
}

impl CPartition {
    pub fn new(space: &DomainSpace, parts: Vec<ClopenSet>) -> Result<Self> {
        if parts.iter().any(ClopenSet::is_empty) {
            return Err(Error::input("partition has an empty part"));
        }
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                if !a.is_disjoint(b) {
                    return Err(Error::input("partition parts overlap"));
                }
            }
        }
        let union = parts.iter().fold(ClopenSet { cylinders: Vec::new() }, |acc, p| acc.union(space, p));
        if union != ClopenSet::whole(space) {
            return Err(Error::input("partition does not cover the space"));
        }
        Ok(CPartition { parts })
    }

    pub fn parts(&self) -> &[ClopenSet] {
        &self.parts
    }
}

pub fn mesh(space: &DomainSpace, p: &CPartition) -> Dyadic {
    p.parts.iter().map(|s| diam(space, s).expect("parts are nonempty")).max().unwrap_or(Dyadic::ZERO)
}

/// Partition into all nonempty depth-`k` cylinders, in lexicographic order.
pub fn standard_partition(space: &DomainSpace, k: usize) -> Result<CPartition> {
    if k == 0 {
        return Err(Error::input("partition depth must be positive"));
    }
    let parts = words(&space.graph, k)
        .into_iter()
        .map(|w| ClopenSet::normalize(space, BTreeSet::from([w])))
        .collect();
    Ok(CPartition { parts })
}

/// Split `s` into `m` pairwise disjoint nonempty clopen pieces with union `s`.
///
/// Cylinders are refined by always splitting the lexicographically largest
/// atom at its first branching until there are at least `m` atoms. The first
/// `m - 1` atoms become pieces and the rest form the last piece.
pub fn split_clopen(space: &DomainSpace, s: &ClopenSet, m: usize) -> Result<Vec<ClopenSet>> {
    if m == 0 {
        return Err(Error::input("cannot split into zero pieces"));
    }
    if s.is_empty() {
        return Err(Error::input("cannot split the empty set"));
    }
    let mut atoms: BTreeSet<Vec<Symbol>> = s.cylinders.iter().cloned().collect();
    while atoms.len() < m {
        let largest = atoms.pop_last().unwrap();
        atoms.extend(space.split_point(&largest)?);
    }
    let atoms: Vec<Vec<Symbol>> = atoms.into_iter().collect();
    let mut pieces: Vec<ClopenSet> = atoms[..m - 1]
        .iter()
        .map(|a| ClopenSet::normalize(space, BTreeSet::from([a.clone()])))
        .collect();
    pieces.push(ClopenSet::normalize(space, atoms[m - 1..].iter().cloned().collect()));
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn d(t: i32) -> Dyadic {
        Dyadic::pow2_neg(t)
    }

    #[test]
    fn metric_examples() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let m = |x: &str, y: &str| metric_dist(&a.word(x).unwrap(), &a.word(y).unwrap()).unwrap();
        assert_eq!(m("abab", "abaa"), Distance { value: d(3), exact: true });
        assert_eq!(m("aa", "aa"), Distance { value: d(2), exact: false });
        assert_eq!(m("ba", "ab"), Distance { value: Dyadic::ONE, exact: true });
        let other = Alphabet::new(["a", "c"]).unwrap();
        assert!(metric_dist(&a.word("a").unwrap(), &other.word("a").unwrap()).is_err());
    }

    #[test]
    fn diam_examples() {
        let x = catalog::full_space();
        assert_eq!(diam(&x, &ClopenSet::parse(&x, &["aba"]).unwrap()).unwrap(), d(3));
        assert_eq!(diam(&x, &ClopenSet::parse(&x, &["aa", "ab"]).unwrap()).unwrap(), d(1));
        assert_eq!(diam(&x, &ClopenSet::whole(&x)).unwrap(), Dyadic::ONE);
        let g = catalog::golden_space();
        // [ba] = [b] forces the next symbol, so the first split is at index 2
        assert_eq!(diam(&g, &ClopenSet::parse(&g, &["ba"]).unwrap()).unwrap(), d(2));
    }

    #[test]
    fn mesh_examples() {
        let x = catalog::full_space();
        assert_eq!(mesh(&x, &standard_partition(&x, 3).unwrap()), d(3));
        let mixed = CPartition::new(&x, vec![
            ClopenSet::parse(&x, &["a"]).unwrap(),
            ClopenSet::parse(&x, &["ba"]).unwrap(),
            ClopenSet::parse(&x, &["bb"]).unwrap(),
        ])
        .unwrap();
        assert_eq!(mesh(&x, &mixed), d(1));
        let single = CPartition::new(&x, vec![ClopenSet::whole(&x)]).unwrap();
        assert_eq!(mesh(&x, &single), Dyadic::ONE);
    }

    #[test]
    fn standard_partition_examples() {
        let x = catalog::full_space();
        assert_eq!(standard_partition(&x, 2).unwrap().parts().len(), 4);
        let g = catalog::golden_space();
        let p = standard_partition(&g, 2).unwrap();
        let words: Vec<String> =
            p.parts().iter().flat_map(|s| s.expand(&g, 2)).map(|w| g.render(&w)).collect();
        assert_eq!(words, ["aa", "ab", "ba"]);
    }

    #[test]
    fn split_examples() {
        let x = catalog::full_space();
        let whole = ClopenSet::whole(&x);
        let two: Vec<Vec<String>> = split_clopen(&x, &whole, 2).unwrap().iter().map(|p| p.render(&x)).collect();
        assert_eq!(two, [vec!["a"], vec!["b"]]);
        let three: Vec<Vec<String>> =
            split_clopen(&x, &whole, 3).unwrap().iter().map(|p| p.render(&x)).collect();
        assert_eq!(three, [vec!["a"], vec!["ba"], vec!["bb"]]);
        let g = catalog::golden_space();
        let ab = ClopenSet::parse(&g, &["ab"]).unwrap();
        let pieces: Vec<Vec<String>> = split_clopen(&g, &ab, 2).unwrap().iter().map(|p| p.render(&g)).collect();
        assert_eq!(pieces, [vec!["abaa"], vec!["abab"]]);
    }

    #[test]
    fn split_refuses_single_points() {
        let c = DomainSpace::new(catalog::two_cycle()).unwrap();
        let s = ClopenSet::parse(&c, &["a"]).unwrap();
        assert!(matches!(split_clopen(&c, &s, 2), Err(Error::Refused(Refusal::NotPerfect { .. }))));
    }

    #[test]
    fn normalization_is_canonical() {
        let x = catalog::full_space();
        let a = ClopenSet::parse(&x, &["aa", "ab", "ba"]).unwrap();
        let b = ClopenSet::parse(&x, &["a", "baa", "bab"]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.render(&x), ["a", "ba"]);
    }
}

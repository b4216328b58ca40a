use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::code::SlidingBlockCode;
use crate::error::{Error, Result};
use crate::point::{EventuallyPeriodicPoint, PointJson};
use crate::sft::{periodic_orbits_upto, DirectedGraph, Symbol};
use crate::verdict::Verdict;
use crate::words::{find, is_primitive};

/// A point of the source whose image carries `word` at `position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageWitness {
    pub point: EventuallyPeriodicPoint,
    pub position: i64,
    pub word: Vec<Symbol>,
}

impl CoverageWitness {
    /// Recompute the image and compare.
    pub fn verify(&self, code: &SlidingBlockCode) -> Result<bool> {
        let len = self.word.len() as i64;
        Ok(code.apply(&self.point, self.position, self.position + len)? == self.word)
    }

    /// The witness moved so that `word[offset..offset + len]` starts at 0.
    pub fn shifted_to(&self, offset: usize) -> EventuallyPeriodicPoint {
        self.point.shift(self.position + offset as i64)
    }

    pub fn to_json(&self, code: &SlidingBlockCode) -> CoverageWitnessJson {
        CoverageWitnessJson {
            point: self.point.to_json(code.source()),
            position: self.position,
            word: code.target().render_word(&self.word),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageWitnessJson {
    pub point: PointJson,
    pub position: i64,
    pub word: String,
}

/// A source point whose image contains `w0`.
///
/// Candidates, in order: periodic points of a primitive closed walk of
/// length between `N` and `k` (every position is good, so marks occur),
/// then points `A^∞ m B^∞` joining two distinct periodic orbits. The image
/// is computed directly and searched for `w0`.
pub fn coverage_witness(code: &SlidingBlockCode, w0: &[Symbol]) -> Result<CoverageWitness> {
    if w0.is_empty() {
        let point = EventuallyPeriodicPoint::periodic(least_closed_walk(code.source())?)?;
        return Ok(CoverageWitness { point, position: 0, word: Vec::new() });
    }
    let src = code.source();
    let (lo, hi) = match code.as_marker() {
        Some(m) => (m.constants().big_n, m.markers().k()),
        None => (1, 1),
    };
    let mut tried = 0;
    for p in lo..=hi.max(lo) {
        if let Some(r) = primitive_walk(src, p) {
            tried += 1;
            let point = EventuallyPeriodicPoint::periodic(r)?;
            if let Some(w) = search(code, &point, 0, 2 * p as i64 + w0.len() as i64, w0)? {
                return Ok(w);
            }
            if tried >= 4 {
                break;
            }
        }
    }
    let orbits = periodic_orbits_upto(src, src.len() + 1);
    for a in &orbits {
        for b in &orbits {
            if a.walk == b.walk {
                continue;
            }
            let (ea, sb) = (*a.walk.last().unwrap(), b.walk[0]);
            let Some(path) = src.shortest_path(ea, sb, 1) else { continue };
            let mid = path[1..path.len() - 1].to_vec();
            let point = EventuallyPeriodicPoint::new(a.walk.clone(), mid, b.walk.clone())?;
            let span = code.as_marker().map_or(4, |m| 4 * (m.markers().k() + m.constants().big_n)) as i64;
            if let Some(w) = search(code, &point, -span, span + w0.len() as i64, w0)? {
                return Ok(w);
            }
        }
    }
    Err(Error::Exhausted(format!("no witness found for {}", code.target().render_word(w0))))
}

fn search(
    code: &SlidingBlockCode,
    point: &EventuallyPeriodicPoint,
    from: i64,
    to: i64,
    w0: &[Symbol],
) -> Result<Option<CoverageWitness>> {
    let img = match code.apply(point, from, to) {
        Ok(img) => img,
        Err(Error::Exhausted(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(find(&img, w0).map(|i| CoverageWitness { point: point.clone(), position: from + i as i64, word: w0.to_vec() }))
}

fn least_closed_walk(g: &DirectedGraph) -> Result<Vec<Symbol>> {
    periodic_orbits_upto(g, g.len())
        .into_iter()
        .next()
        .map(|o| o.walk)
        .ok_or_else(|| Error::input("source has no periodic point"))
}

/// Lexicographically least primitive closed walk of length `p`, by
/// depth-first search with a node budget.
fn primitive_walk(g: &DirectedGraph, p: usize) -> Option<Vec<Symbol>> {
    let mut budget = 1usize << 16;
    for s in g.vertices() {
        let reach = g.exact_reach_to(s, p + 1);
        if !reach[p][s as usize] {
            continue;
        }
        let mut walk = vec![s];
        if let Some(w) = dfs(g, &reach, p, &mut walk, &mut budget) {
            return Some(w);
        }
    }
    None
}

fn dfs(g: &DirectedGraph, reach: &[Vec<bool>], p: usize, walk: &mut Vec<Symbol>, budget: &mut usize) -> Option<Vec<Symbol>> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    if walk.len() == p {
        return is_primitive(walk).then(|| walk.clone());
    }
    let left = p - walk.len();
    for &t in g.successors(*walk.last().unwrap()) {
        if reach[left][t as usize] {
            walk.push(t);
            if let Some(w) = dfs(g, reach, p, walk, budget) {
                return Some(w);
            }
            walk.pop();
        }
    }
    None
}

/// `π⁻¹` of the target cylinder `{y : y[m..m+|w|] = w}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preimage {
    /// No source point maps into the cylinder; decided by scanning all
    /// source words of length `|w| + 2L'`.
    Empty,
    /// The union of the source cylinders `{x : x[anchor..anchor+|u|] = u}`.
    Enumerated { anchor: i64, words: BTreeSet<Vec<Symbol>> },
    /// Too many source words to list; a point inside the preimage.
    Witnessed { point: EventuallyPeriodicPoint },
}

impl Preimage {
    pub fn is_empty(&self) -> bool {
        matches!(self, Preimage::Empty)
    }
}

/// Exact preimage when the source words of length `|w| + 2L'` number at
/// most `budget`; otherwise a point found by moving `witness` so that an
/// occurrence of `w` sits at `m`. Emptiness is only reported after a full
/// scan.
pub fn preimage_cylinder(
    code: &SlidingBlockCode,
    m: i64,
    w: &[Symbol],
    witness: Option<&CoverageWitness>,
    budget: u64,
) -> Result<Preimage> {
    if let Some(r) = code.enumerable_radius(w.len(), budget) {
        let mut words = BTreeSet::new();
        let mut err = None;
        code.source().for_each_word(w.len() + 2 * r, |x| {
            match code.outputs(x, r, r + w.len()) {
                Ok(out) => {
                    if out.iter().zip(w).all(|(o, s)| *o == Some(*s)) {
                        words.insert(x.to_vec());
                    }
                }
                Err(e) => err = Some(e),
            }
            err.is_none()
        });
        if let Some(e) = err {
            return Err(e);
        }
        return Ok(if words.is_empty() {
            Preimage::Empty
        } else {
            Preimage::Enumerated { anchor: m - r as i64, words }
        });
    }
    let wit = witness.ok_or_else(|| Error::Exhausted("preimage too large to enumerate and no witness given".into()))?;
    let off = find(&wit.word, w)
        .ok_or_else(|| Error::Exhausted(format!("witness image lacks {}", code.target().render_word(w))))?;
    let point = wit.shifted_to(off).shift(-m);
    if code.apply(&point, m, m + w.len() as i64)? != w {
        return Err(Error::Verification("shifted witness does not land in the cylinder".into()));
    }
    Ok(Preimage::Witnessed { point })
}

/// The graph `G_{σ,π,U}` on target words of length `2k+1`: an edge `a → b`
/// when some source point `x` has `π(x)` in `[a]` and `π(σx)` in `[b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeCoverGraph {
    pub depth: usize,
    pub graph: Option<DirectedGraph>,
    /// Target words none of whose cylinders meets the image.
    pub uncovered: Vec<String>,
    /// Edges lie inside the target's own cover graph.
    pub inside_target: Verdict,
}

/// Computes `G_{σ,π,U}` exactly by window enumeration when the source words
/// of length `2k+2+2L'` number at most `budget`. Otherwise only containment
/// in the target cover graph is established, from image admissibility:
/// every edge of `G_{σ,π,U}` is a `(2k+2)`-word of `π(Λ)`.
pub fn cover_graph_via(code: &SlidingBlockCode, k: usize, budget: u64) -> Result<CodeCoverGraph> {
    let tgt = code.target();
    let len = 2 * k + 1;
    let Some(r) = code.enumerable_radius(len + 1, budget) else {
        let inside = match code.image_admissibility(budget) {
            Verdict::Failed { witness } => Verdict::Failed { witness },
            v => Verdict::structural(&format!("image admissibility ({})", verdict_name(&v))),
        };
        return Ok(CodeCoverGraph { depth: k, graph: None, uncovered: Vec::new(), inside_target: inside });
    };
    let mut seen = BTreeSet::new();
    let mut err = None;
    code.source().for_each_word(len + 1 + 2 * r, |x| {
        match code.outputs(x, r, r + len + 1) {
            Ok(out) => match out.into_iter().collect::<Option<Vec<_>>>() {
                Some(y) => {
                    seen.insert(y);
                }
                None => err = Some(Error::Verification("code undecided within its radius".into())),
            },
            Err(e) => err = Some(e),
        }
        err.is_none()
    });
    if let Some(e) = err {
        return Err(e);
    }
    let verts = crate::sft::words(tgt, len);
    let index = |w: &[Symbol]| verts.binary_search_by(|v| v.as_slice().cmp(w)).ok();
    let mut edges = Vec::new();
    let mut covered = vec![false; verts.len()];
    let mut outside = None;
    let mut checked = 0;
    for y in &seen {
        checked += 1;
        match (index(&y[..len]), index(&y[1..])) {
            (Some(a), Some(b)) => {
                covered[a] = true;
                edges.push((a as Symbol, b as Symbol));
            }
            _ => outside = Some(tgt.render_word(y)),
        }
    }
    let names: Vec<String> = verts.iter().map(|w| tgt.render_word(w)).collect();
    let uncovered = names.iter().zip(&covered).filter(|(_, c)| !**c).map(|(n, _)| n.clone()).collect();
    let graph = DirectedGraph::from_indices(names, edges);
    let inside_target = match outside {
        Some(w) => Verdict::Failed { witness: format!("image word {w} is not admissible") },
        None => Verdict::Exhaustive { checked },
    };
    Ok(CodeCoverGraph { depth: k, graph: Some(graph), uncovered, inside_target })
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Exhaustive { .. } => "exhaustive",
        Verdict::Structural { .. } => "structural",
        Verdict::CompleteTarget => "complete target",
        Verdict::Failed { .. } => "failed",
    }
}

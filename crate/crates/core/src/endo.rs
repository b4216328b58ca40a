//! Endomorphisms of a one-sided shift space given by block rules.

use serde::{Deserialize, Serialize};

use crate::cantor::DomainSpace;
use crate::dyadic::Dyadic;
use crate::error::{Error, Refusal, Result};
use crate::sft::{self, per_spectrum, DirectedGraph, EventuallyPeriodicSet, MixingObstruction, MixingVerdict, Symbol};

const MAX_TABLE: usize = 1 << 24;

/// `f(x)_i = rule(x_i ... x_{i+w})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorMap {
    space: DomainSpace,
    window: usize,
    /// Indexed by the base-|V| code of the window; `NONE` off admissible windows.
    table: Vec<Symbol>,
}

const NONE: Symbol = Symbol::MAX;

impl CantorMap {
    /// The shift `σ`: window one, output the second symbol.
    pub fn shift(space: DomainSpace) -> Self {
        Self::from_fn(space, 1, |w| w[1]).expect("the shift maps the space into itself")
    }

    pub fn identity(space: DomainSpace) -> Self {
        Self::from_fn(space, 0, |w| w[0]).expect("the identity maps the space into itself")
    }

    /// Tabulate `rule` on every admissible `(window + 1)`-word and check
    /// that images of admissible words are admissible.
    pub fn from_fn(space: DomainSpace, window: usize, rule: impl Fn(&[Symbol]) -> Symbol) -> Result<Self> {
        let n = space.graph().len();
        let size = n
            .checked_pow(window as u32 + 1)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or_else(|| Error::input(format!("window {window} too large for the rule table")))?;
        let mut table = vec![NONE; size];
        let mut bad = None;
        space.graph().for_each_word(window + 1, |w| {
            let out = rule(w);
            if (out as usize) >= n {
                bad = Some(w.to_vec());
                return false;
            }
            table[code(n, w)] = out;
            true
        });
        if let Some(w) = bad {
            return Err(Error::input(format!("rule output on {} is not a symbol", space.render(&w))));
        }
        let map = CantorMap { space, window, table };
        map.check_closure()?;
        Ok(map)
    }

    fn check_closure(&self) -> Result<()> {
        let g = self.space.graph();
        let mut bad = None;
        g.for_each_word(self.window + 2, |u| {
            let a = self.rule(&u[..=self.window]);
            let b = self.rule(&u[1..]);
            if !g.has_edge(a, b) {
                bad = Some(u.to_vec());
            }
            bad.is_none()
        });
        match bad {
            Some(u) => Err(Error::input(format!(
                "rule sends {} to an inadmissible word",
                self.space.render(&u)
            ))),
            None => Ok(()),
        }
    }

    pub fn space(&self) -> &DomainSpace {
        &self.space
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Rule output on an admissible `(window + 1)`-word.
    pub fn rule(&self, w: &[Symbol]) -> Symbol {
        debug_assert_eq!(w.len(), self.window + 1);
        self.table[code(self.space.graph().len(), w)]
    }

    /// Depth-`m` image of an admissible word of length `m + window`.
    pub fn image_cylinder(&self, u: &[Symbol]) -> Result<Vec<Symbol>> {
        if u.len() <= self.window {
            return Err(Error::input(format!("image needs a word longer than the window {}", self.window)));
        }
        if !self.space.graph().is_path(u) {
            return Err(Error::input(format!("{} is not admissible", self.space.render(u))));
        }
        Ok(self.image_unchecked(u))
    }

    pub(crate) fn image_unchecked(&self, u: &[Symbol]) -> Vec<Symbol> {
        u.windows(self.window + 1).map(|w| self.rule(w)).collect()
    }

    /// The rule has window one and returns the second symbol.
    pub fn is_shift_rule(&self) -> bool {
        if self.window != 1 {
            return false;
        }
        let mut ok = true;
        self.space.graph().for_each_word(2, |w| {
            ok = self.rule(w) == w[1];
            ok
        });
        ok
    }

    /// Cover graph on the depth-`k` cylinders: `(u, u')` is an edge iff some
    /// admissible extension of `u` of length `k + window` has image `u'`.
    /// Vertices are in lexicographic order and named by their words.
    pub fn cover_graph(&self, k: usize) -> Result<DirectedGraph> {
        if k == 0 {
            return Err(Error::input("cover graph depth must be positive"));
        }
        let g = self.space.graph();
        let cyl = sft::words(g, k);
        let index = |w: &[Symbol]| cyl.binary_search_by(|c| c.as_slice().cmp(w)).expect("admissible");
        let mut edges = Vec::new();
        g.for_each_word(k + self.window, |z| {
            edges.push((index(&z[..k]) as Symbol, index(&self.image_unchecked(z)) as Symbol));
            true
        });
        edges.sort_unstable();
        edges.dedup();
        if cyl.len() > Symbol::MAX as usize {
            return Err(Error::input("too many cylinders for a cover graph"));
        }
        let names = cyl.iter().map(|c| self.space.render(c)).collect();
        Ok(DirectedGraph::from_indices(names, edges))
    }

    /// `δ = 2^-(m + w)` with `m` least such that `2^-m < ε/2`.
    pub fn delta_for(&self, eps: Dyadic) -> Result<Dyadic> {
        Ok(Dyadic::pow2_neg(delta_exponent(eps)? + self.window as i32))
    }

    /// Every depth-`k` cylinder, `k <= depth`, meets the image.
    pub fn check_onto(&self, depth: usize) -> OntoCertificate {
        let g = self.space.graph();
        for k in 1..=depth {
            let cyl = sft::words(g, k);
            let mut hit = vec![false; cyl.len()];
            g.for_each_word(k + self.window, |z| {
                let img = self.image_unchecked(z);
                if let Ok(i) = cyl.binary_search(&img) {
                    hit[i] = true;
                }
                true
            });
            if let Some(i) = hit.iter().position(|h| !h) {
                return OntoCertificate { depth, verified: false, missing: Some((k, self.space.render(&cyl[i]))) };
            }
        }
        OntoCertificate { depth, verified: true, missing: None }
    }

    /// Primitivity of the cover graph at every depth up to `depth`.
    pub fn check_chain_mixing(&self, depth: usize) -> Result<ChainMixCertificate> {
        let mut constants = Vec::new();
        for k in 1..=depth {
            match sft::is_mixing(&self.cover_graph(k)?)? {
                MixingVerdict::Mixing { constant } => constants.push(constant),
                MixingVerdict::NotMixing { obstruction } => {
                    return Ok(ChainMixCertificate { depth, constants, failure: Some(ChainMixFailure { depth: k, obstruction }) })
                }
            }
        }
        Ok(ChainMixCertificate { depth, constants, failure: None })
    }

    /// Period spectrum of the depth-`depth` cover graph, a superset of the
    /// periods of the map.
    pub fn per_upper(&self, depth: usize) -> Result<EventuallyPeriodicSet> {
        Ok(per_spectrum(&self.cover_graph(depth)?))
    }

    pub fn to_json(&self) -> CantorMapJson {
        let mut rule = Vec::new();
        let g = self.space.graph();
        g.for_each_word(self.window + 1, |w| {
            rule.push((self.space.render(w), g.name(self.rule(w)).to_string()));
            true
        });
        CantorMapJson { space: self.space.clone(), window: self.window, rule }
    }

    pub fn from_json(j: CantorMapJson) -> Result<Self> {
        let g = j.space.graph().clone();
        let mut given = std::collections::HashMap::new();
        for (w, s) in &j.rule {
            let w = g.parse_path(w)?;
            if w.len() != j.window + 1 {
                return Err(Error::input(format!("rule window {} has the wrong length", g.render_word(&w))));
            }
            let s = g.index_of(s).ok_or_else(|| Error::input(format!("unknown output symbol {s}")))?;
            if given.insert(w.clone(), s).is_some() {
                return Err(Error::input(format!("rule window {} given twice", g.render_word(&w))));
            }
        }
        let mut missing = None;
        g.for_each_word(j.window + 1, |w| {
            if !given.contains_key(w) {
                missing = Some(g.render_word(w));
            }
            missing.is_none()
        });
        if let Some(m) = missing {
            return Err(Error::input(format!("rule is not defined on {m}")));
        }
        CantorMap::from_fn(j.space, j.window, |w| given[w])
    }
}

impl Serialize for CantorMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CantorMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CantorMap::from_json(CantorMapJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CantorMapJson {
    pub space: DomainSpace,
    pub window: usize,
    pub rule: Vec<(String, String)>,
}

fn code(n: usize, w: &[Symbol]) -> usize {
    w.iter().fold(0, |acc, &s| acc * n + s as usize)
}

/// Least `m` with `2^-m < eps / 2`.
pub fn delta_exponent(eps: Dyadic) -> Result<i32> {
    if !eps.is_positive() {
        return Err(Error::input("epsilon must be positive"));
    }
    let half = eps.half();
    let mut m = 0;
    while Dyadic::pow2_neg(m) >= half {
        m += 1;
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OntoCertificate {
    pub depth: usize,
    pub verified: bool,
    /// Least depth with a missed cylinder, and the least such cylinder.
    pub missing: Option<(usize, String)>,
}

impl OntoCertificate {
    pub fn into_result(self) -> Result<Self> {
        match &self.missing {
            Some((depth, missing)) => Err(Refusal::NotOnto { depth: *depth, missing: missing.clone() }.into()),
            None => Ok(self),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMixFailure {
    pub depth: usize,
    pub obstruction: MixingObstruction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMixCertificate {
    pub depth: usize,
    /// Mixing constant of the cover graph at depths `1, 2, ...`.
    pub constants: Vec<usize>,
    pub failure: Option<ChainMixFailure>,
}

impl ChainMixCertificate {
    pub fn into_result(self) -> Result<Self> {
        match self.failure {
            Some(ChainMixFailure { depth, obstruction }) => {
                Err(Refusal::NotChainMixing { depth, obstruction }.into())
            }
            None => Ok(self),
        }
    }
}

/// Bracket `lower <= d(f, g) <= upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupDistance {
    pub lower: Dyadic,
    pub upper: Dyadic,
    /// A word on which the images differ at the first index attaining `lower`.
    pub witness: Option<String>,
}

/// Compare depth-`depth` images of `f` and `g` on all admissible words.
pub fn sup_distance_at_depth(f: &CantorMap, g: &CantorMap, depth: usize) -> Result<SupDistance> {
    if f.space != g.space {
        return Err(Error::input("maps on different spaces"));
    }
    if depth == 0 {
        return Err(Error::input("depth must be positive"));
    }
    let len = depth + f.window.max(g.window);
    let mut first: Option<(usize, Vec<Symbol>)> = None;
    f.space.graph().for_each_word(len, |z| {
        let a = f.image_unchecked(&z[..depth + f.window]);
        let b = g.image_unchecked(&z[..depth + g.window]);
        if let Some(i) = a.iter().zip(&b).position(|(x, y)| x != y) {
            if first.as_ref().is_none_or(|(j, _)| i < *j) {
                first = Some((i, z.to_vec()));
            }
        }
        first.as_ref().is_none_or(|(j, _)| *j > 0)
    });
    Ok(match first {
        Some((i, z)) => {
            let d = Dyadic::pow2_neg(i as i32);
            SupDistance { lower: d, upper: d, witness: Some(f.space.render(&z)) }
        }
        None => SupDistance { lower: Dyadic::ZERO, upper: Dyadic::pow2_neg(depth as i32), witness: None },
    })
}

//! Krieger marker sets.
//!
//! A marker set `F` for spacing `N` and radius `k` is clopen, its shifts
//! `σ^l F` for `0 <= l < N` are pairwise disjoint, and every point whose
//! central `(2k+1)`-block has least period at least `N` lies in `σ^l F` for
//! some `|l| < N`. Marking position `i` of `x` when `σ^i x ∈ F` gives marks at
//! least `N` apart and leaves only periodic stretches unmarked.

mod ranked;
mod sat;

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Refusal, Result};
use crate::sft::{self, DirectedGraph, Symbol};
use crate::verdict::Verdict;
use crate::words::least_period;

pub use crate::words::is_j_periodic;

/// Whether a position of a finite word is marked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mark {
    Yes,
    No,
    /// Depends on symbols outside the word.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MarkerStrategy {
    /// Explicit windows when the scans fit the budget, ranked otherwise.
    #[default]
    Auto,
    Windows,
    Ranked,
}

impl std::str::FromStr for MarkerStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(MarkerStrategy::Auto),
            "windows" => Ok(MarkerStrategy::Windows),
            "ranked" => Ok(MarkerStrategy::Ranked),
            _ => Err(Error::input(format!("unknown marker strategy {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkerConfig {
    /// Spacing `N >= 2`.
    pub n: usize,
    /// Periodicity radius, `k > 2N`.
    pub k: usize,
    /// Largest window radius tried by the window search.
    pub l_max: usize,
    pub strategy: MarkerStrategy,
    /// Most words any single exhaustive scan may visit.
    pub budget: u64,
}

impl MarkerConfig {
    pub fn new(n: usize, k: usize) -> Self {
        MarkerConfig { n, k, l_max: k + 3, strategy: MarkerStrategy::Auto, budget: 1 << 21 }
    }

    pub fn strategy(mut self, s: MarkerStrategy) -> Self {
        self.strategy = s;
        self
    }

    pub fn l_max(mut self, l_max: usize) -> Self {
        self.l_max = l_max;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    /// `F` is the union of the cylinders `C_{-L}(w)`.
    Windows { l: usize, windows: HashSet<Vec<Symbol>> },
    /// `F` is the set of points selected at position 0 by the rank-greedy
    /// rule; membership is decided within radius `k + r(N-1)`, `r` the number
    /// of admissible `(2k+1)`-words.
    Ranked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkerSet {
    subshift: DirectedGraph,
    n: usize,
    k: usize,
    rule: Rule,
}

impl MarkerSet {
    /// Marker set given by explicit windows of length `2L+1`.
    pub fn from_windows(subshift: DirectedGraph, n: usize, k: usize, l: usize, windows: impl IntoIterator<Item = Vec<Symbol>>) -> Result<Self> {
        check_params(n, k)?;
        if l < k {
            return Err(Error::input("window radius must be at least k"));
        }
        let windows: HashSet<Vec<Symbol>> = windows.into_iter().collect();
        for w in &windows {
            if w.len() != 2 * l + 1 || !subshift.is_path(w) {
                return Err(Error::input(format!("{} is not an admissible window", subshift.render_word(w))));
            }
        }
        Ok(MarkerSet { subshift, n, k, rule: Rule::Windows { l, windows } })
    }

    pub fn ranked(subshift: DirectedGraph, n: usize, k: usize) -> Result<Self> {
        check_params(n, k)?;
        Ok(MarkerSet { subshift, n, k, rule: Rule::Ranked })
    }

    pub fn subshift(&self) -> &DirectedGraph {
        &self.subshift
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn strategy(&self) -> MarkerStrategy {
        match self.rule {
            Rule::Windows { .. } => MarkerStrategy::Windows,
            Rule::Ranked => MarkerStrategy::Ranked,
        }
    }

    /// `L` for explicit windows.
    pub fn window_radius(&self) -> Option<usize> {
        match &self.rule {
            Rule::Windows { l, .. } => Some(*l),
            Rule::Ranked => None,
        }
    }

    /// Sorted windows for explicit marker sets.
    pub fn windows(&self) -> Option<Vec<Vec<Symbol>>> {
        match &self.rule {
            Rule::Windows { windows, .. } => {
                let mut v: Vec<Vec<Symbol>> = windows.iter().cloned().collect();
                v.sort();
                Some(v)
            }
            Rule::Ranked => None,
        }
    }

    /// A radius within which membership of `σ^i x` in `F` is decided.
    pub fn radius(&self) -> BigUint {
        match &self.rule {
            Rule::Windows { l, .. } => BigUint::from(*l),
            Rule::Ranked => {
                BigUint::from(self.k) + self.subshift.count_words(2 * self.k + 1) * BigUint::from(self.n - 1)
            }
        }
    }

    /// Marks of every position of a finite admissible word.
    pub fn marks(&self, x: &[Symbol]) -> Vec<Mark> {
        match &self.rule {
            Rule::Windows { l, windows } => (0..x.len())
                .map(|p| {
                    if p < *l || p + l >= x.len() {
                        Mark::Unknown
                    } else if windows.contains(&x[p - l..=p + l]) {
                        Mark::Yes
                    } else {
                        Mark::No
                    }
                })
                .collect(),
            Rule::Ranked => ranked::marks(x, self.n, self.k),
        }
    }

    /// Central `(2k+1)`-block at `p` has least period at least `N`.
    pub fn is_good(&self, x: &[Symbol], p: usize) -> Option<bool> {
        if p < self.k || p + self.k >= x.len() {
            return None;
        }
        Some(least_period(&x[p - self.k..=p + self.k]) >= self.n)
    }

    fn min_word(&self) -> usize {
        match &self.rule {
            Rule::Windows { l, .. } => 2 * l + 1,
            Rule::Ranked => 2 * self.k + 1,
        }
    }

    pub fn to_json(&self) -> MarkerSetJson {
        let g = &self.subshift;
        MarkerSetJson {
            subshift: g.clone(),
            n: self.n,
            k: self.k,
            strategy: self.strategy(),
            l: self.window_radius(),
            radius: self.radius().to_string(),
            windows: self.windows().map(|ws| ws.iter().map(|w| g.render_word(w)).collect()),
        }
    }

    pub fn from_json(j: MarkerSetJson) -> Result<Self> {
        match (j.strategy, j.l, j.windows) {
            (MarkerStrategy::Windows, Some(l), Some(ws)) => {
                let ws: Result<Vec<_>> = ws.iter().map(|w| j.subshift.parse_word(w)).collect();
                Self::from_windows(j.subshift, j.n, j.k, l, ws?)
            }
            (MarkerStrategy::Ranked, _, None) => Self::ranked(j.subshift, j.n, j.k),
            _ => Err(Error::input("marker file needs either windows with L, or the ranked strategy")),
        }
    }
}

impl Serialize for MarkerSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkerSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MarkerSet::from_json(MarkerSetJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkerSetJson {
    pub subshift: DirectedGraph,
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub strategy: MarkerStrategy,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    /// Decimal; may exceed every machine integer for ranked sets.
    pub radius: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub windows: Option<Vec<String>>,
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::input("marker spacing N must be at least 2"));
    }
    if k <= 2 * n {
        return Err(Error::input(format!("marker radius requires k > 2N (got k = {k}, N = {n})")));
    }
    Ok(())
}

fn fits(g: &DirectedGraph, len: usize, budget: u64) -> bool {
    g.count_words(len) <= BigUint::from(budget)
}

/// Build a marker set for the subshift presented by `g`.
///
/// The window strategy searches `L = k, k+1, ..., l_max` for explicit
/// windows and accepts the first set that passes both exhaustive verifiers.
pub fn build_markers(g: &DirectedGraph, cfg: &MarkerConfig) -> Result<MarkerSet> {
    check_params(cfg.n, cfg.k)?;
    if g.is_empty() || !g.is_essential() {
        return Err(Error::input("marker subshift must be essential and nonempty"));
    }
    if let Some(p) = sft::isolated_point(g) {
        return Err(Refusal::NotPerfect { reason: format!("{} is an isolated point", p.render(g)) }.into());
    }
    let windows_fit = |l: usize| fits(g, 2 * (l + cfg.n - 1) + 1, cfg.budget);
    match cfg.strategy {
        MarkerStrategy::Ranked => MarkerSet::ranked(g.clone(), cfg.n, cfg.k),
        MarkerStrategy::Auto if !windows_fit(cfg.k) => MarkerSet::ranked(g.clone(), cfg.n, cfg.k),
        strategy => {
            for l in cfg.k..=cfg.l_max {
                if !windows_fit(l) {
                    break;
                }
                if let Some(ws) = sat::solve(g, cfg.n, cfg.k, l) {
                    let m = MarkerSet::from_windows(g.clone(), cfg.n, cfg.k, l, ws)?;
                    for v in [verify_disjoint(&m), verify_coverage(&m)] {
                        if let Verdict::Failed { witness } = v {
                            return Err(Error::Verification(format!("marker windows at L = {l}: {witness}")));
                        }
                    }
                    return Ok(m);
                }
            }
            if strategy == MarkerStrategy::Auto {
                MarkerSet::ranked(g.clone(), cfg.n, cfg.k)
            } else {
                Err(Error::Exhausted(format!(
                    "no marker windows for N = {}, k = {} with L <= {} inside a budget of {} words",
                    cfg.n, cfg.k, cfg.l_max, cfg.budget
                )))
            }
        }
    }
}

/// No admissible word carries a window at its start and another `s < N`
/// places later.
pub fn verify_disjoint(m: &MarkerSet) -> Verdict {
    let Rule::Windows { l, windows } = &m.rule else {
        return Verdict::structural("a position is selected only if no smaller selected block lies within N-1");
    };
    let w = 2 * l + 1;
    let g = &m.subshift;
    let mut checked = 0u64;
    let mut witness = None;
    for s in 1..m.n {
        g.for_each_word(w + s, |u| {
            checked += 1;
            if windows.contains(&u[..w]) && windows.contains(&u[s..]) {
                witness = Some(format!("{} has marker windows at 0 and {s}", g.render_word(u)));
            }
            witness.is_none()
        });
        if let Some(witness) = witness {
            return Verdict::Failed { witness };
        }
    }
    Verdict::Exhaustive { checked }
}

/// Every admissible word of length `2(L+N-1)+1` with a good centre has a
/// window at some offset `|o| < N` from the centre.
pub fn verify_coverage(m: &MarkerSet) -> Verdict {
    let Rule::Windows { l, windows } = &m.rule else {
        return Verdict::structural("an unselected good position has a smaller selected block within N-1");
    };
    let (n, k, l) = (m.n, m.k, *l);
    let w = 2 * l + 1;
    let centre = n - 1 + l;
    let g = &m.subshift;
    let mut checked = 0u64;
    let mut witness = None;
    g.for_each_word(2 * (l + n - 1) + 1, |u| {
        checked += 1;
        if least_period(&u[centre - k..=centre + k]) >= n && !(0..2 * n - 1).any(|o| windows.contains(&u[o..o + w])) {
            witness = Some(format!("{} has a good centre and no window", g.render_word(u)));
        }
        witness.is_none()
    });
    match witness {
        Some(witness) => Verdict::Failed { witness },
        None => Verdict::Exhaustive { checked },
    }
}

/// Check the marking of every admissible word of length `len` directly:
/// marked positions are good and at least `N` apart, and every good position
/// whose neighbourhood is decided has a mark within `N - 1`.
pub fn verify_on_words(m: &MarkerSet, len: usize) -> Verdict {
    let g = &m.subshift;
    let n = m.n;
    let mut checked = 0u64;
    let mut witness = None;
    g.for_each_word(len, |x| {
        checked += 1;
        let marks = m.marks(x);
        let mut last: Option<usize> = None;
        for (p, &mk) in marks.iter().enumerate() {
            if mk == Mark::Yes {
                if m.is_good(x, p) == Some(false) {
                    witness = Some(format!("{} is marked at a periodic position {p}", g.render_word(x)));
                }
                if let Some(q) = last.filter(|&q| p - q < n) {
                    witness = Some(format!("{} has marks at {q} and {p}", g.render_word(x)));
                }
                last = Some(p);
            }
        }
        for p in 0..x.len() {
            if m.is_good(x, p) != Some(true) {
                continue;
            }
            let lo = p.saturating_sub(n - 1);
            let hi = (p + n - 1).min(x.len() - 1);
            let near = &marks[lo..=hi];
            if near.iter().all(|&mk| mk != Mark::Unknown) && !near.contains(&Mark::Yes) {
                witness = Some(format!("{} leaves the good position {p} uncovered", g.render_word(x)));
            }
        }
        witness.is_none()
    });
    match witness {
        Some(witness) => Verdict::Failed { witness },
        None => Verdict::Exhaustive { checked },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RunKind {
    /// Between two marks, fewer than `2N - 1` positions.
    Short,
    /// Between two marks, at least `2N - 1` positions; the stretch from `N - k`
    /// after the left mark to `N - k` before the right mark has least period
    /// `period`.
    Long { period: usize },
    /// Touches the end of the word or an undecided position.
    Undetermined,
}

/// A maximal run of unmarked positions `start..start + len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub start: usize,
    pub len: usize,
    pub kind: RunKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalDecomposition {
    pub marks: Vec<Mark>,
    pub marked: Vec<usize>,
    pub runs: Vec<Run>,
}

/// Split a finite word into marks and the unmarked runs between them.
pub fn decompose(m: &MarkerSet, x: &[Symbol]) -> Result<IntervalDecomposition> {
    if x.len() < m.min_word() {
        return Err(Error::input(format!("word of length {} is shorter than {}", x.len(), m.min_word())));
    }
    let (n, k) = (m.n, m.k);
    let marks = m.marks(x);
    let marked: Vec<usize> = (0..x.len()).filter(|&p| marks[p] == Mark::Yes).collect();
    let mut runs = Vec::new();
    let mut p = 0;
    while p < x.len() {
        if marks[p] == Mark::Yes {
            p += 1;
            continue;
        }
        let start = p;
        while p < x.len() && marks[p] != Mark::Yes {
            p += 1;
        }
        let len = p - start;
        let bounded = start > 0 && p < x.len() && marks[start..p].iter().all(|&mk| mk == Mark::No);
        let kind = if !bounded {
            RunKind::Undetermined
        } else if len < 2 * n - 1 {
            RunKind::Short
        } else {
            let (left, right) = (start - 1, p);
            match (left + n).checked_sub(k) {
                Some(a) if right + k - n < x.len() => RunKind::Long { period: least_period(&x[a..=right + k - n]) },
                _ => RunKind::Undetermined,
            }
        };
        runs.push(Run { start, len, kind });
    }
    Ok(IntervalDecomposition { marks, marked, runs })
}

/// All marker windows `BTreeSet` for reports, rendered.
pub fn render_windows(m: &MarkerSet) -> BTreeSet<String> {
    m.windows().unwrap_or_default().iter().map(|w| m.subshift.render_word(w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn parameter_checks() {
        let g = catalog::full_shift();
        assert!(matches!(build_markers(&g, &MarkerConfig::new(2, 4)), Err(Error::Input(_))));
        assert!(matches!(build_markers(&g, &MarkerConfig::new(1, 5)), Err(Error::Input(_))));
        let one = catalog::single_loop();
        assert!(matches!(build_markers(&one, &MarkerConfig::new(2, 5)), Err(Error::Refused(Refusal::NotPerfect { .. }))));
    }

    #[test]
    fn window_markers_small() {
        for g in [catalog::full_shift(), catalog::golden_mean()] {
            let m = build_markers(&g, &MarkerConfig::new(2, 5).strategy(MarkerStrategy::Windows)).unwrap();
            assert!(matches!(verify_disjoint(&m), Verdict::Exhaustive { .. }));
            assert!(matches!(verify_coverage(&m), Verdict::Exhaustive { .. }));
            let l = m.window_radius().unwrap();
            assert!(verify_on_words(&m, 2 * l + 1 + 2 * m.n()).holds());
        }
    }

    #[test]
    fn empty_windows_fail_coverage() {
        let m = MarkerSet::from_windows(catalog::full_shift(), 2, 5, 5, []).unwrap();
        assert!(verify_disjoint(&m).holds());
        assert!(matches!(verify_coverage(&m), Verdict::Failed { .. }));
    }

    #[test]
    fn overlapping_windows_fail_disjointness() {
        let g = catalog::full_shift();
        let w = g.parse_word("abbabaabbab").unwrap();
        let mut shifted = w[1..].to_vec();
        shifted.push(0);
        let m = MarkerSet::from_windows(g, 2, 5, 5, [w, shifted]).unwrap();
        assert!(matches!(verify_disjoint(&m), Verdict::Failed { .. }));
    }

    #[test]
    fn periodic_subshift_coverage_is_vacuous() {
        // 2-cycle: every block has period 2 < N
        let m = MarkerSet::from_windows(catalog::two_cycle(), 3, 7, 7, []).unwrap();
        assert!(verify_coverage(&m).holds());
    }

    #[test]
    fn ranked_markers_on_all_words() {
        for g in [catalog::full_shift(), catalog::golden_mean()] {
            for n in [2, 3] {
                let m = MarkerSet::ranked(g.clone(), n, 2 * n + 1).unwrap();
                assert!(verify_on_words(&m, 2 * (2 * n + 1) + 5).holds(), "n = {n}");
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let g = catalog::full_shift();
        let m = MarkerSet::ranked(g.clone(), 2, 5).unwrap();
        // a word of period 1 < N has no good positions
        let x = g.parse_word(&"a".repeat(40)).unwrap();
        let d = decompose(&m, &x).unwrap();
        assert!(d.marked.is_empty());
        assert_eq!(d.runs.len(), 1);
        assert_eq!(d.runs[0].kind, RunKind::Undetermined);
        // periodic stretch between two aperiodic patches
        let s = format!("{}{}{}", "abbabaabbba", "a".repeat(30), "abbbaababba");
        let x = g.parse_word(&s).unwrap();
        let d = decompose(&m, &x).unwrap();
        for pair in d.marked.windows(2) {
            assert!(pair[1] - pair[0] >= 2);
        }
        for r in &d.runs {
            if let RunKind::Long { period } = r.kind {
                assert_eq!(period, 1);
            }
        }
        assert!(d.runs.iter().any(|r| matches!(r.kind, RunKind::Long { .. })));
        assert!(decompose(&m, &x[..5]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = catalog::golden_mean();
        let m = build_markers(&g, &MarkerConfig::new(2, 5).strategy(MarkerStrategy::Windows)).unwrap();
        let back: MarkerSet = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        let r = MarkerSet::ranked(g, 3, 7).unwrap();
        let back: MarkerSet = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{assign_periodic, build_psi, choose_constants, MixingConstants, PeriodicAssignment, PsiTable};
use crate::error::{Error, Refusal, Result};
use crate::marker::{build_markers, Mark, MarkerConfig, MarkerSet, MarkerSetJson, MarkerStrategy};
use crate::point::EventuallyPeriodicPoint;
use crate::sft::{self, DirectedGraph, Symbol};
use crate::verdict::Verdict;

/// Block code given by an explicit table on `(2r+1)`-windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCode {
    source: DirectedGraph,
    target: DirectedGraph,
    radius: usize,
    rule: HashMap<Vec<Symbol>, Symbol>,
}

impl TableCode {
    pub fn from_fn(
        source: DirectedGraph,
        target: DirectedGraph,
        radius: usize,
        f: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<Self> {
        let mut rule = HashMap::new();
        let mut bad = None;
        source.for_each_word(2 * radius + 1, |w| {
            let s = f(w);
            if (s as usize) >= target.len() {
                bad = Some(source.render_word(w));
            }
            rule.insert(w.to_vec(), s);
            bad.is_none()
        });
        if let Some(w) = bad {
            return Err(Error::input(format!("code output on {w} is not a target symbol")));
        }
        Ok(TableCode { source, target, radius, rule })
    }

    /// The identity of a graph onto a graph with the same indexed edges.
    pub fn identity(source: DirectedGraph, target: DirectedGraph) -> Result<Self> {
        let same = source.len() == target.len() && source.edges().all(|(u, v)| target.has_edge(u, v));
        if !same {
            return Err(Error::input("identity code needs the source edges inside the target"));
        }
        Self::from_fn(source, target, 0, |w| w[0])
    }

    /// Every symbol to `symbol`.
    pub fn constant(source: DirectedGraph, target: DirectedGraph, symbol: Symbol) -> Result<Self> {
        Self::from_fn(source, target, 0, |_| symbol)
    }
}

/// The marker-based factor code.
///
/// At a marked position `i` the output is `Φ(x_i)`. Between two marks less
/// than `2N` apart the gap is filled with `Ψ(Φ(left), Φ(right), gap)`. Deep
/// inside a long unmarked stretch the output is the periodic image of the
/// stretch. The `N - 1` positions after a mark that starts a long stretch
/// carry `Ψ(Φ(mark), image, N - 1)`, and symmetrically before a mark that
/// ends one.
#[derive(Clone, Debug)]
pub struct MarkerCode {
    source: DirectedGraph,
    target: DirectedGraph,
    markers: MarkerSet,
    constants: MixingConstants,
    psi: PsiTable,
    periodic: PeriodicAssignment,
    phi: Vec<Symbol>,
}

#[derive(Clone, Debug)]
pub enum SlidingBlockCode {
    Table(TableCode),
    Marker(Box<MarkerCode>),
}

/// Parameters for [`compile_factor`].
#[derive(Clone, Debug)]
pub struct FactorConfig {
    pub strategy: MarkerStrategy,
    /// Marker radius; `2N + 1` when unset.
    pub k: Option<usize>,
    pub l_max: Option<usize>,
    /// Word budget for exhaustive marker scans.
    pub budget: u64,
    /// `Φ`; the least target vertex for every source symbol when unset.
    pub phi: Option<Vec<Symbol>>,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { strategy: MarkerStrategy::Auto, k: None, l_max: None, budget: 1 << 21, phi: None }
    }
}

/// Constants, connecting words, periodic assignment and markers for a code
/// from `lambda` into `sigma` covering `w`, then the code itself.
pub fn compile_factor(
    lambda: &DirectedGraph,
    sigma: &DirectedGraph,
    w: &[Vec<Symbol>],
    cfg: &FactorConfig,
) -> Result<SlidingBlockCode> {
    check_source(lambda)?;
    let c = choose_constants(sigma, w)?;
    let pa = assign_periodic(lambda, sigma, c.big_n)?;
    let psi = build_psi(sigma, &c)?;
    let k = cfg.k.unwrap_or(2 * c.big_n + 1);
    let mut mc = MarkerConfig::new(c.big_n, k).strategy(cfg.strategy).budget(cfg.budget);
    if let Some(l) = cfg.l_max {
        mc = mc.l_max(l);
    }
    let markers = build_markers(lambda, &mc)?;
    let phi = cfg.phi.clone().unwrap_or_else(|| vec![0; lambda.len()]);
    compile_code(lambda, sigma, markers, c, psi, pa, phi)
}

fn check_source(lambda: &DirectedGraph) -> Result<()> {
    if lambda.is_empty() || !lambda.is_essential() {
        return Err(Error::input("source graph must be essential and nonempty"));
    }
    if sft::is_finite_periodic(lambda) {
        return Err(Refusal::FinitePeriodic.into());
    }
    if let Some(p) = sft::isolated_point(lambda) {
        return Err(Refusal::NotPerfect { reason: format!("{} is an isolated point", p.render(lambda)) }.into());
    }
    Ok(())
}

/// Assemble a marker code from its parts, checking that they fit together.
pub fn compile_code(
    lambda: &DirectedGraph,
    sigma: &DirectedGraph,
    markers: MarkerSet,
    c: MixingConstants,
    psi: PsiTable,
    periodic: PeriodicAssignment,
    phi: Vec<Symbol>,
) -> Result<SlidingBlockCode> {
    check_source(lambda)?;
    if markers.subshift() != lambda {
        return Err(Error::input("markers were built for a different source"));
    }
    if markers.n() != c.big_n {
        return Err(Error::input(format!("marker spacing {} differs from N = {}", markers.n(), c.big_n)));
    }
    if markers.k() <= 2 * c.big_n {
        return Err(Error::input("marker radius requires k > 2N"));
    }
    if phi.len() != lambda.len() || phi.iter().any(|&s| (s as usize) >= sigma.len()) {
        return Err(Error::input("Φ must send every source symbol to a target symbol"));
    }
    if let Verdict::Failed { witness } = psi.verify(sigma) {
        return Err(Error::Verification(format!("connecting words: {witness}")));
    }
    Ok(SlidingBlockCode::Marker(Box::new(MarkerCode {
        source: lambda.clone(),
        target: sigma.clone(),
        markers,
        constants: c,
        psi,
        periodic,
        phi,
    })))
}

impl MarkerCode {
    pub fn markers(&self) -> &MarkerSet {
        &self.markers
    }

    pub fn constants(&self) -> &MixingConstants {
        &self.constants
    }

    pub fn psi(&self) -> &PsiTable {
        &self.psi
    }

    pub fn periodic(&self) -> &PeriodicAssignment {
        &self.periodic
    }

    pub fn phi(&self) -> &[Symbol] {
        &self.phi
    }

    fn image_at(&self, x: &[Symbol], t: usize) -> Result<Option<Symbol>> {
        let k = self.markers.k();
        if t < k || t + k >= x.len() {
            return Ok(None);
        }
        self.periodic.image(&x[t - k..=t + k]).map(Some)
    }

    /// Output at position `i` of `x`, `None` when it depends on symbols
    /// outside `x`.
    fn output(&self, x: &[Symbol], marks: &[Mark], i: usize) -> Result<Option<Symbol>> {
        let big_n = self.constants.big_n;
        match marks[i] {
            Mark::Unknown => return Ok(None),
            Mark::Yes => return Ok(Some(self.phi[x[i] as usize])),
            Mark::No => {}
        }
        let reach = 2 * big_n - 1;
        let scan = |range: &mut dyn Iterator<Item = Option<usize>>| -> Option<Option<usize>> {
            for j in range {
                match j.map(|j| marks[j]) {
                    None | Some(Mark::Unknown) => return None,
                    Some(Mark::Yes) => return Some(j),
                    Some(Mark::No) => {}
                }
            }
            Some(None)
        };
        let Some(left) = scan(&mut (1..=reach).map(|d| i.checked_sub(d))) else { return Ok(None) };
        let Some(right) = scan(&mut (1..=reach).map(|d| Some(i + d).filter(|&j| j < x.len()))) else {
            return Ok(None);
        };
        let phi = |p: usize| self.phi[x[p] as usize];
        if let (Some(a), Some(b)) = (left, right) {
            if b - a - 1 <= 2 * big_n - 2 {
                return Ok(Some(self.psi.at(phi(a), phi(b), b - a - 1, i - a - 1)));
            }
        }
        if let Some(a) = left.filter(|&a| i - a < big_n) {
            let Some(img) = self.image_at(x, a + big_n)? else { return Ok(None) };
            return Ok(Some(self.psi.at(phi(a), img, big_n - 1, i - a - 1)));
        }
        if let Some(b) = right.filter(|&b| b - i < big_n) {
            let t = b - big_n;
            let Some(img) = self.image_at(x, t)? else { return Ok(None) };
            return Ok(Some(self.psi.at(img, phi(b), big_n - 1, i - t - 1)));
        }
        self.image_at(x, i)
    }

    fn outputs(&self, x: &[Symbol], from: usize, to: usize) -> Result<Vec<Option<Symbol>>> {
        let marks = self.markers.marks(x);
        (from..to).map(|i| self.output(x, &marks, i)).collect()
    }
}

impl SlidingBlockCode {
    pub fn source(&self) -> &DirectedGraph {
        match self {
            SlidingBlockCode::Table(t) => &t.source,
            SlidingBlockCode::Marker(m) => &m.source,
        }
    }

    pub fn target(&self) -> &DirectedGraph {
        match self {
            SlidingBlockCode::Table(t) => &t.target,
            SlidingBlockCode::Marker(m) => &m.target,
        }
    }

    pub fn as_marker(&self) -> Option<&MarkerCode> {
        match self {
            SlidingBlockCode::Table(_) => None,
            SlidingBlockCode::Marker(m) => Some(m),
        }
    }

    /// Radius `L'`: the output at `i` is a function of `x[i-L'..=i+L']`.
    /// For marker codes `L' = L + N + k` with `L` the marker radius.
    pub fn radius(&self) -> BigUint {
        match self {
            SlidingBlockCode::Table(t) => BigUint::from(t.radius),
            SlidingBlockCode::Marker(m) => {
                m.markers.radius() + BigUint::from(m.constants.big_n + m.markers.k())
            }
        }
    }

    /// `L'` when the source words of length `len + 2L'` number at most
    /// `budget`.
    pub(crate) fn enumerable_radius(&self, len: usize, budget: u64) -> Option<usize> {
        let r = usize::try_from(self.radius()).ok().filter(|&r| r <= 1 << 16)?;
        (self.source().count_words(len + 2 * r) <= BigUint::from(budget)).then_some(r)
    }

    /// Outputs at positions `from..to` of a finite admissible source word;
    /// `None` where the word is too short to decide.
    pub fn outputs(&self, x: &[Symbol], from: usize, to: usize) -> Result<Vec<Option<Symbol>>> {
        match self {
            SlidingBlockCode::Table(t) => Ok((from..to)
                .map(|i| {
                    (i >= t.radius && i + t.radius < x.len()).then(|| t.rule[&x[i - t.radius..=i + t.radius]])
                })
                .collect()),
            SlidingBlockCode::Marker(m) => m.outputs(x, from, to),
        }
    }

    /// The image `π(x)` at positions `from..to`, reading as much of `x` as
    /// needed.
    pub fn apply(&self, x: &EventuallyPeriodicPoint, from: i64, to: i64) -> Result<Vec<Symbol>> {
        if to < from {
            return Err(Error::input("empty position range"));
        }
        let (a, b) = x.core_range();
        let tails = (x.left().len() + x.right().len()) as i64;
        let mut margin: i64 = match self {
            SlidingBlockCode::Table(t) => t.radius as i64,
            SlidingBlockCode::Marker(m) => (4 * m.constants.big_n + 2 * m.markers.k()) as i64 + 4 * tails,
        };
        // far enough out that both tails repeat several times
        let cap = margin.saturating_mul(64) + 4 * (b - a).abs() + (to - from) * 4;
        loop {
            let lo = from - margin;
            let word = x.window(lo, to + margin);
            let out = self.outputs(&word, (from - lo) as usize, (to - lo) as usize)?;
            if out.iter().all(Option::is_some) {
                return Ok(out.into_iter().map(Option::unwrap).collect());
            }
            if margin > cap {
                return Err(Error::Exhausted(format!(
                    "code output undecided within {margin} symbols of positions {from}..{to}"
                )));
            }
            margin *= 2;
        }
    }

    /// Consecutive outputs are target edges.
    ///
    /// Complete targets pass trivially. Otherwise every admissible source
    /// word of length `2L' + 2` is scanned when there are at most `budget`
    /// of them; beyond that the verdict rests on the checked building blocks
    /// of the code.
    pub fn image_admissibility(&self, budget: u64) -> Verdict {
        if self.target().is_complete() {
            return Verdict::CompleteTarget;
        }
        if let Some(r) = self.enumerable_radius(2, budget) {
            return self.scan_admissibility(r);
        }
        match self {
            SlidingBlockCode::Table(_) => Verdict::Failed { witness: "table too large to scan".into() },
            SlidingBlockCode::Marker(m) => m.structural_admissibility(),
        }
    }

    fn scan_admissibility(&self, r: usize) -> Verdict {
        let (src, tgt) = (self.source(), self.target());
        let mut checked = 0;
        let mut witness = None;
        src.for_each_word(2 * r + 2, |x| {
            checked += 1;
            match self.outputs(x, r, r + 2) {
                Ok(out) => match (out[0], out[1]) {
                    (Some(a), Some(b)) if tgt.has_edge(a, b) => {}
                    (Some(a), Some(b)) => {
                        witness = Some(format!(
                            "{} maps to {}{} at its centre",
                            src.render_word(x),
                            tgt.name(a),
                            tgt.name(b)
                        ))
                    }
                    _ => witness = Some(format!("output undecided on {}", src.render_word(x))),
                },
                Err(e) => witness = Some(format!("{}: {e}", src.render_word(x))),
            }
            witness.is_none()
        });
        match witness {
            Some(witness) => Verdict::Failed { witness },
            None => Verdict::Exhaustive { checked },
        }
    }

    /// SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        digest_json(&self.to_json())
    }

    pub fn to_json(&self) -> CodeJson {
        match self {
            SlidingBlockCode::Table(t) => {
                let mut rule: Vec<(String, String)> = t
                    .rule
                    .iter()
                    .map(|(w, &s)| (t.source.render_word(w), t.target.name(s).to_string()))
                    .collect();
                rule.sort();
                CodeJson::Table {
                    source: t.source.clone(),
                    target: t.target.clone(),
                    radius: t.radius,
                    rule,
                }
            }
            SlidingBlockCode::Marker(m) => CodeJson::Marker {
                source: m.source.clone(),
                target: m.target.clone(),
                radius: self.radius().to_string(),
                markers: m.markers.to_json(),
                constants: ConstantsJson {
                    n: m.constants.n,
                    w0: m.target.render_word(&m.constants.w0),
                    n0: m.constants.n0,
                    big_n: m.constants.big_n,
                },
                phi: m
                    .phi
                    .iter()
                    .enumerate()
                    .map(|(v, &s)| (m.source.name(v as Symbol).to_string(), m.target.name(s).to_string()))
                    .collect(),
                psi_digest: digest_json(&m.psi),
            },
        }
    }

    pub fn from_json(j: CodeJson) -> Result<Self> {
        match j {
            CodeJson::Table { source, target, radius, rule } => {
                let mut table = HashMap::new();
                for (w, s) in &rule {
                    let w = source.parse_word(w)?;
                    let s = target.index_of(s).ok_or_else(|| Error::input(format!("unknown target symbol {s}")))?;
                    table.insert(w, s);
                }
                let mut missing = None;
                source.for_each_word(2 * radius + 1, |w| {
                    if !table.contains_key(w) {
                        missing = Some(source.render_word(w));
                    }
                    missing.is_none()
                });
                if let Some(w) = missing {
                    return Err(Error::input(format!("code table misses {w}")));
                }
                TableCode::from_fn(source, target, radius, |w| table[w]).map(SlidingBlockCode::Table)
            }
            CodeJson::Marker { source, target, markers, constants, phi, psi_digest, .. } => {
                let markers = MarkerSet::from_json(markers)?;
                let w0 = target.parse_path(&constants.w0)?;
                let c = choose_constants_fixed(&target, w0)?;
                if c.n != constants.n || c.big_n != constants.big_n {
                    return Err(Error::input("stored constants do not match the target"));
                }
                let mut phi_map = vec![None; source.len()];
                for (a, b) in &phi {
                    let a = source.index_of(a).ok_or_else(|| Error::input(format!("unknown source symbol {a}")))?;
                    let b = target.index_of(b).ok_or_else(|| Error::input(format!("unknown target symbol {b}")))?;
                    phi_map[a as usize] = Some(b);
                }
                let phi: Vec<Symbol> =
                    phi_map.into_iter().collect::<Option<_>>().ok_or_else(|| Error::input("Φ is not total"))?;
                let psi = build_psi(&target, &c)?;
                if digest_json(&psi) != psi_digest {
                    return Err(Error::input("connecting-word digest mismatch"));
                }
                let pa = assign_periodic(&source, &target, c.big_n)?;
                compile_code(&source, &target, markers, c, psi, pa, phi)
            }
        }
    }
}

impl MarkerCode {
    /// Every output is `Φ` of a symbol, a symbol of a connecting word, or a
    /// symbol of a periodic image. Connecting words join their neighbours by
    /// construction of `Ψ`; a periodic image follows a closed walk `q_p`
    /// with a phase that advances by one per position, so it is a path; a
    /// long stretch switches to its image exactly where the transition word
    /// ends. Checking `Ψ` and every `q_p` therefore covers all junctions.
    fn structural_admissibility(&self) -> Verdict {
        if let Verdict::Failed { witness } = self.psi.verify(&self.target) {
            return Verdict::Failed { witness };
        }
        let per = sft::per_spectrum(&self.source);
        for p in per.members_below(self.constants.big_n) {
            match self.periodic.walk(p) {
                Some(q) => {
                    let mut closed = q.to_vec();
                    closed.push(q[0]);
                    if !self.target.is_path(&closed) {
                        return Verdict::Failed { witness: format!("q_{p} is not a closed walk") };
                    }
                }
                None => return Verdict::Failed { witness: format!("no closed walk of length {p}") },
            }
        }
        Verdict::structural("connecting words, closed walks q_p and their junctions checked")
    }
}

fn choose_constants_fixed(target: &DirectedGraph, w0: Vec<Symbol>) -> Result<MixingConstants> {
    let c = choose_constants(target, std::slice::from_ref(&w0))?;
    if c.w0 != w0 {
        return Err(Error::input("stored w0 is not canonical"));
    }
    Ok(c)
}

pub(crate) fn digest_json<T: Serialize>(v: &T) -> String {
    let bytes = serde_json::to_vec(v).expect("serializable");
    let d = Sha256::digest(&bytes);
    d.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsJson {
    pub n: usize,
    pub w0: String,
    pub n0: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
}

/// Serialized code. A marker code is stored through the data that determines
/// its rule; its full window table is usually far too large to list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CodeJson {
    Table {
        source: DirectedGraph,
        target: DirectedGraph,
        radius: usize,
        rule: Vec<(String, String)>,
    },
    Marker {
        source: DirectedGraph,
        target: DirectedGraph,
        radius: String,
        markers: MarkerSetJson,
        constants: ConstantsJson,
        phi: Vec<(String, String)>,
        psi_digest: String,
    },
}

impl Serialize for SlidingBlockCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlidingBlockCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SlidingBlockCode::from_json(CodeJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::factor::{coverage_witness, preimage_cylinder, Preimage};

    fn golden_to_full() -> SlidingBlockCode {
        let (l, s) = (catalog::golden_mean(), catalog::full_shift());
        compile_factor(&l, &s, &sft::words(&s, 3), &FactorConfig::default()).unwrap()
    }

    #[test]
    fn golden_into_full_shift() {
        let code = golden_to_full();
        let m = code.as_marker().unwrap();
        assert_eq!(m.constants().n, 1);
        assert_eq!(code.image_admissibility(1 << 20), Verdict::CompleteTarget);
        let w0 = m.constants().w0.clone();
        let wit = coverage_witness(&code, &w0).unwrap();
        assert!(wit.verify(&code).unwrap());
        for u in sft::words(code.target(), 3) {
            let p = preimage_cylinder(&code, -1, &u, Some(&wit), 1 << 16).unwrap();
            assert!(matches!(p, Preimage::Witnessed { .. }));
        }
    }

    #[test]
    fn periodic_input_gives_assigned_orbit() {
        let code = golden_to_full();
        let m = code.as_marker().unwrap();
        let x = EventuallyPeriodicPoint::periodic(vec![0, 1]).unwrap();
        let img = code.apply(&x, 0, 6).unwrap();
        assert_eq!(img, m.periodic().image_of_orbit(&[0, 1], 6).unwrap());
    }

    #[test]
    fn outputs_commute_with_shift() {
        let code = golden_to_full();
        let mut x: Vec<Symbol> = vec![0];
        let mut state = 12345u64;
        while x.len() < 400 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            x.push(if *x.last().unwrap() == 0 && (state >> 33) % 2 == 1 { 1 } else { 0 });
        }
        assert!(code.source().is_path(&x));
        let a = code.outputs(&x, 150, 250).unwrap();
        let b = code.outputs(&x[1..], 149, 249).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(Option::is_some));
    }

    #[test]
    fn exhaustive_admissibility_on_small_code() {
        let (l, s) = (catalog::loop_with_cycle(5), catalog::golden_mean());
        let code = compile_factor(&l, &s, &[], &FactorConfig { strategy: MarkerStrategy::Windows, ..Default::default() })
            .unwrap();
        let v = code.image_admissibility(1 << 23);
        assert!(matches!(v, Verdict::Exhaustive { .. }), "{v:?}");
    }

    #[test]
    fn table_codes() {
        let g = catalog::golden_mean();
        let id = SlidingBlockCode::Table(TableCode::identity(g.clone(), g.clone()).unwrap());
        assert!(matches!(id.image_admissibility(1 << 10), Verdict::Exhaustive { .. }));
        let back = SlidingBlockCode::from_json(serde_json::from_str(&serde_json::to_string(&id.to_json()).unwrap()).unwrap())
            .unwrap();
        assert_eq!(back.digest(), id.digest());
        let p = preimage_cylinder(&id, 0, &[1], None, 1 << 10).unwrap();
        assert!(matches!(p, Preimage::Enumerated { ref words, .. } if words.len() == 1));
    }

    #[test]
    fn marker_code_json_round_trip() {
        let code = golden_to_full();
        let s = serde_json::to_string(&code).unwrap();
        let back: SlidingBlockCode = serde_json::from_str(&s).unwrap();
        assert_eq!(back.digest(), code.digest());
    }

    #[test]
    fn finite_periodic_source_refused() {
        let r = compile_factor(&catalog::two_cycle(), &catalog::full_shift(), &[], &FactorConfig::default());
        assert!(matches!(r, Err(Error::Refused(Refusal::FinitePeriodic))));
    }
}

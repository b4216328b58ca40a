//! Certified approximation of a chain mixing map by conjugates of a
//! subshift, one partition depth at a time.
//!
//! At depth `k` the cover graph `G_k` of `f` is computed and gated (onto,
//! mixing, period containment). The conjugate of the shift on `Σ(G_k)` by
//! the root correspondence `C_0(u) ↔ [u]` has cover graph `G_k` again, so it
//! is `ε_k`-close to `f`. A factor code from `Λ` onto `Σ(G_k)` hitting every
//! 3-word of `G_k` then moves `σ_Λ` within one root cylinder of the shift on
//! `Σ(G_k)`, which adds `mesh(U_k)` to the bound.

use serde::{Deserialize, Serialize};

use crate::cantor::{mesh, split_clopen, standard_partition, ClopenSet, DomainSpace};
use crate::dyadic::Dyadic;
use crate::endo::{CantorMap, CantorMapJson, ChainMixCertificate, OntoCertificate};
use crate::error::{Error, Refusal, Result};
use crate::factor::{
    compile_factor, cover_graph_via, coverage_witness, digest_json, preimage_cylinder, ConstantsJson,
    CoverageWitnessJson, FactorConfig, Preimage, SlidingBlockCode, TableCode,
};
use crate::marker::MarkerStrategy;
use crate::sft::{self, per_spectrum, per_subset_witness, DirectedGraph, EventuallyPeriodicSet, MixingVerdict, Symbol};
use crate::verdict::Verdict;

/// Depths the caller does not choose default to `2..=6`.
pub const DEFAULT_DEPTHS: [usize; 5] = [2, 3, 4, 5, 6];

#[derive(Clone, Debug)]
pub struct ApproxConfig {
    pub strategy: MarkerStrategy,
    /// Word budget for exhaustive scans inside the factor code.
    pub budget: u64,
    /// Refinement depth of the cylinder correspondence.
    pub refine: usize,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        ApproxConfig { strategy: MarkerStrategy::Auto, budget: 1 << 20, refine: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerconVerdict {
    pub source: EventuallyPeriodicSet,
    pub target: EventuallyPeriodicSet,
    /// Least period of the source missing from the target.
    pub witness: Option<u64>,
}

impl PerconVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn into_result(self) -> Result<Self> {
        match self.witness {
            Some(witness) => Err(Refusal::Percon { witness }.into()),
            None => Ok(self),
        }
    }
}

/// `Per(Λ) ⊆ Per(Σ(G_k))`.
pub fn percon_gate(lambda: &DirectedGraph, f: &CantorMap, k: usize) -> Result<PerconVerdict> {
    let source = per_spectrum(lambda);
    let target = per_spectrum(&f.cover_graph(k)?);
    let witness = per_subset_witness(&source, &target).map(|p| p as u64);
    Ok(PerconVerdict { source, target, witness })
}

/// A node of the matched refinement trees: a cylinder `C_0(path)` of
/// `Σ(G_k)` paired with a clopen subset of the target space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondencePair {
    pub level: usize,
    pub sigma: String,
    pub x: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderCorrespondence {
    pub depth: usize,
    pub refine: usize,
    pub pairs: Vec<CorrespondencePair>,
}

impl CylinderCorrespondence {
    pub fn digest(&self) -> String {
        digest_json(self)
    }

    pub fn roots(&self) -> impl Iterator<Item = &CorrespondencePair> {
        self.pairs.iter().filter(|p| p.level == 0)
    }
}

/// Roots `C_0(u) ↔ [u]`; below each node the `Σ(G_k)` side splits into the
/// one-step forward extensions and the target side is split into as many
/// clopen pieces, matched in order.
pub fn build_correspondence(
    gk: &DirectedGraph,
    space: &DomainSpace,
    k: usize,
    refine: usize,
) -> Result<CylinderCorrespondence> {
    if let MixingVerdict::NotMixing { obstruction } = sft::is_mixing(gk)? {
        return Err(Refusal::NotMixing { obstruction }.into());
    }
    if !sft::is_perfect(gk) {
        return Err(Refusal::NotPerfect { reason: "cover graph has an isolated point".into() }.into());
    }
    let roots = sft::words(space.graph(), k);
    if roots.len() != gk.len() || roots.iter().zip(gk.names()).any(|(w, n)| space.render(w) != *n) {
        return Err(Error::input("cover graph vertices are not the depth-k cylinders"));
    }
    let mut pairs = Vec::new();
    for (u, w) in roots.into_iter().enumerate() {
        let set = ClopenSet::cylinder(space, w)?;
        grow(gk, space, vec![u as Symbol], set, 0, refine, &mut pairs)?;
    }
    Ok(CylinderCorrespondence { depth: k, refine, pairs })
}

fn grow(
    gk: &DirectedGraph,
    space: &DomainSpace,
    path: Vec<Symbol>,
    set: ClopenSet,
    level: usize,
    refine: usize,
    out: &mut Vec<CorrespondencePair>,
) -> Result<()> {
    out.push(CorrespondencePair { level, sigma: gk.render_word(&path), x: set.render(space) });
    if level == refine {
        return Ok(());
    }
    let next = gk.successors(*path.last().unwrap());
    let pieces = split_clopen(space, &set, next.len())?;
    for (&v, piece) in next.iter().zip(pieces) {
        let mut p = path.clone();
        p.push(v);
        grow(gk, space, p, piece, level + 1, refine, out)?;
    }
    Ok(())
}

/// `ψ_k σ ψ_k⁻¹` is `ε_k`-close to `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateBound {
    /// Cover graph of the conjugated shift on `U_k` equals `G_{f,U_k}`.
    pub graphs_equal: bool,
    pub mesh: Dyadic,
    pub epsilon: Dyadic,
    pub delta: Dyadic,
}

/// The conjugated shift moves `[u]` into `[u']` exactly along the edges of
/// `Σ(G_k)`, so its cover graph on `U_k` is the essential part of `G_k`;
/// this is compared with a fresh `G_{f,U_k}`. `ε_k` is the least `2^-t`
/// with `mesh(U_k) <= δ(f, 2^-t)`.
pub fn certify_conjugate_bound(f: &CantorMap, k: usize) -> Result<ConjugateBound> {
    f.check_onto(k).into_result()?;
    f.check_chain_mixing(k)?.into_result()?;
    let gk = f.cover_graph(k)?;
    let conj = sft::essentialize(&gk);
    let fresh = f.cover_graph(k)?;
    let graphs_equal = conj == fresh;
    if !graphs_equal {
        return Err(Error::Verification(format!("conjugated shift and f have different cover graphs at depth {k}")));
    }
    let m = mesh(f.space(), &standard_partition(f.space(), k)?);
    let mut t = -(f.window() as i32) - 2;
    while f.delta_for(Dyadic::pow2_neg(t + 1))? >= m {
        t += 1;
    }
    let epsilon = Dyadic::pow2_neg(t);
    let delta = f.delta_for(epsilon)?;
    if delta < m {
        return Err(Error::Verification(format!("no dyadic ε at depth {k}")));
    }
    Ok(ConjugateBound { graphs_equal, mesh: m, epsilon, delta })
}

/// Evidence that `Λ` factors onto `Σ(G_k)` hitting every 3-word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorWitness {
    pub code_digest: String,
    pub identity: bool,
    pub constants: Option<ConstantsJson>,
    pub marker_strategy: Option<MarkerStrategy>,
    pub code_radius: String,
    pub coverage: Option<CoverageWitnessJson>,
    /// 3-words of `G_k` whose centred cylinder has a nonempty preimage.
    pub preimages_checked: usize,
    pub image_admissibility: Verdict,
    /// `G_{σ,π,U} ⊆ G_{σ,U}` for `U` the centred 3-word cylinders.
    pub subgraph: Verdict,
    /// Bound for the distance between the transported source shift and the
    /// shift on `Σ(G_k)`; below 1 means agreement at coordinate 0.
    pub sigma_bound: Dyadic,
}

/// Build the code `Λ → Σ(G_k)` with `W` the 3-words of `G_k` and check
/// that every centred 3-word cylinder has a nonempty preimage.
pub fn factor_witness(
    lambda: &DirectedGraph,
    gk: &DirectedGraph,
    cfg: &ApproxConfig,
) -> Result<(SlidingBlockCode, FactorWitness)> {
    let w = sft::words(gk, 3);
    let same = lambda.len() == gk.len()
        && lambda.edge_count() == gk.edge_count()
        && lambda.edges().all(|(u, v)| gk.has_edge(u, v));
    let code = if same {
        SlidingBlockCode::Table(TableCode::identity(lambda.clone(), gk.clone())?)
    } else {
        let fc = FactorConfig { strategy: cfg.strategy, budget: cfg.budget, ..Default::default() };
        compile_factor(lambda, gk, &w, &fc)?
    };
    let coverage = match code.as_marker() {
        Some(m) => Some(coverage_witness(&code, &m.constants().w0)?),
        None => None,
    };
    for u in &w {
        let p = preimage_cylinder(&code, -1, u, coverage.as_ref(), cfg.budget)?;
        if p.is_empty() {
            return Err(Error::Verification(format!("cylinder of {} has empty preimage", gk.render_word(u))));
        }
        if let Preimage::Witnessed { point } = &p {
            if code.apply(point, -1, 2)? != *u {
                return Err(Error::Verification("preimage witness misses its cylinder".into()));
            }
        }
    }
    let image_admissibility = code.image_admissibility(cfg.budget);
    let subgraph = cover_graph_via(&code, 1, cfg.budget)?.inside_target;
    if !image_admissibility.holds() || !subgraph.holds() {
        return Err(Error::Verification("factor code output leaves the target".into()));
    }
    let sigma_bound = Dyadic::pow2_neg(2) + Dyadic::pow2_neg(1);
    let m = code.as_marker();
    let witness = FactorWitness {
        code_digest: code.digest(),
        identity: same,
        constants: m.map(|m| {
            let c = m.constants();
            ConstantsJson { n: c.n, w0: gk.render_word(&c.w0), n0: c.n0, big_n: c.big_n }
        }),
        marker_strategy: m.map(|m| m.markers().strategy()),
        code_radius: code.radius().to_string(),
        coverage: coverage.map(|c| c.to_json(&code)),
        preimages_checked: w.len(),
        image_admissibility,
        subgraph,
        sigma_bound,
    };
    Ok((code, witness))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxCertificate {
    pub depth: usize,
    pub cover_graph: DirectedGraph,
    pub mixing_constant: usize,
    pub onto: OntoCertificate,
    pub chain_mixing: ChainMixCertificate,
    pub percon: PerconVerdict,
    pub conjugate: ConjugateBound,
    pub correspondence_digest: String,
    pub witness: FactorWitness,
    /// `ε_k + mesh(U_k)`.
    pub total_bound: Dyadic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halt {
    pub depth: usize,
    pub refusal: Refusal,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub lambda: DirectedGraph,
    pub map: CantorMapJson,
    pub depths: Vec<usize>,
    pub certificates: Vec<ApproxCertificate>,
    pub halted: Option<Halt>,
    pub strictly_decreasing: bool,
}

impl ConvergenceReport {
    pub fn succeeded(&self) -> bool {
        self.halted.is_none() && self.certificates.len() == self.depths.len()
    }
}

/// One certificate per depth, stopping at the first refusal.
pub fn approximate(
    lambda: &DirectedGraph,
    f: &CantorMap,
    depths: &[usize],
    cfg: &ApproxConfig,
) -> Result<ConvergenceReport> {
    if depths.is_empty() || depths.windows(2).any(|p| p[0] >= p[1]) || depths[0] == 0 {
        return Err(Error::input("depths must be positive and strictly increasing"));
    }
    if lambda.is_empty() || !lambda.is_essential() {
        return Err(Error::input("source graph must be essential and nonempty"));
    }
    let mut report = ConvergenceReport {
        lambda: lambda.clone(),
        map: f.to_json(),
        depths: depths.to_vec(),
        certificates: Vec::new(),
        halted: None,
        strictly_decreasing: true,
    };
    let source_gate = if sft::is_finite_periodic(lambda) {
        Some(Refusal::FinitePeriodic)
    } else {
        sft::isolated_point(lambda)
            .map(|p| Refusal::NotPerfect { reason: format!("{} is an isolated point", p.render(lambda)) })
    };
    if let Some(refusal) = source_gate {
        let message = match &refusal {
            Refusal::FinitePeriodic => {
                "source is a finite set of periodic orbits; it is approximable exactly when f has those \
                 periodic points, which no factor code can certify"
                    .to_string()
            }
            r => r.to_string(),
        };
        report.halted = Some(Halt { depth: depths[0], refusal, message });
        return Ok(report);
    }
    for &k in depths {
        match certify_depth(lambda, f, k, cfg) {
            Ok(cert) => {
                if let Some(prev) = report.certificates.last() {
                    report.strictly_decreasing &= cert.total_bound < prev.total_bound;
                }
                report.certificates.push(cert);
            }
            Err(Error::Refused(refusal)) => {
                let message = refusal.to_string();
                report.halted = Some(Halt { depth: k, refusal, message });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// All gates and witnesses at one depth.
pub fn certify_depth(lambda: &DirectedGraph, f: &CantorMap, k: usize, cfg: &ApproxConfig) -> Result<ApproxCertificate> {
    let onto = f.check_onto(k).into_result()?;
    let chain_mixing = f.check_chain_mixing(k)?.into_result()?;
    let percon = percon_gate(lambda, f, k)?.into_result()?;
    let conjugate = certify_conjugate_bound(f, k)?;
    let gk = f.cover_graph(k)?;
    let mixing_constant = *chain_mixing.constants.last().expect("depth is positive");
    let correspondence = build_correspondence(&gk, f.space(), k, cfg.refine)?;
    let (_, witness) = factor_witness(lambda, &gk, cfg)?;
    let total_bound = conjugate.epsilon + conjugate.mesh;
    Ok(ApproxCertificate {
        depth: k,
        cover_graph: gk,
        mixing_constant,
        onto,
        chain_mixing,
        percon,
        conjugate,
        correspondence_digest: correspondence.digest(),
        witness,
        total_bound,
    })
}

/// One line per re-checked claim of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub depth: usize,
    pub cover_graph_matches: bool,
    pub subgraph: bool,
    pub mesh_within_delta: bool,
    pub epsilon_least: bool,
    pub total_bound: bool,
    pub correspondence: bool,
    pub factor_code: bool,
    pub sigma_bound: bool,
}

impl CertificateCheck {
    pub fn all(&self) -> bool {
        self.cover_graph_matches
            && self.subgraph
            && self.mesh_within_delta
            && self.epsilon_least
            && self.total_bound
            && self.correspondence
            && self.factor_code
            && self.sigma_bound
    }
}

/// Recompute every claim of `cert` from `lambda` and `f` alone.
pub fn verify_certificate(
    lambda: &DirectedGraph,
    f: &CantorMap,
    cert: &ApproxCertificate,
    cfg: &ApproxConfig,
) -> Result<CertificateCheck> {
    let k = cert.depth;
    let gk = f.cover_graph(k)?;
    let cover_graph_matches = gk == cert.cover_graph;
    let subgraph = sft::is_subgraph(&sft::essentialize(&gk), &gk) && sft::is_subgraph(&gk, &sft::essentialize(&gk));
    let m = mesh(f.space(), &standard_partition(f.space(), k)?);
    let eps = cert.conjugate.epsilon;
    let mesh_within_delta = m == cert.conjugate.mesh && m <= f.delta_for(eps)?;
    let epsilon_least = eps.neg_log2().is_some_and(|t| f.delta_for(Dyadic::pow2_neg(t + 1)).is_ok_and(|d| d < m));
    let total_bound = cert.total_bound == eps + m;
    let correspondence = build_correspondence(&gk, f.space(), k, cfg.refine)?;
    let correspondence_ok = correspondence.digest() == cert.correspondence_digest
        && correspondence.roots().count() == gk.len()
        && correspondence.roots().all(|p| !p.x.is_empty());
    let (code, w) = factor_witness(lambda, &gk, cfg)?;
    let mut factor_code = code.digest() == cert.witness.code_digest && w == cert.witness;
    if let (Some(m), Some(cj)) = (code.as_marker(), &cert.witness.coverage) {
        let point = crate::point::EventuallyPeriodicPoint::from_json(&cj.point, lambda)?;
        let word = gk.parse_word(&cj.word)?;
        let img = code.apply(&point, cj.position, cj.position + word.len() as i64)?;
        factor_code &= img == word && word == m.constants().w0;
    }
    let sigma_bound = cert.witness.sigma_bound < Dyadic::ONE;
    Ok(CertificateCheck {
        depth: k,
        cover_graph_matches,
        subgraph,
        mesh_within_delta,
        epsilon_least,
        total_bound,
        correspondence: correspondence_ok,
        factor_code,
        sigma_bound,
    })
}

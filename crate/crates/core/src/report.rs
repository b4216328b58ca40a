//! JSON reports, text tables and DOT exports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factor::{
    coverage_witness, preimage_cylinder, CodeJson, CoverageWitnessJson, Preimage, SlidingBlockCode,
};
use crate::marker::{verify_coverage, verify_disjoint, MarkerSet, MarkerSetJson};
use crate::pipeline::ConvergenceReport;
use crate::point::PointJson;
use crate::sft::{self, DirectedGraph, EventuallyPeriodicSet, MixingObstruction, MixingVerdict, Symbol};
use crate::verdict::Verdict;

/// Wraps a report with the tool version and, outside canonical mode, the
/// time it was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub tool: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generated_at: Option<u64>,
    pub report: T,
}

impl<T> Envelope<T> {
    pub fn new(report: T, canonical: bool) -> Self {
        let generated_at = (!canonical).then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        Envelope { tool: format!("cantor-approx {}", env!("CARGO_PKG_VERSION")), generated_at, report }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub least_period: usize,
    pub walk: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub graph: DirectedGraph,
    pub essential: bool,
    pub mixing: bool,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    pub mixing_constant: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub obstruction: Option<MixingObstruction>,
    pub perfect: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub isolated_point: Option<PointJson>,
    pub finite_periodic: bool,
    pub per: EventuallyPeriodicSet,
    /// Periodic orbits of least period at most `orbit_bound`.
    pub orbit_bound: usize,
    pub orbits: Vec<OrbitJson>,
}

pub fn analyze(g: &DirectedGraph, orbit_bound: usize) -> Result<AnalyzeReport> {
    let essential = g.is_essential();
    let (mixing, mixing_constant, obstruction) = match sft::is_mixing(g)? {
        MixingVerdict::Mixing { constant } => (true, Some(constant), None),
        MixingVerdict::NotMixing { obstruction } => (false, None, Some(obstruction)),
    };
    let isolated = sft::isolated_point(g);
    Ok(AnalyzeReport {
        graph: g.clone(),
        essential,
        mixing,
        mixing_constant,
        obstruction,
        perfect: isolated.is_none() && !g.is_empty(),
        isolated_point: isolated.map(|p| p.to_json(g)),
        finite_periodic: sft::is_finite_periodic(g),
        per: sft::per_spectrum(g),
        orbit_bound,
        orbits: sft::periodic_orbits_upto(g, orbit_bound)
            .into_iter()
            .map(|o| OrbitJson { least_period: o.least_period, walk: g.render_word(&o.walk) })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkersReport {
    pub markers: MarkerSetJson,
    pub disjoint: Verdict,
    pub coverage: Verdict,
}

pub fn markers_report(m: &MarkerSet) -> MarkersReport {
    MarkersReport { markers: m.to_json(), disjoint: verify_disjoint(m), coverage: verify_coverage(m) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageJson {
    pub word: String,
    /// `enumerated`, `witnessed` or `empty`.
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cylinders: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point: Option<PointJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub code: CodeJson,
    pub digest: String,
    pub radius: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coverage: Option<CoverageWitnessJson>,
    pub image_admissibility: Verdict,
    /// Preimages of the cylinders `{y : y[0..|w|] = w}` for `w` in `W`.
    pub preimages: Vec<PreimageJson>,
}

pub fn factor_report(code: &SlidingBlockCode, w: &[Vec<Symbol>], budget: u64) -> Result<FactorReport> {
    let coverage = match code.as_marker() {
        Some(m) => Some(coverage_witness(code, &m.constants().w0)?),
        None => None,
    };
    let mut preimages = Vec::new();
    for u in w {
        let p = preimage_cylinder(code, 0, u, coverage.as_ref(), budget)?;
        let word = code.target().render_word(u);
        preimages.push(match p {
            Preimage::Empty => PreimageJson { word, kind: "empty".into(), cylinders: None, point: None },
            Preimage::Enumerated { words, .. } => {
                PreimageJson { word, kind: "enumerated".into(), cylinders: Some(words.len()), point: None }
            }
            Preimage::Witnessed { point } => PreimageJson {
                word,
                kind: "witnessed".into(),
                cylinders: None,
                point: Some(point.to_json(code.source())),
            },
        });
    }
    Ok(FactorReport {
        code: code.to_json(),
        digest: code.digest(),
        radius: code.radius().to_string(),
        coverage: coverage.map(|c| c.to_json(code)),
        image_admissibility: code.image_admissibility(budget),
        preimages,
    })
}

/// `k | N_k | percon | ε_k | total` with one row per certificate and a
/// closing line for a halt.
pub fn convergence_table(r: &ConvergenceReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>3}  {:>4}  {:>6}  {:>8}  {:>10}  {:>6}", "k", "N_k", "percon", "eps_k", "total", "|G_k|");
    for c in &r.certificates {
        let _ = writeln!(
            s,
            "{:>3}  {:>4}  {:>6}  {:>8}  {:>10}  {:>6}",
            c.depth,
            c.mixing_constant,
            if c.percon.holds() { "ok" } else { "fail" },
            c.conjugate.epsilon.to_string(),
            c.total_bound.to_string(),
            c.cover_graph.len()
        );
    }
    if let Some(h) = &r.halted {
        let _ = writeln!(s, "halted at depth {}: {}", h.depth, h.message);
    } else if !r.strictly_decreasing {
        let _ = writeln!(s, "warning: bounds are not strictly decreasing");
    }
    s
}

/// One DOT document per certified cover graph, keyed by depth.
pub fn cover_graph_dots(r: &ConvergenceReport) -> Vec<(usize, String)> {
    r.certificates.iter().map(|c| (c.depth, c.cover_graph.to_dot(&format!("G_{}", c.depth)))).collect()
}

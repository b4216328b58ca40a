//! Factor codes from a source SFT onto a mixing target, built from markers,
//! connecting words and an equivariant assignment of periodic orbits.

mod code;
mod constants;
mod periodic;
mod psi;
mod witness;

pub use code::{
    compile_code, compile_factor, CodeJson, ConstantsJson, FactorConfig, MarkerCode, SlidingBlockCode,
    TableCode,
};
pub(crate) use code::digest_json;
pub use constants::{choose_constants, MixingConstants};
pub use periodic::{assign_periodic, PeriodicAssignment};
pub use psi::{build_psi, PsiTable};
pub use witness::{
    cover_graph_via, coverage_witness, preimage_cylinder, CodeCoverGraph, CoverageWitness, CoverageWitnessJson,
    Preimage,
};

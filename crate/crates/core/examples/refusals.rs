// Inputs the construction refuses, each with its witness.

use cantor_approx::factor::{compile_factor, FactorConfig};
use cantor_approx::marker::{build_markers, MarkerConfig};
use cantor_approx::pipeline::{approximate, ApproxConfig};
use cantor_approx::{catalog, Error, Refusal, Result};

pub fn run_example() -> Result<()> {
    let cfg = ApproxConfig::default();

    let r = approximate(&catalog::full_shift(), &catalog::two_three_shift_map(), &[1, 2, 3], &cfg)?;
    let h = r.halted.expect("percon fails");
    println!("full shift vs 2,3-cycle map: {}", h.message);
    assert_eq!(h.refusal, Refusal::Percon { witness: 1 });

    let r = approximate(&catalog::golden_mean(), &catalog::identity_map(), &[1], &cfg)?;
    println!("identity map: {}", r.halted.as_ref().unwrap().message);
    assert!(matches!(r.halted.unwrap().refusal, Refusal::NotChainMixing { depth: 1, .. }));

    let e = build_markers(&catalog::single_loop(), &MarkerConfig::new(2, 5)).unwrap_err();
    println!("single loop: {e}");
    assert!(matches!(e, Error::Refused(Refusal::NotPerfect { .. })));

    let e = compile_factor(&catalog::two_cycle(), &catalog::full_shift(), &[], &FactorConfig::default()).unwrap_err();
    println!("2-cycle source: {e}");
    assert!(matches!(e, Error::Refused(Refusal::FinitePeriodic)));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

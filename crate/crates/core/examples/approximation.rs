// Certified approximation of the full 2-shift map by conjugates of the
// golden mean shift, with every certificate checked again from scratch.

use cantor_approx::pipeline::{approximate, verify_certificate, ApproxConfig};
use cantor_approx::report::convergence_table;
use cantor_approx::{catalog, Result};

pub fn run_example() -> Result<()> {
    let (lambda, f) = (catalog::golden_mean(), catalog::full_shift_map());
    let cfg = ApproxConfig::default();
    let r = approximate(&lambda, &f, &[2, 3, 4, 5], &cfg)?;
    print!("{}", convergence_table(&r));
    assert!(r.succeeded() && r.strictly_decreasing);
    for c in &r.certificates {
        let chk = verify_certificate(&lambda, &f, c, &cfg)?;
        println!("depth {}: {}", c.depth, if chk.all() { "verified" } else { "FAILED" });
        assert!(chk.all());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

// A factor code from the golden mean shift onto the full 2-shift whose
// image meets every 3-word cylinder.

use cantor_approx::factor::{compile_factor, coverage_witness, preimage_cylinder, FactorConfig, Preimage};
use cantor_approx::{catalog, sft, EventuallyPeriodicPoint, Result};

pub fn run_example() -> Result<()> {
    let (lambda, sigma) = (catalog::golden_mean(), catalog::full_shift());
    let w = sft::words(&sigma, 3);
    let code = compile_factor(&lambda, &sigma, &w, &FactorConfig::default())?;
    let m = code.as_marker().expect("a marker code");
    let c = m.constants();
    println!("n = {}, w0 = {}, N = {}, marker radius {}", c.n, sigma.render_word(&c.w0), c.big_n, m.markers().k());
    println!("code radius L' = {}", code.radius());

    let wit = coverage_witness(&code, &c.w0)?;
    println!("w0 appears at {} in the image of {}", wit.position, wit.point.render(&lambda));
    assert!(wit.verify(&code)?);

    for u in &w {
        let p = preimage_cylinder(&code, 0, u, Some(&wit), 1 << 16)?;
        let Preimage::Witnessed { point } = p else { unreachable!("ranked codes are too wide to enumerate") };
        assert_eq!(code.apply(&point, 0, 3)?, *u);
    }
    println!("all {} cylinders of 3-words are hit", w.len());

    // deep inside a periodic stretch the output follows the assigned orbit
    let x = EventuallyPeriodicPoint::periodic(vec![0, 0, 1])?;
    println!("(aab)^inf maps to {}", sigma.render_word(&code.apply(&x, 0, 9)?));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

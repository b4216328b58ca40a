// Mixing, perfectness and period spectra of a few small graphs.

use cantor_approx::sft::{self, MixingVerdict};
use cantor_approx::{DirectedGraph, Result};

pub fn run_example() -> Result<()> {
    let golden = DirectedGraph::new(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")])?;
    let cycles = DirectedGraph::new(
        ["a", "b", "c", "d"],
        [("a", "b"), ("b", "a"), ("a", "c"), ("c", "d"), ("d", "a")],
    )?;
    let two = DirectedGraph::new(["a", "b"], [("a", "b"), ("b", "a")])?;

    for (name, g) in [("golden mean", &golden), ("2,3 cycles", &cycles), ("2-cycle", &two)] {
        let mixing = sft::is_mixing(g)?;
        let per = sft::per_spectrum(g);
        println!("{name}: {mixing:?}, perfect = {}, Per = {per}", sft::is_perfect(g));
    }

    assert_eq!(sft::is_mixing(&golden)?, MixingVerdict::Mixing { constant: 2 });
    assert!(!sft::is_mixing(&two)?.is_mixing());
    let per = sft::per_spectrum(&cycles);
    assert!(!per.contains(1) && (2..40).all(|n| per.contains(n)));
    // a single cycle is one finite orbit, so every point is isolated
    assert!(!sft::is_perfect(&two));
    assert!(sft::is_finite_periodic(&two));

    for o in sft::periodic_orbits_upto(&golden, 4) {
        println!("  orbit of period {}: {}", o.least_period, golden.render_word(&o.walk));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

// Marker sets: window sets found by search and checked exhaustively, and
// the ranked rule used when windows are too large to enumerate.

use cantor_approx::marker::{build_markers, decompose, verify_coverage, verify_disjoint, verify_on_words, MarkerConfig, MarkerStrategy};
use cantor_approx::{catalog, Result, Verdict};

pub fn run_example() -> Result<()> {
    let g = catalog::golden_mean();
    let m = build_markers(&g, &MarkerConfig::new(2, 5))?;
    println!("golden mean, N = 2, k = 5: {:?} windows at L = {:?}", m.windows().map(|w| w.len()), m.window_radius());
    let (d, c) = (verify_disjoint(&m), verify_coverage(&m));
    println!("disjoint: {d:?}\ncoverage: {c:?}");
    assert!(matches!(d, Verdict::Exhaustive { .. }) && matches!(c, Verdict::Exhaustive { .. }));

    let x = g.parse_word("aabaaabababaaaaaaaaaaaabaabaabaaab")?;
    let dec = decompose(&m, &x)?;
    println!("marks in {}: {:?}", g.render_word(&x), dec.marked);

    let r = build_markers(&g, &MarkerConfig::new(2, 5).strategy(MarkerStrategy::Ranked))?;
    println!("ranked rule, radius bound {}", r.radius());
    let v = verify_on_words(&r, 24);
    println!("on all words of length 24: {v:?}");
    assert!(v.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

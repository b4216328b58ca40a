// Cylinders, clopen sets and partitions of the Cantor set.

use cantor_approx::cantor::{diam, mesh, split_clopen, standard_partition};
use cantor_approx::{catalog, ClopenSet, Dyadic, Result};

pub fn run_example() -> Result<()> {
    let x = catalog::full_space();
    let u = ClopenSet::parse(&x, &["aa", "ab", "ba"])?;
    println!("{:?} has diameter {}", u.render(&x), diam(&x, &u)?);
    assert_eq!(diam(&x, &u)?, Dyadic::ONE);
    // [aa] and [ab] merge into [a]
    assert_eq!(u.render(&x), ["a", "ba"]);

    for k in 1..=4 {
        let p = standard_partition(&x, k)?;
        println!("depth {k}: {} parts, mesh {}", p.parts().len(), mesh(&x, &p));
        assert_eq!(mesh(&x, &p), Dyadic::pow2_neg(k as i32));
    }

    let g = catalog::golden_space();
    let pieces = split_clopen(&g, &ClopenSet::parse(&g, &["ab"])?, 3)?;
    for (i, p) in pieces.iter().enumerate() {
        println!("piece {i}: {:?}", p.render(&g));
    }
    assert_eq!(pieces.len(), 3);
    assert!(pieces.iter().all(|p| !p.is_empty()));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

// Cover graphs, onto and chain-mixing certificates, and moduli of
// continuity of block maps on the Cantor set.

use cantor_approx::endo::sup_distance_at_depth;
use cantor_approx::{catalog, CantorMap, Dyadic, Result};

pub fn run_example() -> Result<()> {
    let f = catalog::full_shift_map();
    let g2 = f.cover_graph(2)?;
    println!("G_2 of the shift: {g2:?}");
    assert_eq!(g2.len(), 4);
    assert_eq!(g2.edge_count(), 8);

    let onto = f.check_onto(4).into_result()?;
    let mix = f.check_chain_mixing(4)?.into_result()?;
    println!("onto to depth {}, mixing constants {:?}", onto.depth, mix.constants);

    let id = catalog::identity_map();
    let fail = id.check_chain_mixing(1)?;
    println!("identity: {:?}", fail.failure);
    assert!(fail.failure.is_some());

    for t in 1..=4 {
        let eps = Dyadic::pow2_neg(t);
        println!("eps = {eps}: delta = {}", f.delta_for(eps)?);
    }

    // differs from the shift only on windows starting "bb"
    let twisted = catalog::bb_twisted_shift();
    let d = sup_distance_at_depth(&f, &twisted, 3)?;
    println!("d(shift, twisted) = {} on {:?}", d.lower, d.witness);
    assert_eq!(d.lower, Dyadic::ONE);

    let agree = CantorMap::from_fn(f.space().clone(), 2, |w| w[1])?;
    assert_eq!(sup_distance_at_depth(&f, &agree, 3)?.lower, Dyadic::ZERO);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

//! Minimal resolution of k over random algebras with a Conca generator,
//! compared with 1/(1 - et + rt^2).
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shortres::algebra::ShortAlgebra;
use shortres::modrep::FiniteModule;
use shortres::resolution::{default_depth, ResolveOptions, Resolution};
use shortres::series::{Poly, TruncSeries};
use shortres::{Field, Result};

fn main() -> Result<()> {
    let f = Field::prime(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (e, r) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
        let (a, x) = ShortAlgebra::random_conca(&f, e, r, &mut rng);
        let k = FiniteModule::residue_field(Arc::new(a));
        let depth = default_depth(e);
        let res = Resolution::resolve(&k, depth, ResolveOptions { budget: 100_000, hint: Some(x) })?;
        let expected = TruncSeries::inverse_of_poly(&Poly::koszul_denominator(e, r), depth)?;
        let agree = res.poincare().coeffs() == expected.coeffs();
        println!("e={e} r={r}: betti {:?} matches 1/({}) : {agree}", res.betti(), Poly::koszul_denominator(e, r));
    }
    Ok(())
}

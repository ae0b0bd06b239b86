//! Building modules: residue field, maximal ideal, quotients, Hom and sums.
use std::sync::Arc;

use shortres::algebra::ShortAlgebra;
use shortres::modrep::FiniteModule;
use shortres::{Field, Result};

fn show(name: &str, m: &FiniteModule) {
    println!("{name:<14} dim {:>3}  hilbert {:?}  generators {}", m.dim(), m.hilbert_function().as_vec(), m.minimal_generators());
}

fn main() -> Result<()> {
    let f = Field::prime(101)?;
    let r = Arc::new(ShortAlgebra::exterior_like(&f, 2));
    let k = FiniteModule::residue_field(r.clone());
    let rr = FiniteModule::regular(r.clone());
    let m = FiniteModule::maximal_ideal(r.clone());
    show("k", &k);
    show("R", &rr);
    show("m", &m);

    // R / (x_0) as a cyclic module: relation vector in R-coordinates {1, x0, x1, z}
    let q = FiniteModule::quotient(r.clone(), 1, &[vec![0, 1, 0, 0]])?;
    show("R/(x0)", &q);
    show("Hom(m, R)", &m.hom(&rr)?);
    show("k + R/(x0)", &FiniteModule::direct_sum(&[k, q])?);
    let rand = FiniteModule::random(r, 2, 0.5, 7)?;
    show("random", &rand);
    assert!(rand.validate().passed());
    Ok(())
}

//! Poincare series identities: fiber products and the b-sequence.
use std::sync::Arc;

use shortres::algebra::ShortAlgebra;
use shortres::modrep::FiniteModule;
use shortres::resolution::{ResolveOptions, Resolution};
use shortres::series::{b_sequence, closed_form_with_binomials, dress_kramer};
use shortres::{Field, Result};

fn main() -> Result<()> {
    let f = Field::prime(101)?;
    let depth = 8;
    let poincare = |a: &ShortAlgebra| -> Result<_> {
        let k = FiniteModule::residue_field(Arc::new(a.clone()));
        Ok(Resolution::resolve(&k, depth, ResolveOptions { budget: 100_000, hint: None })?.poincare())
    };
    let (s, t) = (ShortAlgebra::exterior_like(&f, 2), ShortAlgebra::cubic_truncation(&f));
    let (ps, pt) = (poincare(&s)?, poincare(&t)?);
    let predicted = dress_kramer(&ps, &ps, &pt)?;
    let actual = poincare(&ShortAlgebra::fiber_product(&s, &t)?)?;
    println!("P_S = {ps}\nP_T = {pt}\nfiber product: predicted {predicted}\n               resolved  {actual}");
    assert_eq!(predicted.coeffs(), actual.coeffs());

    for e in 2..=5 {
        let b = b_sequence(e, 8)?;
        let closed: Vec<String> = (0..=8).map(|n| closed_form_with_binomials(e, n).to_string()).collect();
        println!("e={e}: b = {:?}\n      closed form = [{}]", b.values, closed.join(", "));
    }
    Ok(())
}

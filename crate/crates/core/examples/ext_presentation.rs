//! The presentation of Ext_R(k,k), its reduced words, and the kernel F
//! attached to a module with m^2 M = 0.
use std::sync::Arc;

use shortres::algebra::{find_conca, normalize_basis, AlgebraSpec, Strategy};
use shortres::extalg::{bound_equality_check, dimension_check, ExtPresentation};
use shortres::modrep::FiniteModule;
use shortres::resolution::ResolveOptions;
use shortres::{Error, Result};

fn main() -> Result<()> {
    let a = AlgebraSpec::parse(include_str!("gorenstein3.json"))?.build()?;
    let search = find_conca(&a, Strategy::Exhaustive, 1, 0)?;
    let x = search.found().ok_or_else(|| Error::Precondition("no conca generator".into()))?.to_vec();
    let na = normalize_basis(&a, &x)?;
    let pres = ExtPresentation::from_normalized(&na)?;
    for h in 0..pres.r() {
        println!("relation {h}: {}", pres.relation_string(h));
    }
    let dims = dimension_check(&pres, 8, None)?;
    println!("reduced words per degree {:?} (recurrence agrees: {})", dims.reduced, dims.passed);

    let r = Arc::new(a.clone());
    let opts = ResolveOptions { budget: 50_000, hint: Some(x) };
    // no relations: M = (R/m^2)^2
    let m0 = FiniteModule::random(r, 2, 0.0, 11)?;
    let sq = m0.radical_square();
    let m = m0.quotient_by(&(0..sq.rank()).map(|i| sq.row(i).to_vec()).collect::<Vec<_>>())?;
    let (bound, kf) = bound_equality_check(&na, &m, 7, opts)?;
    println!("dim F^n = {:?}, new generators {:?}", kf.dims, kf.generators);
    println!("generator bound {:?}, syzygy index {:?}, equal: {}", bound.lhs, bound.rhs, bound.passed);
    Ok(())
}

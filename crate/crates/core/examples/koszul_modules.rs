//! Koszul verdicts, syzygy indices and the rationality defect.
use std::sync::Arc;

use shortres::algebra::ShortAlgebra;
use shortres::koszul::{is_koszul, koszul_syzygy_index, rationality_check};
use shortres::modrep::FiniteModule;
use shortres::resolution::{negative_syzygy, ResolveOptions};
use shortres::{Field, Result};

fn main() -> Result<()> {
    let f = Field::prime(101)?;
    let r = Arc::new(ShortAlgebra::exterior_like(&f, 2));
    let opts = ResolveOptions { budget: 50_000, hint: Some(vec![0, 1]) };

    let mut modules = vec![
        ("k".to_string(), FiniteModule::residue_field(r.clone())),
        ("R/(x0)".to_string(), FiniteModule::quotient(r.clone(), 1, &[vec![0, 1, 0, 0]])?),
    ];
    for i in 1..=3 {
        modules.push((format!("Omega_-{i}(k)"), negative_syzygy(r.clone(), i, opts.clone())?));
    }
    for (name, m) in &modules {
        let v = is_koszul(m, 8, opts.clone())?;
        let idx = koszul_syzygy_index(m, 8, opts.clone())?;
        let rat = rationality_check(m, 8, opts.clone())?;
        let num = rat.numerator.map(|p| p.to_string()).unwrap_or_else(|| "?".into());
        println!("{name:<12} {:<22} index {idx:?}  P(t)(1-2t+t^2) = {num}", v.label());
    }
    Ok(())
}

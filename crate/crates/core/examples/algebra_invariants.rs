//! Invariants, Conca generators and the normalized basis of a few algebras.
use shortres::algebra::{find_conca, normalize_basis, AlgebraSpec, ShortAlgebra, Strategy};
use shortres::{Field, Result};

fn describe(name: &str, a: &ShortAlgebra) -> Result<()> {
    println!("{name}: e = {}, r = {}, H = {}, socle rank {}, gorenstein {}", a.e(), a.r(), a.hilbert(), a.socle_rank(), a.is_gorenstein());
    let search = find_conca(a, Strategy::Exhaustive, 1, 0)?;
    match search.found() {
        Some(x) => {
            let na = normalize_basis(a, x)?;
            println!("  conca generator {x:?}, normalized basis round-trips: {}", na.round_trip());
        }
        None => println!("  conca search: {}", search.status()),
    }
    Ok(())
}

fn main() -> Result<()> {
    let f = Field::prime(101)?;
    let cx2 = AlgebraSpec::parse(include_str!("cx2.json"))?.build()?;
    describe("k[x,y]/(x^2, y^2)", &cx2)?;
    describe("k[x]/(x^3)", &ShortAlgebra::cubic_truncation(&f))?;
    describe("square zero, e = 3", &ShortAlgebra::square_zero(&f, 3))?;
    describe("gorenstein, e = 3", &AlgebraSpec::parse(include_str!("gorenstein3.json"))?.build()?)?;
    let fp = ShortAlgebra::fiber_product(&cx2, &ShortAlgebra::cubic_truncation(&f))?;
    describe("fiber product", &fp)?;
    assert!(fp.validate().passed());
    Ok(())
}

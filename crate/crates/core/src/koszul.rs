//! Linear strands of minimal resolutions and the Koszul property.
//!
//! lin_j(F) has terms gr_{j-n}R (x) k^{beta_n} for j-2 <= n <= j, followed by
//! gr_j M in position -1. In terms of the V/C splitting of `Resolution`:
//!
//! * lin_1 fails exactly when the linear parts of the generators of Omega_1
//!   are dependent (position 1);
//! * lin_2 fails at position 2 when C_2 is nonempty and at position 0 when
//!   K meets R_2 F_0 in more than mK;
//! * for j >= 3, lin_j fails at position j when C_j is nonempty and at
//!   position j-2 when C_{j-1} is nonempty.
//!
//! The explicit complexes are also built, for cross-checks and witnesses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{kernel, rank, solve, Echelon, Mat};
use crate::field::Elem;
use crate::modrep::FiniteModule;
use crate::resolution::{ResolveOptions, Resolution};
use crate::series::{Poly, TruncSeries, SAFETY_WINDOW};

/// Syzygy modules must be Koszul through at least this many strands before
/// they are accepted as Koszul syzygies.
pub const MIN_WINDOW: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KoszulStatus {
    Koszul,
    NonKoszul,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub j: usize,
    pub position: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulVerdict {
    pub status: KoszulStatus,
    /// Strands checked: all lin_j with j <= depth were exact, except for a
    /// non-Koszul verdict, where depth is the failing strand.
    pub depth: usize,
    pub witness: Option<Witness>,
}

impl KoszulVerdict {
    pub fn is_koszul(&self) -> bool {
        self.status == KoszulStatus::Koszul
    }

    pub fn is_non_koszul(&self) -> bool {
        self.status == KoszulStatus::NonKoszul
    }

    pub fn label(&self) -> String {
        match self.status {
            KoszulStatus::Koszul => format!("koszul-up-to-{}", self.depth),
            KoszulStatus::NonKoszul => {
                let w = self.witness.unwrap();
                format!("non-koszul(j={}, position={})", w.j, w.position)
            }
            KoszulStatus::Inconclusive => format!("inconclusive (checked through {})", self.depth),
        }
    }
}

fn nonempty_c(res: &Resolution, n: usize) -> bool {
    res.socle_generators(n).map_or(false, |c| c > 0)
}

/// First failure of exactness of lin_j, read off the resolution (which must
/// reach degree j).
pub fn strand_failure(res: &Resolution, j: usize) -> Option<Witness> {
    debug_assert!(res.depth() >= j);
    let at = |position: i64| Some(Witness { j, position });
    match j {
        0 => None,
        1 => (!res.lin1_exact()).then(|| at(1)).flatten(),
        2 => {
            if nonempty_c(res, 2) {
                at(2)
            } else if !res.lin2_bottom_exact() {
                at(0)
            } else {
                None
            }
        }
        _ => {
            if nonempty_c(res, j) {
                at(j as i64)
            } else if nonempty_c(res, j - 1) {
                at(j as i64 - 2)
            } else {
                None
            }
        }
    }
}

/// Check lin_0 .. lin_depth, extending the resolution one degree at a time.
pub fn is_koszul_resolved(res: &mut Resolution, depth: usize) -> Result<KoszulVerdict> {
    for j in 0..=depth {
        res.extend_to(j)?;
        if res.depth() < j {
            return Ok(KoszulVerdict { status: KoszulStatus::Inconclusive, depth: j - 1, witness: None });
        }
        if let Some(w) = strand_failure(res, j) {
            return Ok(KoszulVerdict { status: KoszulStatus::NonKoszul, depth: j, witness: Some(w) });
        }
    }
    Ok(KoszulVerdict { status: KoszulStatus::Koszul, depth, witness: None })
}

pub fn is_koszul(m: &FiniteModule, depth: usize, opts: ResolveOptions) -> Result<KoszulVerdict> {
    let mut res = Resolution::new(m, opts)?;
    is_koszul_resolved(&mut res, depth)
}

/// The complex lin_j(F) with explicit matrices.
#[derive(Clone, Debug)]
pub struct LinComplex {
    pub j: usize,
    /// Homological positions, descending; -1 stands for gr_j M.
    pub positions: Vec<i64>,
    pub dims: Vec<usize>,
    /// maps[k] goes from positions[k] to positions[k+1].
    pub maps: Vec<Mat>,
}

/// Basis of m^a M as echelon rows.
fn power_of_radical(m: &FiniteModule, a: usize) -> Echelon {
    match a {
        0 => {
            let mut e = Echelon::new(m.field(), m.dim());
            for k in 0..m.dim() {
                let mut v = vec![0; m.dim()];
                v[k] = 1;
                e.insert(&v);
            }
            e
        }
        1 => m.radical(),
        2 => m.radical_square(),
        _ => Echelon::new(m.field(), m.dim()),
    }
}

/// Coordinates in m^a M / m^{a+1} M of the columns of `images` (which lie in m^a M).
fn graded_coordinates(m: &FiniteModule, a: usize, images: &Mat) -> Result<Mat> {
    let f = m.field();
    let upper = power_of_radical(m, a);
    let lower = power_of_radical(m, a + 1);
    let mut ext = lower.clone();
    let mut lifts = Vec::new();
    for t in 0..upper.rank() {
        if ext.insert(upper.row(t)) {
            lifts.push(upper.row(t).to_vec());
        }
    }
    let q = lifts.len();
    let mut cols = lifts;
    cols.extend((0..lower.rank()).map(|t| lower.row(t).to_vec()));
    let a_mat = Mat::from_columns(m.dim(), &cols);
    let x = solve(f, &a_mat, images)?.ok_or_else(|| Error::Contract("augmentation leaves the filtration step".into()))?;
    let mut out = Mat::zeros(q, images.cols());
    for i in 0..q {
        for c in 0..images.cols() {
            out.set(i, c, x.get(i, c));
        }
    }
    Ok(out)
}

pub fn lin_complex(res: &mut Resolution, j: usize) -> Result<LinComplex> {
    if res.depth() < j {
        return Err(Error::Contract(format!("lin_{j} needs a resolution of depth {j}, have {}", res.depth())));
    }
    let alg = res.algebra().clone();
    let f = alg.field().clone();
    let (e, r, d) = (alg.e(), alg.r(), alg.dim());
    let width = [1, e, r];
    let lo = j.saturating_sub(2);
    let mut positions: Vec<i64> = (lo..=j).rev().map(|n| n as i64).collect();
    let mut dims: Vec<usize> = (lo..=j).rev().map(|n| width[j - n] * res.betti()[n]).collect();
    let mut maps = Vec::new();
    for n in (lo.max(1)..=j).rev() {
        if n - 1 < lo {
            break;
        }
        let a = j - n;
        let gens = res.generators(n)?;
        let bp = res.betti()[n - 1];
        let dense: Vec<Vec<Elem>> = gens
            .iter()
            .map(|g| {
                let mut v = vec![0; d * bp];
                for &(i, x) in g {
                    v[i as usize] = x;
                }
                v
            })
            .collect();
        let mut m = Mat::zeros(width[a + 1] * bp, width[a] * gens.len());
        for (g, v) in dense.iter().enumerate() {
            if a == 0 {
                for t in 0..bp {
                    for i in 0..e {
                        m.set(t * e + i, g, v[t * d + 1 + i]);
                    }
                }
            } else {
                for i in 0..e {
                    for t in 0..bp {
                        for h in 0..r {
                            let mut s = 0;
                            for k in 0..e {
                                s = f.add(s, f.mul(alg.c(i, k, h), v[t * d + 1 + k]));
                            }
                            m.set(t * r + h, g * e + i, s);
                        }
                    }
                }
            }
        }
        maps.push(m);
    }
    if j <= 2 {
        let module = res.module().clone();
        let top = res.top().to_vec();
        let mut images = Mat::zeros(module.dim(), width[j] * top.len());
        for (g, &y) in top.iter().enumerate() {
            for c in 0..width[j] {
                let col = match j {
                    0 => {
                        let mut v = vec![0; module.dim()];
                        v[y] = 1;
                        v
                    }
                    1 => module.action(c).column(y),
                    _ => module.socle_action(c).ok_or_else(|| Error::Contract("module fails the algebra relations".into()))?.column(y),
                };
                for (s, &x) in col.iter().enumerate() {
                    images.set(s, g * width[j] + c, x);
                }
            }
        }
        let aug = graded_coordinates(&module, j, &images)?;
        positions.push(-1);
        dims.push(aug.rows());
        maps.push(aug);
    }
    Ok(LinComplex { j, positions, dims, maps })
}

impl LinComplex {
    /// Dimension of homology at positions[k].
    pub fn homology(&self, f: &crate::Field, k: usize) -> usize {
        let out = self.maps.get(k).map_or(0, |m| rank(f, m));
        let inc = if k == 0 { 0 } else { rank(f, &self.maps[k - 1]) };
        self.dims[k] - out - inc
    }

    /// A cycle at positions[k] that is not a boundary.
    pub fn witness_cycle(&self, f: &crate::Field, k: usize) -> Option<Vec<Elem>> {
        let cycles: Vec<Vec<Elem>> = match self.maps.get(k) {
            Some(m) => {
                let ker = kernel(f, m);
                (0..ker.cols()).map(|t| ker.column(t)).collect()
            }
            None => (0..self.dims[k])
                .map(|t| {
                    let mut v = vec![0; self.dims[k]];
                    v[t] = 1;
                    v
                })
                .collect(),
        };
        let mut bounds = Echelon::new(f, self.dims[k]);
        if k > 0 {
            let t = self.maps[k - 1].transpose();
            bounds.insert_rows(t.data(), t.rows());
        }
        cycles.into_iter().find(|c| !bounds.contains(c))
    }

    /// Composites of consecutive maps vanish.
    pub fn is_complex(&self, f: &crate::Field) -> bool {
        self.maps.windows(2).all(|w| w[1].mul(f, &w[0]).map_or(false, |p| p.is_zero()))
    }

    /// First position (in descending order) with nonzero homology.
    pub fn first_failure(&self, f: &crate::Field) -> Option<i64> {
        (0..self.dims.len()).find(|&k| self.homology(f, k) != 0).map(|k| self.positions[k])
    }
}

/// `is_koszul_resolved` decided from the explicit strand complexes.
pub fn is_koszul_explicit(res: &mut Resolution, depth: usize) -> Result<KoszulVerdict> {
    let f = res.algebra().field().clone();
    for j in 0..=depth {
        res.extend_to(j)?;
        if res.depth() < j {
            return Ok(KoszulVerdict { status: KoszulStatus::Inconclusive, depth: j - 1, witness: None });
        }
        let lin = lin_complex(res, j)?;
        if let Some(position) = lin.first_failure(&f) {
            return Ok(KoszulVerdict { status: KoszulStatus::NonKoszul, depth: j, witness: Some(Witness { j, position }) });
        }
    }
    Ok(KoszulVerdict { status: KoszulStatus::Koszul, depth, witness: None })
}

/// Least n such that Omega_n is Koszul through all strands the resolution
/// (of depth `depth`) can see, with at least `MIN_WINDOW` strands for n >= 1.
pub fn syzygy_index_resolved(res: &mut Resolution, depth: usize) -> Result<Option<usize>> {
    let verdict = is_koszul_resolved(res, depth)?;
    if verdict.is_koszul() {
        return Ok(Some(0));
    }
    res.extend_to(depth)?;
    let top = res.depth();
    if top < MIN_WINDOW + 1 {
        return Ok(None);
    }
    // smallest n with C_{n+1} .. C_top all empty
    let mut n = top;
    while n >= 1 && !nonempty_c(res, n) {
        n -= 1;
    }
    let n = n.max(1);
    Ok((n + MIN_WINDOW <= top).then_some(n))
}

pub fn koszul_syzygy_index(m: &FiniteModule, depth: usize, opts: ResolveOptions) -> Result<Option<usize>> {
    let mut res = Resolution::new(m, opts)?;
    syzygy_index_resolved(&mut res, depth)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalityReport {
    pub index: Option<usize>,
    /// P_M(t) (1 - et + rt^2) through the computed degree.
    pub product: Vec<i128>,
    /// The product as a polynomial when it vanishes above degree index + 2.
    pub numerator: Option<Poly>,
    /// P_M(t) H_R(-t) - t^i H_{Omega_i}(-t), expected of degree <= i + 1.
    pub defect: Option<Vec<i128>>,
    pub defect_bounded: Option<bool>,
}

pub fn rationality_resolved(res: &mut Resolution, depth: usize) -> Result<RationalityReport> {
    if depth < 4 {
        return Err(Error::Contract("rationality check needs depth >= 4".into()));
    }
    let index = syzygy_index_resolved(res, depth)?;
    let alg = res.algebra().clone();
    let denom = Poly::koszul_denominator(alg.e(), alg.r());
    let p = res.poincare();
    let n = p.order();
    let q = p.mul_poly(&denom)?;
    let (numerator, defect, defect_bounded) = match index {
        None => (None, None, None),
        Some(i) => {
            let vanish = |s: &TruncSeries, above: usize| s.coeffs()[(above + 1).min(n + 1)..].iter().all(|&x| x == 0);
            let numerator = (n > i + 2 && vanish(&q, i + 2)).then(|| q.to_poly());
            let syz = res.syzygy(i)?;
            let shifted: Vec<i64> = std::iter::repeat(0).take(i).chain(Poly::alternating(&syz.hilbert_function().as_vec()).coeffs().iter().map(|&c| c as i64)).collect();
            let d = q.sub(&TruncSeries::from_poly(&Poly::from_i64(&shifted), n))?;
            let ok = vanish(&d, i + 1);
            (numerator, Some(d.coeffs().to_vec()), Some(ok))
        }
    };
    Ok(RationalityReport { index, product: q.coeffs().to_vec(), numerator, defect, defect_bounded })
}

pub fn rationality_check(m: &FiniteModule, depth: usize, opts: ResolveOptions) -> Result<RationalityReport> {
    let mut res = Resolution::new(m, opts)?;
    rationality_resolved(&mut res, depth)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SjodinCase {
    SquareZero,
    FullSocle,
    SmallSocle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SjodinReport {
    pub case: SjodinCase,
    pub e: usize,
    pub s: usize,
    pub denominator: Poly,
    pub product: Vec<i128>,
    /// Degree bound claimed for the product; None means "finite".
    pub bound: Option<usize>,
    /// Degree of the truncated product.
    pub degree: Option<usize>,
    pub passed: bool,
}

pub fn sjodin_degree_check(m: &FiniteModule, depth: usize, opts: ResolveOptions) -> Result<SjodinReport> {
    let alg = m.algebra();
    let (e, r) = (alg.e(), alg.r());
    if r > 1 {
        return Err(Error::Contract(format!("degree bounds need rank m^2 <= 1, have {r}")));
    }
    let s = alg.socle_rank();
    let (case, denominator, bound) = match (r, s == e) {
        (0, _) => (SjodinCase::SquareZero, Poly::koszul_denominator(e, 0), Some(1)),
        (_, true) => (SjodinCase::FullSocle, Poly::koszul_denominator(e, 0), Some(2)),
        _ => (SjodinCase::SmallSocle, Poly::koszul_denominator(e, 1), None),
    };
    let res = Resolution::resolve(m, depth, opts)?;
    let q = res.poincare().mul_poly(&denominator)?;
    let degree = q.last_nonzero();
    let n = q.order();
    let passed = match bound {
        Some(b) => degree.map_or(true, |d| d <= b),
        None => !res.truncated() && n + 1 >= SAFETY_WINDOW && degree.map_or(true, |d| d + SAFETY_WINDOW <= n),
    };
    Ok(SjodinReport { case, e, s, denominator, product: q.coeffs().to_vec(), bound, degree, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{find_conca, quadric_from_terms, ShortAlgebra, Strategy};
    use crate::resolution::negative_syzygy;
    use crate::Field;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn f101() -> Field {
        Field::prime(101).unwrap()
    }

    fn cx2() -> Arc<ShortAlgebra> {
        let f = f101();
        let q = vec![quadric_from_terms(&f, 2, &[(0, 0, 1)]).unwrap(), quadric_from_terms(&f, 2, &[(1, 1, 1)]).unwrap()];
        Arc::new(ShortAlgebra::from_quadrics(&f, 2, &q).unwrap())
    }

    fn opts() -> ResolveOptions {
        ResolveOptions::default()
    }

    #[test]
    fn residue_field_of_complete_intersection() {
        let v = is_koszul(&FiniteModule::residue_field(cx2()), 10, opts()).unwrap();
        assert_eq!(v.label(), "koszul-up-to-10");
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json, serde_json::json!({"status": "koszul", "depth": 10, "witness": null}));
    }

    #[test]
    fn maximal_ideal_is_koszul() {
        let v = is_koszul(&FiniteModule::maximal_ideal(cx2()), 8, opts()).unwrap();
        assert!(v.is_koszul());
    }

    #[test]
    fn dual_of_first_syzygy() {
        let m = negative_syzygy(cx2(), 1, opts()).unwrap();
        assert_eq!(m.hilbert_function().as_vec(), vec![1, 2, 0]);
        let mut res = Resolution::new(&m, opts()).unwrap();
        let v = is_koszul_resolved(&mut res, 8).unwrap();
        assert!(v.is_non_koszul());
        assert!(v.witness.unwrap().j <= 2);
        assert_eq!(is_koszul_explicit(&mut res, 8).unwrap(), v);
        assert_eq!(syzygy_index_resolved(&mut res, 8).unwrap(), Some(1));
        let lin = lin_complex(&mut res, v.witness.unwrap().j).unwrap();
        let k = lin.positions.iter().position(|&p| p == v.witness.unwrap().position).unwrap();
        assert!(lin.witness_cycle(&f101(), k).is_some());
    }

    #[test]
    fn lin_one_of_residue_field() {
        let mut res = Resolution::resolve(&FiniteModule::residue_field(cx2()), 3, opts()).unwrap();
        let lin = lin_complex(&mut res, 1).unwrap();
        assert_eq!(lin.positions, vec![1, 0, -1]);
        assert_eq!(lin.dims, vec![2, 2, 0]);
        assert!(lin.is_complex(&f101()));
        assert_eq!(lin.first_failure(&f101()), None);
        let lin0 = lin_complex(&mut res, 0).unwrap();
        assert_eq!(lin0.dims, vec![1, 1]);
        assert_eq!(lin0.first_failure(&f101()), None);
    }

    #[test]
    fn rationality_examples() {
        let a = cx2();
        let rep = rationality_check(&FiniteModule::residue_field(a.clone()), 8, opts()).unwrap();
        assert_eq!(rep.index, Some(0));
        assert_eq!(rep.numerator, Some(Poly::from_i64(&[1])));
        let rep = rationality_check(&FiniteModule::regular(a.clone()), 8, opts()).unwrap();
        assert_eq!(rep.numerator, Some(Poly::from_i64(&[1, -2, 1])));
        let rep = rationality_check(&FiniteModule::maximal_ideal(a), 8, opts()).unwrap();
        assert_eq!(rep.numerator, Some(Poly::from_i64(&[2, -1])));
        assert_eq!(rep.defect_bounded, Some(true));
    }

    #[test]
    fn sjodin_cases() {
        let f = f101();
        let sq = Arc::new(ShortAlgebra::square_zero(&f, 2));
        let rep = sjodin_degree_check(&FiniteModule::residue_field(sq), 10, opts()).unwrap();
        assert_eq!((rep.case, rep.degree, rep.passed), (SjodinCase::SquareZero, Some(0), true));
        let fp = ShortAlgebra::fiber_product(&ShortAlgebra::square_zero(&f, 1), &ShortAlgebra::cubic_truncation(&f)).unwrap();
        let rep = sjodin_degree_check(&FiniteModule::residue_field(Arc::new(fp)), 10, opts()).unwrap();
        assert_eq!((rep.case, rep.degree, rep.passed), (SjodinCase::FullSocle, Some(0), true));
        let rep = sjodin_degree_check(&FiniteModule::residue_field(cx2()), 10, opts()).unwrap();
        assert_eq!((rep.case, rep.degree, rep.passed), (SjodinCase::SmallSocle, Some(0), true));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = Arc::new(ShortAlgebra::random(&f, 3, 2, &mut rng));
        assert!(sjodin_degree_check(&FiniteModule::residue_field(a), 4, opts()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn structural_and_explicit_verdicts_agree(seed in 0u64..5000, e in 1usize..4, g in 1usize..3, dens in 0.2f64..1.5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let kind = seed % 3;
            let a = if kind == 0 {
                let r = 1 + (seed as usize) % (e * (e + 1) / 2);
                Arc::new(ShortAlgebra::random(&f101(), e, r, &mut rng))
            } else {
                let e = e.max(2);
                loop {
                    let a = ShortAlgebra::random(&f101(), e, 1 + seed as usize % (e - 1), &mut rng);
                    if find_conca(&a, Strategy::Exhaustive, 1, 0).unwrap().found().is_some() {
                        break Arc::new(a);
                    }
                }
            };
            let m = FiniteModule::random(a.clone(), g, dens, seed).unwrap();
            let m = if kind == 2 { m.hom(&FiniteModule::regular(a)).unwrap() } else { m };
            let mut res = Resolution::new(&m, opts()).unwrap();
            let fast = is_koszul_resolved(&mut res, 5).unwrap();
            let slow = is_koszul_explicit(&mut res, 5).unwrap();
            prop_assert_eq!(&fast, &slow);
            for j in 0..=res.depth().min(5) {
                prop_assert!(lin_complex(&mut res, j).unwrap().is_complex(&f101()));
            }
        }

        #[test]
        fn syzygy_index_is_least(seed in 0u64..5000, g in 1usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = loop {
                let a = ShortAlgebra::random(&f101(), 2 + seed as usize % 2, 1 + seed as usize % 2, &mut rng);
                if find_conca(&a, Strategy::Exhaustive, 1, 0).unwrap().found().is_some() {
                    break Arc::new(a);
                }
            };
            let m = FiniteModule::random(a, g, 0.6, seed).unwrap();
            let depth = 7;
            let mut res = Resolution::new(&m, opts()).unwrap();
            let idx = syzygy_index_resolved(&mut res, depth).unwrap();
            prop_assert!(idx.is_some());
            let n = idx.unwrap();
            let syz = res.syzygy(n).unwrap();
            let mut own = Resolution::new(&syz, opts()).unwrap();
            prop_assert!(is_koszul_explicit(&mut own, depth - n).unwrap().is_koszul());
            if n >= 1 {
                let prev = res.syzygy(n - 1).unwrap();
                let mut own = Resolution::new(&prev, opts()).unwrap();
                prop_assert!(is_koszul_explicit(&mut own, depth - n + 1).unwrap().is_non_koszul());
            }
        }
    }
}

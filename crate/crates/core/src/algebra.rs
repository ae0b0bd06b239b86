//! Local algebras (R, m, k) with m^3 = 0 given by structure constants.
//!
//! Elements of R are coordinate vectors over the basis 1, x_0..x_{e-1},
//! z_0..z_{r-1}, where the x_i lift a basis of m/m^2 and the z_h span m^2.
//! All indices are 0-based.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{independent_columns, kernel, rank, solve, Echelon, Mat};
use crate::field::{Elem, Field};
use crate::series::TruncSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortAlgebra {
    field: Field,
    e: usize,
    r: usize,
    /// c[(i*e + j)*r + h] = coefficient of z_h in x_i x_j.
    c: Vec<Elem>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Index of the monomial X_i X_j (i <= j) in lex order.
fn monomial_index(e: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * e - i * (i + 1) / 2 + j
}

fn monomials(e: usize) -> Vec<(usize, usize)> {
    (0..e).flat_map(|i| (i..e).map(move |j| (i, j))).collect()
}

/// Symmetric coefficient matrix of a quadric from (i, j, coeff) triples, where
/// each triple contributes `coeff` to the monomial X_i X_j.
pub fn quadric_from_terms(f: &Field, e: usize, terms: &[(usize, usize, i64)]) -> Result<Mat> {
    let mut q = Mat::zeros(e, e);
    for &(i, j, c) in terms {
        if i >= e || j >= e {
            return Err(Error::Input(format!("quadric term X{i}X{j} out of range for e = {e}")));
        }
        let v = f.add(q.get(i, j), f.from_i64(c));
        q.set(i, j, v);
        q.set(j, i, v);
    }
    Ok(q)
}

impl ShortAlgebra {
    /// k[X_0..X_{e-1}] / (I + (X)^3) for I generated by the given quadrics.
    ///
    /// `quadrics[t]` is a symmetric e x e matrix: entry (i, i) is the
    /// coefficient of X_i^2 and entries (i, j) = (j, i) the coefficient of
    /// X_i X_j for i != j.
    pub fn from_quadrics(field: &Field, e: usize, quadrics: &[Mat]) -> Result<ShortAlgebra> {
        let nm = e * (e + 1) / 2;
        let mons = monomials(e);
        let mut span = Echelon::new(field, nm);
        let mut rows = Vec::new();
        for (t, q) in quadrics.iter().enumerate() {
            if q.rows() != e || q.cols() != e {
                return Err(Error::Contract(format!("quadric {t} is not {e} x {e}")));
            }
            if *q != q.transpose() {
                return Err(Error::Contract(format!("quadric {t} is not symmetric")));
            }
            let v: Vec<Elem> = mons.iter().map(|&(i, j)| q.get(i, j)).collect();
            span.insert(&v);
            rows.push(v);
        }
        // greedy lex choice of a basis of m^2 modulo the quadrics
        let mut chosen = Vec::new();
        let mut all = span.clone();
        for m in 0..nm {
            let mut v = vec![0; nm];
            v[m] = 1;
            if all.insert(&v) {
                chosen.push(m);
            }
        }
        let r = chosen.len();
        // write every monomial in the chosen basis modulo the quadric span
        let q_basis: Vec<Vec<Elem>> = (0..span.rank()).map(|i| span.row(i).to_vec()).collect();
        let mut cols: Vec<Vec<Elem>> = chosen
            .iter()
            .map(|&m| {
                let mut v = vec![0; nm];
                v[m] = 1;
                v
            })
            .collect();
        cols.extend(q_basis);
        let a = Mat::from_columns(nm, &cols);
        let b = Mat::identity(nm);
        let x = solve(field, &a, &b)?.expect("chosen monomials and quadrics span all of degree two");
        let mut c = vec![0; e * e * r];
        for i in 0..e {
            for j in 0..e {
                let m = monomial_index(e, i, j);
                for h in 0..r {
                    c[(i * e + j) * r + h] = x.get(h, m);
                }
            }
        }
        Ok(ShortAlgebra { field: field.clone(), e, r, c })
    }

    /// Algebra from constants c[(i*e+j)*r+h]; fails unless `validate` passes.
    pub fn from_constants(field: &Field, e: usize, r: usize, c: Vec<Elem>) -> Result<ShortAlgebra> {
        let a = ShortAlgebra::from_constants_unchecked(field, e, r, c)?;
        let rep = a.validate();
        if let Some(bad) = rep.failures().first() {
            return Err(Error::Contract(format!("{}: {}", bad.name, bad.detail)));
        }
        Ok(a)
    }

    /// As `from_constants` without the invariant checks (only the length is checked).
    pub fn from_constants_unchecked(field: &Field, e: usize, r: usize, c: Vec<Elem>) -> Result<ShortAlgebra> {
        if c.len() != e * e * r {
            return Err(Error::Dimension(format!("expected {} constants, got {}", e * e * r, c.len())));
        }
        Ok(ShortAlgebra { field: field.clone(), e, r, c })
    }

    /// Random algebra with the given e and r: symmetric constants drawn
    /// uniformly until m^2 is spanned.
    pub fn random(field: &Field, e: usize, r: usize, rng: &mut impl Rng) -> ShortAlgebra {
        assert!(r <= e * (e + 1) / 2, "m^2 cannot exceed the number of quadratic monomials");
        loop {
            let mut c = vec![0; e * e * r];
            for i in 0..e {
                for j in i..e {
                    for h in 0..r {
                        let v = (rng.gen::<u64>() % field.order()) as Elem;
                        c[(i * e + j) * r + h] = v;
                        c[(j * e + i) * r + h] = v;
                    }
                }
            }
            let a = ShortAlgebra { field: field.clone(), e, r, c };
            if a.validate().passed() {
                return a;
            }
        }
    }

    /// Random algebra that has a Conca generator over the prime field,
    /// together with the least such generator.
    pub fn random_conca(field: &Field, e: usize, r: usize, rng: &mut impl Rng) -> (ShortAlgebra, Vec<Elem>) {
        assert!(r < e, "a Conca generator needs r < e");
        loop {
            let a = ShortAlgebra::random(field, e, r, rng);
            if let Ok(ConcaSearch::Found { x, .. }) = find_conca(&a, Strategy::Exhaustive, 1, 0) {
                return (a, x);
            }
        }
    }

    /// r = 1 algebra whose multiplication m/m^2 x m/m^2 -> m^2 is a random
    /// symmetric form of the given rank; its socle rank is 1 + e - rank.
    pub fn random_form(field: &Field, e: usize, form_rank: usize, rng: &mut impl Rng) -> ShortAlgebra {
        assert!((1..=e).contains(&form_rank));
        let q = field.order();
        loop {
            let cols: Vec<Vec<Elem>> = (0..form_rank).map(|_| (0..e).map(|_| (rng.gen::<u64>() % q) as Elem).collect()).collect();
            let a = Mat::from_columns(e, &cols);
            if rank(field, &a) != form_rank {
                continue;
            }
            let d: Vec<Elem> = (0..form_rank).map(|_| 1 + (rng.gen::<u64>() % (q - 1)) as Elem).collect();
            let mut c = vec![0; e * e];
            for i in 0..e {
                for j in 0..e {
                    let mut s = 0;
                    for (t, &dt) in d.iter().enumerate() {
                        s = field.add(s, field.mul(dt, field.mul(a.get(i, t), a.get(j, t))));
                    }
                    c[i * e + j] = s;
                }
            }
            return ShortAlgebra::from_constants(field, e, 1, c).expect("nonzero form spans m^2");
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        1 + self.e + self.r
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, h: usize) -> Elem {
        self.c[(i * self.e + j) * self.r + h]
    }

    pub fn constants(&self) -> &[Elem] {
        &self.c
    }

    /// m^2-coordinates of the product of two elements of m/m^2.
    pub fn product(&self, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.r];
        for i in 0..self.e {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.e {
                if v[j] == 0 {
                    continue;
                }
                let uv = f.mul(u[i], v[j]);
                for (h, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(uv, self.c(i, j, h)));
                }
            }
        }
        out
    }

    /// Product in R of two coordinate vectors of length 1 + e + r.
    pub fn mul(&self, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let (e, r) = (self.e, self.r);
        let mut out = vec![0; 1 + e + r];
        out[0] = f.mul(u[0], v[0]);
        for k in 1..1 + e + r {
            out[k] = f.add(f.mul(u[0], v[k]), f.mul(v[0], u[k]));
        }
        let q = self.product(&u[1..1 + e], &v[1..1 + e]);
        for h in 0..r {
            out[1 + e + h] = f.add(out[1 + e + h], q[h]);
        }
        out
    }

    /// r x e matrix of multiplication by u: m/m^2 -> m^2.
    pub fn multiplication_matrix(&self, u: &[Elem]) -> Mat {
        let f = &self.field;
        let mut m = Mat::zeros(self.r, self.e);
        for i in 0..self.e {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.e {
                for h in 0..self.r {
                    let v = f.add(m.get(h, j), f.mul(u[i], self.c(i, j, h)));
                    m.set(h, j, v);
                }
            }
        }
        m
    }

    pub fn validate(&self) -> Report {
        let mut rep = Report::default();
        let (e, r) = (self.e, self.r);
        let mut asym = None;
        'outer: for i in 0..e {
            for j in 0..e {
                for h in 0..r {
                    if self.c(i, j, h) != self.c(j, i, h) {
                        asym = Some((i, j, h));
                        break 'outer;
                    }
                }
            }
        }
        rep.push(
            "commutativity",
            asym.is_none(),
            asym.map_or("c symmetric in i, j".into(), |(i, j, h)| format!("c[{i}][{j}][{h}] != c[{j}][{i}][{h}]")),
        );
        rep.push(
            "constants-in-field",
            self.c.iter().all(|&x| (x as u64) < self.field.order()),
            "every constant is a field element",
        );
        let span = Mat::from_vec(r, e * e, (0..r).flat_map(|h| (0..e * e).map(move |ij| (ij, h))).map(|(ij, h)| self.c[ij * r + h]).collect());
        let rk = rank(&self.field, &span);
        rep.push("m2-spanned", rk == r, format!("rank of the r x e^2 coefficient matrix is {rk}, r = {r}"));
        rep.push("m3-zero", true, "products of three elements of m vanish by construction");
        rep.push("dimension", self.dim() == 1 + e + r, format!("dim R = {}", self.dim()));
        rep
    }

    /// 1 + e t + r t^2.
    pub fn hilbert(&self) -> TruncSeries {
        TruncSeries::from_counts(&[1, self.e, self.r])
    }

    /// Basis of (0 : m) as vectors in R and its rank s.
    pub fn socle(&self) -> (Vec<Vec<Elem>>, usize) {
        let (e, r) = (self.e, self.r);
        // b in m/m^2 is socle iff sum_j b_j c[i][j][h] = 0 for all i, h
        let mut a = Mat::zeros(e * r, e);
        for i in 0..e {
            for j in 0..e {
                for h in 0..r {
                    a.set(i * r + h, j, self.c(i, j, h));
                }
            }
        }
        let k = kernel(&self.field, &a);
        let mut basis = Vec::new();
        for t in 0..k.cols() {
            let mut v = vec![0; 1 + e + r];
            v[1..1 + e].copy_from_slice(&k.column(t));
            basis.push(v);
        }
        for h in 0..r {
            let mut v = vec![0; 1 + e + r];
            v[1 + e + h] = 1;
            basis.push(v);
        }
        let s = basis.len();
        (basis, s)
    }

    pub fn socle_rank(&self) -> usize {
        self.socle().1
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle_rank() == 1
    }

    /// Is u (in m/m^2) a Conca generator: u != 0, u^2 = 0 and u m = m^2.
    pub fn is_conca(&self, u: &[Elem]) -> bool {
        self.conca_violation(u).is_none()
    }

    fn conca_violation(&self, u: &[Elem]) -> Option<&'static str> {
        if u.len() != self.e {
            return Some("vector length differs from e");
        }
        if u.iter().all(|&x| x == 0) {
            return Some("x is zero in m/m^2");
        }
        if self.product(u, u).iter().any(|&x| x != 0) {
            return Some("x^2 != 0");
        }
        if rank(&self.field, &self.multiplication_matrix(u)) != self.r {
            return Some("x m != m^2");
        }
        None
    }

    /// Fiber product over k: m = m_S + m_T with m_S m_T = 0.
    pub fn fiber_product(s: &ShortAlgebra, t: &ShortAlgebra) -> Result<ShortAlgebra> {
        if s.field != t.field {
            return Err(Error::Contract("fiber product of algebras over different fields".into()));
        }
        let (e, r) = (s.e + t.e, s.r + t.r);
        let mut c = vec![0; e * e * r];
        for i in 0..s.e {
            for j in 0..s.e {
                for h in 0..s.r {
                    c[(i * e + j) * r + h] = s.c(i, j, h);
                }
            }
        }
        for i in 0..t.e {
            for j in 0..t.e {
                for h in 0..t.r {
                    c[((s.e + i) * e + s.e + j) * r + s.r + h] = t.c(i, j, h);
                }
            }
        }
        Ok(ShortAlgebra { field: s.field.clone(), e, r, c })
    }

    /// The same constants read over F_{p^d}.
    pub fn base_change(&self, d: u32) -> Result<ShortAlgebra> {
        if d == self.field.degree() {
            return Ok(self.clone());
        }
        if !self.field.is_prime_field() {
            return Err(Error::Contract("base change starts from a prime field".into()));
        }
        let field = Field::extension(self.field.characteristic(), d)?;
        Ok(ShortAlgebra { field, e: self.e, r: self.r, c: self.c.clone() })
    }

    /// k[X_0..X_{e-1}] / (X)^2.
    pub fn square_zero(field: &Field, e: usize) -> ShortAlgebra {
        ShortAlgebra { field: field.clone(), e, r: 0, c: Vec::new() }
    }

    /// k[X_0..X_{e-1}] / (X_0^2, .., X_{e-1}^2) truncated at degree three.
    pub fn exterior_like(field: &Field, e: usize) -> ShortAlgebra {
        let qs: Vec<Mat> = (0..e).map(|i| quadric_from_terms(field, e, &[(i, i, 1)]).unwrap()).collect();
        ShortAlgebra::from_quadrics(field, e, &qs).unwrap()
    }

    /// k[y]/(y^3).
    pub fn cubic_truncation(field: &Field) -> ShortAlgebra {
        ShortAlgebra { field: field.clone(), e: 1, r: 1, c: vec![1] }
    }

    /// k[X_0..X_{e-1}] / ((X_0,X_1)^2 + (X_2,X_3)^2 + (X_4..X_{e-1})(X)), e >= 5.
    pub fn two_square_fiber(field: &Field, e: usize) -> Result<ShortAlgebra> {
        if e < 5 {
            return Err(Error::Contract(format!("needs e >= 5, got {e}")));
        }
        let mut qs = Vec::new();
        for &(i, j) in &[(0, 0), (0, 1), (1, 1), (2, 2), (2, 3), (3, 3)] {
            qs.push(quadric_from_terms(field, e, &[(i, j, 1)])?);
        }
        for i in 4..e {
            for j in 0..e {
                if j < 4 || j >= i {
                    qs.push(quadric_from_terms(field, e, &[(i, j, 1)])?);
                }
            }
        }
        ShortAlgebra::from_quadrics(field, e, &qs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Random,
}

/// Outcome of a Conca generator search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConcaSearch {
    /// A generator over the (possibly extended) field of `algebra`.
    Found { x: Vec<Elem>, algebra: ShortAlgebra },
    None,
    Inconclusive(String),
}

impl ConcaSearch {
    pub fn found(&self) -> Option<&[Elem]> {
        match self {
            ConcaSearch::Found { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            ConcaSearch::Found { .. } => "found",
            ConcaSearch::None => "none",
            ConcaSearch::Inconclusive(_) => "inconclusive",
        }
    }
}

pub const SCAN_BUDGET: u64 = 100_000_000;
pub const RANDOM_SAMPLES: usize = 100_000;

/// The projective point with leading 1 at `lead` and trailing digits `idx`.
fn projective_point(q: u64, e: usize, lead: usize, mut idx: u64) -> Vec<Elem> {
    let mut u = vec![0; e];
    u[lead] = 1;
    for k in (lead + 1..e).rev() {
        u[k] = (idx % q) as Elem;
        idx /= q;
    }
    u
}

/// Search for a Conca generator of `a` after extending scalars to degree `d`.
///
/// The exhaustive scan visits projective representatives (first nonzero
/// coordinate 1) and returns the lexicographically least hit.
pub fn find_conca(a: &ShortAlgebra, strategy: Strategy, d: u32, seed: u64) -> Result<ConcaSearch> {
    if !(1..=3).contains(&d) {
        return Err(Error::Contract(format!("extension degree {d} not in 1..=3")));
    }
    let alg = a.base_change(d)?;
    let e = alg.e;
    if e == 0 {
        return Ok(ConcaSearch::None);
    }
    let q = alg.field.order();
    match strategy {
        Strategy::Exhaustive => {
            let size = (0..e as u32 - 1).try_fold(1u64, |acc, _| acc.checked_mul(q));
            match size {
                Some(s) if s <= SCAN_BUDGET => {}
                _ => return Ok(ConcaSearch::Inconclusive(format!("scan of {q}^{} points exceeds the budget", e - 1))),
            }
            // smaller vectors in lex order have their leading 1 further right
            for lead in (0..e).rev() {
                let count = q.pow((e - 1 - lead) as u32);
                let hit = (0..count).into_par_iter().find_first(|&idx| alg.is_conca(&projective_point(q, e, lead, idx)));
                if let Some(idx) = hit {
                    return Ok(ConcaSearch::Found { x: projective_point(q, e, lead, idx), algebra: alg });
                }
            }
            Ok(ConcaSearch::None)
        }
        Strategy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RANDOM_SAMPLES {
                let u: Vec<Elem> = (0..e).map(|_| (rng.gen::<u64>() % q) as Elem).collect();
                if alg.is_conca(&u) {
                    return Ok(ConcaSearch::Found { x: u, algebra: alg });
                }
            }
            Ok(ConcaSearch::Inconclusive(format!("no hit among {RANDOM_SAMPLES} samples")))
        }
    }
}

/// An algebra in a basis adapted to a Conca generator x:
/// x_{e-1} = x, the products x_h x for h < r form the m^2 basis, and
/// x_r..x_{e-2} together with x span the kernel of multiplication by x.
#[derive(Clone, Debug)]
pub struct NormalizedAlgebra {
    pub base: ShortAlgebra,
    pub conca: Vec<Elem>,
    /// Column i holds the old coordinates of the new x_i.
    pub basis_change: Mat,
    /// Column h holds the old m^2-coordinates of the new z_h = x_h x.
    pub socle_change: Mat,
    /// The algebra rewritten in the new basis.
    pub algebra: ShortAlgebra,
}

impl NormalizedAlgebra {
    /// a^{ij}_h for i, j < e-1: x_i x_j = sum_h a^{ij}_h x_h x_{e-1}.
    pub fn a(&self, i: usize, j: usize, h: usize) -> Elem {
        debug_assert!(i + 1 < self.algebra.e && j + 1 < self.algebra.e);
        self.algebra.c(i, j, h)
    }

    pub fn e(&self) -> usize {
        self.algebra.e
    }

    pub fn r(&self) -> usize {
        self.algebra.r
    }

    pub fn field(&self) -> &Field {
        &self.algebra.field
    }

    /// Re-multiply the constants back into the original basis and compare.
    pub fn round_trip(&self) -> bool {
        let f = &self.base.field;
        let (e, r) = (self.base.e, self.base.r);
        for i in 0..e {
            for j in 0..e {
                let pi = self.basis_change.column(i);
                let pj = self.basis_change.column(j);
                let old = self.base.product(&pi, &pj);
                let mut new = vec![0; r];
                for h in 0..r {
                    let c = self.algebra.c(i, j, h);
                    f.axpy(&mut new, c, &self.socle_change.column(h));
                }
                if old != new {
                    return false;
                }
            }
        }
        true
    }
}

pub fn normalize_basis(a: &ShortAlgebra, x: &[Elem]) -> Result<NormalizedAlgebra> {
    if let Some(why) = a.conca_violation(x) {
        return Err(Error::Precondition(format!("not a Conca generator: {why}")));
    }
    let f = &a.field;
    let (e, r) = (a.e, a.r);
    let mx = a.multiplication_matrix(x);
    // x_0..x_{r-1}: standard vectors whose products with x are independent
    let firsts = independent_columns(f, &mx);
    debug_assert_eq!(firsts.len(), r);
    let ker = kernel(f, &mx);
    let mut span = Echelon::new(f, e);
    span.insert(x);
    let mut middle = Vec::new();
    for t in 0..ker.cols() {
        let v = ker.column(t);
        if span.insert(&v) {
            middle.push(v);
        }
    }
    debug_assert_eq!(middle.len() + 1, e - r);
    let mut cols: Vec<Vec<Elem>> = firsts
        .iter()
        .map(|&j| {
            let mut v = vec![0; e];
            v[j] = 1;
            v
        })
        .collect();
    cols.extend(middle);
    cols.push(x.to_vec());
    let basis_change = Mat::from_columns(e, &cols);
    let zcols: Vec<Vec<Elem>> = firsts.iter().map(|&j| mx.column(j)).collect();
    let socle_change = Mat::from_columns(r, &zcols);
    // new constants: solve socle_change * c' = old product
    let mut rhs = Mat::zeros(r, e * e);
    for i in 0..e {
        for j in 0..e {
            let p = a.product(&cols[i], &cols[j]);
            for h in 0..r {
                rhs.set(h, i * e + j, p[h]);
            }
        }
    }
    let sol = solve(f, &socle_change, &rhs)?.expect("products lie in m^2");
    let mut c = vec![0; e * e * r];
    for ij in 0..e * e {
        for h in 0..r {
            c[ij * r + h] = sol.get(h, ij);
        }
    }
    let algebra = ShortAlgebra { field: f.clone(), e, r, c };
    let n = NormalizedAlgebra { base: a.clone(), conca: x.to_vec(), basis_change, socle_change, algebra };
    debug_assert!(n.round_trip());
    Ok(n)
}

/// JSON description of an algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub p: u32,
    pub e: usize,
    pub presentation: Presentation,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Presentation {
    /// Each quadric is a list of [i, j, coeff] terms coeff * X_i X_j.
    Quadrics { quadrics: Vec<Vec<(usize, usize, i64)>> },
    /// [i, j, h, coeff] entries of c; a missing mirror entry (j, i, h) is filled in.
    Constants { r: usize, c: Vec<(usize, usize, usize, i64)> },
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<ShortAlgebra> {
        let f = Field::prime(self.p).map_err(|e| Error::Input(e.to_string()))?;
        let e = self.e;
        match &self.presentation {
            Presentation::Quadrics { quadrics } => {
                let qs = quadrics
                    .iter()
                    .map(|terms| quadric_from_terms(&f, e, terms))
                    .collect::<Result<Vec<_>>>()?;
                ShortAlgebra::from_quadrics(&f, e, &qs)
            }
            Presentation::Constants { r, c } => {
                let r = *r;
                let mut table = vec![0; e * e * r];
                let mut given = vec![false; e * e * r];
                for &(i, j, h, v) in c {
                    if i >= e || j >= e || h >= r {
                        return Err(Error::Input(format!("constant index ({i},{j},{h}) out of range")));
                    }
                    table[(i * e + j) * r + h] = f.from_i64(v);
                    given[(i * e + j) * r + h] = true;
                }
                for &(i, j, h, v) in c {
                    let k = (j * e + i) * r + h;
                    if !given[k] {
                        table[k] = f.from_i64(v);
                    }
                }
                ShortAlgebra::from_constants(&f, e, r, table)
            }
        }
    }

    pub fn parse(text: &str) -> Result<AlgebraSpec> {
        Ok(serde_json::from_str(text)?)
    }

    /// Spec describing `a` by its constants (prime fields only).
    pub fn from_algebra(a: &ShortAlgebra) -> AlgebraSpec {
        let (e, r) = (a.e, a.r);
        let mut c = Vec::new();
        for i in 0..e {
            for j in 0..e {
                for h in 0..r {
                    let v = a.c(i, j, h);
                    if v != 0 {
                        c.push((i, j, h, v as i64));
                    }
                }
            }
        }
        AlgebraSpec { p: a.field.characteristic(), e, presentation: Presentation::Constants { r, c } }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use super::Strategy;
    use rand::Rng;

    fn f101() -> Field {
        Field::prime(101).unwrap()
    }

    fn cx2() -> ShortAlgebra {
        ShortAlgebra::exterior_like(&f101(), 2)
    }

    #[test]
    fn quadric_examples() {
        let f = f101();
        let a = cx2();
        assert_eq!((a.e(), a.r(), a.dim()), (2, 1, 4));
        assert_eq!(a.c(0, 1, 0), 1);
        let all: Vec<Mat> = [(0, 0), (0, 1), (1, 1)].iter().map(|&(i, j)| quadric_from_terms(&f, 2, &[(i, j, 1)]).unwrap()).collect();
        assert_eq!(ShortAlgebra::from_quadrics(&f, 2, &all).unwrap().r(), 0);
        let ex = ShortAlgebra::two_square_fiber(&f, 5).unwrap();
        assert_eq!(ex.hilbert().coeffs(), &[1, 5, 4]);
        let bad = Mat::from_ints(&f, &[vec![0, 1], vec![0, 0]]);
        assert!(ShortAlgebra::from_quadrics(&f, 2, &[bad]).is_err());
    }

    #[test]
    fn quadric_relation_is_respected() {
        // X0^2 = X0 X1 forces c[0][0] = c[0][1]
        let f = f101();
        let q = quadric_from_terms(&f, 2, &[(0, 0, 1), (0, 1, -1)]).unwrap();
        let a = ShortAlgebra::from_quadrics(&f, 2, &[q]).unwrap();
        assert_eq!(a.r(), 2);
        let b = ShortAlgebra::from_quadrics(&f, 2, &[quadric_from_terms(&f, 2, &[(1, 1, 1), (0, 1, -1)]).unwrap()]).unwrap();
        for h in 0..b.r() {
            assert_eq!(b.c(1, 1, h), b.c(0, 1, h));
        }
    }

    #[test]
    fn validation_flags() {
        let f = f101();
        assert!(cx2().validate().passed());
        let asym = ShortAlgebra::from_constants_unchecked(&f, 2, 1, vec![0, 1, 2, 0]).unwrap();
        let rep = asym.validate();
        assert!(!rep.passed());
        assert_eq!(rep.failures()[0].name, "commutativity");
        // z_1 is never hit
        let redundant = ShortAlgebra::from_constants_unchecked(&f, 2, 2, vec![0, 0, 1, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(redundant.validate().failures()[0].name, "m2-spanned");
        assert!(ShortAlgebra::from_constants(&f, 2, 2, vec![0, 0, 1, 0, 1, 0, 0, 0]).is_err());
    }

    #[test]
    fn socles() {
        let f = f101();
        let (basis, s) = cx2().socle();
        assert_eq!(s, 1);
        assert_eq!(basis[0], vec![0, 0, 0, 1]);
        // k[x,y,z]/(x^2, y^2, z^2, xy, xz): socle spanned by x and yz
        let qs: Vec<Mat> = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)].iter().map(|&(i, j)| quadric_from_terms(&f, 3, &[(i, j, 1)]).unwrap()).collect();
        let a = ShortAlgebra::from_quadrics(&f, 3, &qs).unwrap();
        let (basis, s) = a.socle();
        assert_eq!(s, 2);
        assert_eq!(basis[0], vec![0, 1, 0, 0, 0]);
        assert_eq!(ShortAlgebra::square_zero(&f, 3).socle_rank(), 3);
        assert!(cx2().is_gorenstein());
        assert!(!ShortAlgebra::square_zero(&f, 2).is_gorenstein());
    }

    #[test]
    fn fiber_products() {
        let f = f101();
        let p = ShortAlgebra::fiber_product(&ShortAlgebra::square_zero(&f, 1), &ShortAlgebra::cubic_truncation(&f)).unwrap();
        assert_eq!((p.e(), p.r(), p.socle_rank()), (2, 1, 2));
        let q = ShortAlgebra::fiber_product(&ShortAlgebra::square_zero(&f, 1), &ShortAlgebra::square_zero(&f, 1)).unwrap();
        assert_eq!((q.e(), q.r()), (2, 0));
        // the Hilbert series example as an explicit fiber product
        let s = ShortAlgebra::fiber_product(&ShortAlgebra::square_zero(&f, 2), &ShortAlgebra::square_zero(&f, 2)).unwrap();
        assert_eq!(s.r(), 0);
        let other = ShortAlgebra::square_zero(&Field::prime(7).unwrap(), 1);
        assert!(ShortAlgebra::fiber_product(&s, &other).is_err());
        for sp in 1..4 {
            for tq in 2..4 {
                let t = ShortAlgebra::exterior_like(&f, 2);
                let t = if tq == 2 { t } else { gorenstein3(&f) };
                let fp = ShortAlgebra::fiber_product(&ShortAlgebra::square_zero(&f, sp), &t).unwrap();
                assert_eq!(fp.socle_rank(), sp + 1);
                assert_eq!(fp.e(), sp + tq);
            }
        }
    }

    /// k[x,y,z]/(xy, xz, yz, x^2 - y^2, x^2 - z^2): Gorenstein with e = 3, r = 1.
    fn gorenstein3(f: &Field) -> ShortAlgebra {
        let qs = [
            vec![(0, 1, 1)],
            vec![(0, 2, 1)],
            vec![(1, 2, 1)],
            vec![(0, 0, 1), (1, 1, -1)],
            vec![(0, 0, 1), (2, 2, -1)],
        ];
        let qs: Vec<Mat> = qs.iter().map(|t| quadric_from_terms(f, 3, t).unwrap()).collect();
        ShortAlgebra::from_quadrics(f, 3, &qs).unwrap()
    }

    #[test]
    fn conca_search() {
        let f = f101();
        let hit = find_conca(&cx2(), Strategy::Exhaustive, 1, 0).unwrap();
        assert_eq!(hit.found().unwrap(), &[0, 1]);
        let none = find_conca(&ShortAlgebra::cubic_truncation(&f), Strategy::Exhaustive, 1, 0).unwrap();
        assert_eq!(none, ConcaSearch::None);
        let sz = find_conca(&ShortAlgebra::square_zero(&f, 3), Strategy::Exhaustive, 1, 0).unwrap();
        assert_eq!(sz.found().unwrap(), &[0, 0, 1]);
        let big = ShortAlgebra::exterior_like(&Field::prime(1009).unwrap(), 3);
        assert_eq!(find_conca(&big, Strategy::Exhaustive, 2, 0).unwrap().status(), "inconclusive");
    }

    #[test]
    fn conca_needs_extension() {
        // m^2 is spanned by x^2 and y^2 = -x^2/a, so (u x + v y)^2 = (u^2 - v^2/a) x^2
        // vanishes for v != 0 only when a is a square
        let f = Field::prime(101).unwrap();
        let a = (2..101).find(|&a| f.pow(a, 50) == 100).unwrap();
        let q = quadric_from_terms(&f, 2, &[(0, 0, 1), (1, 1, a as i64)]).unwrap();
        let q2 = quadric_from_terms(&f, 2, &[(0, 1, 1)]).unwrap();
        let alg = ShortAlgebra::from_quadrics(&f, 2, &[q, q2]).unwrap();
        assert_eq!(alg.r(), 1);
        assert_eq!(find_conca(&alg, Strategy::Exhaustive, 1, 0).unwrap(), ConcaSearch::None);
        let ext = find_conca(&alg, Strategy::Exhaustive, 2, 0).unwrap();
        let ConcaSearch::Found { x, algebra } = ext else { panic!("expected a generator over the quadratic extension") };
        assert!(algebra.is_conca(&x));
        assert_eq!(algebra.socle_rank(), alg.socle_rank());
    }

    #[test]
    fn normalization_examples() {
        let n = normalize_basis(&cx2(), &[0, 1]).unwrap();
        assert_eq!(n.basis_change.column(0), vec![1, 0]);
        assert_eq!(n.basis_change.column(1), vec![0, 1]);
        assert_eq!(n.a(0, 0, 0), 0);
        assert!(n.round_trip());
        assert!(normalize_basis(&cx2(), &[1, 1]).is_err());
        let f = f101();
        let g = gorenstein3(&f);
        let x = find_conca(&g, Strategy::Exhaustive, 1, 0).unwrap();
        let n = normalize_basis(&g, x.found().unwrap()).unwrap();
        check_normal_form(&n);
    }

    fn check_normal_form(n: &NormalizedAlgebra) {
        let (e, r) = (n.e(), n.r());
        let alg = &n.algebra;
        let x = e - 1;
        for h in 0..r {
            assert!(alg.c(x, x, h) == 0);
            for l in 0..e {
                let want = if l == h { 1 } else { 0 };
                if l < r {
                    assert_eq!(alg.c(l, x, h), want);
                } else {
                    assert_eq!(alg.c(l, x, h), 0);
                }
            }
        }
        assert!(alg.validate().passed());
        assert!(n.round_trip());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_conca_algebras_normalize(seed in 0u64..10_000, e in 2usize..4) {
            let f = f101();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = rng.gen_range(0..e);
            let a = ShortAlgebra::random(&f, e, r, &mut rng);
            prop_assert!(a.validate().passed());
            prop_assert_eq!(a.dim(), 1 + e + r);
            if let ConcaSearch::Found { x, .. } = find_conca(&a, Strategy::Exhaustive, 1, 0).unwrap() {
                prop_assert!(a.product(&x, &x).iter().all(|&v| v == 0));
                prop_assert_eq!(rank(&f, &a.multiplication_matrix(&x)), r);
                let n = normalize_basis(&a, &x).unwrap();
                check_normal_form(&n);
            }
        }

        #[test]
        fn gorenstein_elements_generate_square(seed in 0u64..10_000) {
            let f = f101();
            let g = gorenstein3(&f);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..20 {
                let u: Vec<Elem> = (0..3).map(|_| rng.gen_range(0..101)).collect();
                if u.iter().all(|&x| x == 0) { continue; }
                prop_assert_eq!(rank(&f, &g.multiplication_matrix(&u)), 1);
            }
        }
    }

    #[test]
    fn spec_round_trip() {
        let text = r#"{"p": 101, "e": 2, "presentation": {"type": "quadrics", "quadrics": [[[0,0,1]], [[1,1,1]]]}}"#;
        let a = AlgebraSpec::parse(text).unwrap().build().unwrap();
        assert_eq!(a, cx2());
        let back = AlgebraSpec::from_algebra(&a).build().unwrap();
        assert_eq!(back, a);
        let c = r#"{"p": 101, "e": 2, "presentation": {"type": "constants", "r": 1, "c": [[0,1,0,1]]}}"#;
        assert_eq!(AlgebraSpec::parse(c).unwrap().build().unwrap(), a);
        assert!(AlgebraSpec::parse(r#"{"p": 100, "e": 1, "presentation": {"type": "constants", "r": 0, "c": []}}"#).unwrap().build().is_err());
    }
}

//! Truncated integer power series and the few rational-function facts the
//! rest of the crate needs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};

/// Integer polynomial, low degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly(Vec<i128>);

impl Poly {
    pub fn new(mut c: Vec<i128>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_i64(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| x as i128).collect())
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn coeff(&self, n: usize) -> i128 {
        self.0.get(n).copied().unwrap_or(0)
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// 1 - e t + r t^2.
    pub fn koszul_denominator(e: usize, r: usize) -> Poly {
        Poly::new(vec![1, -(e as i128), r as i128])
    }

    /// h0 - h1 t + h2 t^2, i.e. H(-t).
    pub fn alternating(h: &[usize]) -> Poly {
        Poly::new(h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i128 } else { -(x as i128) }).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (n, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, m) => write!(f, "{m}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Power series known through t^order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncSeries {
    coeffs: Vec<i128>,
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("series addition"))
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("series multiplication"))
}

impl TruncSeries {
    /// Series with the given coefficients c_0..c_order.
    pub fn new(coeffs: Vec<i128>) -> TruncSeries {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        TruncSeries { coeffs }
    }

    pub fn from_counts(c: &[usize]) -> TruncSeries {
        TruncSeries::new(c.iter().map(|&x| x as i128).collect())
    }

    pub fn from_poly(p: &Poly, order: usize) -> TruncSeries {
        TruncSeries::new((0..=order).map(|n| p.coeff(n)).collect())
    }

    pub fn one(order: usize) -> TruncSeries {
        TruncSeries::from_poly(&Poly::new(vec![1]), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> i128 {
        self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        TruncSeries::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, o: &TruncSeries) -> Result<TruncSeries> {
        let n = self.order().min(o.order());
        let c = (0..=n).map(|i| add(self.coeffs[i], o.coeffs[i])).collect::<Result<_>>()?;
        Ok(TruncSeries::new(c))
    }

    pub fn sub(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.add(&o.scale(-1)?)
    }

    pub fn scale(&self, k: i128) -> Result<TruncSeries> {
        Ok(TruncSeries::new(self.coeffs.iter().map(|&x| mul(x, k)).collect::<Result<_>>()?))
    }

    pub fn mul(&self, o: &TruncSeries) -> Result<TruncSeries> {
        let n = self.order().min(o.order());
        let mut c = vec![0i128; n + 1];
        for i in 0..=n {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..=n - i {
                c[i + j] = add(c[i + j], mul(self.coeffs[i], o.coeffs[j])?)?;
            }
        }
        Ok(TruncSeries::new(c))
    }

    pub fn mul_poly(&self, p: &Poly) -> Result<TruncSeries> {
        self.mul(&TruncSeries::from_poly(p, self.order()))
    }

    /// Multiplicative inverse by Newton iteration g <- g(2 - s g); needs c_0 = ±1.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let c0 = self.coeffs[0];
        if c0 != 1 && c0 != -1 {
            return contract(format!("series inverse needs constant term ±1, got {c0}"));
        }
        let n = self.order();
        let mut g = TruncSeries::new(vec![c0]);
        let mut prec = 1;
        while prec <= n {
            prec = (2 * prec).min(n + 1);
            let s = self.truncate(prec - 1);
            let g_ext = TruncSeries::new((0..prec).map(|i| g.coeffs.get(i).copied().unwrap_or(0)).collect());
            let sg = s.mul(&g_ext)?;
            let two_minus = TruncSeries::new(
                sg.coeffs.iter().enumerate().map(|(i, &x)| if i == 0 { 2 - x } else { -x }).collect(),
            );
            g = g_ext.mul(&two_minus)?;
        }
        Ok(g.truncate(n))
    }

    pub fn div(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.mul(&o.inverse()?)
    }

    /// Coefficients of 1/p through t^order.
    pub fn inverse_of_poly(p: &Poly, order: usize) -> Result<TruncSeries> {
        TruncSeries::from_poly(p, order).inverse()
    }

    /// Largest n with a nonzero coefficient, if any.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&x| x != 0)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.to_poly(), self.order() + 1)
    }
}

/// Number of trailing coefficients that must vanish before a product is
/// accepted as a polynomial.
pub const SAFETY_WINDOW: usize = 3;

/// p = s * denom truncated; accepted when the top `SAFETY_WINDOW`
/// coefficients vanish.
pub fn rational_fit(s: &TruncSeries, denom: &Poly) -> Result<Option<Poly>> {
    let q = s.mul_poly(denom)?;
    let n = q.order();
    if n + 1 < SAFETY_WINDOW + denom.degree().unwrap_or(0) {
        return Ok(None);
    }
    if q.coeffs[n + 1 - SAFETY_WINDOW..].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    Ok(Some(q.to_poly()))
}

/// P_M over a fiber product S x_k T from P^S_M, P^S_k and P^T_k.
pub fn dress_kramer(p_sm: &TruncSeries, p_sk: &TruncSeries, p_tk: &TruncSeries) -> Result<TruncSeries> {
    let denom = p_sk.add(p_tk)?.sub(&p_sk.mul(p_tk)?)?;
    if denom.coeff(0).abs() != 1 {
        return contract("fiber-product denominator is not invertible");
    }
    p_sm.mul(p_tk)?.div(&denom)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BSequence {
    pub e: usize,
    pub values: Vec<i128>,
}

/// b_0 = 1, b_1 = e, b_{n+1} = e b_n - b_{n-1}.
pub fn b_sequence(e: usize, depth: usize) -> Result<BSequence> {
    if e < 2 {
        return contract(format!("b-sequence needs e >= 2, got {e}"));
    }
    let e_i = e as i128;
    let mut v = vec![1i128];
    if depth >= 1 {
        v.push(e_i);
    }
    for n in 2..=depth {
        let next = mul(e_i, v[n - 1])?.checked_sub(v[n - 2]).ok_or(Error::Overflow("b-sequence"))?;
        v.push(next);
    }
    if e == 2 {
        for (n, &x) in v.iter().enumerate() {
            assert_eq!(x, n as i128 + 1, "b_n = n+1 fails for e = 2");
        }
    }
    Ok(BSequence { e, values: v })
}

/// Exact rational number num/den.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: i128,
    pub den: i128,
}

impl Ratio {
    fn reduced(num: i128, den: i128) -> Ratio {
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(num, den).max(1);
        Ratio { num: num / g, den: den / g }
    }

    pub fn is_integer(&self, v: i128) -> bool {
        self.den == 1 && self.num == v
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn binomial(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// The sum 2^{-(n+1)} Σ_{j=0}^{⌊(n-1)/2⌋} (e²-4)^j e^{n-2j}, evaluated exactly
/// as written (for n = 0 the sum is empty).
pub fn closed_form_as_printed(e: usize, n: usize) -> Ratio {
    let e = e as i128;
    let mut s = 0i128;
    if n >= 1 {
        for j in 0..=(n - 1) / 2 {
            s += (e * e - 4).pow(j as u32) * e.pow((n - 2 * j) as u32);
        }
    }
    Ratio::reduced(s, 1i128 << (n + 1))
}

/// The same sum with the binomial weights C(n+1, 2j+1) and normalisation 2^n,
/// which is the Chebyshev closed form of the recurrence.
pub fn closed_form_with_binomials(e: usize, n: usize) -> Ratio {
    let e = e as i128;
    let mut s = 0i128;
    for j in 0..=n / 2 {
        s += binomial(n as u32 + 1, 2 * j as u32 + 1) * (e * e - 4).pow(j as u32) * e.pow((n - 2 * j) as u32);
    }
    Ratio::reduced(s, 1i128 << n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_examples() {
        let s = TruncSeries::inverse_of_poly(&Poly::from_i64(&[1, -2, 1]), 6).unwrap();
        assert_eq!(s.coeffs(), &[1, 2, 3, 4, 5, 6, 7]);
        let g = TruncSeries::inverse_of_poly(&Poly::from_i64(&[1, -5]), 5).unwrap();
        assert_eq!(g.coeffs(), &[1, 5, 25, 125, 625, 3125]);
        assert!(TruncSeries::new(vec![2, 1]).inverse().is_err());
        let neg = TruncSeries::new(vec![-1, 3, 0, 2]);
        assert_eq!(neg.mul(&neg.inverse().unwrap()).unwrap(), TruncSeries::one(3));
    }

    #[test]
    fn b_sequences() {
        assert_eq!(b_sequence(2, 5).unwrap().values, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(b_sequence(3, 5).unwrap().values, vec![1, 3, 8, 21, 55, 144]);
        assert!(b_sequence(1, 3).is_err());
    }

    #[test]
    fn b_sequence_is_inverse_of_quadratic() {
        for e in 2..=6 {
            let b = b_sequence(e, 20).unwrap();
            let inv = TruncSeries::inverse_of_poly(&Poly::koszul_denominator(e, 1), 20).unwrap();
            assert_eq!(inv.coeffs(), &b.values[..]);
            for n in 1..=20 {
                assert!(b.values[n] > (e as i128 - 1) * b.values[n - 1]);
            }
        }
    }

    #[test]
    fn printed_closed_form_disagrees() {
        // as printed: b_0 would be 0 and b_1 would be e/4
        assert_eq!(closed_form_as_printed(3, 0), Ratio { num: 0, den: 1 });
        assert_eq!(closed_form_as_printed(3, 1), Ratio { num: 3, den: 4 });
        let b = b_sequence(3, 12).unwrap();
        for n in 0..=12 {
            assert!(closed_form_with_binomials(3, n).is_integer(b.values[n]));
            assert!(!closed_form_as_printed(3, n).is_integer(b.values[n]));
        }
    }

    #[test]
    fn dress_kramer_examples() {
        let geo1 = TruncSeries::inverse_of_poly(&Poly::from_i64(&[1, -1]), 8).unwrap();
        let r = dress_kramer(&geo1, &geo1, &geo1).unwrap();
        let two = TruncSeries::inverse_of_poly(&Poly::from_i64(&[1, -2]), 8).unwrap();
        assert_eq!(r, two);
        let one = TruncSeries::one(8);
        let m = TruncSeries::new(vec![2, 3, 5, 7, 11, 13, 17, 19, 23]);
        assert_eq!(dress_kramer(&m, &two, &one).unwrap(), m);
    }

    #[test]
    fn rational_fit_examples() {
        let s = TruncSeries::from_counts(&[1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(rational_fit(&s, &Poly::from_i64(&[1, -2, 1])).unwrap(), Some(Poly::from_i64(&[1])));
        let g = TruncSeries::inverse_of_poly(&Poly::from_i64(&[1, -3]), 8).unwrap();
        assert_eq!(rational_fit(&g, &Poly::from_i64(&[1, -3])).unwrap(), Some(Poly::from_i64(&[1])));
        let fib = TruncSeries::from_counts(&[1, 1, 2, 3, 5, 8, 13, 21]);
        assert_eq!(rational_fit(&fib, &Poly::from_i64(&[1, -2])).unwrap(), None);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64(&[1, 5, 4]).to_string(), "1 + 5t + 4t^2");
        assert_eq!(Poly::from_i64(&[0, -1, 0, 1]).to_string(), "-t + t^3");
        assert_eq!(Poly::new(vec![]).to_string(), "0");
    }

    #[test]
    fn overflow_is_reported() {
        let big = TruncSeries::new(vec![1, i128::MAX / 2, i128::MAX / 2]);
        assert!(matches!(big.mul(&big), Err(Error::Overflow(_))));
    }

    proptest! {
        #[test]
        fn inverse_round_trip(c in prop::collection::vec(-50i128..50, 1..15), sign in prop::bool::ANY) {
            let mut c = c;
            c[0] = if sign { 1 } else { -1 };
            let s = TruncSeries::new(c);
            let prod = s.mul(&s.inverse().unwrap()).unwrap();
            prop_assert_eq!(prod, TruncSeries::one(s.order()));
        }
    }
}

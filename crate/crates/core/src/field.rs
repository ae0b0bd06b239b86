//! Finite fields F_q with q = p^d, d <= 3.
//!
//! Elements are `u32` codes: for d = 1 the residue itself, otherwise the
//! base-p digits of the coefficient vector of a polynomial in `u` reduced
//! modulo a fixed irreducible. Zero and one are encoded as 0 and 1 either way.

use crate::error::{Error, Result};

pub type Elem = u32;

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    degree: u32,
    /// Low-to-high coefficients of the monic modulus (length `degree + 1`).
    modulus: Vec<u32>,
    order: u64,
    inv_p: f64,
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// The prime field F_p. `p` must be an odd prime below 2^31.
    pub fn prime(p: u32) -> Result<Field> {
        if p < 3 || p >= (1 << 31) || !is_prime(p as u64) {
            return Err(Error::Contract(format!("p = {p} is not an odd prime below 2^31")));
        }
        Ok(Field { p, degree: 1, modulus: vec![0, 1], order: p as u64, inv_p: 1.0 / p as f64 })
    }

    /// F_{p^d} for d in {1, 2, 3}, requiring p^d < 2^32.
    pub fn extension(p: u32, d: u32) -> Result<Field> {
        let base = Field::prime(p)?;
        if d == 1 {
            return Ok(base);
        }
        if !(2..=3).contains(&d) {
            return Err(Error::Contract(format!("extension degree {d} not in 1..=3")));
        }
        let order = (p as u64).pow(d);
        if order >= (1u64 << 32) {
            return Err(Error::Contract(format!("p^d = {p}^{d} does not fit the element encoding")));
        }
        let modulus = if d == 2 {
            // u^2 - n with n the least quadratic non-residue
            let n = (2..p).find(|&n| base.pow(n, ((p - 1) / 2) as u64) == p - 1).unwrap();
            vec![p - n, 0, 1]
        } else {
            // least u^3 + c1 u + c0 (c1 first, then c0) without roots in F_p
            let mut found = None;
            'outer: for c1 in 0..p {
                for c0 in 1..p {
                    let has_root = (0..p).any(|t| {
                        let t = t as u64;
                        let pp = p as u64;
                        (t * t % pp * t + c1 as u64 * t + c0 as u64) % pp == 0
                    });
                    if !has_root {
                        found = Some((c0, c1));
                        break 'outer;
                    }
                }
            }
            let (c0, c1) = found.unwrap();
            vec![c0, c1, 0, 1]
        };
        Ok(Field { p, degree: d, modulus, order, inv_p: 1.0 / p as f64 })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    /// Monic modulus, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The prime subfield.
    pub fn base(&self) -> Field {
        Field { p: self.p, degree: 1, modulus: vec![0, 1], order: self.p as u64, inv_p: self.inv_p }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        v.rem_euclid(self.p as i64) as u32
    }

    fn digits(&self, a: Elem) -> [u32; 3] {
        let mut out = [0u32; 3];
        let mut a = a;
        for d in out.iter_mut().take(self.degree as usize) {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u32]) -> Elem {
        let mut a = 0u32;
        for k in (0..self.degree as usize).rev() {
            a = a * self.p + d[k];
        }
        a
    }

    /// Coefficients of `a` as a polynomial in the generator `u`.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        self.digits(a)[..self.degree as usize].to_vec()
    }

    pub fn from_coords(&self, c: &[u32]) -> Elem {
        let mut d = [0u32; 3];
        for (k, &x) in c.iter().enumerate().take(self.degree as usize) {
            d[k] = x % self.p;
        }
        self.undigits(&d)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.degree == 1 {
            let s = a as u64 + b as u64;
            let p = self.p as u64;
            return (if s >= p { s - p } else { s }) as u32;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut z = [0u32; 3];
        for k in 0..self.degree as usize {
            z[k] = ((x[k] as u64 + y[k] as u64) % self.p as u64) as u32;
        }
        self.undigits(&z)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.degree == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let x = self.digits(a);
        let mut z = [0u32; 3];
        for k in 0..self.degree as usize {
            z[k] = if x[k] == 0 { 0 } else { self.p - x[k] };
        }
        self.undigits(&z)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.degree == 1 {
            return (a as u64 * b as u64 % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let d = self.degree as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 5];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (t, &m) in self.modulus.iter().enumerate().take(d) {
                let idx = k - d + t;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let z = [prod[0] as u32, prod[1] as u32, prod[2] as u32];
        self.undigits(&z)
    }

    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.order - 2))
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as u32
    }

    /// Reduce `x` (any value below 2^52) modulo p, vectorisation friendly.
    #[inline(always)]
    pub(crate) fn reduce_u64(&self, x: u64) -> u32 {
        let p = self.p as u64;
        let q = (x as f64 * self.inv_p) as u64;
        let r = x.wrapping_sub(q.wrapping_mul(p)) as i64;
        let r = if r < 0 { r + p as i64 } else { r };
        let r = if r >= p as i64 { r - p as i64 } else { r };
        r as u32
    }

    /// dst += a * src, elementwise.
    pub fn axpy(&self, dst: &mut [Elem], a: Elem, src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        if a == 0 {
            return;
        }
        if self.degree == 1 {
            let a = a as u64;
            if (self.p as u64) < (1 << 25) {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = self.reduce_u64(*d as u64 + a * s as u64);
                }
            } else {
                let p = self.p as u64;
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = ((*d as u64 + a * s as u64) % p) as u32;
                }
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d = self.add(*d, self.mul(a, s));
                }
            }
        }
    }

    /// v *= a, elementwise.
    pub fn scale(&self, v: &mut [Elem], a: Elem) {
        if a == 1 {
            return;
        }
        if self.degree == 1 {
            let a = a as u64;
            let p = self.p as u64;
            for x in v.iter_mut() {
                *x = (*x as u64 * a % p) as u32;
            }
        } else {
            for x in v.iter_mut() {
                *x = self.mul(*x, a);
            }
        }
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let mut acc = 0;
        for (&x, &y) in a.iter().zip(b) {
            if x != 0 && y != 0 {
                acc = self.add(acc, self.mul(x, y));
            }
        }
        acc
    }
}

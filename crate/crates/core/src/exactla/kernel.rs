//! Blocked "C -= A*B" over a field with lazy modular reduction.

use crate::field::{Elem, Field};

const NB: usize = 512;
const KB: usize = 128;
const MB: usize = 32;

/// c (m x n, row-major) -= a (m x k) * b (k x n).
pub(crate) fn gemm_sub(f: &Field, c: &mut [Elem], m: usize, n: usize, a: &[Elem], k: usize, b: &[Elem]) {
    debug_assert_eq!(c.len(), m * n);
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), k * n);
    if m == 0 || n == 0 || k == 0 {
        return;
    }
    if !f.is_prime_field() {
        for i in 0..m {
            for kk in 0..k {
                let x = a[i * k + kk];
                if x != 0 {
                    let coef = f.neg(x);
                    let (ci, bk) = (&mut c[i * n..(i + 1) * n], &b[kk * n..(kk + 1) * n]);
                    f.axpy(ci, coef, bk);
                }
            }
        }
        return;
    }
    let p = f.characteristic() as u64;
    let sq = (p - 1) * (p - 1);
    let limit32 = (u32::MAX as u64 - p) / sq;
    if limit32 >= 16 {
        gemm32(f, c, m, n, a, k, b, limit32 as usize);
    } else {
        let limit64 = ((u64::MAX - p) / sq).max(1) as usize;
        gemm64(f, c, m, n, a, k, b, limit64);
    }
}

#[allow(clippy::too_many_arguments)]
fn gemm32(f: &Field, c: &mut [Elem], m: usize, n: usize, a: &[Elem], k: usize, b: &[Elem], limit: usize) {
    let p = f.characteristic();
    let jw = NB.min(n);
    let mut acc = vec![0u32; MB * jw];
    let mut counts = [0usize; MB];
    let mut terms: Vec<(u32, usize)> = Vec::with_capacity(KB);
    let mut j0 = 0;
    while j0 < n {
        let jn = NB.min(n - j0);
        let mut i0 = 0;
        while i0 < m {
            let im = MB.min(m - i0);
            for ii in 0..im {
                let i = i0 + ii;
                acc[ii * jn..(ii + 1) * jn].copy_from_slice(&c[i * n + j0..i * n + j0 + jn]);
                counts[ii] = 0;
            }
            let mut k0 = 0;
            while k0 < k {
                let kn = KB.min(k - k0);
                for ii in 0..im {
                    let i = i0 + ii;
                    terms.clear();
                    for kk in k0..k0 + kn {
                        let x = a[i * k + kk];
                        if x != 0 {
                            terms.push((p - x, kk * n + j0));
                        }
                    }
                    if terms.is_empty() {
                        continue;
                    }
                    let row = &mut acc[ii * jn..(ii + 1) * jn];
                    let mut t = 0;
                    while t < terms.len() {
                        let take = (terms.len() - t).min(4);
                        if counts[ii] + take > limit {
                            for x in row.iter_mut() {
                                *x = f.reduce_u64(*x as u64);
                            }
                            counts[ii] = 0;
                        }
                        if take == 4 {
                            let (c0, o0) = terms[t];
                            let (c1, o1) = terms[t + 1];
                            let (c2, o2) = terms[t + 2];
                            let (c3, o3) = terms[t + 3];
                            let (b0, b1, b2, b3) =
                                (&b[o0..o0 + jn], &b[o1..o1 + jn], &b[o2..o2 + jn], &b[o3..o3 + jn]);
                            for j in 0..jn {
                                row[j] = row[j]
                                    .wrapping_add(c0.wrapping_mul(b0[j]))
                                    .wrapping_add(c1.wrapping_mul(b1[j]))
                                    .wrapping_add(c2.wrapping_mul(b2[j]))
                                    .wrapping_add(c3.wrapping_mul(b3[j]));
                            }
                        } else {
                            for &(c0, o0) in &terms[t..t + take] {
                                let b0 = &b[o0..o0 + jn];
                                for j in 0..jn {
                                    row[j] = row[j].wrapping_add(c0.wrapping_mul(b0[j]));
                                }
                            }
                        }
                        counts[ii] += take;
                        t += take;
                    }
                }
                k0 += kn;
            }
            for ii in 0..im {
                let i = i0 + ii;
                let src = &acc[ii * jn..(ii + 1) * jn];
                let dst = &mut c[i * n + j0..i * n + j0 + jn];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = f.reduce_u64(s as u64);
                }
            }
            i0 += im;
        }
        j0 += jn;
    }
}

#[allow(clippy::too_many_arguments)]
fn gemm64(f: &Field, c: &mut [Elem], m: usize, n: usize, a: &[Elem], k: usize, b: &[Elem], limit: usize) {
    let p = f.characteristic() as u64;
    let mut row = vec![0u64; NB.min(n)];
    let mut j0 = 0;
    while j0 < n {
        let jn = NB.min(n - j0);
        for i in 0..m {
            let r = &mut row[..jn];
            for (x, &y) in r.iter_mut().zip(&c[i * n + j0..i * n + j0 + jn]) {
                *x = y as u64;
            }
            let mut count = 0;
            for kk in 0..k {
                let x = a[i * k + kk] as u64;
                if x == 0 {
                    continue;
                }
                if count == limit {
                    for v in r.iter_mut() {
                        *v %= p;
                    }
                    count = 0;
                }
                let coef = p - x;
                let bk = &b[kk * n + j0..kk * n + j0 + jn];
                for (v, &y) in r.iter_mut().zip(bk) {
                    *v += coef * y as u64;
                }
                count += 1;
            }
            for (d, &s) in c[i * n + j0..i * n + j0 + jn].iter_mut().zip(r.iter()) {
                *d = (s % p) as u32;
            }
        }
        j0 += jn;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive(f: &Field, c: &mut [u32], m: usize, n: usize, a: &[u32], k: usize, b: &[u32]) {
        for i in 0..m {
            for j in 0..n {
                let mut s = c[i * n + j];
                for t in 0..k {
                    s = f.sub(s, f.mul(a[i * k + t], b[t * n + j]));
                }
                c[i * n + j] = s;
            }
        }
    }

    #[test]
    fn agrees_with_naive_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &p in &[3u32, 101, 65_521, 2_147_483_629] {
            let f = Field::prime(p).unwrap();
            for &(m, n, k) in &[(1, 1, 1), (3, 700, 9), (5, 17, 300), (7, 1030, 131)] {
                let a: Vec<u32> = (0..m * k).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(0..p) }).collect();
                let b: Vec<u32> = (0..k * n).map(|_| rng.gen_range(0..p)).collect();
                let c0: Vec<u32> = (0..m * n).map(|_| rng.gen_range(0..p)).collect();
                let (mut c1, mut c2) = (c0.clone(), c0.clone());
                gemm_sub(&f, &mut c1, m, n, &a, k, &b);
                naive(&f, &mut c2, m, n, &a, k, &b);
                assert_eq!(c1, c2, "p={p} m={m} n={n} k={k}");
            }
        }
    }

    #[test]
    fn extension_field_path() {
        let f = Field::extension(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (m, n, k) = (3, 6, 4);
        let a: Vec<u32> = (0..m * k).map(|_| rng.gen_range(0..25)).collect();
        let b: Vec<u32> = (0..k * n).map(|_| rng.gen_range(0..25)).collect();
        let mut c1 = vec![0; m * n];
        let mut c2 = vec![0; m * n];
        gemm_sub(&f, &mut c1, m, n, &a, k, &b);
        naive(&f, &mut c2, m, n, &a, k, &b);
        assert_eq!(c1, c2);
    }
}

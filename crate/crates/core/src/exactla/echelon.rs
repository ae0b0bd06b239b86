//! Incremental reduced row echelon bases with batched insertion.

use super::kernel::gemm_sub;
use crate::field::{Elem, Field};

const NONE: u32 = u32::MAX;
const BATCH: usize = 48;

/// A subspace of F^ncols held as a reduced row echelon basis.
///
/// Pivots are the first nonzero entry of each basis row, normalised to 1, and
/// every basis row vanishes on the pivot columns of the others, so the basis is
/// canonical for the subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<Elem>,
    pivots: Vec<usize>,
    pivot_row: Vec<u32>,
}

impl Echelon {
    pub fn new(field: &Field, ncols: usize) -> Echelon {
        Echelon { field: field.clone(), ncols, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![NONE; ncols] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    /// Pivot column of each basis row, in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NONE
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.rows[i * self.ncols..(i + 1) * self.ncols]
    }

    /// Columns that carry no pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c] == NONE).collect()
    }

    /// Subtract from `v` its projection onto the basis along the pivot columns.
    pub fn reduce(&self, v: &mut [Elem]) {
        let k = self.rank();
        if k == 0 {
            return;
        }
        let coeffs: Vec<Elem> = self.pivots.iter().map(|&c| v[c]).collect();
        gemm_sub(&self.field, v, 1, self.ncols, &coeffs, k, &self.rows);
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the basis rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn insert(&mut self, v: &[Elem]) -> bool {
        let mut buf = v.to_vec();
        self.insert_batch(&mut buf, 1)[0]
    }

    /// Insert rows one after the other (row-major, `nrows` rows); the flags
    /// report which rows were independent of everything inserted before them.
    pub fn insert_rows(&mut self, data: &[Elem], nrows: usize) -> Vec<bool> {
        self.insert_rows_until(data, nrows, usize::MAX)
    }

    /// As `insert_rows` but stops once the rank reaches `target`; rows that
    /// were not examined are reported as dependent.
    pub fn insert_rows_until(&mut self, data: &[Elem], nrows: usize, target: usize) -> Vec<bool> {
        debug_assert_eq!(data.len(), nrows * self.ncols);
        let mut flags = vec![false; nrows];
        let mut start = 0;
        let mut buf = Vec::new();
        while start < nrows && self.rank() < target.min(self.ncols) {
            let take = BATCH.min(nrows - start);
            buf.clear();
            buf.extend_from_slice(&data[start * self.ncols..(start + take) * self.ncols]);
            let got = self.insert_batch(&mut buf, take);
            flags[start..start + take].copy_from_slice(&got);
            start += take;
        }
        flags
    }

    /// Insert a batch of rows held in `batch` (clobbered).
    pub fn insert_batch(&mut self, batch: &mut [Elem], nrows: usize) -> Vec<bool> {
        let n = self.ncols;
        let f = self.field.clone();
        debug_assert_eq!(batch.len(), nrows * n);
        let k = self.rank();
        if k > 0 {
            let mut coeffs = vec![0; nrows * k];
            for i in 0..nrows {
                for (t, &c) in self.pivots.iter().enumerate() {
                    coeffs[i * k + t] = batch[i * n + c];
                }
            }
            gemm_sub(&f, batch, nrows, n, &coeffs, k, &self.rows);
        }
        let mut flags = vec![false; nrows];
        let mut fresh: Vec<Elem> = Vec::new();
        let mut fresh_piv: Vec<usize> = Vec::new();
        for (i, flag) in flags.iter_mut().enumerate() {
            let row = &mut batch[i * n..(i + 1) * n];
            if !fresh_piv.is_empty() {
                let coeffs: Vec<Elem> = fresh_piv.iter().map(|&c| row[c]).collect();
                gemm_sub(&f, row, 1, n, &coeffs, fresh_piv.len(), &fresh);
            }
            let Some(pc) = row.iter().position(|&x| x != 0) else { continue };
            let inv = f.inv(row[pc]).unwrap();
            f.scale(row, inv);
            for j in 0..fresh_piv.len() {
                let c = fresh[j * n + pc];
                if c != 0 {
                    let neg = f.neg(c);
                    f.axpy(&mut fresh[j * n..(j + 1) * n], neg, row);
                }
            }
            fresh.extend_from_slice(row);
            fresh_piv.push(pc);
            *flag = true;
        }
        let nf = fresh_piv.len();
        if nf == 0 {
            return flags;
        }
        if k > 0 {
            let mut coeffs = vec![0; k * nf];
            let mut any = false;
            for r in 0..k {
                for (t, &c) in fresh_piv.iter().enumerate() {
                    let x = self.rows[r * n + c];
                    coeffs[r * nf + t] = x;
                    any |= x != 0;
                }
            }
            if any {
                gemm_sub(&f, &mut self.rows, k, n, &coeffs, nf, &fresh);
            }
        }
        for (t, &c) in fresh_piv.iter().enumerate() {
            self.pivot_row[c] = (k + t) as u32;
        }
        self.pivots.extend_from_slice(&fresh_piv);
        self.rows.extend_from_slice(&fresh);
        flags
    }

    /// Null-space vector attached to a free column: v[free] = 1, zero on the
    /// other free columns, and row(i)·v = 0 for every basis row.
    pub fn kernel_vector(&self, free: usize) -> Vec<Elem> {
        debug_assert!(!self.is_pivot(free));
        let mut v = vec![0; self.ncols];
        v[free] = 1;
        for (i, &c) in self.pivots.iter().enumerate() {
            v[c] = self.field.neg(self.rows[i * self.ncols + free]);
        }
        v
    }

    /// Sparse form of `kernel_vector`: (index, value) pairs in ascending index order.
    pub fn kernel_support(&self, free: usize) -> Vec<(usize, Elem)> {
        let mut out = vec![(free, 1)];
        for (i, &c) in self.pivots.iter().enumerate() {
            let x = self.rows[i * self.ncols + free];
            if x != 0 {
                out.push((c, self.field.neg(x)));
            }
        }
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    pub fn into_rows(self) -> (Vec<Elem>, Vec<usize>) {
        (self.rows, self.pivots)
    }

    /// Bytes held by the basis.
    pub fn footprint(&self) -> usize {
        self.rows.len() * 4 + self.pivot_row.len() * 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn slow_rank(f: &Field, rows: &[Vec<u32>]) -> usize {
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let n = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..n {
            let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, pr);
            let inv = f.inv(m[rank][c]).unwrap();
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let s = f.neg(f.mul(m[r][c], inv));
                    let src = m[rank].clone();
                    f.axpy(&mut m[r], s, &src);
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn batched_matches_sequential_elimination() {
        let f = Field::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..20 {
            let n = rng.gen_range(1..90);
            let true_rank = rng.gen_range(0..=n.min(70));
            let basis: Vec<Vec<u32>> = (0..true_rank).map(|_| (0..n).map(|_| rng.gen_range(0..101)).collect()).collect();
            let nrows = rng.gen_range(0..130);
            let rows: Vec<Vec<u32>> = (0..nrows)
                .map(|_| {
                    let mut v = vec![0u32; n];
                    for b in &basis {
                        let c = rng.gen_range(0..101);
                        f.axpy(&mut v, c, b);
                    }
                    v
                })
                .collect();
            let flat: Vec<u32> = rows.iter().flatten().copied().collect();
            let mut e = Echelon::new(&f, n);
            let flags = e.insert_rows(&flat, nrows);
            assert_eq!(e.rank(), slow_rank(&f, &rows), "trial {trial}");
            // flags agree with one-at-a-time insertion
            let mut e1 = Echelon::new(&f, n);
            for (r, &fl) in rows.iter().zip(&flags) {
                assert_eq!(e1.insert(r), fl);
            }
            // canonical form
            for i in 0..e.rank() {
                let pi = e.pivots()[i];
                let j = e1.pivots().iter().position(|&c| c == pi).unwrap();
                assert_eq!(e.row(i), e1.row(j));
            }
            for free in e.free_columns() {
                let v = e.kernel_vector(free);
                for r in &rows {
                    assert_eq!(f.dot(r, &v), 0);
                }
            }
        }
    }
}

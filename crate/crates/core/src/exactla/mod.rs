//! Exact linear algebra over finite fields.

mod echelon;
mod kernel;
mod mat;
mod sparse;

pub use echelon::Echelon;
pub use mat::{independent_columns, kernel, rank, row_echelon, solve, Mat};
pub use sparse::{column_space_pivots, sparse_rank, Block, BlockKernel, SparseMat};

use crate::field::Field;

/// Matrices with more entries than this are stored sparsely when they are
/// also mostly zero.
pub const DENSE_LIMIT: usize = 1_000_000;

/// A matrix in whichever storage suits its size and density.
#[derive(Clone, Debug)]
pub enum Matrix {
    Dense(Mat),
    Sparse(SparseMat),
}

impl Matrix {
    pub fn from_dense(f: &Field, m: Mat) -> Matrix {
        if m.rows() * m.cols() > DENSE_LIMIT {
            let nnz = m.data().iter().filter(|&&x| x != 0).count();
            if nnz * 10 < m.rows() * m.cols() {
                return Matrix::Sparse(SparseMat::from_dense(f, &m));
            }
        }
        Matrix::Dense(m)
    }

    pub fn rows(&self) -> usize {
        match self {
            Matrix::Dense(m) => m.rows(),
            Matrix::Sparse(s) => s.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Matrix::Dense(m) => m.cols(),
            Matrix::Sparse(s) => s.cols(),
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        match self {
            Matrix::Dense(m) => rank(f, m),
            Matrix::Sparse(s) => sparse_rank(f, s),
        }
    }

    pub fn to_dense(&self) -> Mat {
        match self {
            Matrix::Dense(m) => m.clone(),
            Matrix::Sparse(s) => s.to_dense(),
        }
    }

    /// Kernel basis as the columns of a dense matrix.
    pub fn kernel(&self, f: &Field) -> Mat {
        match self {
            Matrix::Dense(m) => kernel(f, m),
            Matrix::Sparse(s) => {
                let bk = BlockKernel::new(f, s);
                let free = bk.free_columns();
                let mut k = Mat::zeros(s.cols(), free.len());
                for (t, &c) in free.iter().enumerate() {
                    for (i, v) in bk.kernel_support(c) {
                        k.set(i, t, v);
                    }
                }
                k
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_mat() -> impl Strategy<Value = (u32, Mat)> {
        (prop::sample::select(vec![3u32, 7, 101, 65_521]), 0usize..12, 0usize..12).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p, r * c).prop_map(move |d| (p, Mat::from_vec(r, c, d)))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((p, m) in arb_mat()) {
            let f = Field::prime(p).unwrap();
            let k = kernel(&f, &m);
            prop_assert_eq!(rank(&f, &m) + k.cols(), m.cols());
            prop_assert!(m.mul(&f, &k).unwrap().is_zero());
            prop_assert_eq!(rank(&f, &k), k.cols());
        }

        #[test]
        fn rank_of_transpose((p, m) in arb_mat()) {
            let f = Field::prime(p).unwrap();
            prop_assert_eq!(rank(&f, &m), rank(&f, &m.transpose()));
        }

        #[test]
        fn solve_round_trip((p, a) in arb_mat(), seed in 0u64..1000) {
            let f = Field::prime(p).unwrap();
            // b in the column space half the time
            let x0 = Mat::from_vec(a.cols(), 2, (0..a.cols() * 2).map(|i| ((i as u64 * 31 + seed) % p as u64) as u32).collect());
            let b = if seed % 2 == 0 { a.mul(&f, &x0).unwrap() } else {
                Mat::from_vec(a.rows(), 2, (0..a.rows() * 2).map(|i| ((i as u64 * 17 + seed) % p as u64) as u32).collect())
            };
            match solve(&f, &a, &b).unwrap() {
                Some(x) => prop_assert_eq!(a.mul(&f, &x).unwrap(), b),
                None => prop_assert!(seed % 2 == 1),
            }
        }
    }

    #[test]
    fn storage_threshold() {
        let f = Field::prime(101).unwrap();
        let mut m = Mat::zeros(1200, 1000);
        m.set(5, 7, 3);
        let s = Matrix::from_dense(&f, m.clone());
        assert!(matches!(s, Matrix::Sparse(_)));
        assert_eq!(s.rank(&f), 1);
        assert_eq!(s.kernel(&f).cols(), 999);
        assert!(matches!(Matrix::from_dense(&f, Mat::identity(4)), Matrix::Dense(_)));
    }
}

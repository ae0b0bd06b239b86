//! Rank, kernel and solve over F_101, dense and sparse.
use shortres::exactla::{kernel, rank, solve, sparse_rank, Mat, SparseMat};
use shortres::{Field, Result};

fn main() -> Result<()> {
    let f = Field::prime(101)?;
    let a = Mat::from_ints(&f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, -1, 5]]);
    println!("rank = {}", rank(&f, &a));

    let k = kernel(&f, &a);
    println!("kernel has {} basis vectors", k.cols());
    assert!(a.mul(&f, &k)?.is_zero());

    let b = Mat::from_ints(&f, &[vec![10], vec![20], vec![7]]);
    match solve(&f, &a, &b)? {
        Some(x) => println!("a solution of a x = b: {:?}", x.column(0)),
        None => println!("a x = b is inconsistent"),
    }

    let s = SparseMat::from_dense(&f, &a);
    println!("sparse: {} nonzeros, rank {}", s.nnz(), sparse_rank(&f, &s));
    Ok(())
}

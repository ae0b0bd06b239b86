use super::echelon::Echelon;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Mat {
        assert_eq!(data.len(), rows * cols, "data length does not match {rows}x{cols}");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Elem>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    /// Signed integer entries reduced into the field.
    pub fn from_ints(f: &Field, rows: &[Vec<i64>]) -> Mat {
        let r: Vec<Vec<Elem>> = rows.iter().map(|row| row.iter().map(|&x| f.from_i64(x)).collect()).collect();
        Mat::from_rows(&r)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    f.axpy(dst, a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| f.dot(self.row(i), v)).collect()
    }

    pub fn add(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, f: &Field, a: Elem) -> Mat {
        let mut m = self.clone();
        f.scale(&mut m.data, a);
        m
    }

    /// Horizontal concatenation.
    pub fn hcat(blocks: &[&Mat]) -> Mat {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            let mut off = 0;
            for b in blocks {
                assert_eq!(b.rows, rows);
                m.data[i * cols + off..i * cols + off + b.cols].copy_from_slice(b.row(i));
                off += b.cols;
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vcat(blocks: &[&Mat]) -> Mat {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Mat { rows, cols, data }
    }

    /// Select columns by index.
    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (t, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + t] = self.get(i, j);
            }
        }
        m
    }
}

/// Row echelon basis of the row space.
pub fn row_echelon(f: &Field, m: &Mat) -> Echelon {
    let mut e = Echelon::new(f, m.cols);
    e.insert_rows(&m.data, m.rows);
    e
}

/// Rank over the field. Eliminates along the shorter dimension.
pub fn rank(f: &Field, m: &Mat) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    if m.cols <= m.rows {
        let mut e = Echelon::new(f, m.cols);
        e.insert_rows_until(&m.data, m.rows, m.cols);
        e.rank()
    } else {
        let t = m.transpose();
        let mut e = Echelon::new(f, t.cols);
        e.insert_rows_until(&t.data, t.rows, t.cols);
        e.rank()
    }
}

/// Basis of the right null space, as the columns of the result.
pub fn kernel(f: &Field, m: &Mat) -> Mat {
    let e = row_echelon(f, m);
    let free = e.free_columns();
    let mut k = Mat::zeros(m.cols, free.len());
    for (t, &c) in free.iter().enumerate() {
        for (i, x) in e.kernel_vector(c).into_iter().enumerate() {
            k.data[i * free.len() + t] = x;
        }
    }
    k
}

/// A solution of a·x = b, if every column of b lies in the column space of a.
pub fn solve(f: &Field, a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    if a.rows != b.rows {
        return Err(Error::Dimension(format!("solve: a has {} rows, b has {}", a.rows, b.rows)));
    }
    let aug = Mat::hcat(&[a, b]);
    let e = row_echelon(f, &aug);
    if e.pivots().iter().any(|&c| c >= a.cols) {
        return Ok(None);
    }
    let mut x = Mat::zeros(a.cols, b.cols);
    for (i, &c) in e.pivots().iter().enumerate() {
        let row = e.row(i);
        for j in 0..b.cols {
            x.data[c * b.cols + j] = row[a.cols + j];
        }
    }
    Ok(Some(x))
}

/// Column indices of a greedy maximal independent subset of the columns.
pub fn independent_columns(f: &Field, m: &Mat) -> Vec<usize> {
    let t = m.transpose();
    let mut e = Echelon::new(f, m.rows);
    e.insert_rows(&t.data, t.rows).into_iter().enumerate().filter(|(_, b)| *b).map(|(i, _)| i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = Field::prime(101).unwrap();
        assert_eq!(rank(&f, &Mat::identity(2)), 2);
        assert_eq!(rank(&f, &Mat::zeros(3, 5)), 0);
        assert_eq!(rank(&f5(), &Mat::from_rows(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = Field::prime(101).unwrap();
        assert_eq!(kernel(&f, &Mat::identity(3)).cols(), 0);
        let z = kernel(&f, &Mat::zeros(3, 4));
        assert_eq!(z.cols(), 4);
        assert_eq!(rank(&f, &z), 4);
        let f3 = Field::prime(3).unwrap();
        let m = Mat::from_rows(&[vec![1, 1]]);
        let k = kernel(&f3, &m);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![2, 1]);
        assert!(m.mul(&f3, &k).unwrap().is_zero());
    }

    #[test]
    fn solve_examples() {
        let f = Field::prime(101).unwrap();
        let b = Mat::from_rows(&[vec![3, 4], vec![5, 6]]);
        assert_eq!(solve(&f, &Mat::identity(2), &b).unwrap(), Some(b.clone()));
        let x = solve(&f, &Mat::zeros(2, 3), &Mat::zeros(2, 1)).unwrap().unwrap();
        assert!(x.is_zero());
        let a = Mat::from_rows(&[vec![1], vec![1]]);
        let b = Mat::from_rows(&[vec![1], vec![2]]);
        assert_eq!(solve(&f, &a, &b).unwrap(), None);
        assert!(solve(&f, &a, &Mat::zeros(3, 1)).is_err());
    }
}

//! Column-major sparse matrices and block-wise elimination.
//!
//! Elimination never works on the sparse form directly: the bipartite
//! row/column incidence graph is split into connected components and each
//! component is eliminated as a dense block. Rows and columns in different
//! components never interact, so the block results assemble into the global
//! reduced echelon data.

use super::echelon::Echelon;
use super::mat::Mat;
use crate::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    colptr: Vec<usize>,
    rowidx: Vec<u32>,
    vals: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

impl SparseMat {
    pub fn new(rows: usize) -> SparseMat {
        SparseMat { rows, cols: 0, colptr: vec![0], rowidx: Vec::new(), vals: Vec::new() }
    }

    /// Append a column given as (row, value) pairs; zero values are dropped,
    /// repeated rows are summed.
    pub fn push_column(&mut self, f: &Field, entries: &mut Vec<(u32, Elem)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut last: Option<u32> = None;
        let start = self.rowidx.len();
        for &(r, v) in entries.iter() {
            debug_assert!((r as usize) < self.rows);
            if last == Some(r) {
                let i = self.vals.len() - 1;
                self.vals[i] = f.add(self.vals[i], v);
            } else {
                self.rowidx.push(r);
                self.vals.push(v);
                last = Some(r);
            }
        }
        // drop cancelled entries
        let mut w = start;
        for i in start..self.rowidx.len() {
            if self.vals[i] != 0 {
                self.rowidx[w] = self.rowidx[i];
                self.vals[w] = self.vals[i];
                w += 1;
            }
        }
        self.rowidx.truncate(w);
        self.vals.truncate(w);
        self.colptr.push(w);
        self.cols += 1;
    }

    pub fn push_dense_column(&mut self, f: &Field, col: &[Elem]) {
        let mut e: Vec<(u32, Elem)> = col.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i as u32, v)).collect();
        self.push_column(f, &mut e);
    }

    pub fn from_dense(f: &Field, m: &Mat) -> SparseMat {
        let mut s = SparseMat::new(m.rows());
        for j in 0..m.cols() {
            s.push_dense_column(f, &m.column(j));
        }
        s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, Elem)> + '_ {
        let (a, b) = (self.colptr[j], self.colptr[j + 1]);
        self.rowidx[a..b].iter().zip(&self.vals[a..b]).map(|(&r, &v)| (r as usize, v))
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for j in 0..self.cols {
            for (r, v) in self.column(j) {
                m.set(r, j, v);
            }
        }
        m
    }

    /// Connected components of the incidence graph, ordered by their least
    /// column. Zero rows and zero columns belong to no block.
    pub fn blocks(&self) -> Vec<Block> {
        let n = self.rows + self.cols;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        for j in 0..self.cols {
            let cj = (self.rows + j) as u32;
            for (r, _) in self.column(j) {
                let a = find(&mut parent, r as u32);
                let b = find(&mut parent, cj);
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        let mut id = vec![u32::MAX; n];
        let mut blocks: Vec<Block> = Vec::new();
        for j in 0..self.cols {
            if self.colptr[j] == self.colptr[j + 1] {
                continue;
            }
            let root = find(&mut parent, (self.rows + j) as u32) as usize;
            if id[root] == u32::MAX {
                id[root] = blocks.len() as u32;
                blocks.push(Block { rows: Vec::new(), cols: Vec::new() });
            }
            blocks[id[root] as usize].cols.push(j);
        }
        for r in 0..self.rows {
            let root = find(&mut parent, r as u32) as usize;
            if id[root] != u32::MAX {
                blocks[id[root] as usize].rows.push(r);
            }
        }
        blocks
    }

    /// Dense row-major copy of a block (block rows by block columns).
    pub fn dense_block(&self, b: &Block) -> Mat {
        let mut local = vec![u32::MAX; self.rows];
        for (i, &r) in b.rows.iter().enumerate() {
            local[r] = i as u32;
        }
        let mut m = Mat::zeros(b.rows.len(), b.cols.len());
        for (t, &j) in b.cols.iter().enumerate() {
            for (r, v) in self.column(j) {
                m.set(local[r] as usize, t, v);
            }
        }
        m
    }

    /// Dense block transposed: one row per block column.
    pub fn dense_block_transposed(&self, b: &Block) -> Mat {
        let mut local = vec![u32::MAX; self.rows];
        for (i, &r) in b.rows.iter().enumerate() {
            local[r] = i as u32;
        }
        let mut m = Mat::zeros(b.cols.len(), b.rows.len());
        for (t, &j) in b.cols.iter().enumerate() {
            for (r, v) in self.column(j) {
                m.set(t, local[r] as usize, v);
            }
        }
        m
    }
}

/// Row-space reduced echelon data of a sparse matrix, kept per block.
#[derive(Clone, Debug)]
pub struct BlockKernel {
    cols: usize,
    rank: usize,
    blocks: Vec<(Block, Echelon)>,
    /// For each column: (block index, local column) or none for zero columns.
    locate: Vec<(u32, u32)>,
    /// Rows independent of the rows above them; their complement spans a
    /// complement of the column space.
    independent_rows: Vec<bool>,
}

impl BlockKernel {
    pub fn new(f: &Field, m: &SparseMat) -> BlockKernel {
        let mut locate = vec![(u32::MAX, 0); m.cols()];
        let mut independent_rows = vec![false; m.rows()];
        let mut blocks = Vec::new();
        let mut rank = 0;
        for (bi, b) in m.blocks().into_iter().enumerate() {
            let d = m.dense_block(&b);
            let mut e = Echelon::new(f, b.cols.len());
            let flags = e.insert_rows(d.data(), d.rows());
            for (i, &fl) in flags.iter().enumerate() {
                independent_rows[b.rows[i]] = fl;
            }
            rank += e.rank();
            for (t, &j) in b.cols.iter().enumerate() {
                locate[j] = (bi as u32, t as u32);
            }
            blocks.push((b, e));
        }
        BlockKernel { cols: m.cols(), rank, blocks, locate, independent_rows }
    }

    pub fn independent_rows(&self) -> &[bool] {
        &self.independent_rows
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| {
                let (bi, t) = self.locate[j];
                bi == u32::MAX || !self.blocks[bi as usize].1.is_pivot(t as usize)
            })
            .collect()
    }

    /// Kernel vector attached to a free column, as sorted (column, value) pairs.
    pub fn kernel_support(&self, free: usize) -> Vec<(usize, Elem)> {
        let (bi, t) = self.locate[free];
        if bi == u32::MAX {
            return vec![(free, 1)];
        }
        let (b, e) = &self.blocks[bi as usize];
        let mut out: Vec<(usize, Elem)> = e.kernel_support(t as usize).into_iter().map(|(c, v)| (b.cols[c], v)).collect();
        out.sort_unstable_by_key(|x| x.0);
        out
    }

    pub fn footprint(&self) -> usize {
        self.blocks.iter().map(|(_, e)| e.footprint()).sum::<usize>() + self.locate.len() * 8
    }
}

/// Rank of the column space and the rows that are pivots of its reduced
/// echelon basis (taking columns as vectors indexed by rows). Stops early
/// once every row is a pivot.
pub fn column_space_pivots(f: &Field, m: &SparseMat) -> (usize, Vec<bool>) {
    let mut is_pivot = vec![false; m.rows()];
    let mut rank = 0;
    for b in m.blocks() {
        let d = m.dense_block_transposed(&b);
        let mut e = Echelon::new(f, b.rows.len());
        e.insert_rows_until(d.data(), d.rows(), b.rows.len());
        rank += e.rank();
        for &c in e.pivots() {
            is_pivot[b.rows[c]] = true;
        }
    }
    (rank, is_pivot)
}

/// Rank of a sparse matrix.
pub fn sparse_rank(f: &Field, m: &SparseMat) -> usize {
    column_space_pivots(f, m).0
}

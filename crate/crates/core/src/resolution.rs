//! Minimal free resolutions over a `ShortAlgebra`.
//!
//! Write F_n = R^{beta_n} and let Omega_n be the n-th syzygy, a submodule of
//! m F_{n-1}. For n >= 1 we have m^2 Omega_n = 0, and Omega_n splits as
//!
//!   Omega_n = V_n + R_2 F_{n-1},    V_n = ker(nu_{n-1}) inside R_1 F_{n-1},
//!
//! where nu_n : R_1 F_n -> R_2 F_{n-1} sends x_j e_g to x_j times the linear
//! part of the g-th generator of Omega_n. A minimal generating set of Omega_n
//! is a basis of V_n followed by coordinate vectors C_n of R_2 F_{n-1} that
//! complete m Omega_n = im(nu_n). Hence
//!
//!   beta_n = |V_n| + |C_n|,  |V_{n+1}| = e beta_n - rank(nu_n),
//!   rank(nu_n) = r beta_{n-1} - |C_n|.
//!
//! Everything is done with exact linear algebra on `nu_n`, which is kept
//! sparse so that multigraded (monomial) algebras split into small blocks.
//!
//! When a Conca generator y is supplied, C_n = 0 can often be certified
//! without touching nu_n: with u_a a basis of the kernel of multiplication
//! by y on R_1, if nu_{n-1} restricted to the columns u_a e_g has the same
//! rank as nu_{n-1}, then y V_n = R_2 F_{n-1} and C_n is empty.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::ShortAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{column_space_pivots, kernel, BlockKernel, Echelon, Mat, SparseMat};
use crate::field::{Elem, Field};
use crate::modrep::FiniteModule;
use crate::series::TruncSeries;

pub type SparseVec = Vec<(u32, Elem)>;

pub const DEFAULT_BUDGET: usize = 5_000;

const CERT_BATCH: usize = 64;

/// Default depth by embedding dimension.
pub fn default_depth(e: usize) -> usize {
    match e {
        0..=3 => 10,
        4 => 8,
        _ => 6,
    }
}

#[derive(Clone, Debug)]
pub struct ResolveOptions {
    /// Largest admissible |V_n| (and hence beta_n lower bound) per degree.
    pub budget: usize,
    /// A Conca generator of the algebra, in its coordinates on m/m^2.
    pub hint: Option<Vec<Elem>>,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions { budget: DEFAULT_BUDGET, hint: None }
    }
}

#[derive(Clone, Debug, Default)]
struct Level {
    /// Basis of V_n in R_1 F_{n-1} (index t e + i); for n = 1 the linear
    /// parts of the chosen generators of Omega_1.
    v: Option<Vec<SparseVec>>,
    v_count: usize,
    /// C_n as coordinates t r + h of R_2 F_{n-1}.
    c: Option<Vec<u32>>,
    /// rank of nu_n = dim m Omega_n.
    h: Option<usize>,
    certified: bool,
}

/// Counters describing which linear algebra was run.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Stats {
    pub kernel_passes: usize,
    pub column_passes: usize,
    pub certificates: usize,
    pub certificate_failures: usize,
    pub max_blocks: usize,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    module: FiniteModule,
    alg: Arc<ShortAlgebra>,
    budget: usize,
    hint_forms: Option<Vec<Vec<Elem>>>,
    target: usize,
    /// generators of F_0 as basis indices of M
    top: Vec<usize>,
    /// generators of Omega_1 as vectors of F_0 (index t d + k)
    k0: Vec<SparseVec>,
    k_dim: usize,
    lin1_exact: bool,
    lin2_bottom_exact: bool,
    levels: Vec<Level>,
    betti: Vec<usize>,
    truncated: bool,
    stats: Stats,
}

fn linear_form_matrix(alg: &ShortAlgebra, u: &[Elem]) -> Mat {
    // M[h][i] = sum_j u_j c[j][i][h]
    alg.multiplication_matrix(u)
}

/// Columns (g, a) = forms[a] times the vector gens[g] of R_1 F, landing in
/// R_2 F (index t r + h).
fn multiply_columns(alg: &ShortAlgebra, gens: &[SparseVec], rows: usize, forms: &[Mat]) -> SparseMat {
    let f = alg.field();
    let (e, r) = (alg.e(), alg.r());
    let mut m = SparseMat::new(rows);
    let mut buf: Vec<(u32, Elem)> = Vec::new();
    for g in gens {
        for mu in forms {
            buf.clear();
            for &(idx, val) in g {
                let (t, i) = (idx as usize / e, idx as usize % e);
                for h in 0..r {
                    let c = mu.get(h, i);
                    if c != 0 {
                        buf.push(((t * r + h) as u32, f.mul(c, val)));
                    }
                }
            }
            m.push_column(f, &mut buf);
        }
    }
    m
}

impl Resolution {
    /// First step of the resolution of `module`; later steps are computed on demand.
    pub fn new(module: &FiniteModule, opts: ResolveOptions) -> Result<Resolution> {
        let alg = module.algebra_arc().clone();
        let f = alg.field().clone();
        let (e, r, d) = (alg.e(), alg.r(), alg.dim());
        let hint_forms = match &opts.hint {
            None => None,
            Some(y) => {
                if !alg.is_conca(y) {
                    return Err(Error::Contract("resolution hint is not a Conca generator".into()));
                }
                let ker = kernel(&f, &alg.multiplication_matrix(y));
                Some((0..ker.cols()).map(|a| ker.column(a)).collect())
            }
        };
        let mdim = module.dim();
        let top = module.top_generators();
        let b0 = top.len();
        // augmentation F_0 -> M, column (g, k) = basis_k y_g
        let mut eps = Mat::zeros(mdim, b0 * d);
        for (g, &y) in top.iter().enumerate() {
            eps.set(y, g * d, 1);
            for i in 0..e {
                for s in 0..mdim {
                    eps.set(s, g * d + 1 + i, module.action(i).get(s, y));
                }
            }
            for h in 0..r {
                let sig = module.socle_action(h).ok_or_else(|| Error::Contract("module fails the algebra relations".into()))?;
                for s in 0..mdim {
                    eps.set(s, g * d + 1 + e + h, sig.get(s, y));
                }
            }
        }
        let mut ech = Echelon::new(&f, b0 * d);
        ech.insert_rows(eps.data(), mdim);
        if ech.rank() != mdim {
            return Err(Error::Contract("chosen generators do not generate the module".into()));
        }
        let kbasis: Vec<Vec<Elem>> = ech.free_columns().into_iter().map(|c| ech.kernel_vector(c)).collect();
        let k_dim = kbasis.len();
        // m K lies in R_2 F_0
        let lin = |v: &[Elem]| -> SparseVec {
            let mut out = Vec::new();
            for t in 0..b0 {
                for i in 0..e {
                    let x = v[t * d + 1 + i];
                    if x != 0 {
                        out.push(((t * e + i) as u32, x));
                    }
                }
            }
            out
        };
        let lin_k: Vec<SparseVec> = kbasis.iter().map(|v| lin(v)).collect();
        let std_forms: Vec<Mat> = (0..e).map(|j| linear_form_matrix(&alg, &unit(e, j))).collect();
        let mk = multiply_columns(&alg, &lin_k, r * b0, &std_forms);
        let mut seeded = Echelon::new(&f, b0 * d);
        for j in 0..mk.cols() {
            let mut v = vec![0; b0 * d];
            for (row, val) in mk.column(j) {
                let (t, h) = (row / r.max(1), row % r.max(1));
                v[t * d + 1 + e + h] = val;
            }
            seeded.insert(&v);
        }
        let h1 = seeded.rank();
        let mut k0 = Vec::new();
        for v in &kbasis {
            if seeded.insert(v) {
                k0.push(v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, x)).collect::<SparseVec>());
            }
        }
        let lin_k0: Vec<SparseVec> = k0.iter().map(|v| {
            let mut dense = vec![0; b0 * d];
            for &(i, x) in v {
                dense[i as usize] = x;
            }
            lin(&dense)
        }).collect();
        let rank_lin = |vs: &[SparseVec]| -> usize {
            let mut ech = Echelon::new(&f, b0 * e);
            for v in vs {
                let mut dense = vec![0; b0 * e];
                for &(i, x) in v {
                    dense[i as usize] = x;
                }
                ech.insert(&dense);
            }
            ech.rank()
        };
        let lin1_exact = rank_lin(&lin_k0) == k0.len();
        let lin2_bottom_exact = k_dim - rank_lin(&lin_k) == h1;
        let b1 = k0.len();
        let level1 = Level { v: Some(lin_k0), v_count: b1, c: Some(Vec::new()), h: Some(h1), certified: false };
        Ok(Resolution {
            module: module.clone(),
            alg,
            budget: opts.budget,
            hint_forms,
            target: 1,
            top,
            k0,
            k_dim,
            lin1_exact,
            lin2_bottom_exact,
            levels: vec![Level::default(), level1],
            betti: vec![b0, b1],
            truncated: false,
            stats: Stats::default(),
        })
    }

    /// Resolve `module` through homological degree `depth`.
    pub fn resolve(module: &FiniteModule, depth: usize, opts: ResolveOptions) -> Result<Resolution> {
        let mut res = Resolution::new(module, opts)?;
        res.extend_to(depth)?;
        Ok(res)
    }

    /// Basis indices of the module chosen as generators of F_0.
    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn algebra(&self) -> &ShortAlgebra {
        &self.alg
    }

    fn field(&self) -> &Field {
        self.alg.field()
    }

    /// Betti numbers computed so far (at least beta_0 and beta_1).
    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    /// Largest n with beta_n known.
    pub fn depth(&self) -> usize {
        self.betti.len() - 1
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Betti numbers through `depth`, or fewer if the budget ran out.
    pub fn betti_through(&self, depth: usize) -> &[usize] {
        &self.betti[..self.betti.len().min(depth + 1)]
    }

    /// dim_k of Omega_n for computed n.
    pub fn syzygy_dim(&self, n: usize) -> usize {
        match n {
            0 => self.module.dim(),
            1 => self.k_dim,
            _ => self.levels[n].v_count + self.alg.r() * self.betti[n - 1],
        }
    }

    /// dim_k of m Omega_n.
    pub fn radical_dim(&self, n: usize) -> Option<usize> {
        if n == 0 {
            return Some(self.module.dim() - self.betti[0]);
        }
        self.levels.get(n).and_then(|l| l.h)
    }

    /// |C_n|: generators of Omega_n inside R_2 F_{n-1}.
    pub fn socle_generators(&self, n: usize) -> Option<usize> {
        self.levels.get(n).and_then(|l| l.c.as_ref().map(|c| c.len()))
    }

    pub fn v_count(&self, n: usize) -> usize {
        self.levels[n].v_count
    }

    /// lin_1 is exact: no combination of the generators of Omega_1 lies in R_2 F_0.
    pub fn lin1_exact(&self) -> bool {
        self.lin1_exact
    }

    /// lin_2 is exact at F_0: K meets R_2 F_0 only in m K.
    pub fn lin2_bottom_exact(&self) -> bool {
        self.lin2_bottom_exact
    }

    /// Compute Betti numbers through `depth` (stops early on budget).
    pub fn extend_to(&mut self, depth: usize) -> Result<()> {
        self.target = self.target.max(depth);
        while self.depth() < depth && !self.truncated {
            self.next_level()?;
        }
        Ok(())
    }

    fn next_level(&mut self) -> Result<()> {
        let n = self.betti.len();
        let (e, r) = (self.alg.e(), self.alg.r());
        let h_prev = self.levels[n - 1].h.expect("rank of the previous level is known");
        let v_count = e * self.betti[n - 1] - h_prev;
        if v_count > self.budget {
            self.truncated = true;
            return Ok(());
        }
        if self.levels.len() == n {
            self.levels.push(Level { v_count, ..Level::default() });
        } else {
            debug_assert_eq!(self.levels[n].v_count, v_count);
        }
        self.compute_c(n)?;
        let c = self.levels[n].c.as_ref().unwrap().len();
        self.betti.push(v_count + c);
        self.levels[n].h = Some(r * self.betti[n - 1] - c);
        Ok(())
    }

    fn compute_c(&mut self, n: usize) -> Result<()> {
        if self.levels[n].c.is_some() {
            return Ok(());
        }
        let r = self.alg.r();
        let rows = r * self.betti[n - 1];
        if rows == 0 {
            self.levels[n].c = Some(Vec::new());
            return Ok(());
        }
        if self.levels[n].v_count == 0 {
            self.levels[n].c = Some((0..rows as u32).collect());
            return Ok(());
        }
        let near_end = n + 2 > self.target;
        if near_end && self.hint_forms.is_some() && n >= 2 && self.certify(n)? {
            return Ok(());
        }
        self.ensure_v(n)?;
        if n < self.target {
            self.process(n)
        } else {
            self.column_pass(n)
        }
    }

    /// Try to show C_n = 0 from nu_{n-1} restricted to the kernel of y.
    /// Columns are streamed into an echelon basis until the rank reaches
    /// rank(nu_{n-1}), so the restricted matrix is never stored.
    fn certify(&mut self, n: usize) -> Result<bool> {
        self.ensure_v(n - 1)?;
        let h_prev = self.levels[n - 1].h.unwrap();
        let (e, r) = (self.alg.e(), self.alg.r());
        let f = self.field().clone();
        let forms: Vec<Mat> = self.hint_forms.as_ref().unwrap().iter().map(|u| linear_form_matrix(&self.alg, u)).collect();
        let rows = r * self.betti[n - 2];
        let gens = self.levels[n - 1].v.as_ref().unwrap();
        let mut ech = Echelon::new(&f, rows);
        let mut batch: Vec<Elem> = Vec::with_capacity(CERT_BATCH * rows);
        let mut pending = 0;
        'outer: for g in gens {
            for mu in &forms {
                let start = batch.len();
                batch.resize(start + rows, 0);
                let col = &mut batch[start..];
                for &(idx, val) in g {
                    let (t, i) = (idx as usize / e, idx as usize % e);
                    for h in 0..r {
                        let c = mu.get(h, i);
                        if c != 0 {
                            col[t * r + h] = f.add(col[t * r + h], f.mul(c, val));
                        }
                    }
                }
                pending += 1;
                if pending == CERT_BATCH {
                    ech.insert_rows_until(&batch, pending, h_prev);
                    batch.clear();
                    pending = 0;
                    if ech.rank() >= h_prev {
                        break 'outer;
                    }
                }
            }
        }
        if pending > 0 && ech.rank() < h_prev {
            ech.insert_rows_until(&batch, pending, h_prev);
        }
        if ech.rank() == h_prev {
            self.stats.certificates += 1;
            self.levels[n].c = Some(Vec::new());
            self.levels[n].certified = true;
            Ok(true)
        } else {
            self.stats.certificate_failures += 1;
            Ok(false)
        }
    }

    fn nu(&self, n: usize) -> SparseMat {
        let e = self.alg.e();
        let forms: Vec<Mat> = (0..e).map(|j| linear_form_matrix(&self.alg, &unit(e, j))).collect();
        let rows = self.alg.r() * self.betti[n - 1];
        multiply_columns(&self.alg, self.levels[n].v.as_ref().unwrap(), rows, &forms)
    }

    /// Row reduction of nu_n: rank, C_n and an explicit basis of V_{n+1}.
    fn process(&mut self, n: usize) -> Result<()> {
        let e = self.alg.e();
        let nu = self.nu(n);
        let bk = BlockKernel::new(self.field(), &nu);
        self.stats.kernel_passes += 1;
        self.stats.max_blocks = self.stats.max_blocks.max(bk.block_count());
        if n >= 2 {
            let c: Vec<u32> = bk.independent_rows().iter().enumerate().filter(|(_, &ind)| !ind).map(|(i, _)| i as u32).collect();
            match &self.levels[n].c {
                Some(known) => debug_assert_eq!(known, &c),
                None => self.levels[n].c = Some(c),
            }
        }
        let rank = bk.rank();
        match self.levels[n].h {
            Some(h) => debug_assert_eq!(h, rank),
            None => self.levels[n].h = Some(rank),
        }
        let mut v: Vec<SparseVec> =
            bk.free_columns().into_iter().map(|c| bk.kernel_support(c).into_iter().map(|(i, x)| (i as u32, x)).collect()).collect();
        let nv = self.levels[n].v_count;
        let nc = self.levels[n].c.as_ref().map_or(0, |c| c.len());
        for g in nv..nv + nc {
            for j in 0..e {
                v.push(vec![((g * e + j) as u32, 1)]);
            }
        }
        if self.levels.len() > n + 1 {
            debug_assert_eq!(self.levels[n + 1].v_count, v.len());
            self.levels[n + 1].v = Some(v);
        } else {
            self.levels.push(Level { v_count: v.len(), v: Some(v), ..Level::default() });
        }
        Ok(())
    }

    /// Rank of nu_n and C_n from the column space alone; V_{n+1} stays implicit.
    fn column_pass(&mut self, n: usize) -> Result<()> {
        let nu = self.nu(n);
        let (rank, piv) = column_space_pivots(self.field(), &nu);
        self.stats.column_passes += 1;
        self.levels[n].c = Some(piv.iter().enumerate().filter(|(_, &p)| !p).map(|(i, _)| i as u32).collect());
        self.levels[n].h = Some(rank);
        Ok(())
    }

    fn ensure_v(&mut self, n: usize) -> Result<()> {
        if self.levels[n].v.is_some() {
            return Ok(());
        }
        self.ensure_v(n - 1)?;
        if self.levels[n - 1].c.is_none() {
            return Err(Error::Contract(format!("generators of degree {} are not known", n - 1)));
        }
        self.process(n - 1)
    }

    /// Minimal generators of Omega_n as vectors of F_{n-1} (index t d + k).
    pub fn generators(&mut self, n: usize) -> Result<Vec<SparseVec>> {
        if n == 0 || n > self.depth() {
            return Err(Error::Contract(format!("no generators of Omega_{n} computed")));
        }
        if n == 1 {
            return Ok(self.k0.clone());
        }
        self.ensure_v(n)?;
        let (e, r, d) = (self.alg.e(), self.alg.r(), self.alg.dim());
        let lv = &self.levels[n];
        let mut out: Vec<SparseVec> = lv
            .v
            .as_ref()
            .unwrap()
            .iter()
            .map(|v| v.iter().map(|&(idx, x)| (((idx as usize / e) * d + 1 + idx as usize % e) as u32, x)).collect())
            .collect();
        for &c in lv.c.as_ref().unwrap() {
            let (t, h) = (c as usize / r, c as usize % r);
            out.push(vec![((t * d + 1 + e + h) as u32, 1)]);
        }
        Ok(out)
    }

    /// The differential F_n -> F_{n-1} as a d beta_{n-1} x beta_n matrix whose
    /// columns are the images of the basis vectors of F_n.
    pub fn differential(&mut self, n: usize) -> Result<SparseMat> {
        let gens = self.generators(n)?;
        let f = self.field().clone();
        let mut m = SparseMat::new(self.alg.dim() * self.betti[n - 1]);
        for mut g in gens {
            m.push_column(&f, &mut g);
        }
        Ok(m)
    }

    /// R-linear image under the differential of a vector of F_n.
    pub fn apply_differential(&mut self, n: usize, v: &[Elem]) -> Result<Vec<Elem>> {
        let d = self.alg.dim();
        if v.len() != d * self.betti[n] {
            return Err(Error::Dimension(format!("vector of length {} in F_{n}", v.len())));
        }
        let gens = self.generators(n)?;
        let f = self.field().clone();
        let mut out = vec![0; d * self.betti[n - 1]];
        for (g, gen) in gens.iter().enumerate() {
            let a = &v[g * d..(g + 1) * d];
            if a.iter().all(|&x| x == 0) {
                continue;
            }
            let mut dense = vec![0; out.len()];
            for &(i, x) in gen {
                dense[i as usize] = x;
            }
            for t in 0..self.betti[n - 1] {
                let blk = &dense[t * d..(t + 1) * d];
                if blk.iter().all(|&x| x == 0) {
                    continue;
                }
                let p = self.alg.mul(a, blk);
                f.axpy(&mut out[t * d..(t + 1) * d], 1, &p);
            }
        }
        Ok(out)
    }

    /// Omega_n as a module (Omega_0 is the module itself).
    pub fn syzygy(&mut self, n: usize) -> Result<FiniteModule> {
        if n == 0 {
            return Ok(self.module.clone());
        }
        let gens = self.generators(n)?;
        let len = self.alg.dim() * self.betti[n - 1];
        let free = FiniteModule::quotient(self.alg.clone(), self.betti[n - 1], &[])?;
        let dense: Vec<Vec<Elem>> = gens
            .iter()
            .map(|g| {
                let mut v = vec![0; len];
                for &(i, x) in g {
                    v[i as usize] = x;
                }
                v
            })
            .collect();
        free.generated_submodule(&dense)
    }

    /// Poincare series truncated after the computed degrees.
    pub fn poincare(&self) -> TruncSeries {
        TruncSeries::from_counts(&self.betti)
    }

    pub fn report(&self) -> ResolutionReport {
        let h = self.module.hilbert_function();
        ResolutionReport {
            betti: self.betti.clone(),
            truncated: self.truncated,
            dims: (0..=self.depth()).map(|n| self.syzygy_dim(n)).collect(),
            hilbert: h.as_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResolutionReport {
    pub betti: Vec<usize>,
    pub truncated: bool,
    /// dim_k Omega_n for each computed n
    pub dims: Vec<usize>,
    pub hilbert: Vec<usize>,
}

/// Hom_R(Omega_i(k), R) over a Gorenstein algebra.
pub fn negative_syzygy(alg: Arc<ShortAlgebra>, i: usize, opts: ResolveOptions) -> Result<FiniteModule> {
    if !alg.is_gorenstein() {
        return Err(Error::Precondition("negative syzygies need a Gorenstein algebra".into()));
    }
    let k = FiniteModule::residue_field(alg.clone());
    let mut res = Resolution::resolve(&k, i, opts)?;
    if res.depth() < i {
        return Err(Error::Contract(format!("budget exhausted before degree {i}")));
    }
    let syz = res.syzygy(i)?;
    syz.hom(&FiniteModule::regular(alg))
}

fn unit(n: usize, k: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{find_conca, Strategy};
    use crate::exactla::rank;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f101() -> Field {
        Field::prime(101).unwrap()
    }

    fn cx2() -> Arc<ShortAlgebra> {
        let f = f101();
        let q = vec![
            crate::algebra::quadric_from_terms(&f, 2, &[(0, 0, 1)]).unwrap(),
            crate::algebra::quadric_from_terms(&f, 2, &[(1, 1, 1)]).unwrap(),
        ];
        Arc::new(ShortAlgebra::from_quadrics(&f, 2, &q).unwrap())
    }

    fn conca_algebra(e: usize, r: usize, seed: u64) -> (Arc<ShortAlgebra>, Vec<Elem>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let a = ShortAlgebra::random(&f101(), e, r, &mut rng);
            if let Some(x) = find_conca(&a, Strategy::Exhaustive, 1, 0).unwrap().found() {
                let x = x.to_vec();
                return (Arc::new(a), x);
            }
        }
    }

    /// Syzygies by brute force: kernel of the full map R^beta -> Omega.
    fn oracle_betti(m: &FiniteModule, depth: usize) -> Vec<usize> {
        let alg = m.algebra_arc().clone();
        let f = alg.field().clone();
        let (e, r, d) = (alg.e(), alg.r(), alg.dim());
        let mut cur = m.clone();
        let mut out = Vec::new();
        for _ in 0..=depth {
            let top = cur.top_generators();
            let b = top.len();
            out.push(b);
            let mut map = Mat::zeros(cur.dim(), b * d);
            for (g, &y) in top.iter().enumerate() {
                let mut ops = vec![Mat::identity(cur.dim())];
                ops.extend(cur.actions().iter().cloned());
                for h in 0..r {
                    ops.push(cur.socle_action(h).unwrap().clone());
                }
                for (k, op) in ops.iter().enumerate() {
                    for s in 0..cur.dim() {
                        map.set(s, g * d + k, op.get(s, y));
                    }
                }
            }
            let ker = kernel(&f, &map);
            let free = FiniteModule::quotient(alg.clone(), b, &[]).unwrap();
            let vs: Vec<Vec<Elem>> = (0..ker.cols()).map(|t| ker.column(t)).collect();
            cur = free.submodule(&vs).unwrap();
            let _ = e;
        }
        out
    }

    #[test]
    fn complete_intersection_of_two_squares() {
        let k = FiniteModule::residue_field(cx2());
        let res = Resolution::resolve(&k, 10, ResolveOptions::default()).unwrap();
        assert_eq!(res.betti(), &(1..=11).collect::<Vec<_>>()[..]);
        assert!(!res.truncated());
    }

    #[test]
    fn square_zero_is_geometric() {
        let a = Arc::new(ShortAlgebra::square_zero(&f101(), 3));
        let res = Resolution::resolve(&FiniteModule::residue_field(a), 6, ResolveOptions::default()).unwrap();
        assert_eq!(res.betti(), &[1, 3, 9, 27, 81, 243, 729]);
    }

    #[test]
    fn koszul_e3_r2_with_and_without_hint() {
        let (a, x) = conca_algebra(3, 2, 11);
        let k = FiniteModule::residue_field(a);
        let want: Vec<usize> = (0..10).map(|n| (1usize << (n + 1)) - 1).collect();
        let plain = Resolution::resolve(&k, 9, ResolveOptions::default()).unwrap();
        assert_eq!(plain.betti(), &want[..]);
        let hinted = Resolution::resolve(&k, 9, ResolveOptions { hint: Some(x), ..Default::default() }).unwrap();
        assert_eq!(hinted.betti(), &want[..]);
        assert!(hinted.stats().certificates >= 2);
        assert!(hinted.stats().kernel_passes < plain.stats().kernel_passes + plain.stats().column_passes);
    }

    #[test]
    fn free_and_regular_modules() {
        let a = cx2();
        let free = FiniteModule::quotient(a.clone(), 3, &[]).unwrap();
        let res = Resolution::resolve(&free, 4, ResolveOptions::default()).unwrap();
        assert_eq!(res.betti(), &[3, 0, 0, 0, 0]);
        let res = Resolution::resolve(&FiniteModule::maximal_ideal(a), 4, ResolveOptions::default()).unwrap();
        assert_eq!(res.betti(), &[2, 3, 4, 5, 6]);
    }

    #[test]
    fn budget_truncates() {
        let a = Arc::new(ShortAlgebra::square_zero(&f101(), 4));
        let opts = ResolveOptions { budget: 100, ..Default::default() };
        let res = Resolution::resolve(&FiniteModule::residue_field(a), 8, opts).unwrap();
        assert!(res.truncated());
        assert_eq!(res.betti(), &[1, 4, 16, 64]);
    }

    #[test]
    fn fiber_product_of_square_zero_rings() {
        let f = f101();
        let s = ShortAlgebra::square_zero(&f, 1);
        let a = Arc::new(ShortAlgebra::fiber_product(&s, &s).unwrap());
        let res = Resolution::resolve(&FiniteModule::residue_field(a), 8, ResolveOptions::default()).unwrap();
        let want: Vec<usize> = (0..9).map(|n| 1 << n).collect();
        assert_eq!(res.betti(), &want[..]);
    }

    #[test]
    fn differentials_compose_to_zero_and_are_exact() {
        let (a, _) = conca_algebra(3, 2, 5);
        let m = FiniteModule::random(a.clone(), 2, 0.5, 9).unwrap();
        let mut res = Resolution::resolve(&m, 4, ResolveOptions::default()).unwrap();
        let f = a.field().clone();
        let d = a.dim();
        for n in 1..4 {
            let next = res.generators(n + 1).unwrap();
            for g in &next {
                let mut v = vec![0; d * res.betti()[n]];
                for &(i, x) in g {
                    v[i as usize] = x;
                }
                assert!(res.apply_differential(n, &v).unwrap().iter().all(|&x| x == 0));
            }
            // exactness at F_n: dim ker = dim Omega_{n+1}
            let bn = res.betti()[n];
            let mut cols = Vec::new();
            for k in 0..d * bn {
                let mut v = vec![0; d * bn];
                v[k] = 1;
                cols.push(res.apply_differential(n, &v).unwrap());
            }
            let full = Mat::from_columns(d * res.betti()[n - 1], &cols);
            assert_eq!(d * bn - rank(&f, &full), res.syzygy_dim(n + 1));
            assert_eq!(res.syzygy(n + 1).unwrap().dim(), res.syzygy_dim(n + 1));
        }
    }

    #[test]
    fn report_serializes() {
        let res = Resolution::resolve(&FiniteModule::residue_field(cx2()), 3, ResolveOptions::default()).unwrap();
        let json = serde_json::to_value(res.report()).unwrap();
        assert_eq!(json["betti"], serde_json::json!([1, 2, 3, 4]));
        assert_eq!(json["dims"][0], 1);
        assert_eq!(json["hilbert"], serde_json::json!([1, 0, 0]));
    }

    #[test]
    fn negative_syzygy_needs_gorenstein() {
        let a = Arc::new(ShortAlgebra::square_zero(&f101(), 2));
        assert!(matches!(negative_syzygy(a, 1, ResolveOptions::default()), Err(Error::Precondition(_))));
        let m = negative_syzygy(cx2(), 2, ResolveOptions::default()).unwrap();
        // Omega_2(k) over a Gorenstein ring has a dual of the same length
        let mut res = Resolution::resolve(&FiniteModule::residue_field(cx2()), 2, ResolveOptions::default()).unwrap();
        assert_eq!(m.dim(), res.syzygy(2).unwrap().dim());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn matches_brute_force(seed in 0u64..1000, e in 1usize..4, g in 1usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = (seed as usize % (e * (e + 1) / 2)) + 1;
            let r = r.min(e * (e + 1) / 2);
            let a = Arc::new(ShortAlgebra::random(&f101(), e, r, &mut rng));
            let m = FiniteModule::random(a, g, 0.7, seed).unwrap();
            let res = Resolution::resolve(&m, 3, ResolveOptions::default()).unwrap();
            prop_assert_eq!(res.betti(), &oracle_betti(&m, 3)[..]);
            for n in 1..=3 {
                let mut res = res.clone();
                prop_assert_eq!(res.syzygy(n).unwrap().dim(), res.syzygy_dim(n));
            }
        }
    }
}

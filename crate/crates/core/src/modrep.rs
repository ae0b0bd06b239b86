//! Finite modules over a `ShortAlgebra`, stored as commuting action matrices.
//!
//! Vectors are columns: `action[i]` sends v to x_i v. The induced action of
//! the m^2 basis element z_h is solved for from the products of the x-actions.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, Report, ShortAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{independent_columns, kernel, solve, Echelon, Mat};
use crate::field::{Elem, Field};

#[derive(Clone, Debug)]
pub struct FiniteModule {
    alg: Arc<ShortAlgebra>,
    dim: usize,
    action: Vec<Mat>,
    /// Action of z_h, or None when the x-actions do not determine one.
    socle_action: Option<Vec<Mat>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

impl HilbertFunction {
    pub fn as_vec(&self) -> Vec<usize> {
        vec![self.h0, self.h1, self.h2]
    }
}

/// Pairs (i, j) whose products x_i x_j form a basis of m^2.
fn square_basis_pairs(alg: &ShortAlgebra) -> Vec<(usize, usize)> {
    let (e, r) = (alg.e(), alg.r());
    let pairs: Vec<(usize, usize)> = (0..e).flat_map(|i| (i..e).map(move |j| (i, j))).collect();
    let cols: Vec<Vec<Elem>> = pairs.iter().map(|&(i, j)| (0..r).map(|h| alg.c(i, j, h)).collect()).collect();
    let m = Mat::from_columns(r, &cols);
    independent_columns(alg.field(), &m).into_iter().map(|t| pairs[t]).collect()
}

fn induced_socle_action(alg: &ShortAlgebra, action: &[Mat]) -> Option<Vec<Mat>> {
    let f = alg.field();
    let r = alg.r();
    let pairs = square_basis_pairs(alg);
    if pairs.len() != r {
        return None;
    }
    // rho_i rho_j = sum_h c[i][j][h] sigma_h over the chosen pairs; invert the r x r system
    let cmat = Mat::from_rows(&pairs.iter().map(|&(i, j)| (0..r).map(|h| alg.c(i, j, h)).collect()).collect::<Vec<_>>());
    let inv = solve(f, &cmat, &Mat::identity(r)).ok()??;
    let prods: Vec<Mat> = pairs.iter().map(|&(i, j)| action[i].mul(f, &action[j]).unwrap()).collect();
    let n = action.first().map_or(0, |m| m.rows());
    Some(
        (0..r)
            .map(|h| {
                let mut s = Mat::zeros(n, n);
                for (t, p) in prods.iter().enumerate() {
                    let c = inv.get(h, t);
                    if c != 0 {
                        s = s.add(f, &p.scaled(f, c));
                    }
                }
                s
            })
            .collect(),
    )
}

/// Column basis (as RREF rows) of the span of the images of `maps`.
fn image_span(f: &Field, n: usize, maps: &[&Mat]) -> Echelon {
    let mut ech = Echelon::new(f, n);
    for m in maps {
        let t = m.transpose();
        ech.insert_rows(t.data(), t.rows());
    }
    ech
}

impl FiniteModule {
    /// Module from action matrices; fails unless `validate` passes.
    pub fn new(alg: Arc<ShortAlgebra>, action: Vec<Mat>) -> Result<FiniteModule> {
        let m = FiniteModule::new_unchecked(alg, action)?;
        let rep = m.validate();
        if let Some(bad) = rep.failures().first() {
            return Err(Error::Contract(format!("{}: {}", bad.name, bad.detail)));
        }
        Ok(m)
    }

    /// Shapes are checked, module axioms are not.
    pub fn new_unchecked(alg: Arc<ShortAlgebra>, action: Vec<Mat>) -> Result<FiniteModule> {
        if action.len() != alg.e() {
            return Err(Error::Dimension(format!("{} action matrices for e = {}", action.len(), alg.e())));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension("action matrices must be square of equal size".into()));
        }
        let socle_action = induced_socle_action(&alg, &action);
        Ok(FiniteModule { alg, dim, action, socle_action })
    }

    /// The zero-dimensional module, or any dimension with trivial action.
    pub fn trivial(alg: Arc<ShortAlgebra>, dim: usize) -> FiniteModule {
        let action = vec![Mat::zeros(dim, dim); alg.e()];
        let socle_action = Some(vec![Mat::zeros(dim, dim); alg.r()]);
        FiniteModule { alg, dim, action, socle_action }
    }

    pub fn residue_field(alg: Arc<ShortAlgebra>) -> FiniteModule {
        FiniteModule::trivial(alg, 1)
    }

    /// R acting on itself by multiplication.
    pub fn regular(alg: Arc<ShortAlgebra>) -> FiniteModule {
        FiniteModule::quotient(alg, 1, &[]).expect("free module")
    }

    pub fn maximal_ideal(alg: Arc<ShortAlgebra>) -> FiniteModule {
        let r = FiniteModule::regular(alg);
        let vs: Vec<Vec<Elem>> = (1..r.dim)
            .map(|k| {
                let mut v = vec![0; r.dim];
                v[k] = 1;
                v
            })
            .collect();
        r.submodule(&vs).expect("m is an ideal")
    }

    pub fn algebra(&self) -> &ShortAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<ShortAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Action of z_h (m^2 basis element).
    pub fn socle_action(&self, h: usize) -> Option<&Mat> {
        self.socle_action.as_ref().map(|s| &s[h])
    }

    /// Action of an element of R given by its coordinates.
    pub fn element_action(&self, u: &[Elem]) -> Mat {
        let f = self.field();
        let (e, r) = (self.alg.e(), self.alg.r());
        let mut m = Mat::identity(self.dim).scaled(f, u[0]);
        for i in 0..e {
            if u[1 + i] != 0 {
                m = m.add(f, &self.action[i].scaled(f, u[1 + i]));
            }
        }
        for h in 0..r {
            if u[1 + e + h] != 0 {
                let s = self.socle_action(h).expect("z-action defined on valid modules");
                m = m.add(f, &s.scaled(f, u[1 + e + h]));
            }
        }
        m
    }

    /// Action of a linear form u in m/m^2.
    pub fn linear_action(&self, u: &[Elem]) -> Mat {
        let f = self.field();
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, &c) in u.iter().enumerate() {
            if c != 0 {
                m = m.add(f, &self.action[i].scaled(f, c));
            }
        }
        m
    }

    pub fn validate(&self) -> Report {
        let f = self.field();
        let e = self.alg.e();
        let mut rep = Report::default();
        let mut comm = None;
        let prods: Vec<Vec<Mat>> =
            (0..e).map(|i| (0..e).map(|j| self.action[i].mul(f, &self.action[j]).unwrap()).collect()).collect();
        'c: for i in 0..e {
            for j in i + 1..e {
                if prods[i][j] != prods[j][i] {
                    comm = Some((i, j));
                    break 'c;
                }
            }
        }
        rep.push(
            "commutativity",
            comm.is_none(),
            comm.map_or("actions commute".into(), |(i, j)| format!("x{i} and x{j} do not commute")),
        );
        let compatible = match &self.socle_action {
            None => false,
            Some(sig) => (0..e).all(|i| {
                (0..e).all(|j| {
                    let mut s = Mat::zeros(self.dim, self.dim);
                    for (h, sh) in sig.iter().enumerate() {
                        let c = self.alg.c(i, j, h);
                        if c != 0 {
                            s = s.add(f, &sh.scaled(f, c));
                        }
                    }
                    s == prods[i][j]
                })
            }),
        };
        rep.push("relations", compatible, "x_i x_j acts as sum_h c[i][j][h] z_h");
        let cube = (0..e).all(|i| (0..e).all(|j| (0..e).all(|l| prods[i][j].mul(f, &self.action[l]).unwrap().is_zero())));
        rep.push("m3-annihilates", cube, "all triple products act as zero");
        rep
    }

    /// Basis of mM as RREF rows.
    pub fn radical(&self) -> Echelon {
        let maps: Vec<&Mat> = self.action.iter().collect();
        image_span(self.field(), self.dim, &maps)
    }

    /// Basis of m^2 M as RREF rows.
    pub fn radical_square(&self) -> Echelon {
        match &self.socle_action {
            Some(s) => image_span(self.field(), self.dim, &s.iter().collect::<Vec<_>>()),
            None => Echelon::new(self.field(), self.dim),
        }
    }

    pub fn hilbert_function(&self) -> HilbertFunction {
        let m1 = self.radical().rank();
        let m2 = self.radical_square().rank();
        HilbertFunction { h0: self.dim - m1, h1: m1 - m2, h2: m2 }
    }

    /// Standard basis vectors completing mM to M, chosen greedily in order;
    /// their classes form a basis of M/mM.
    pub fn top_generators(&self) -> Vec<usize> {
        let mut ech = self.radical();
        let mut out = Vec::new();
        for k in 0..self.dim {
            let mut v = vec![0; self.dim];
            v[k] = 1;
            if ech.insert(&v) {
                out.push(k);
            }
        }
        out
    }

    pub fn minimal_generators(&self) -> usize {
        self.dim - self.radical().rank()
    }

    /// Image of v under the action of x_i.
    pub fn act(&self, i: usize, v: &[Elem]) -> Vec<Elem> {
        self.action[i].mul_vec(self.field(), v)
    }

    /// Submodule spanned by `vectors` (closed under the action), in the
    /// reduced echelon basis of the span.
    pub fn submodule(&self, vectors: &[Vec<Elem>]) -> Result<FiniteModule> {
        let f = self.field();
        let mut ech = Echelon::new(f, self.dim);
        for v in vectors {
            ech.insert(v);
        }
        let k = ech.rank();
        let basis: Vec<Vec<Elem>> = (0..k).map(|t| ech.row(t).to_vec()).collect();
        let mut action = Vec::with_capacity(self.alg.e());
        for i in 0..self.alg.e() {
            let mut m = Mat::zeros(k, k);
            for (t, b) in basis.iter().enumerate() {
                let img = self.act(i, b);
                let c = ech
                    .coordinates(&img)
                    .ok_or_else(|| Error::Contract("span is not closed under the action".into()))?;
                for (s, &x) in c.iter().enumerate() {
                    m.set(s, t, x);
                }
            }
            action.push(m);
        }
        FiniteModule::new_unchecked(self.alg.clone(), action)
    }

    /// Submodule generated by `vectors` (closure under the action).
    pub fn generated_submodule(&self, vectors: &[Vec<Elem>]) -> Result<FiniteModule> {
        let f = self.field();
        let mut ech = Echelon::new(f, self.dim);
        let mut frontier: Vec<Vec<Elem>> = Vec::new();
        for v in vectors {
            if ech.insert(v) {
                frontier.push(v.clone());
            }
        }
        while let Some(v) = frontier.pop() {
            for i in 0..self.alg.e() {
                let w = self.act(i, &v);
                if ech.insert(&w) {
                    frontier.push(w);
                }
            }
        }
        let span: Vec<Vec<Elem>> = (0..ech.rank()).map(|t| ech.row(t).to_vec()).collect();
        self.submodule(&span)
    }

    /// Quotient by the submodule generated by `vectors`; the basis is the
    /// set of non-pivot coordinates of that submodule.
    pub fn quotient_by(&self, vectors: &[Vec<Elem>]) -> Result<FiniteModule> {
        let f = self.field();
        let mut sub = Echelon::new(f, self.dim);
        let mut frontier: Vec<Vec<Elem>> = Vec::new();
        for v in vectors {
            if v.len() != self.dim {
                return Err(Error::Dimension(format!("vector of length {} in a module of dimension {}", v.len(), self.dim)));
            }
            if sub.insert(v) {
                frontier.push(v.clone());
            }
        }
        while let Some(v) = frontier.pop() {
            for i in 0..self.alg.e() {
                let w = self.act(i, &v);
                if sub.insert(&w) {
                    frontier.push(w);
                }
            }
        }
        let free = sub.free_columns();
        let mut pos = vec![usize::MAX; self.dim];
        for (t, &c) in free.iter().enumerate() {
            pos[c] = t;
        }
        let q = free.len();
        let mut action = Vec::with_capacity(self.alg.e());
        for i in 0..self.alg.e() {
            let mut m = Mat::zeros(q, q);
            for (t, &c) in free.iter().enumerate() {
                let mut w = self.action[i].column(c);
                sub.reduce(&mut w);
                for (k, &x) in w.iter().enumerate() {
                    if x != 0 {
                        m.set(pos[k], t, x);
                    }
                }
            }
            action.push(m);
        }
        FiniteModule::new_unchecked(self.alg.clone(), action)
    }

    /// R^g modulo the submodule generated by `relations`, each a vector of
    /// length g (1 + e + r) laid out generator by generator.
    pub fn quotient(alg: Arc<ShortAlgebra>, g: usize, relations: &[Vec<Elem>]) -> Result<FiniteModule> {
        let f = alg.field().clone();
        let d = alg.dim();
        let n = g * d;
        let basis_elems: Vec<Vec<Elem>> = (0..d)
            .map(|k| {
                let mut v = vec![0; d];
                v[k] = 1;
                v
            })
            .collect();
        let mul_free = |u: &[Elem], v: &[Elem]| -> Vec<Elem> {
            let mut out = vec![0; n];
            for t in 0..g {
                let p = alg.mul(u, &v[t * d..(t + 1) * d]);
                out[t * d..(t + 1) * d].copy_from_slice(&p);
            }
            out
        };
        let mut sub = Echelon::new(&f, n);
        for rel in relations {
            if rel.len() != n {
                return Err(Error::Dimension(format!("relation of length {} in a free module of rank {g}", rel.len())));
            }
            for b in &basis_elems {
                sub.insert(&mul_free(b, rel));
            }
        }
        let free = sub.free_columns();
        let mut pos = vec![usize::MAX; n];
        for (t, &c) in free.iter().enumerate() {
            pos[c] = t;
        }
        let q = free.len();
        let mut action = Vec::with_capacity(alg.e());
        for i in 0..alg.e() {
            let xi = &basis_elems[1 + i];
            let mut m = Mat::zeros(q, q);
            for (t, &c) in free.iter().enumerate() {
                let mut v = vec![0; n];
                v[c] = 1;
                let mut w = mul_free(xi, &v);
                sub.reduce(&mut w);
                for (k, &x) in w.iter().enumerate() {
                    if x != 0 {
                        debug_assert!(pos[k] != usize::MAX);
                        m.set(pos[k], t, x);
                    }
                }
            }
            action.push(m);
        }
        FiniteModule::new_unchecked(alg, action)
    }

    pub fn direct_sum(ms: &[FiniteModule]) -> Result<FiniteModule> {
        let first = ms.first().ok_or_else(|| Error::Contract("empty direct sum".into()))?;
        let alg = first.alg.clone();
        if ms.iter().any(|m| *m.alg != *alg) {
            return Err(Error::Contract("direct sum of modules over different algebras".into()));
        }
        let n: usize = ms.iter().map(|m| m.dim).sum();
        let mut action = vec![Mat::zeros(n, n); alg.e()];
        let mut off = 0;
        for m in ms {
            for (i, a) in action.iter_mut().enumerate() {
                for s in 0..m.dim {
                    for t in 0..m.dim {
                        a.set(off + s, off + t, m.action[i].get(s, t));
                    }
                }
            }
            off += m.dim;
        }
        FiniteModule::new_unchecked(alg, action)
    }

    /// Hom_R(self, n) with (x f) = x_n o f; the basis is the reduced echelon
    /// kernel of the intertwining equations, maps flattened row-major.
    pub fn hom(&self, n: &FiniteModule) -> Result<FiniteModule> {
        if *self.alg != *n.alg {
            return Err(Error::Contract("Hom between modules over different algebras".into()));
        }
        let f = self.field();
        let (dm, dn, e) = (self.dim, n.dim, self.alg.e());
        let unknowns = dn * dm;
        // equations: (phi rho_i^M - rho_i^N phi)[a][b] = 0
        let mut eqs = Mat::zeros(e * unknowns, unknowns);
        for i in 0..e {
            let (rm, rn) = (&self.action[i], &n.action[i]);
            for a in 0..dn {
                for b in 0..dm {
                    let row = i * unknowns + a * dm + b;
                    for c in 0..dm {
                        let v = rm.get(c, b);
                        if v != 0 {
                            let k = a * dm + c;
                            eqs.set(row, k, f.add(eqs.get(row, k), v));
                        }
                    }
                    for c in 0..dn {
                        let v = rn.get(a, c);
                        if v != 0 {
                            let k = c * dm + b;
                            eqs.set(row, k, f.sub(eqs.get(row, k), v));
                        }
                    }
                }
            }
        }
        let ker = kernel(f, &eqs);
        let basis: Vec<Vec<Elem>> = (0..ker.cols()).map(|t| ker.column(t)).collect();
        let mut ech = Echelon::new(f, unknowns);
        for b in &basis {
            ech.insert(b);
        }
        let k = ech.rank();
        let rows: Vec<Vec<Elem>> = (0..k).map(|t| ech.row(t).to_vec()).collect();
        let mut action = Vec::with_capacity(e);
        for i in 0..e {
            let rn = &n.action[i];
            let mut m = Mat::zeros(k, k);
            for (t, phi) in rows.iter().enumerate() {
                let pm = Mat::from_vec(dn, dm, phi.clone());
                let img = rn.mul(f, &pm)?;
                let c = ech.coordinates(img.data()).expect("Hom is closed under the action");
                for (s, &x) in c.iter().enumerate() {
                    m.set(s, t, x);
                }
            }
            action.push(m);
        }
        FiniteModule::new_unchecked(self.alg.clone(), action)
    }

    /// Quotient of R^g by ceil(rel_density g) random elements of m R^g.
    pub fn random(alg: Arc<ShortAlgebra>, g: usize, rel_density: f64, seed: u64) -> Result<FiniteModule> {
        if g == 0 {
            return Err(Error::Contract("random module needs g >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = (rel_density.clamp(0.0, 1.0) * g as f64).ceil() as usize;
        let rels: Vec<Vec<Elem>> = (0..count).map(|_| random_radical_element(&alg, g, &mut rng)).collect();
        FiniteModule::quotient(alg, g, &rels)
    }

    /// Random quotient of (R/xR)^g: relations x e_t together with up to g
    /// random elements of m R^g.
    pub fn annihilated_by(alg: Arc<ShortAlgebra>, x: &[Elem], g: usize, seed: u64) -> Result<FiniteModule> {
        if !alg.is_conca(x) {
            return Err(Error::Contract("annihilating element is not a Conca generator".into()));
        }
        if g == 0 {
            return Err(Error::Contract("random module needs g >= 1".into()));
        }
        let d = alg.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rels = Vec::new();
        for t in 0..g {
            let mut v = vec![0; g * d];
            v[t * d + 1..t * d + 1 + alg.e()].copy_from_slice(x);
            rels.push(v);
        }
        let extras = rng.gen_range(0..=g);
        for _ in 0..extras {
            rels.push(random_radical_element(&alg, g, &mut rng));
        }
        FiniteModule::quotient(alg, g, &rels)
    }
}

fn random_radical_element(alg: &ShortAlgebra, g: usize, rng: &mut impl Rng) -> Vec<Elem> {
    let d = alg.dim();
    let q = alg.field().order();
    let mut v = vec![0; g * d];
    for t in 0..g {
        for k in 1..d {
            v[t * d + k] = (rng.gen::<u64>() % q) as Elem;
        }
    }
    v
}

/// Where a module spec finds its algebra: a path or an inline spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

/// JSON description of a module: explicit actions or a quotient of R^g.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleSpec {
    #[serde(default)]
    pub algebra: Option<AlgebraRef>,
    #[serde(default)]
    pub dim: Option<usize>,
    /// One matrix (list of rows) per generator x_i.
    #[serde(default)]
    pub action: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default)]
    pub quotient: Option<QuotientSpec>,
}

impl ModuleSpec {
    pub fn parse(text: &str) -> Result<ModuleSpec> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, alg: Arc<ShortAlgebra>) -> Result<FiniteModule> {
        let f = alg.field().clone();
        match (&self.action, &self.quotient) {
            (Some(action), None) => {
                let mats: Vec<Mat> = action.iter().map(|rows| Mat::from_ints(&f, rows)).collect();
                if let Some(d) = self.dim {
                    if mats.iter().any(|m| m.rows() != d) {
                        return Err(Error::Input(format!("action matrices do not match dim = {d}")));
                    }
                }
                FiniteModule::new(alg, mats).map_err(|e| Error::Input(e.to_string()))
            }
            (None, Some(q)) => {
                let rels: Vec<Vec<Elem>> = q.relations.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
                FiniteModule::quotient(alg, q.generators, &rels)
            }
            _ => Err(Error::Input("module spec needs exactly one of \"action\" or \"quotient\"".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{find_conca, quadric_from_terms, Strategy};
    use crate::exactla::rank;

    fn cx2() -> Arc<ShortAlgebra> {
        Arc::new(ShortAlgebra::exterior_like(&Field::prime(101).unwrap(), 2))
    }

    fn hf(m: &FiniteModule) -> (usize, usize, usize) {
        let h = m.hilbert_function();
        (h.h0, h.h1, h.h2)
    }

    #[test]
    fn basic_modules() {
        let a = cx2();
        let k = FiniteModule::residue_field(a.clone());
        assert!(k.validate().passed());
        assert_eq!(hf(&k), (1, 0, 0));
        let r = FiniteModule::regular(a.clone());
        assert!(r.validate().passed());
        assert_eq!(hf(&r), (1, 2, 1));
        let m = FiniteModule::maximal_ideal(a.clone());
        assert!(m.validate().passed());
        assert_eq!(hf(&m), (2, 1, 0));
        let s = FiniteModule::direct_sum(&[r, m]).unwrap();
        assert_eq!(hf(&s), (3, 3, 1));
        let kk = FiniteModule::direct_sum(&[k.clone(), k]).unwrap();
        assert_eq!(kk.dim(), 2);
        assert!(kk.actions().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn non_commuting_actions_are_flagged() {
        let f = Field::prime(101).unwrap();
        let a = Arc::new(ShortAlgebra::square_zero(&f, 2));
        let x = Mat::from_ints(&f, &[vec![0, 1], vec![0, 0]]);
        let y = Mat::from_ints(&f, &[vec![0, 0], vec![1, 0]]);
        let m = FiniteModule::new_unchecked(a.clone(), vec![x, y]).unwrap();
        let rep = m.validate();
        assert_eq!(rep.failures()[0].name, "commutativity");
        assert!(FiniteModule::new(a, m.actions().to_vec()).is_err());
    }

    #[test]
    fn hom_examples() {
        let a = cx2();
        let k = FiniteModule::residue_field(a.clone());
        let r = FiniteModule::regular(a.clone());
        let m = FiniteModule::maximal_ideal(a.clone());
        assert_eq!(k.hom(&r).unwrap().dim(), 1);
        let hr = r.hom(&m).unwrap();
        assert_eq!(hr.dim(), m.dim());
        assert_eq!(hf(&hr), hf(&m));
        let hm = m.hom(&r).unwrap();
        assert!(hm.validate().passed());
        assert_eq!((hm.dim(), hf(&hm)), (3, (1, 2, 0)));
    }

    #[test]
    fn quotients() {
        let a = cx2();
        let m0 = FiniteModule::random(a.clone(), 2, 0.0, 1).unwrap();
        assert_eq!(m0.dim(), 8);
        // all of m R^1 as relations
        let rels: Vec<Vec<Elem>> = (1..4).map(|k| (0..4).map(|t| (t == k) as Elem).collect()).collect();
        let k = FiniteModule::quotient(a.clone(), 1, &rels).unwrap();
        assert_eq!(k.dim(), 1);
        let m1 = FiniteModule::random(a.clone(), 3, 0.5, 9).unwrap();
        let m2 = FiniteModule::random(a.clone(), 3, 0.5, 9).unwrap();
        assert_eq!(m1.actions(), m2.actions());
        assert_eq!(m1.minimal_generators(), 3);
        let x = find_conca(&a, Strategy::Exhaustive, 1, 0).unwrap();
        let rx = FiniteModule::annihilated_by(a.clone(), x.found().unwrap(), 1, 0).unwrap();
        assert!(rx.linear_action(x.found().unwrap()).is_zero());
        assert!(FiniteModule::annihilated_by(a, &[1, 1], 1, 0).is_err());
    }

    #[test]
    fn spec_parsing() {
        let a = cx2();
        let s = ModuleSpec::parse(r#"{"quotient": {"generators": 1, "relations": [[0, 0, 1, 0]]}}"#).unwrap();
        let m = s.build(a.clone()).unwrap();
        assert_eq!(hf(&m), (1, 1, 0));
        let s = ModuleSpec::parse(r#"{"dim": 1, "action": [[[0]], [[0]]]}"#).unwrap();
        assert_eq!(s.build(a.clone()).unwrap().dim(), 1);
        let bad = ModuleSpec::parse(r#"{"dim": 2, "action": [[[0,1],[0,0]], [[0,0],[1,0]]]}"#).unwrap();
        assert!(bad.build(a).is_err());
    }

    /// Independent check of the Matlis symmetry on a Gorenstein ring.
    #[test]
    fn matlis_dimension_symmetry() {
        let f = Field::prime(101).unwrap();
        let qs = [vec![(0, 1, 1)], vec![(0, 2, 1)], vec![(1, 2, 1)], vec![(0, 0, 1), (1, 1, -1)], vec![(0, 0, 1), (2, 2, -1)]];
        let qs: Vec<Mat> = qs.iter().map(|t| quadric_from_terms(&f, 3, t).unwrap()).collect();
        let g3 = Arc::new(ShortAlgebra::from_quadrics(&f, 3, &qs).unwrap());
        for (alg, n) in [(cx2(), 10), (g3, 10)] {
            let r = FiniteModule::regular(alg.clone());
            for seed in 0..n {
                let g = 1 + (seed as usize % 3);
                let m = FiniteModule::random(alg.clone(), g, 0.5, seed).unwrap();
                assert!(m.validate().passed());
                let h = m.hom(&r).unwrap();
                assert_eq!(h.dim(), m.dim(), "seed {seed}");
            }
        }
    }

    #[test]
    fn socle_action_matches_products() {
        let a = cx2();
        let r = FiniteModule::regular(a.clone());
        let z = r.socle_action(0).unwrap();
        let xy = r.action(0).mul(a.field(), r.action(1)).unwrap();
        assert_eq!(*z, xy);
        assert_eq!(rank(a.field(), z), 1);
    }
}

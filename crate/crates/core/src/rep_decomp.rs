//! Modules given by action matrices, induction from stabilizer subalgebras
//! to orbit blocks, and numeric classification of simple modules.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::double::{BlockView, DoubleError, GeneralizedDouble};
use crate::linalg::{hermitian_eigen, Field, Mat, SparseRow};
use crate::monomial::{self, MonomialAlgebra};
use crate::scalars::CycScalar;
use crate::twisted_algebra::{AlgebraError, TwistedGroupAlgebra};

/// Retries of the random splitting element before giving up.
pub const MAX_RETRIES: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("module data has the wrong shape")]
    Shape,
    #[error("action fails the product rule at basis pair ({0}, {1})")]
    NotModule(usize, usize),
    #[error("identity does not act as the identity")]
    IdentityFails,
    #[error("ill-conditioned spectral splitting: {0}")]
    IllConditioned(String),
    #[error("map is not an invertible intertwiner")]
    NotIsomorphism,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Double(#[from] DoubleError),
}

/// A module of dimension `dim`: `action[i]` is the matrix of basis element `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixModule<F> {
    dim: usize,
    action: Vec<Mat<F>>,
}

impl<F: Field> MatrixModule<F> {
    pub fn new(dim: usize, action: Vec<Mat<F>>) -> Result<Self, RepError> {
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(RepError::Shape);
        }
        Ok(MatrixModule { dim, action })
    }

    /// The zero module over an algebra of dimension `basis_len`.
    pub fn zero(basis_len: usize) -> Self {
        MatrixModule {
            dim: 0,
            action: vec![Mat::zeros(0, 0); basis_len],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Mat<F> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Mat<F>] {
        &self.action
    }

    pub fn to_complex(&self) -> MatrixModule<Complex64> {
        MatrixModule {
            dim: self.dim,
            action: self.action.iter().map(Mat::to_complex).collect(),
        }
    }

    /// Matrix of `sum_i c_i b_i`.
    pub fn element_action(&self, coeffs: &[(usize, F)]) -> Mat<F> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, c) in coeffs {
            m = m.add(&self.action[*i].scale(c));
        }
        m
    }

    fn sum_action(&self, support: &[usize]) -> Mat<F> {
        let coeffs: Vec<(usize, F)> = support.iter().map(|&i| (i, F::one())).collect();
        self.element_action(&coeffs)
    }

    /// Product rule for every generating basis element against every basis
    /// element, plus the identity; this implies the rule for all pairs.
    pub fn verify<A: MonomialAlgebra + ?Sized>(&self, alg: &A, tol: f64) -> Result<(), RepError> {
        let gens = generating_basis(alg);
        self.verify_pairs(alg, &gens, tol)
    }

    /// Product rule on every basis pair.
    pub fn verify_exhaustive<A: MonomialAlgebra + ?Sized>(&self, alg: &A, tol: f64) -> Result<(), RepError> {
        let all: Vec<usize> = (0..alg.dim()).collect();
        self.verify_pairs(alg, &all, tol)
    }

    fn verify_pairs<A: MonomialAlgebra + ?Sized>(&self, alg: &A, left: &[usize], tol: f64) -> Result<(), RepError> {
        if self.action.len() != alg.dim() {
            return Err(RepError::Shape);
        }
        if !self.sum_action(&alg.identity_support()).approx_eq(&Mat::identity(self.dim), tol) {
            return Err(RepError::IdentityFails);
        }
        for &i in left {
            for j in 0..alg.dim() {
                let lhs = self.action[i].matmul(&self.action[j]);
                let ok = match alg.basis_product(i, j) {
                    Some((c, k)) => lhs.approx_eq(&self.action[k].scale(&F::from_root(c)), tol),
                    None => lhs.is_zero(tol),
                };
                if !ok {
                    return Err(RepError::NotModule(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &MatrixModule<F>) -> Result<Self, RepError> {
        if self.action.len() != other.action.len() {
            return Err(RepError::Shape);
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| Mat::block_diagonal(&[a.clone(), b.clone()]))
            .collect();
        Ok(MatrixModule {
            dim: self.dim + other.dim,
            action,
        })
    }

    /// The same module in the basis given by the columns of `p`: `p^-1 A p`.
    pub fn change_basis(&self, p: &Mat<F>, tol: f64) -> Option<Self> {
        let pinv = p.inverse(tol)?;
        Some(MatrixModule {
            dim: self.dim,
            action: self.action.iter().map(|a| pinv.matmul(&a.matmul(p))).collect(),
        })
    }

    /// Action on the invariant subspace spanned by the columns of `basis`
    /// (assumed independent), via the left inverse `(B* B)^-1 B*`.
    pub fn restrict_to_subspace(&self, basis: &Mat<F>, tol: f64) -> Result<Self, RepError> {
        let k = basis.cols();
        if k == 0 {
            return Ok(MatrixModule::zero(self.action.len()));
        }
        let bstar = basis.adjoint();
        let left = bstar.matmul(basis).inverse(tol).ok_or(RepError::Shape)?.matmul(&bstar);
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let ab = a.matmul(basis);
            let sub = left.matmul(&ab);
            if !basis.matmul(&sub).approx_eq(&ab, tol) {
                return Err(RepError::Shape);
            }
            action.push(sub);
        }
        Ok(MatrixModule { dim: k, action })
    }
}

/// Sorted union of the generator supports.
pub fn generating_basis<A: MonomialAlgebra + ?Sized>(alg: &A) -> Vec<usize> {
    let mut v: Vec<usize> = alg.generators().into_iter().flatten().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Basis of `Hom_A(M, N)` as `dim N x dim M` matrices `X` with
/// `X M(u) = N(u) X` for every generator `u`.
pub fn hom_space<F: Field, A: MonomialAlgebra + ?Sized>(
    alg: &A,
    m: &MatrixModule<F>,
    n: &MatrixModule<F>,
    tol: f64,
) -> Vec<Mat<F>> {
    let gens = alg.generators();
    let ma: Vec<Mat<F>> = gens.iter().map(|u| m.sum_action(u)).collect();
    let na: Vec<Mat<F>> = gens.iter().map(|u| n.sum_action(u)).collect();
    intertwiner_space(m.dim, n.dim, &ma, &na, tol)
}

/// Basis of `{X : X a_i = b_i X for all i}` with `X` of shape `dn x dm`.
pub fn intertwiner_space<F: Field>(dm: usize, dn: usize, a: &[Mat<F>], b: &[Mat<F>], tol: f64) -> Vec<Mat<F>> {
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let var = |p: usize, q: usize| p * dm + q;
    let mut rows: Vec<SparseRow<F>> = Vec::new();
    for (mu, nu) in a.iter().zip(b) {
        for p in 0..dn {
            for r in 0..dm {
                // (X a)_{pr} - (b X)_{pr}
                let mut row: Vec<(usize, F)> = Vec::new();
                for q in 0..dm {
                    let c = mu.get(q, r);
                    if !c.is_exact_zero() {
                        row.push((var(p, q), c.clone()));
                    }
                }
                for q in 0..dn {
                    let c = nu.get(p, q);
                    if !c.is_exact_zero() {
                        row.push((var(q, r), c.neg()));
                    }
                }
                row.sort_by_key(|e| e.0);
                let mut merged: Vec<(usize, F)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == c => last.1 = last.1.add(&v),
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|e| !e.1.is_exact_zero());
                if !merged.is_empty() {
                    rows.push(merged);
                }
            }
        }
    }
    F::solve_homogeneous(rows, dm * dn, tol)
        .into_iter()
        .map(|v| Mat::from_fn(dn, dm, |p, q| v[var(p, q)].clone()))
        .collect()
}

/// Dimension of the endomorphism algebra; 1 exactly for simple modules.
pub fn endomorphism_dim<F: Field, A: MonomialAlgebra + ?Sized>(alg: &A, m: &MatrixModule<F>, tol: f64) -> usize {
    hom_space(alg, m, m, tol).len()
}

pub fn is_simple<F: Field, A: MonomialAlgebra + ?Sized>(alg: &A, m: &MatrixModule<F>, tol: f64) -> bool {
    m.dim > 0 && endomorphism_dim(alg, m, tol) == 1
}

/// `X M(b) = N(b) X` for every basis element and `X` invertible.
pub fn is_isomorphism<F: Field, A: MonomialAlgebra + ?Sized>(
    alg: &A,
    m: &MatrixModule<F>,
    n: &MatrixModule<F>,
    x: &Mat<F>,
    tol: f64,
) -> bool {
    if x.rows() != n.dim || x.cols() != m.dim || m.dim != n.dim {
        return false;
    }
    if m.dim > 0 && x.inverse(tol).is_none() {
        return false;
    }
    (0..alg.dim()).all(|b| x.matmul(&m.action[b]).approx_eq(&n.action[b].matmul(x), tol))
}

/// An invertible intertwiner from a random integer combination of a Hom
/// basis, if one exists.
pub fn find_isomorphism<F: Field, A: MonomialAlgebra + ?Sized>(
    alg: &A,
    m: &MatrixModule<F>,
    n: &MatrixModule<F>,
    tol: f64,
    seed: u64,
) -> Option<Mat<F>> {
    if m.dim != n.dim {
        return None;
    }
    if m.dim == 0 {
        return Some(Mat::zeros(0, 0));
    }
    let basis = hom_space(alg, m, n, tol);
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..=MAX_RETRIES {
        let mut x = Mat::zeros(n.dim, m.dim);
        for b in &basis {
            x = x.add(&b.scale(&F::from_i64(rng.gen_range(-7..=7))));
        }
        if is_isomorphism(alg, m, n, &x, tol) {
            return Some(x);
        }
    }
    None
}

/// Induction from the stabilizer subalgebra of `s` to the orbit block.
///
/// `stab` is the stabilizer algebra with `emb` its embedding into `G` (as
/// returned by [`GeneralizedDouble::stabilizer_subalgebra_iso`]). The induced
/// module has basis `d_{g_i^-1,s} ⊗ m` ordered by transversal index, then
/// by basis of `m`.
pub fn induce<F: Field>(
    view: &BlockView,
    s: usize,
    emb: &[usize],
    m: &MatrixModule<F>,
) -> Result<MatrixModule<F>, RepError> {
    let d = view.double();
    let g = d.group();
    if m.action.len() != emb.len() {
        return Err(RepError::Shape);
    }
    let data = d.gset().orbit_stabilizer(g, s);
    let tr = &data.transversal.reps;
    let k = tr.len();
    let dm = m.dim;
    let local_of = |a: usize| emb.iter().position(|&x| x == a);
    let alpha = d.cocycle();
    let mut action = vec![Mat::zeros(k * dm, k * dm); view.dim()];
    for &t in view.orbit() {
        for b in g.elements() {
            let li = view.local_index(b, t).expect("orbit point");
            let mat = &mut action[li];
            for (i, &gi) in tr.iter().enumerate() {
                if data.orbit[i] != t {
                    continue;
                }
                let gii = g.inv(gi);
                let x = g.mul(b, gii);
                let j = data.coset_of(d.gset().act(s, g.inv(x))).expect("orbit point");
                let a = g.mul(tr[j], x);
                let al = local_of(a).ok_or(RepError::Shape)?;
                let coef = alpha.value(s, b, gii).mul(&alpha.value(s, g.inv(tr[j]), a).inv());
                let block = m.action[al].scale(&F::from_root(coef));
                mat.set_block(j * dm, i * dm, &block);
            }
        }
    }
    MatrixModule::new(k * dm, action)
}

/// Restriction of a block module to the stabilizer algebra: the image of
/// `d_{1,s}`, with basis the independent columns of its action matrix.
pub struct Restriction<F> {
    pub module: MatrixModule<F>,
    /// Columns span the image of `d_{1,s}` inside the original module.
    pub basis: Mat<F>,
}

pub fn restrict_by_idempotent<F: Field>(
    view: &BlockView,
    s: usize,
    emb: &[usize],
    n: &MatrixModule<F>,
    tol: f64,
) -> Result<Restriction<F>, RepError> {
    let e = view.double().group().identity();
    let p = n.action(view.local_index(e, s).ok_or(RepError::Shape)?);
    let cols = p.independent_columns(tol);
    let columns: Vec<Vec<F>> = cols.iter().map(|&c| p.column(c)).collect();
    let basis = Mat::from_columns(n.dim, &columns);
    if cols.is_empty() {
        return Ok(Restriction {
            module: MatrixModule::zero(emb.len()),
            basis,
        });
    }
    let sub: Vec<Mat<F>> = emb
        .iter()
        .map(|&a| n.action(view.local_index(a, s).expect("orbit point")).clone())
        .collect();
    let module = MatrixModule {
        dim: n.dim,
        action: sub,
    }
    .restrict_to_subspace(&basis, tol)?;
    Ok(Restriction { module, basis })
}

/// `m -> d_{1,s} ⊗ m`, written in the basis of the restriction of the
/// induced module: an isomorphism `M -> Res(Ind M)`.
pub fn restrict_induce_witness<F: Field>(restricted: &Restriction<F>, dim_m: usize, tol: f64) -> Option<Mat<F>> {
    let b = &restricted.basis;
    if b.cols() != dim_m {
        return None;
    }
    if dim_m == 0 {
        return Some(Mat::zeros(0, 0));
    }
    let bstar = b.adjoint();
    let left = bstar.matmul(b).inverse(tol)?.matmul(&bstar);
    // d_{1,s} ⊗ e_q is basis vector q of the induced module (g_1 = 1)
    Some(Mat::from_fn(dim_m, dim_m, |r, q| left.get(r, q).clone()))
}

/// `d_{g_i^-1,s} ⊗ n' -> d_{g_i^-1,s} n'`: an isomorphism
/// `Ind(Res N) -> N`.
pub fn induce_restrict_witness<F: Field>(view: &BlockView, s: usize, n: &MatrixModule<F>, restricted: &Restriction<F>) -> Mat<F> {
    let d = view.double();
    let g = d.group();
    let data = d.gset().orbit_stabilizer(g, s);
    let b = &restricted.basis;
    let k = data.transversal.reps.len();
    let dr = b.cols();
    let mut x = Mat::zeros(n.dim, k * dr);
    for (i, &gi) in data.transversal.reps.iter().enumerate() {
        let act = n.action(view.local_index(g.inv(gi), s).expect("orbit point"));
        x.set_block(0, i * dr, &act.matmul(b));
    }
    x
}

/// Simple modules of a twisted group algebra, found numerically.
#[derive(Debug, Clone)]
pub struct SimpleModules {
    pub dims: Vec<usize>,
    pub modules: Vec<MatrixModule<Complex64>>,
    /// Random splitting elements tried (1 when the first one works).
    pub attempts: usize,
}

fn random_unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Groups ascending eigenvalues into clusters separated by more than `gap`.
fn clusters(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            out.push(start..i);
            start = i;
        }
    }
    out
}

fn perfect_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

fn columns_of(m: &Mat<Complex64>, range: std::ops::Range<usize>) -> Mat<Complex64> {
    let cols: Vec<usize> = range.collect();
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.submatrix(&rows, &cols)
}

/// Simple modules of `C^alpha[G]`, one per isomorphism class.
///
/// A random Hermitian element of the image of the exact center splits the
/// regular module into its central blocks; inside a block of dimension
/// `d^2` a random Hermitian element of the right-multiplication span has an
/// eigenspace of dimension `d`, which is a simple left submodule. The number
/// of blocks must equal the number of alpha-regular classes. Eigenvalues
/// closer than `sqrt(tol)` (relative) are merged; a failed split is retried
/// with fresh randomness up to [`MAX_RETRIES`] times.
pub fn classify_simples(alg: &TwistedGroupAlgebra, tol: f64, seed: u64) -> Result<SimpleModules, RepError> {
    let n = alg.dim();
    let reg = alg.regular_representation::<Complex64>();
    let right: Vec<Mat<Complex64>> = (0..n).map(|i| monomial::right_matrix(alg, i)).collect();
    let center: Vec<Mat<Complex64>> = alg
        .center_basis()?
        .iter()
        .map(|z| {
            let coeffs: Vec<(usize, Complex64)> = z.coeffs().iter().enumerate().map(|(g, c)| (g, c.embed_complex())).collect();
            reg.element_action(&coeffs)
        })
        .collect();
    let expected = center.len();
    let gap = tol.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_failure = String::new();
    for attempt in 1..=MAX_RETRIES + 1 {
        let mut c = Mat::<Complex64>::zeros(n, n);
        for z in &center {
            c = c.add(&z.scale(&random_unit(&mut rng)));
        }
        let h = c.add(&c.adjoint());
        let (values, vectors) = hermitian_eigen(&h);
        let scale = values.iter().map(|v| v.abs()).fold(1.0, f64::max);
        let blocks = clusters(&values, gap * scale);
        if blocks.len() != expected {
            last_failure = format!("{} central blocks, expected {}", blocks.len(), expected);
            continue;
        }
        let mut found = Vec::new();
        for block in blocks {
            let Some(d) = perfect_sqrt(block.len()) else {
                last_failure = format!("central block of non-square dimension {}", block.len());
                break;
            };
            let v = columns_of(&vectors, block);
            let mut k = Mat::<Complex64>::zeros(n, n);
            for r in &right {
                k = k.add(&r.scale(&random_unit(&mut rng)));
            }
            let k = k.add(&k.adjoint());
            let restricted = v.adjoint().matmul(&k.matmul(&v));
            let (kv, kvec) = hermitian_eigen(&restricted);
            let kscale = kv.iter().map(|x| x.abs()).fold(1.0, f64::max);
            let first = clusters(&kv, gap * kscale).into_iter().next().expect("nonempty block");
            if first.len() != d {
                last_failure = format!("multiplicity eigenspace of dimension {}, expected {}", first.len(), d);
                break;
            }
            let w = v.matmul(&columns_of(&kvec, first));
            match reg.restrict_to_subspace(&w, tol.max(1e-12) * 1e3) {
                Ok(m) => found.push(m),
                Err(_) => {
                    last_failure = "extracted subspace is not invariant".into();
                    break;
                }
            }
        }
        if found.len() != expected {
            continue;
        }
        found.sort_by_cached_key(|m| (m.dim(), character_key(m)));
        return Ok(SimpleModules {
            dims: found.iter().map(MatrixModule::dim).collect(),
            modules: found,
            attempts: attempt,
        });
    }
    Err(RepError::IllConditioned(last_failure))
}

/// Traces of all basis actions rounded to 1e-6; equal for isomorphic modules.
fn character_key(m: &MatrixModule<Complex64>) -> Vec<(i64, i64)> {
    m.actions()
        .iter()
        .map(|a| {
            let t = a.trace();
            ((t.re * 1e6).round() as i64, (t.im * 1e6).round() as i64)
        })
        .collect()
}

/// Simple modules of one orbit block.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitSimples {
    pub rep: usize,
    pub stabilizer_order: usize,
    pub index: usize,
    pub block_dim: usize,
    /// Dimensions of the simple modules of the stabilizer algebra.
    pub stabilizer_simple_dims: Vec<usize>,
    /// Dimensions of the induced simple block modules.
    pub simple_dims: Vec<usize>,
    pub all_simple: bool,
    pub pairwise_inequivalent: bool,
    #[serde(skip)]
    pub modules: Vec<MatrixModule<Complex64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleModuleReport {
    pub orbits: Vec<OrbitSimples>,
    /// `sum (index * d)^2` over all simples.
    pub square_sum: usize,
    pub algebra_dim: usize,
}

impl SimpleModuleReport {
    pub fn accounting_holds(&self) -> bool {
        self.square_sum == self.algebra_dim && self.orbits.iter().all(|o| o.simple_dims.iter().map(|d| d * d).sum::<usize>() == o.block_dim)
    }

    pub fn all_checks(&self) -> bool {
        self.accounting_holds() && self.orbits.iter().all(|o| o.all_simple && o.pairwise_inequivalent)
    }
}

/// Simple modules of the double, induced orbit by orbit from the simple
/// modules of the stabilizer algebras, each checked simple and pairwise
/// inequivalent within its block.
pub fn classify_double_simples(d: &GeneralizedDouble, tol: f64, seed: u64) -> Result<SimpleModuleReport, RepError> {
    let mut orbits = Vec::new();
    let mut square_sum = 0;
    for block in d.blocks().blocks {
        let s = block.rep;
        let view = d.block_view(s);
        let (stab, emb) = d.stabilizer_subalgebra_iso(s)?;
        let simples = classify_simples(&stab, tol, seed)?;
        let mut modules = Vec::new();
        for m in &simples.modules {
            let ind = induce(&view, s, &emb, m)?;
            ind.verify(&view, tol.sqrt())?;
            modules.push(ind);
        }
        let all_simple = modules.iter().all(|m| is_simple(&view, m, tol));
        let mut pairwise_inequivalent = true;
        for i in 0..modules.len() {
            for j in i + 1..modules.len() {
                if !hom_space(&view, &modules[i], &modules[j], tol).is_empty() {
                    pairwise_inequivalent = false;
                }
            }
        }
        let index = block.transversal.len();
        let simple_dims: Vec<usize> = modules.iter().map(MatrixModule::dim).collect();
        square_sum += simple_dims.iter().map(|x| x * x).sum::<usize>();
        orbits.push(OrbitSimples {
            rep: s,
            stabilizer_order: block.stabilizer.len(),
            index,
            block_dim: block.indices.len(),
            stabilizer_simple_dims: simples.dims,
            simple_dims,
            all_simple,
            pairwise_inequivalent,
            modules,
        });
    }
    Ok(SimpleModuleReport {
        orbits,
        square_sum,
        algebra_dim: d.dim(),
    })
}

/// Exact regular module of the stabilizer algebra, as a convenient exact
/// test module.
pub fn exact_regular(alg: &TwistedGroupAlgebra) -> MatrixModule<CycScalar> {
    alg.regular_representation()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cocycles::{SetCocycle, TwoCocycle};
    use crate::double::trivial_action_double;
    use crate::group::{FiniteGroup, RightGSet};

    const TOL: f64 = 1e-9;

    fn swap_double() -> GeneralizedDouble {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let gset = Arc::new(RightGSet::new(&g, 2, vec![0, 1, 1, 0]).unwrap());
        GeneralizedDouble::new(SetCocycle::trivial(g, gset)).unwrap()
    }

    #[test]
    fn simples_of_s3_and_v4() {
        let s3 = TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::symmetric(3)))).unwrap();
        let simples = classify_simples(&s3, TOL, 7).unwrap();
        assert_eq!(simples.dims, vec![1, 1, 2]);
        for m in &simples.modules {
            m.verify_exhaustive(&s3, 1e-9).unwrap();
            assert!(is_simple(&s3, m, TOL));
        }
        let v4 = TwistedGroupAlgebra::new(TwoCocycle::klein_four_nontrivial()).unwrap();
        assert_eq!(classify_simples(&v4, TOL, 7).unwrap().dims, vec![2]);
        let t = TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::trivial()))).unwrap();
        assert_eq!(classify_simples(&t, TOL, 7).unwrap().dims, vec![1]);
    }

    #[test]
    fn regular_module_endomorphisms() {
        let s3 = TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::symmetric(3)))).unwrap();
        let reg = exact_regular(&s3);
        reg.verify_exhaustive(&s3, 0.0).unwrap();
        // End of the regular module is the opposite algebra, dimension |G|
        assert_eq!(endomorphism_dim(&s3, &reg, 0.0), 6);
        assert_eq!(endomorphism_dim(&s3, &reg.to_complex(), TOL), 6);
    }

    #[test]
    fn swap_double_induction() {
        let d = swap_double();
        let view = d.block_view(0);
        let (stab, emb) = d.stabilizer_subalgebra_iso(0).unwrap();
        let m = exact_regular(&stab);
        let ind = induce(&view, 0, &emb, &m).unwrap();
        assert_eq!(ind.dim(), 2);
        ind.verify_exhaustive(&view, 0.0).unwrap();
        assert!(is_simple(&view, &ind, 0.0));
        let res = restrict_by_idempotent(&view, 0, &emb, &ind, 0.0).unwrap();
        let x = restrict_induce_witness(&res, m.dim(), 0.0).unwrap();
        assert!(is_isomorphism(&stab, &m, &res.module, &x, 0.0));
        let y = induce_restrict_witness(&view, 0, &ind, &res);
        let back = induce(&view, 0, &emb, &res.module).unwrap();
        assert!(is_isomorphism(&view, &back, &ind, &y, 0.0));
    }

    #[test]
    fn double_simple_accounting() {
        let report = classify_double_simples(&swap_double(), TOL, 1).unwrap();
        assert_eq!(report.orbits[0].simple_dims, vec![2]);
        assert!(report.all_checks());
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let d = trivial_action_double(&TwoCocycle::trivial(s3), 2).unwrap();
        let report = classify_double_simples(&d, TOL, 1).unwrap();
        assert_eq!(report.square_sum, 12);
        assert!(report.all_checks());
        for o in &report.orbits {
            assert_eq!(o.simple_dims, vec![1, 1, 2]);
        }
    }

    #[test]
    fn zero_module_restricts_to_zero() {
        let d = swap_double();
        let view = d.block_view(0);
        let (_, emb) = d.stabilizer_subalgebra_iso(0).unwrap();
        let z = MatrixModule::<CycScalar>::zero(view.dim());
        let res = restrict_by_idempotent(&view, 0, &emb, &z, 0.0).unwrap();
        assert_eq!(res.module.dim(), 0);
    }
}

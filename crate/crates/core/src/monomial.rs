//! Algebras with a basis closed under multiplication up to a root of unity
//! or zero. Both the twisted group algebra and the double are of this kind,
//! so structure checks, regular modules and centers are written once here.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::linalg::{Field, Mat, RowEchelon};
use crate::rep_decomp::MatrixModule;
use crate::scalars::{CycScalar, RootOfUnity};

pub trait MonomialAlgebra {
    fn dim(&self) -> usize;

    /// Every structure constant lies in `mu_N` for this `N`.
    fn conductor(&self) -> u32;

    /// `b_i b_j = c b_k`, or `None` when the product is zero.
    fn basis_product(&self, i: usize, j: usize) -> Option<(RootOfUnity, usize)>;

    /// Basis indices whose sum is the identity.
    fn identity_support(&self) -> Vec<usize>;

    /// Algebra generators, each a sum of basis elements with coefficient one.
    fn generators(&self) -> Vec<Vec<usize>>;
}

/// Sum of roots of unity `zeta_n^k`, with `counts[k]` copies of each.
pub fn root_sum(n: u32, counts: &[i64]) -> CycScalar {
    let terms: Vec<(BigRational, i64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (BigRational::from_integer(BigInt::from(c)), k as i64))
        .collect();
    if terms.is_empty() {
        return CycScalar::zero();
    }
    CycScalar::from_power_sum(n, &terms)
}

/// Accumulates a linear combination of roots of unity per basis index.
#[derive(Debug, Default)]
struct RootAccumulator {
    n: u32,
    entries: BTreeMap<usize, Vec<i64>>,
}

impl RootAccumulator {
    fn new(n: u32) -> Self {
        RootAccumulator {
            n,
            entries: BTreeMap::new(),
        }
    }

    fn add(&mut self, index: usize, r: RootOfUnity, sign: i64) {
        let k = r.exponent_in(self.n).expect("structure constants lie in mu_N") as usize;
        let n = self.n as usize;
        self.entries.entry(index).or_insert_with(|| vec![0; n])[k] += sign;
    }

    fn into_sparse(self) -> Vec<(usize, CycScalar)> {
        let n = self.n;
        self.entries
            .into_iter()
            .map(|(i, c)| (i, root_sum(n, &c)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}

/// Product of two coefficient vectors.
pub fn multiply<A: MonomialAlgebra + ?Sized>(alg: &A, a: &[CycScalar], b: &[CycScalar]) -> Vec<CycScalar> {
    let mut out = vec![CycScalar::zero(); alg.dim()];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            if let Some((c, k)) = alg.basis_product(i, j) {
                out[k] = out[k].add(&x.mul(y).mul(&c.to_scalar()));
            }
        }
    }
    out
}

pub fn identity_vector<A: MonomialAlgebra + ?Sized>(alg: &A) -> Vec<CycScalar> {
    let mut v = vec![CycScalar::zero(); alg.dim()];
    for i in alg.identity_support() {
        v[i] = CycScalar::one();
    }
    v
}

pub fn basis_vector<A: MonomialAlgebra + ?Sized>(alg: &A, i: usize) -> Vec<CycScalar> {
    let mut v = vec![CycScalar::zero(); alg.dim()];
    v[i] = CycScalar::one();
    v
}

/// First basis triple where `(b_i b_j) b_k != b_i (b_j b_k)`.
pub fn associativity_violation<A: MonomialAlgebra + ?Sized>(alg: &A) -> Option<(usize, usize, usize)> {
    let d = alg.dim();
    for i in 0..d {
        for j in 0..d {
            let ij = alg.basis_product(i, j);
            for k in 0..d {
                let left = ij.and_then(|(c, m)| alg.basis_product(m, k).map(|(c2, r)| (c.mul(&c2), r)));
                let right = alg
                    .basis_product(j, k)
                    .and_then(|(c, m)| alg.basis_product(i, m).map(|(c2, r)| (c.mul(&c2), r)));
                if left != right {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// First basis element on which the identity fails, on either side.
pub fn identity_violation<A: MonomialAlgebra + ?Sized>(alg: &A) -> Option<usize> {
    let one = identity_vector(alg);
    (0..alg.dim()).find(|&i| {
        let b = basis_vector(alg, i);
        multiply(alg, &one, &b) != b || multiply(alg, &b, &one) != b
    })
}

/// Matrix of left multiplication by `b_i` in the basis.
pub fn left_matrix<F: Field, A: MonomialAlgebra + ?Sized>(alg: &A, i: usize) -> Mat<F> {
    let d = alg.dim();
    let mut m = Mat::<F>::zeros(d, d);
    for j in 0..d {
        if let Some((c, k)) = alg.basis_product(i, j) {
            m.set(k, j, F::from_root(c));
        }
    }
    m
}

/// Matrix of right multiplication by `b_i` in the basis.
pub fn right_matrix<F: Field, A: MonomialAlgebra + ?Sized>(alg: &A, i: usize) -> Mat<F> {
    let d = alg.dim();
    let mut m = Mat::<F>::zeros(d, d);
    for j in 0..d {
        if let Some((c, k)) = alg.basis_product(j, i) {
            m.set(k, j, F::from_root(c));
        }
    }
    m
}

/// The algebra acting on itself by left multiplication.
pub fn regular_module<F: Field, A: MonomialAlgebra + ?Sized>(alg: &A) -> MatrixModule<F> {
    let action = (0..alg.dim()).map(|i| left_matrix(alg, i)).collect();
    MatrixModule::new(alg.dim(), action).expect("square matrices of the algebra dimension")
}

/// `T(b_i, b_j) = trace(L_i L_j)`.
pub fn trace_form<A: MonomialAlgebra + ?Sized>(alg: &A) -> Mat<CycScalar> {
    let d = alg.dim();
    let n = alg.conductor();
    let mut gram = Mat::<CycScalar>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut counts = vec![0i64; n as usize];
            for k in 0..d {
                if let Some((c1, m)) = alg.basis_product(j, k) {
                    if let Some((c2, r)) = alg.basis_product(i, m) {
                        if r == k {
                            counts[c1.mul(&c2).exponent_in(n).expect("in mu_N") as usize] += 1;
                        }
                    }
                }
            }
            gram.set(i, j, root_sum(n, &counts));
        }
    }
    gram
}

/// Characteristic-zero semisimplicity test: the trace form is nondegenerate.
pub fn is_semisimple<A: MonomialAlgebra + ?Sized>(alg: &A) -> bool {
    let gram = trace_form(alg);
    let mut ech = RowEchelon::<CycScalar>::new(alg.dim(), 0.0);
    for i in 0..alg.dim() {
        ech.insert_dense(gram.row(i));
    }
    ech.rank() == alg.dim()
}

/// Sparse rows of `x -> x u - u x` restricted to the given basis columns,
/// one system row per output basis element.
fn commutator_rows<A: MonomialAlgebra + ?Sized>(alg: &A, columns: &[usize], gens: &[Vec<usize>]) -> Vec<Vec<(usize, CycScalar)>> {
    let n = alg.conductor();
    let mut rows = Vec::new();
    for u in gens {
        let mut per_output: BTreeMap<usize, RootAccumulator> = BTreeMap::new();
        for (col, &j) in columns.iter().enumerate() {
            for &i in u {
                if let Some((c, k)) = alg.basis_product(j, i) {
                    per_output.entry(k).or_insert_with(|| RootAccumulator::new(n)).add(col, c, 1);
                }
                if let Some((c, k)) = alg.basis_product(i, j) {
                    per_output.entry(k).or_insert_with(|| RootAccumulator::new(n)).add(col, c, -1);
                }
            }
        }
        rows.extend(per_output.into_values().map(RootAccumulator::into_sparse).filter(|r| !r.is_empty()));
    }
    rows
}

/// Exact basis of the center, solving `x u = u x` for every generator `u`.
pub fn center_by_kernel<A: MonomialAlgebra + ?Sized>(alg: &A) -> Vec<Vec<CycScalar>> {
    let columns: Vec<usize> = (0..alg.dim()).collect();
    center_within(alg, &columns)
}

/// Central elements supported on `columns`; when the columns span a
/// two-sided ideal that is a direct factor, this is the center of that factor.
pub fn center_within<A: MonomialAlgebra + ?Sized>(alg: &A, columns: &[usize]) -> Vec<Vec<CycScalar>> {
    let gens = alg.generators();
    let mut ech = RowEchelon::<CycScalar>::new(columns.len(), 0.0);
    for row in commutator_rows(alg, columns, &gens) {
        ech.insert(row);
    }
    ech.nullspace()
        .into_iter()
        .map(|v| {
            let mut full = vec![CycScalar::zero(); alg.dim()];
            for (c, x) in columns.iter().zip(v) {
                full[*c] = x;
            }
            full
        })
        .collect()
}

/// True if `x` commutes with every generator, hence with the whole algebra.
pub fn is_central<A: MonomialAlgebra + ?Sized>(alg: &A, x: &[CycScalar]) -> bool {
    alg.generators().iter().all(|u| {
        let mut uv = vec![CycScalar::zero(); alg.dim()];
        for &i in u {
            uv[i] = CycScalar::one();
        }
        multiply(alg, x, &uv) == multiply(alg, &uv, x)
    })
}

/// True if `x` commutes with every basis element (slower than [`is_central`]).
pub fn commutes_with_basis<A: MonomialAlgebra + ?Sized>(alg: &A, x: &[CycScalar]) -> bool {
    (0..alg.dim()).all(|i| {
        let b = basis_vector(alg, i);
        multiply(alg, x, &b) == multiply(alg, &b, x)
    })
}

//! Dense matrices and sparse row reduction over an exact or floating field.
//!
//! [`Field`] is implemented for [`CycScalar`] (exact; tolerances ignored)
//! and [`Complex64`] (numeric; `is_zero` compares against a tolerance).

use std::fmt;

use num_complex::Complex64;

use crate::scalars::{CycScalar, RootOfUnity};

pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_root(r: RootOfUnity) -> Self;
    fn from_cyc(x: &CycScalar) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn is_zero(&self, tol: f64) -> bool;
    /// Exact zero test, used to skip work in sparse loops.
    fn is_exact_zero(&self) -> bool;
    fn to_complex(&self) -> Complex64;
    /// `self += a * b`.
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
    /// Pivot preference; larger is better.
    fn magnitude(&self) -> f64;

    /// `self` as an element of `mu_n`, if it is one (to tolerance `tol`).
    fn as_root(&self, n: u32, tol: f64) -> Option<RootOfUnity>;

    /// A conductor whose roots of unity contain every root of unity in the
    /// field generated by `self` (exact); 1 for floating point.
    fn root_conductor(&self) -> u32;

    /// Basis of the solutions of a homogeneous sparse system.
    fn solve_homogeneous(rows: Vec<SparseRow<Self>>, ncols: usize, tol: f64) -> Vec<Vec<Self>> {
        let mut ech = RowEchelon::new(ncols, tol);
        for r in rows {
            ech.insert(r);
        }
        ech.nullspace()
    }
}

impl Field for CycScalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        CycScalar::zero()
    }
    fn one() -> Self {
        CycScalar::one()
    }
    fn from_i64(v: i64) -> Self {
        CycScalar::from_integer(v)
    }
    fn from_root(r: RootOfUnity) -> Self {
        r.to_scalar()
    }
    fn from_cyc(x: &CycScalar) -> Self {
        x.clone()
    }
    fn add(&self, o: &Self) -> Self {
        CycScalar::add(self, o)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        CycScalar::add_product(self, a, b)
    }
    fn sub(&self, o: &Self) -> Self {
        CycScalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CycScalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        CycScalar::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        CycScalar::inv(self).ok()
    }
    fn conj(&self) -> Self {
        CycScalar::conj(self)
    }
    fn is_zero(&self, _tol: f64) -> bool {
        CycScalar::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn to_complex(&self) -> Complex64 {
        self.embed_complex()
    }
    fn as_root(&self, n: u32, _tol: f64) -> Option<RootOfUnity> {
        self.as_root_of_unity(n)
    }
    fn root_conductor(&self) -> u32 {
        crate::scalars::lcm(2, self.conductor())
    }
    fn magnitude(&self) -> f64 {
        // prefer simple pivots: rationals, then short power sums
        if CycScalar::is_zero(self) {
            0.0
        } else {
            1.0 / self.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() as f64
        }
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_root(r: RootOfUnity) -> Self {
        r.to_complex()
    }
    fn from_cyc(x: &CycScalar) -> Self {
        x.embed_complex()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (self.norm() > 0.0).then(|| 1.0 / self)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn as_root(&self, n: u32, tol: f64) -> Option<RootOfUnity> {
        let turns = self.arg() / std::f64::consts::TAU * n as f64;
        let k = turns.round() as i64;
        let r = RootOfUnity::new(n, k);
        ((self - r.to_complex()).norm() <= tol).then_some(r)
    }
    fn root_conductor(&self) -> u32 {
        1
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }

    /// Eigenvectors of the normal matrix `A* A` with eigenvalue at most
    /// `tol * max(1, largest eigenvalue)`, i.e. singular values below
    /// roughly `sqrt(tol)` relative to the largest.
    fn solve_homogeneous(rows: Vec<SparseRow<Self>>, ncols: usize, tol: f64) -> Vec<Vec<Self>> {
        if ncols == 0 {
            return Vec::new();
        }
        let mut normal = Mat::<Complex64>::zeros(ncols, ncols);
        for r in &rows {
            for (i, a) in r {
                for (j, b) in r {
                    let v = normal.get(*i, *j) + a.conj() * b;
                    normal.set(*i, *j, v);
                }
            }
        }
        let (values, vectors) = hermitian_eigen(&normal);
        let top = values.iter().cloned().fold(1.0, f64::max);
        (0..ncols)
            .filter(|&k| values[k] <= tol * top)
            .map(|k| vectors.column(k))
            .collect()
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (as columns) of a
/// Hermitian matrix.
pub fn hermitian_eigen(m: &Mat<Complex64>) -> (Vec<f64>, Mat<Complex64>) {
    let n = m.rows();
    let dm = nalgebra::DMatrix::<Complex64>::from_fn(n, n, |r, c| {
        // symmetrize against rounding
        (m.get(r, c) + m.get(c, r).conj()) * 0.5
    });
    let eig = dm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = Mat::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_complex(&self) -> Mat<Complex64> {
        self.map(F::to_complex)
    }

    pub fn matmul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut out = Mat::<F>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_exact_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_exact_zero() {
                        continue;
                    }
                    out.data[i * other.cols + j].add_product(a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_exact_zero() && !b.is_exact_zero() {
                        acc.add_product(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Mat<F> {
        self.map(|x| x.mul(s))
    }

    pub fn transpose(&self) -> Mat<F> {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn adjoint(&self) -> Mat<F> {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_zero(tol))
    }

    pub fn approx_eq(&self, other: &Mat<F>, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.sub(b).is_zero(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_complex().norm()).fold(0.0, f64::max)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat<F> {
        Mat::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat<F>) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block_diagonal(blocks: &[Mat<F>]) -> Mat<F> {
        let rows = blocks.iter().map(Mat::rows).sum();
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Gauss-Jordan inverse; `None` if singular at tolerance `tol`.
    pub fn inverse(&self, tol: f64) -> Option<Mat<F>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::<F>::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero(tol))
                .max_by(|&x, &y| {
                    a.get(x, col)
                        .magnitude()
                        .partial_cmp(&a.get(y, col).magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a.get(col, col).inv()?;
            for c in 0..n {
                let v = a.get(col, c).mul(&p);
                a.set(col, c, v);
                let w = inv.get(col, c).mul(&p);
                inv.set(col, c, w);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_exact_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = a.get(r, c).sub(&f.mul(a.get(col, c)));
                    a.set(r, c, v);
                    let w = inv.get(r, c).sub(&f.mul(inv.get(col, c)));
                    inv.set(r, c, w);
                }
            }
        }
        Some(inv)
    }

    pub fn rank(&self, tol: f64) -> usize {
        let mut ech = RowEchelon::new(self.cols, tol);
        for r in 0..self.rows {
            ech.insert_dense(self.row(r));
        }
        ech.rank()
    }

    /// Basis of `{x : self x = 0}`.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<F>> {
        let mut ech = RowEchelon::new(self.cols, tol);
        for r in 0..self.rows {
            ech.insert_dense(self.row(r));
        }
        ech.nullspace()
    }

    /// Indices of a maximal linearly independent set of columns, chosen greedily left to right.
    pub fn independent_columns(&self, tol: f64) -> Vec<usize> {
        let mut ech = RowEchelon::new(self.rows, tol);
        (0..self.cols)
            .filter(|&c| ech.insert_dense(&self.column(c)))
            .collect()
    }
}

impl<F: Field> std::ops::Mul for &Mat<F> {
    type Output = Mat<F>;
    fn mul(self, rhs: &Mat<F>) -> Mat<F> {
        self.matmul(rhs)
    }
}

/// Sparse row `(column, value)` sorted by column.
pub type SparseRow<F> = Vec<(usize, F)>;

/// Incrementally maintained reduced row echelon form.
///
/// Rows are stored sparse and kept fully reduced: every pivot column is
/// zero outside its own row, so reducing an incoming row is one pass over
/// its pivot-column entries. Numeric pivots are the largest entry of the
/// residual row.
#[derive(Debug, Clone)]
pub struct RowEchelon<F> {
    ncols: usize,
    tol: f64,
    rows: Vec<SparseRow<F>>,
    row_pivot: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

fn sparse_axpy<F: Field>(row: &SparseRow<F>, factor: &F, other: &SparseRow<F>, tol: f64) -> SparseRow<F> {
    // row - factor * other
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = other.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, factor.mul(&other[j].1).neg()));
            j += 1;
        } else {
            let v = row[i].1.sub(&factor.mul(&other[j].1));
            if !v.is_zero(if F::EXACT { 0.0 } else { tol * 1e-3 }) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: Field> RowEchelon<F> {
    pub fn new(ncols: usize, tol: f64) -> Self {
        RowEchelon {
            ncols,
            tol,
            rows: Vec::new(),
            row_pivot: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn insert_dense(&mut self, row: &[F]) -> bool {
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_exact_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        self.insert(sparse)
    }

    /// Reduces a row against the current basis; returns true if it was
    /// independent (and has been added).
    pub fn insert(&mut self, mut row: SparseRow<F>) -> bool {
        row.sort_by_key(|e| e.0);
        let scale = row.iter().map(|e| e.1.magnitude()).fold(0.0, f64::max).max(1.0);
        let hits: Vec<(usize, F)> = row
            .iter()
            .filter_map(|(c, v)| self.pivot_row[*c].map(|r| (r, v.clone())))
            .collect();
        for (r, v) in hits {
            row = sparse_axpy(&row, &v, &self.rows[r], self.tol);
        }
        let tol = self.tol * scale;
        row.retain(|e| !e.1.is_zero(if F::EXACT { 0.0 } else { tol }));
        if row.is_empty() {
            return false;
        }
        // exact: simplest entry; numeric: largest entry. Leftmost among equals.
        let mut pos = 0;
        for (i, e) in row.iter().enumerate() {
            if e.1.magnitude() > row[pos].1.magnitude() {
                pos = i;
            }
        }
        let pcol = row[pos].0;
        let pinv = row[pos].1.inv().expect("nonzero pivot");
        for e in row.iter_mut() {
            e.1 = e.1.mul(&pinv);
        }
        row[pos].1 = F::one();
        // clear the new pivot column from existing rows
        for existing in self.rows.iter_mut() {
            if let Ok(i) = existing.binary_search_by_key(&pcol, |e| e.0) {
                let f = existing[i].1.clone();
                *existing = sparse_axpy(existing, &f, &row, self.tol);
                existing.retain(|e| e.0 != pcol);
            }
        }
        self.pivot_row[pcol] = Some(self.rows.len());
        self.row_pivot.push(pcol);
        self.rows.push(row);
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Basis of the solution space of the homogeneous system, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if self.pivot_row[free].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.ncols];
            v[free] = F::one();
            for (row, &pcol) in self.rows.iter().zip(&self.row_pivot) {
                if let Ok(i) = row.binary_search_by_key(&free, |e| e.0) {
                    v[pcol] = row[i].1.neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// True if `v` lies in the row space.
    pub fn contains(&self, v: &[F]) -> bool {
        let mut probe = self.clone();
        !probe.insert_dense(v)
    }
}

/// Rank of a list of vectors.
pub fn rank_of<F: Field>(vectors: &[Vec<F>], tol: f64) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let mut ech = RowEchelon::new(first.len(), tol);
    for v in vectors {
        ech.insert_dense(v);
    }
    ech.rank()
}

/// True if the spans of `a` and `b` coincide.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>], tol: f64) -> bool {
    let ra = rank_of(a, tol);
    let rb = rank_of(b, tol);
    let joint: Vec<Vec<F>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of(&joint, tol) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> CycScalar {
        CycScalar::from_integer(v)
    }

    #[test]
    fn exact_inverse_and_nullspace() {
        let m = Mat::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(1)]]);
        let inv = m.inverse(0.0).unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        let s = Mat::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(s.rank(0.0), 1);
        let ns = s.nullspace(0.0);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(s.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert!(Mat::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]).inverse(0.0).is_none());
    }

    #[test]
    fn numeric_nullspace() {
        let i = Complex64::new(0.0, 1.0);
        let m = Mat::from_rows(vec![vec![Complex64::one(), i], vec![i, -Complex64::one()]]);
        let ns = m.nullspace(1e-12);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.norm() < 1e-12));
    }

    #[test]
    fn echelon_spans() {
        let a = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        let b = vec![vec![q(1), q(1), q(2)], vec![q(1), q(-1), q(0)]];
        assert!(same_span(&a, &b, 0.0));
        let mut e = RowEchelon::new(3, 0.0);
        for v in &a {
            e.insert_dense(v);
        }
        assert!(e.contains(&[q(2), q(3), q(5)]));
        assert!(!e.contains(&[q(0), q(0), q(1)]));
        assert_eq!(
            Mat::from_columns(3, &[a[0].clone(), b[0].clone(), a[1].clone()]).independent_columns(0.0),
            vec![0, 1]
        );
    }
}

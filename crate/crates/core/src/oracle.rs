//! Brute-force reference computations on raw multiplication tables and
//! exponent arrays, in complex floating point via nalgebra. Nothing here
//! calls the exact algebra, center or representation code; results are used
//! to cross-check those paths.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// Basis products `b_i b_j = c b_k` or zero, stored densely.
#[derive(Debug, Clone)]
pub struct RawAlgebra {
    pub dim: usize,
    products: Vec<Option<(Complex64, usize)>>,
}

fn root(n: u32, k: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
}

impl RawAlgebra {
    /// Twisted group algebra from a multiplication table (`table[x*n+y] = xy`)
    /// and exponents `exps[x*n+y]` in `mu_conductor`.
    pub fn twisted_group_algebra(table: &[usize], conductor: u32, exps: &[u32]) -> Self {
        let n = (table.len() as f64).sqrt().round() as usize;
        let products = (0..n * n).map(|i| Some((root(conductor, exps[i]), table[i]))).collect();
        RawAlgebra { dim: n, products }
    }

    /// Double with basis index `s*n+g`, right action `action[s*n+g] = s·g`
    /// and per-point exponents `exps[s][x*n+y]`.
    pub fn double(table: &[usize], action: &[usize], conductor: u32, exps: &[Vec<u32>]) -> Self {
        let n = (table.len() as f64).sqrt().round() as usize;
        let m = exps.len();
        let dim = n * m;
        let mut products = vec![None; dim * dim];
        for s in 0..m {
            for g in 0..n {
                for t in 0..m {
                    for h in 0..n {
                        if action[s * n + h] == t {
                            let c = root(conductor, exps[t][g * n + h]);
                            products[(s * n + g) * dim + t * n + h] = Some((c, t * n + table[g * n + h]));
                        }
                    }
                }
            }
        }
        RawAlgebra { dim, products }
    }

    pub fn product(&self, i: usize, j: usize) -> Option<(Complex64, usize)> {
        self.products[i * self.dim + j]
    }

    /// `(b_i b_j) b_k = b_i (b_j b_k)` for all basis triples, to `tol`.
    pub fn is_associative(&self, tol: f64) -> bool {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.product(i, j).and_then(|(c, m)| self.product(m, k).map(|(c2, r)| (c * c2, r)));
                    let right = self.product(j, k).and_then(|(c, m)| self.product(i, m).map(|(c2, r)| (c * c2, r)));
                    let same = match (left, right) {
                        (None, None) => true,
                        (Some((a, x)), Some((b, y))) => x == y && (a - b).norm() <= tol,
                        _ => false,
                    };
                    if !same {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Left multiplication by `b_i`.
    fn left(&self, i: usize) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            if let Some((c, k)) = self.product(i, j) {
                m[(k, j)] = c;
            }
        }
        m
    }

    /// `dim {x : x b_i = b_i x for every basis element}`.
    pub fn center_dim(&self, tol: f64) -> usize {
        let d = self.dim;
        let mut gram = DMatrix::<Complex64>::zeros(d, d);
        let mut row = vec![Complex64::new(0.0, 0.0); d];
        for i in 0..d {
            // coefficient of b_k in x b_i - b_i x, for each k
            let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); d];
            for j in 0..d {
                if let Some((c, k)) = self.product(j, i) {
                    rows[k].push((j, c));
                }
                if let Some((c, k)) = self.product(i, j) {
                    rows[k].push((j, -c));
                }
            }
            for r in rows.iter().filter(|r| !r.is_empty()) {
                row.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
                for &(j, c) in r {
                    row[j] += c;
                }
                accumulate(&mut gram, &row);
            }
        }
        nullity(&gram, tol)
    }

    /// Dimension of the center of the commutant of the left regular
    /// representation; for a semisimple algebra this counts simple modules.
    pub fn commutant_center_dim(&self, tol: f64) -> usize {
        let d = self.dim;
        let gens = self.generating_set();
        let lefts: Vec<DMatrix<Complex64>> = gens.iter().map(|&g| self.left(g)).collect();
        // unknown X as a vector of d*d entries, index r*d+c
        let mut gram = DMatrix::<Complex64>::zeros(d * d, d * d);
        let mut row = vec![Complex64::new(0.0, 0.0); d * d];
        for l in &lefts {
            for r in 0..d {
                for c in 0..d {
                    row.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
                    for k in 0..d {
                        row[r * d + k] += l[(k, c)];
                        row[k * d + c] -= l[(r, k)];
                    }
                    accumulate(&mut gram, &row);
                }
            }
        }
        let commutant = null_vectors(&gram, tol);
        let mats: Vec<DMatrix<Complex64>> = commutant
            .iter()
            .map(|v| DMatrix::from_fn(d, d, |r, c| v[r * d + c]))
            .collect();
        let m = mats.len();
        let mut small = DMatrix::<Complex64>::zeros(m, m);
        let mut row = vec![Complex64::new(0.0, 0.0); m];
        for b in 0..m {
            let comms: Vec<DMatrix<Complex64>> = mats.iter().map(|a| a * &mats[b] - &mats[b] * a).collect();
            for e in 0..d * d {
                for (a, cm) in comms.iter().enumerate() {
                    row[a] = cm[(e / d, e % d)];
                }
                accumulate(&mut small, &row);
            }
        }
        nullity(&small, tol)
    }

    /// Basis elements whose products generate every basis element, chosen
    /// greedily in index order.
    fn generating_set(&self) -> Vec<usize> {
        let d = self.dim;
        let mut gens = Vec::new();
        let mut reached = vec![false; d];
        for cand in 0..d {
            if reached[cand] {
                continue;
            }
            gens.push(cand);
            reached[cand] = true;
            let mut changed = true;
            while changed {
                changed = false;
                let cur: Vec<usize> = (0..d).filter(|&i| reached[i]).collect();
                for &a in &cur {
                    for &b in &cur {
                        if let Some((_, k)) = self.product(a, b) {
                            if !reached[k] {
                                reached[k] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        gens
    }
}

fn accumulate(gram: &mut DMatrix<Complex64>, row: &[Complex64]) {
    let nz: Vec<(usize, Complex64)> = row.iter().copied().enumerate().filter(|(_, c)| c.norm() > 0.0).collect();
    for &(a, x) in &nz {
        for &(b, y) in &nz {
            gram[(a, b)] += x.conj() * y;
        }
    }
}

fn eigen(gram: &DMatrix<Complex64>) -> SymmetricEigen<Complex64, nalgebra::Dyn> {
    let h = (gram + gram.adjoint()) * Complex64::new(0.5, 0.0);
    SymmetricEigen::new(h)
}

fn threshold(values: &[f64], tol: f64) -> f64 {
    let top = values.iter().cloned().fold(0.0, f64::max);
    tol * top.max(1.0)
}

fn nullity(gram: &DMatrix<Complex64>, tol: f64) -> usize {
    if gram.nrows() == 0 {
        return 0;
    }
    let e = eigen(gram);
    let vals: Vec<f64> = e.eigenvalues.iter().copied().collect();
    let t = threshold(&vals, tol);
    vals.iter().filter(|&&v| v <= t).count()
}

fn null_vectors(gram: &DMatrix<Complex64>, tol: f64) -> Vec<Vec<Complex64>> {
    let e = eigen(gram);
    let vals: Vec<f64> = e.eigenvalues.iter().copied().collect();
    let t = threshold(&vals, tol);
    (0..vals.len())
        .filter(|&i| vals[i] <= t)
        .map(|i| e.eigenvectors.column(i).iter().copied().collect())
        .collect()
}

/// Conjugacy classes `x g x^-1` from a raw table, each sorted, ordered by
/// smallest member.
pub fn conjugacy_classes(table: &[usize]) -> Vec<Vec<usize>> {
    let n = (table.len() as f64).sqrt().round() as usize;
    let e = (0..n).find(|&i| (0..n).all(|x| table[i * n + x] == x)).expect("identity");
    let inv: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| table[x * n + y] == e).expect("inverse")).collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for g in 0..n {
        if seen[g] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|x| table[table[x * n + g] * n + inv[x]]).collect();
        class.sort_unstable();
        class.dedup();
        for &c in &class {
            seen[c] = true;
        }
        out.push(class);
    }
    out
}

/// Classes whose members `g` satisfy `alpha(g,h) = alpha(h,g)` for every `h` commuting with `g`.
pub fn regular_class_count(table: &[usize], conductor: u32, exps: &[u32]) -> usize {
    let n = (table.len() as f64).sqrt().round() as usize;
    let regular = |g: usize| {
        (0..n)
            .filter(|&h| table[g * n + h] == table[h * n + g])
            .all(|h| exps[g * n + h] % conductor == exps[h * n + g] % conductor)
    };
    conjugacy_classes(table).iter().filter(|c| regular(c[0])).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_table() -> Vec<usize> {
        // permutations of {0,1,2}, composed right to left
        let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut t = Vec::new();
        for a in perms {
            for b in perms {
                t.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        t
    }

    fn v4() -> (Vec<usize>, Vec<u32>) {
        let table: Vec<usize> = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        // exponent a2*b1 for a = a1 + 2 a2, b = b1 + 2 b2
        let exps = (0..16).map(|i| (((i / 4) >> 1) & (i % 4) & 1) as u32).collect();
        (table, exps)
    }

    #[test]
    fn s3_untwisted() {
        let t = s3_table();
        let alg = RawAlgebra::twisted_group_algebra(&t, 1, &[0; 36]);
        assert!(alg.is_associative(1e-12));
        assert_eq!(conjugacy_classes(&t).len(), 3);
        assert_eq!(alg.center_dim(1e-9), 3);
        assert_eq!(alg.commutant_center_dim(1e-9), 3);
        assert_eq!(regular_class_count(&t, 1, &[0; 36]), 3);
    }

    #[test]
    fn v4_twisted() {
        let (t, e) = v4();
        let alg = RawAlgebra::twisted_group_algebra(&t, 2, &e);
        assert!(alg.is_associative(1e-12));
        assert_eq!(alg.center_dim(1e-9), 1);
        assert_eq!(alg.commutant_center_dim(1e-9), 1);
        assert_eq!(regular_class_count(&t, 2, &e), 1);
    }

    #[test]
    fn broken_cocycle_is_not_associative() {
        let (t, mut e) = v4();
        e[5] = 1;
        assert!(!RawAlgebra::twisted_group_algebra(&t, 2, &e).is_associative(1e-12));
    }

    #[test]
    fn swap_double() {
        let t = vec![0, 1, 1, 0];
        let action = vec![0, 1, 1, 0];
        let d = RawAlgebra::double(&t, &action, 1, &[vec![0; 4], vec![0; 4]]);
        assert!(d.is_associative(1e-12));
        assert_eq!(d.center_dim(1e-9), 1);
    }
}

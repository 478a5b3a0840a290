//! Projective group actions on graded spaces, stable families of such
//! spaces, and the decomposition of their direct sum under the double and
//! its commutant.
//!
//! Conventions: for a label `N` and `x` in `G`, `phi[N][x]` maps the space
//! of `N` to the space of `N·x^-1`, and
//! `phi_{N·x^-1}(y) phi_N(x) = alpha_N(y,x) phi_N(yx)`.
//! The double acts by `d_{a,M} w = [w in M] phi_M(a) w`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cocycles::{CocycleError, SetCocycle, TwoCocycle, Violation};
use crate::double::{DoubleError, GeneralizedDouble};
use crate::group::{FiniteGroup, GroupError, RightGSet};
use crate::linalg::{Field, Mat};
use crate::monomial::MonomialAlgebra;
use crate::rep_decomp::{self, classify_double_simples, hom_space, intertwiner_space, MatrixModule, RepError};
use crate::scalars::{lcm, RootOfUnity};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualPairError {
    #[error("family data is malformed: {0}")]
    Shape(String),
    #[error("phi(1) is not the identity on label {0}")]
    IdentityNotIdentity(usize),
    #[error("phi is not invertible for label {label} and element {g}")]
    NotInvertible { label: usize, g: usize },
    #[error("phi does not preserve the level grading for label {label} and element {g}")]
    NotGraded { label: usize, g: usize },
    #[error("composition is not a scalar multiple at label {label}, pair ({y}, {x})")]
    NotProjective { label: usize, y: usize, x: usize },
    #[error("scalar at label {label}, pair ({y}, {x}) is not in mu_{n}")]
    NotRootOfUnity { label: usize, y: usize, x: usize, n: u32 },
    #[error("extracted set cocycle is invalid: {0}")]
    InvalidSetCocycle(Violation),
    #[error("the double was built on a different group or G-set")]
    Mismatch,
    #[error("map check failed: {0}")]
    Check(&'static str),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Double(#[from] DoubleError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A family of graded spaces permuted by `G` up to the maps `phi`.
#[derive(Debug, Clone)]
pub struct StableFamily<F> {
    group: Arc<FiniteGroup>,
    gset: Arc<RightGSet>,
    labels: Vec<String>,
    levels: Vec<Vec<usize>>,
    phi: Vec<Vec<Mat<F>>>,
}

/// A projective representation on one graded space: a family with a
/// single, fixed label.
pub type ProjectiveAction<F> = StableFamily<F>;

fn is_level_block_diagonal<F: Field>(m: &Mat<F>, rows: &[usize], cols: &[usize], tol: f64) -> bool {
    if rows != cols {
        return false;
    }
    let mut level_of = Vec::new();
    for (l, &d) in rows.iter().enumerate() {
        level_of.extend(std::iter::repeat_n(l, d));
    }
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| level_of[r] == level_of[c] || m.get(r, c).is_zero(tol)))
}

impl<F: Field> StableFamily<F> {
    /// Checks shapes, `phi_N(1) = 1`, invertibility and level preservation.
    pub fn new(
        group: Arc<FiniteGroup>,
        gset: Arc<RightGSet>,
        labels: Vec<String>,
        levels: Vec<Vec<usize>>,
        phi: Vec<Vec<Mat<F>>>,
        tol: f64,
    ) -> Result<Self, DualPairError> {
        let m = gset.size();
        if gset.group_order() != group.order() {
            return Err(DualPairError::Shape("G-set is over a different group".into()));
        }
        if labels.len() != m || levels.len() != m || phi.len() != m {
            return Err(DualPairError::Shape("one label, grading and phi list per point".into()));
        }
        if phi.iter().any(|p| p.len() != group.order()) {
            return Err(DualPairError::Shape("one phi matrix per group element".into()));
        }
        let dims: Vec<usize> = levels.iter().map(|l| l.iter().sum()).collect();
        for (n, maps) in phi.iter().enumerate() {
            for (x, mat) in maps.iter().enumerate() {
                let target = gset.act(n, group.inv(x));
                if mat.rows() != dims[target] || mat.cols() != dims[n] {
                    return Err(DualPairError::Shape(format!(
                        "phi for label {n} and element {x} must be {}x{}",
                        dims[target], dims[n]
                    )));
                }
                if !is_level_block_diagonal(mat, &levels[target], &levels[n], tol) {
                    return Err(DualPairError::NotGraded { label: n, g: x });
                }
                if dims[n] > 0 && mat.inverse(tol).is_none() {
                    return Err(DualPairError::NotInvertible { label: n, g: x });
                }
            }
            if !maps[group.identity()].approx_eq(&Mat::identity(dims[n]), tol) {
                return Err(DualPairError::IdentityNotIdentity(n));
            }
        }
        Ok(StableFamily {
            group,
            gset,
            labels,
            levels,
            phi,
        })
    }

    /// A single space with matrices `phi[g]` and the given level grading.
    pub fn projective(group: Arc<FiniteGroup>, levels: Vec<usize>, phi: Vec<Mat<F>>, tol: f64) -> Result<Self, DualPairError> {
        let gset = Arc::new(RightGSet::trivial(&group, 1));
        Self::new(group, gset, vec!["M".into()], vec![levels], vec![phi], tol)
    }

    /// Family read off an induced module: for each orbit, the block of
    /// `d_{x,M}` from label `M` to label `M·x^-1`. `modules[j]` is a module
    /// over the stabilizer algebra of the `j`-th orbit representative.
    pub fn from_induced(d: &GeneralizedDouble, modules: &[MatrixModule<F>], tol: f64) -> Result<Self, DualPairError> {
        let g = d.group();
        let blocks = d.blocks().blocks;
        if modules.len() != blocks.len() {
            return Err(DualPairError::Shape("one stabilizer module per orbit".into()));
        }
        let m = d.gset().size();
        let mut phi: Vec<Vec<Mat<F>>> = vec![Vec::new(); m];
        let mut levels = vec![Vec::new(); m];
        for (block, module) in blocks.iter().zip(modules) {
            let s = block.rep;
            let view = d.block_view(s);
            let (_, emb) = d.stabilizer_subalgebra_iso(s)?;
            let ind = rep_decomp::induce(&view, s, &emb, module)?;
            let dm = module.dim();
            let pos = |t: usize| block.orbit.iter().position(|&o| o == t).expect("orbit point");
            for &t in &block.orbit {
                levels[t] = vec![dm];
                let i = pos(t);
                phi[t] = g
                    .elements()
                    .map(|x| {
                        let j = pos(d.gset().act(t, g.inv(x)));
                        let act = ind.action(view.local_index(x, t).expect("orbit point"));
                        let rows: Vec<usize> = (j * dm..(j + 1) * dm).collect();
                        let cols: Vec<usize> = (i * dm..(i + 1) * dm).collect();
                        act.submatrix(&rows, &cols)
                    })
                    .collect();
            }
        }
        let labels = (0..m).map(|t| format!("M{t}")).collect();
        Self::new(Arc::clone(g), Arc::clone(d.gset()), labels, levels, phi, tol)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn gset(&self) -> &Arc<RightGSet> {
        &self.gset
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn levels(&self, label: usize) -> &[usize] {
        &self.levels[label]
    }

    pub fn label_dim(&self, label: usize) -> usize {
        self.levels[label].iter().sum()
    }

    pub fn total_dim(&self) -> usize {
        (0..self.labels.len()).map(|n| self.label_dim(n)).sum()
    }

    /// `phi_N(x)`.
    pub fn phi(&self, label: usize, x: usize) -> &Mat<F> {
        &self.phi[label][x]
    }

    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.labels.len());
        let mut acc = 0;
        for n in 0..self.labels.len() {
            out.push(acc);
            acc += self.label_dim(n);
        }
        out
    }

    /// Multiplies every `phi_N(x)` by `lambda_N(x)`; the extracted cocycle
    /// changes by the set coboundary of `lambda`.
    pub fn rescale(&self, lambda: &[Vec<RootOfUnity>]) -> Self {
        let mut out = self.clone();
        for (n, maps) in out.phi.iter_mut().enumerate() {
            for (x, m) in maps.iter_mut().enumerate() {
                *m = m.scale(&F::from_root(lambda[n][x]));
            }
        }
        out
    }

    /// `phi'_N(x) = P_{N x^-1} phi_N(x) P_N^-1`, one invertible
    /// level-preserving `P_N` per label; the extracted cocycle is unchanged.
    pub fn change_basis(&self, p: &[Mat<F>], tol: f64) -> Result<Self, DualPairError> {
        if p.len() != self.labels.len() {
            return Err(DualPairError::Shape("one basis change per label".into()));
        }
        let mut inv = Vec::with_capacity(p.len());
        for (n, m) in p.iter().enumerate() {
            if !is_level_block_diagonal(m, &self.levels[n], &self.levels[n], tol) {
                return Err(DualPairError::NotGraded { label: n, g: self.group.identity() });
            }
            inv.push(m.inverse(tol).ok_or(DualPairError::NotInvertible { label: n, g: self.group.identity() })?);
        }
        let g = &*self.group;
        let phi = (0..self.labels.len())
            .map(|n| {
                g.elements()
                    .map(|x| p[self.gset.act(n, g.inv(x))].matmul(&self.phi[n][x]).matmul(&inv[n]))
                    .collect()
            })
            .collect();
        Self::new(
            Arc::clone(&self.group),
            Arc::clone(&self.gset),
            self.labels.clone(),
            self.levels.clone(),
            phi,
            tol,
        )
    }

    /// Scalars `alpha_N(y,x)` with `phi_{N x^-1}(y) phi_N(x) = alpha_N(y,x) phi_N(yx)`,
    /// as exponents in `mu_n`. The scalar is read at the largest entry of
    /// `phi_N(yx)` and the whole identity is then checked.
    ///
    /// `conductor` defaults to `lcm(2, conductors of all entries)` for exact
    /// input, which contains every root of unity they generate, and to
    /// `2|G|` for floating point input.
    pub fn extract_set_cocycle(&self, conductor: Option<u32>, tol: f64) -> Result<SetCocycle, DualPairError> {
        let g = &*self.group;
        let n = conductor.unwrap_or_else(|| self.default_conductor());
        let order = g.order();
        let mut exps = vec![vec![0u32; order * order]; self.labels.len()];
        for (label, table) in exps.iter_mut().enumerate() {
            if self.label_dim(label) == 0 {
                continue;
            }
            for x in g.elements() {
                let m = self.gset.act(label, g.inv(x));
                for y in g.elements() {
                    let lhs = self.phi[m][y].matmul(&self.phi[label][x]);
                    let rhs = &self.phi[label][g.mul(y, x)];
                    let c = scalar_ratio(&lhs, rhs, tol).ok_or(DualPairError::NotProjective { label, y, x })?;
                    let r = c.as_root(n, tol.sqrt()).ok_or(DualPairError::NotRootOfUnity { label, y, x, n })?;
                    table[y * order + x] = r.exponent_in(n).expect("root of mu_n");
                }
            }
        }
        let sc = SetCocycle::new(Arc::clone(&self.group), Arc::clone(&self.gset), n, exps)?;
        sc.validate().map_err(DualPairError::InvalidSetCocycle)?;
        Ok(sc)
    }

    /// The scalar cocycle of a single-label family.
    pub fn extract_cocycle(&self, conductor: Option<u32>, tol: f64) -> Result<TwoCocycle, DualPairError> {
        if self.labels.len() != 1 {
            return Err(DualPairError::Shape("expected a single space".into()));
        }
        Ok(self.extract_set_cocycle(conductor, tol)?.component(0)?)
    }

    fn default_conductor(&self) -> u32 {
        if F::EXACT {
            self.phi
                .iter()
                .flatten()
                .flat_map(|m| m.data().iter())
                .fold(2, |acc, x| lcm(acc, x.root_conductor()))
        } else {
            2 * self.group.order() as u32
        }
    }

    fn check_double(&self, d: &GeneralizedDouble) -> Result<(), DualPairError> {
        if **d.group() != *self.group || **d.gset() != *self.gset {
            return Err(DualPairError::Mismatch);
        }
        Ok(())
    }

    /// Action of the double on the direct sum of all spaces, labels in order.
    pub fn double_action(&self, d: &GeneralizedDouble, tol: f64) -> Result<MatrixModule<F>, DualPairError> {
        self.check_double(d)?;
        let module = self.double_action_unchecked(d)?;
        module.verify(d, tol)?;
        Ok(module)
    }

    fn double_action_unchecked(&self, d: &GeneralizedDouble) -> Result<MatrixModule<F>, DualPairError> {
        let g = &*self.group;
        let total = self.total_dim();
        let off = self.offsets();
        let mut action = Vec::with_capacity(d.dim());
        for i in 0..d.dim() {
            let (a, m) = d.pair(i);
            let target = self.gset.act(m, g.inv(a));
            let mut mat = Mat::zeros(total, total);
            mat.set_block(off[target], off[m], &self.phi[m][a]);
            action.push(mat);
        }
        Ok(MatrixModule::new(total, action)?)
    }

    /// Coordinates of the spaces whose labels lie in `labels`.
    pub fn coordinates_of(&self, labels: &[usize]) -> Vec<usize> {
        let off = self.offsets();
        labels.iter().flat_map(|&n| off[n]..off[n] + self.label_dim(n)).collect()
    }

    /// Coordinates of level `level` across all labels.
    pub fn level_coordinates(&self, level: usize) -> Vec<usize> {
        let off = self.offsets();
        let mut out = Vec::new();
        for (start, levels) in off.iter().zip(&self.levels) {
            let start = start + levels.iter().take(level).sum::<usize>();
            let len = levels.get(level).copied().unwrap_or(0);
            out.extend(start..start + len);
        }
        out
    }

    pub fn level_count(&self) -> usize {
        self.levels.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True if every orbit sum is mapped into itself by every basis element.
    pub fn orbit_sums_are_submodules(&self, module: &MatrixModule<F>, tol: f64) -> bool {
        self.gset.orbits(&self.group).iter().all(|o| {
            let inside = self.coordinates_of(&o.orbit);
            let outside: Vec<usize> = (0..module.dim()).filter(|c| !inside.contains(c)).collect();
            module.actions().iter().all(|a| a.submatrix(&outside, &inside).is_zero(tol))
        })
    }

    /// The map `d_{g_i^-1,N} ⊗ m -> phi_N(g_i^-1) m` from the module induced
    /// from the space of `N` to the orbit sum, with its inverse `chi`, both
    /// checked: `Psi` intertwines, `Psi chi = 1` and `chi Psi = 1`.
    pub fn psi_isomorphism(&self, d: &GeneralizedDouble, label: usize, tol: f64) -> Result<PsiMaps<F>, DualPairError> {
        self.check_double(d)?;
        let g = &*self.group;
        let view = d.block_view(label);
        let (stab, emb) = d.stabilizer_subalgebra_iso(label)?;
        let dn = self.label_dim(label);
        let stab_module = MatrixModule::new(dn, emb.iter().map(|&a| self.phi[label][a].clone()).collect())?;
        stab_module.verify(&stab, tol)?;
        let induced = rep_decomp::induce(&view, label, &emb, &stab_module)?;

        // orbit sum as a module over the block, labels in sorted order
        let full = self.double_action_unchecked(d)?;
        let coords = self.coordinates_of(view.orbit());
        let target = MatrixModule::new(
            coords.len(),
            view.indices().iter().map(|&i| full.action(i).submatrix(&coords, &coords)).collect(),
        )?;
        let mut local_off = vec![0usize; self.labels.len()];
        let mut acc = 0;
        for &t in view.orbit() {
            local_off[t] = acc;
            acc += self.label_dim(t);
        }

        let data = self.gset.orbit_stabilizer(g, label);
        let k = data.transversal.reps.len();
        let mut psi = Mat::zeros(coords.len(), k * dn);
        let mut chi = Mat::zeros(k * dn, coords.len());
        for (i, &gi) in data.transversal.reps.iter().enumerate() {
            let p = &self.phi[label][g.inv(gi)];
            let t = data.orbit[i];
            psi.set_block(local_off[t], i * dn, p);
            let pinv = p.inverse(tol).ok_or(DualPairError::NotInvertible { label, g: g.inv(gi) })?;
            chi.set_block(i * dn, local_off[t], &pinv);
        }
        let id_target = Mat::identity(coords.len());
        let id_source = Mat::identity(k * dn);
        if !psi.matmul(&chi).approx_eq(&id_target, tol) {
            return Err(DualPairError::Check("Psi chi is not the identity"));
        }
        if !chi.matmul(&psi).approx_eq(&id_source, tol) {
            return Err(DualPairError::Check("chi Psi is not the identity"));
        }
        if !rep_decomp::is_isomorphism(&view, &induced, &target, &psi, tol) {
            return Err(DualPairError::Check("Psi does not intertwine"));
        }
        Ok(PsiMaps {
            psi,
            chi,
            induced,
            target,
        })
    }

    /// Basis of the operators on the whole sum (`level = None`) or on one
    /// level (`Some(n)`) commuting with the action of the double.
    pub fn commutant(&self, d: &GeneralizedDouble, level: Option<usize>, tol: f64) -> Result<Vec<Mat<F>>, DualPairError> {
        let module = self.double_action(d, tol)?;
        let module = match level {
            None => module,
            Some(n) => restrict_coords(&module, &self.level_coordinates(n))?,
        };
        Ok(hom_space(d, &module, &module, tol))
    }

    /// Action of `(x, u)` with `u` one unit per label: `sum_M u_M phi_M(x)`.
    pub fn b_action(&self, b: &BElement) -> Mat<F> {
        let g = &*self.group;
        let total = self.total_dim();
        let off = self.offsets();
        let mut mat = Mat::zeros(total, total);
        for m in 0..self.labels.len() {
            let target = self.gset.act(m, g.inv(b.x));
            mat.set_block(off[target], off[m], &self.phi[m][b.x].scale(&F::from_root(b.u[m])));
        }
        mat
    }
}

fn restrict_coords<F: Field>(module: &MatrixModule<F>, coords: &[usize]) -> Result<MatrixModule<F>, DualPairError> {
    Ok(MatrixModule::new(
        coords.len(),
        module.actions().iter().map(|a| a.submatrix(coords, coords)).collect(),
    )?)
}

/// `c` with `lhs = c rhs`, read at the largest entry of `rhs`.
fn scalar_ratio<F: Field>(lhs: &Mat<F>, rhs: &Mat<F>, tol: f64) -> Option<F> {
    let mut best = None;
    let mut best_mag = 0.0;
    for (i, x) in rhs.data().iter().enumerate() {
        let mag = x.to_complex().norm();
        if mag > best_mag {
            best_mag = mag;
            best = Some(i);
        }
    }
    let i = best?;
    let c = lhs.data()[i].mul(&rhs.data()[i].inv()?);
    let scale = best_mag.max(1.0);
    lhs.approx_eq(&rhs.scale(&c), tol * scale).then_some(c)
}

#[derive(Debug, Clone)]
pub struct PsiMaps<F> {
    pub psi: Mat<F>,
    pub chi: Mat<F>,
    /// Module induced from the stabilizer action on the chosen label.
    pub induced: MatrixModule<F>,
    /// The orbit sum as a module over the orbit block.
    pub target: MatrixModule<F>,
}

/// Element `(x, u)` of the group `G x U(CS)` with product
/// `(y,v)(x,u) = (yx, alpha(y,x) v^x u)`, `(v^x)_M = v_{M x^-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BElement {
    pub x: usize,
    pub u: Vec<RootOfUnity>,
}

impl BElement {
    pub fn product(alpha: &SetCocycle, a: &BElement, b: &BElement) -> BElement {
        let g = alpha.group();
        let gs = alpha.gset();
        let u = (0..gs.size())
            .map(|m| {
                alpha
                    .value(m, a.x, b.x)
                    .mul(&a.u[gs.act(m, g.inv(b.x))])
                    .mul(&b.u[m])
            })
            .collect();
        BElement { x: g.mul(a.x, b.x), u }
    }

    pub fn random(alpha: &SetCocycle, rng: &mut impl Rng) -> BElement {
        let n = alpha.conductor().max(2) * 2;
        BElement {
            x: rng.gen_range(0..alpha.group().order()),
            u: (0..alpha.gset().size())
                .map(|_| RootOfUnity::new(n, rng.gen_range(0..n as i64)))
                .collect(),
        }
    }
}

/// On `trials` random triples: the product is associative and the action
/// on the sum is multiplicative, `rho(ab) = rho(a) rho(b)`.
pub fn b_group_consistent<F: Field>(family: &StableFamily<F>, alpha: &SetCocycle, trials: usize, seed: u64, tol: f64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).all(|_| {
        let a = BElement::random(alpha, &mut rng);
        let b = BElement::random(alpha, &mut rng);
        let c = BElement::random(alpha, &mut rng);
        let ab = BElement::product(alpha, &a, &b);
        let bc = BElement::product(alpha, &b, &c);
        let assoc = BElement::product(alpha, &ab, &c) == BElement::product(alpha, &a, &bc);
        let lhs = family.b_action(&BElement::product(alpha, &ab, &c));
        let rhs = family.b_action(&a).matmul(&family.b_action(&b).matmul(&family.b_action(&c)));
        assoc && lhs.approx_eq(&rhs, tol)
    })
}

/// One simple module `W` of the double and its multiplicity space.
#[derive(Debug, Clone, Serialize)]
pub struct DualPairEntry {
    pub orbit_rep: usize,
    pub simple_index: usize,
    pub simple_dim: usize,
    /// `dim Hom(W, sum)`.
    pub multiplicity: usize,
    /// The commutant acts irreducibly on the multiplicity space (vacuous when it is zero).
    pub commutant_irreducible: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub dim: usize,
    pub multiplicities: Vec<usize>,
    pub commutant_dim: usize,
    pub commutant_square_sum: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualPairReport {
    pub entries: Vec<DualPairEntry>,
    /// `inequivalent[a][b]`: the commutant modules of entries `a`, `b` admit no
    /// nonzero intertwiner (true on the diagonal by convention).
    pub inequivalent: Vec<Vec<bool>>,
    pub total_dim: usize,
    /// `sum dim W * multiplicity`.
    pub accounted_dim: usize,
    pub commutant_dim: usize,
    /// `sum multiplicity^2`.
    pub commutant_square_sum: usize,
    /// `(orbit_rep, simple_index)` of simples that do not occur.
    pub absent: Vec<(usize, usize)>,
    pub levels: Vec<LevelReport>,
}

impl DualPairReport {
    pub fn all_irreducible(&self) -> bool {
        self.entries.iter().all(|e| e.commutant_irreducible)
    }

    pub fn all_inequivalent(&self) -> bool {
        self.inequivalent.iter().all(|r| r.iter().all(|&b| b))
    }

    pub fn accounting_holds(&self) -> bool {
        self.accounted_dim == self.total_dim
    }

    pub fn commutant_matches(&self) -> bool {
        self.commutant_dim == self.commutant_square_sum
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.multiplicity).collect()
    }
}

/// Multiplicity space data of one simple inside a module.
struct Isotypic {
    multiplicity: usize,
    /// Columns `f_k(e_0)` for a basis `f_k` of `Hom(W, M)`.
    vectors: Mat<Complex64>,
}

fn isotypic<A: MonomialAlgebra + ?Sized>(alg: &A, w: &MatrixModule<Complex64>, m: &MatrixModule<Complex64>, tol: f64) -> Isotypic {
    let homs = hom_space(alg, w, m, tol);
    let cols: Vec<Vec<Complex64>> = homs.iter().map(|f| f.column(0)).collect();
    Isotypic {
        multiplicity: homs.len(),
        vectors: Mat::from_columns(m.dim(), &cols),
    }
}

/// Matrices of the commutant elements on a multiplicity space spanned by
/// the columns of `v` (an invariant subspace for the commutant).
fn commutant_on(commutant: &[Mat<Complex64>], v: &Mat<Complex64>, tol: f64) -> Option<Vec<Mat<Complex64>>> {
    let vstar = v.adjoint();
    let left = vstar.matmul(v).inverse(tol)?.matmul(&vstar);
    commutant
        .iter()
        .map(|c| {
            let cv = c.matmul(v);
            let r = left.matmul(&cv);
            v.matmul(&r).approx_eq(&cv, tol.sqrt()).then_some(r)
        })
        .collect()
}

/// Decomposes the direct sum of the family under the double and its
/// commutant: multiplicities of every simple, irreducibility of the
/// commutant on each multiplicity space, pairwise inequivalence, dimension
/// accounting and `dim commutant = sum multiplicity^2`, globally and per level.
pub fn dual_pair_decompose<F: Field>(
    family: &StableFamily<F>,
    d: &GeneralizedDouble,
    tol: f64,
    seed: u64,
) -> Result<DualPairReport, DualPairError> {
    let module = family.double_action(d, tol)?.to_complex();
    let simples = classify_double_simples(d, tol, seed)?;
    let commutant = hom_space(d, &module, &module, tol);

    let mut entries = Vec::new();
    let mut reps: Vec<Option<Vec<Mat<Complex64>>>> = Vec::new();
    let mut absent = Vec::new();
    let mut simple_list = Vec::new();
    for orbit in &simples.orbits {
        for (idx, w) in orbit.modules.iter().enumerate() {
            // extend the block module by zero to the whole double
            let full = extend_block_module(d, orbit.rep, w);
            simple_list.push(full.clone());
            let iso = isotypic(d, &full, &module, tol);
            let rep = if iso.multiplicity > 0 {
                Some(commutant_on(&commutant, &iso.vectors, tol).ok_or(DualPairError::Check("multiplicity space is not commutant-stable"))?)
            } else {
                absent.push((orbit.rep, idx));
                None
            };
            let irreducible = match &rep {
                Some(r) => intertwiner_space(iso.multiplicity, iso.multiplicity, r, r, tol).len() == 1,
                None => true,
            };
            entries.push(DualPairEntry {
                orbit_rep: orbit.rep,
                simple_index: idx,
                simple_dim: w.dim(),
                multiplicity: iso.multiplicity,
                commutant_irreducible: irreducible,
            });
            reps.push(rep);
        }
    }
    let k = entries.len();
    let mut inequivalent = vec![vec![true; k]; k];
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            if let (Some(ra), Some(rb)) = (&reps[a], &reps[b]) {
                let ma = entries[a].multiplicity;
                let mb = entries[b].multiplicity;
                inequivalent[a][b] = intertwiner_space(ma, mb, ra, rb, tol).is_empty();
            }
        }
    }

    let mut levels = Vec::new();
    for level in 0..family.level_count() {
        let coords = family.level_coordinates(level);
        let sub = restrict_coords(&module, &coords)?;
        let multiplicities: Vec<usize> = simple_list.iter().map(|w| hom_space(d, w, &sub, tol).len()).collect();
        let commutant_dim = hom_space(d, &sub, &sub, tol).len();
        levels.push(LevelReport {
            level,
            dim: coords.len(),
            commutant_square_sum: multiplicities.iter().map(|m| m * m).sum(),
            multiplicities,
            commutant_dim,
        });
    }

    Ok(DualPairReport {
        accounted_dim: entries.iter().map(|e| e.simple_dim * e.multiplicity).sum(),
        commutant_square_sum: entries.iter().map(|e| e.multiplicity * e.multiplicity).sum(),
        commutant_dim: commutant.len(),
        total_dim: module.dim(),
        entries,
        inequivalent,
        absent,
        levels,
    })
}

/// A module over one orbit block, with the rest of the double acting by zero.
fn extend_block_module(d: &GeneralizedDouble, rep: usize, w: &MatrixModule<Complex64>) -> MatrixModule<Complex64> {
    let view = d.block_view(rep);
    let mut action = vec![Mat::zeros(w.dim(), w.dim()); d.dim()];
    for (local, &global) in view.indices().iter().enumerate() {
        action[global] = w.action(local).clone();
    }
    MatrixModule::new(w.dim(), action).expect("square blocks")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::Coboundary;
    use crate::double::trivial_action_double;
    use crate::scalars::CycScalar;
    use crate::twisted_algebra::TwistedGroupAlgebra;

    const TOL: f64 = 1e-9;

    fn z(k: i64) -> CycScalar {
        CycScalar::from_integer(k)
    }

    /// `X^{a1} Z^{a2}` on C^2, element index `a1 + 2 a2`.
    pub(crate) fn pauli() -> StableFamily<CycScalar> {
        let x = Mat::from_rows(vec![vec![z(0), z(1)], vec![z(1), z(0)]]);
        let zz = Mat::from_rows(vec![vec![z(1), z(0)], vec![z(0), z(-1)]]);
        let phi = vec![Mat::identity(2), x.clone(), zz.clone(), x.matmul(&zz)];
        StableFamily::projective(Arc::new(FiniteGroup::klein_four()), vec![2], phi, 0.0).unwrap()
    }

    fn s3_regular() -> StableFamily<CycScalar> {
        let s3 = TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::symmetric(3)))).unwrap();
        let reg = s3.regular_representation::<CycScalar>();
        StableFamily::projective(Arc::clone(s3.group()), vec![6], reg.actions().to_vec(), 0.0).unwrap()
    }

    #[test]
    fn pauli_cocycle_is_nontrivial() {
        let alpha = pauli().extract_cocycle(None, 0.0).unwrap();
        assert!(alpha.is_valid());
        let v4 = TwoCocycle::klein_four_nontrivial();
        let beta = v4.with_conductor(alpha.conductor()).unwrap();
        assert_eq!(alpha, beta);
        let triv = TwoCocycle::trivial(Arc::clone(alpha.group()));
        assert_eq!(crate::cocycles::solve_coboundary(&triv, &alpha.promote(4), 4).unwrap(), None);
    }

    #[test]
    fn honest_representation_has_trivial_cocycle() {
        let alpha = s3_regular().extract_cocycle(None, 0.0).unwrap();
        assert!(alpha.exps().iter().all(|&k| k == 0));
    }

    #[test]
    fn rescaling_changes_cocycle_by_coboundary() {
        let fam = pauli();
        let lam: Vec<RootOfUnity> = vec![RootOfUnity::one(), RootOfUnity::new(4, 1), RootOfUnity::new(8, 3), RootOfUnity::new(2, 1)];
        let scaled = fam.rescale(std::slice::from_ref(&lam));
        let alpha = fam.extract_cocycle(Some(8), 0.0).unwrap();
        let beta = scaled.extract_cocycle(Some(8), 0.0).unwrap();
        let cob = Coboundary::new(alpha.group(), 8, lam.iter().map(|r| r.exponent_in(8).unwrap()).collect()).unwrap();
        assert_eq!(alpha.apply_coboundary(&cob).unwrap(), beta);
    }

    #[test]
    fn not_projective_is_reported() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = Mat::from_rows(vec![vec![z(1), z(0)], vec![z(0), z(2)]]);
        let fam = StableFamily::projective(g, vec![2], vec![Mat::identity(2), m], 0.0).unwrap();
        assert!(matches!(fam.extract_cocycle(None, 0.0), Err(DualPairError::NotProjective { .. })));
    }

    #[test]
    fn pauli_dual_pair() {
        let fam = pauli();
        let alpha = fam.extract_set_cocycle(None, 0.0).unwrap();
        let d = GeneralizedDouble::new(alpha).unwrap();
        let module = fam.double_action(&d, 0.0).unwrap();
        module.verify_exhaustive(&d, 0.0).unwrap();
        assert_eq!(fam.commutant(&d, None, 0.0).unwrap().len(), 1);
        let report = dual_pair_decompose(&fam, &d, TOL, 3).unwrap();
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].simple_dim, 2);
        assert_eq!(report.multiplicities(), vec![1]);
        assert!(report.all_irreducible() && report.all_inequivalent() && report.accounting_holds());
    }

    #[test]
    fn s3_regular_dual_pair() {
        let fam = s3_regular();
        let d = GeneralizedDouble::new(fam.extract_set_cocycle(None, 0.0).unwrap()).unwrap();
        assert_eq!(fam.commutant(&d, None, 0.0).unwrap().len(), 6);
        let report = dual_pair_decompose(&fam, &d, TOL, 11).unwrap();
        assert_eq!(report.multiplicities(), vec![1, 1, 2]);
        assert!(report.all_irreducible() && report.all_inequivalent());
        assert_eq!(report.commutant_dim, 6);
        assert!(report.commutant_matches() && report.accounting_holds());
    }

    #[test]
    fn free_orbit_of_lines() {
        // Z2 swapping two 1-dim spaces
        let g = Arc::new(FiniteGroup::cyclic(2));
        let gset = Arc::new(RightGSet::new(&g, 2, vec![0, 1, 1, 0]).unwrap());
        let one = || Mat::identity(1);
        let fam = StableFamily::<CycScalar>::new(
            Arc::clone(&g),
            gset,
            vec!["a".into(), "b".into()],
            vec![vec![1], vec![1]],
            vec![vec![one(), one()], vec![one(), one()]],
            0.0,
        )
        .unwrap();
        let d = GeneralizedDouble::new(fam.extract_set_cocycle(None, 0.0).unwrap()).unwrap();
        assert!(d.cocycle().component(0).unwrap().exps().iter().all(|&k| k == 0));
        let maps = fam.psi_isomorphism(&d, 0, 0.0).unwrap();
        assert_eq!(maps.psi.rows(), 2);
        let report = dual_pair_decompose(&fam, &d, TOL, 5).unwrap();
        assert_eq!(report.entries.len(), 1);
        assert_eq!((report.entries[0].simple_dim, report.entries[0].multiplicity), (2, 1));
        let module = fam.double_action(&d, 0.0).unwrap();
        assert!(fam.orbit_sums_are_submodules(&module, 0.0));
    }

    #[test]
    fn singleton_psi_is_square() {
        let fam = pauli();
        let d = GeneralizedDouble::new(fam.extract_set_cocycle(None, 0.0).unwrap()).unwrap();
        let maps = fam.psi_isomorphism(&d, 0, 0.0).unwrap();
        assert_eq!(maps.psi, Mat::identity(2));
    }

    #[test]
    fn induced_family_reproduces_cocycle() {
        let alpha = TwoCocycle::klein_four_nontrivial();
        let d = trivial_action_double(&alpha, 2).unwrap();
        let (stab, _) = d.stabilizer_subalgebra_iso(0).unwrap();
        let reg = stab.regular_representation::<CycScalar>();
        let fam = StableFamily::from_induced(&d, &[reg.clone(), reg], 0.0).unwrap();
        let extracted = fam.extract_set_cocycle(Some(2), 0.0).unwrap();
        assert_eq!(&extracted, d.cocycle());
        assert!(b_group_consistent(&fam, &extracted, 25, 9, 0.0));
    }
}

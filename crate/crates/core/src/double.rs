//! The generalized twisted double `A_alpha(G,S)`: basis `d_{g,s} = g ⊗ e(s)`
//! with `d_{g,s} d_{h,t} = [s·h = t] alpha_t(g,h) d_{gh,t}`.
//!
//! Basis index of `d_{g,s}` is `s * |G| + g`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cocycles::{CocycleError, SetCoboundary, SetCocycle, TwoCocycle};
use crate::group::{FiniteGroup, RightGSet};
use crate::linalg::rank_of;
use crate::monomial::{self, MonomialAlgebra};
use crate::scalars::{CycScalar, RootOfUnity};
use crate::twisted_algebra::{fresh_id, AlgebraError, TwistedGroupAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoubleError {
    #[error("elements belong to different doubles")]
    Mismatch,
    #[error("coefficient vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("target cocycle is not the source twisted by the given coboundary")]
    CoboundaryMismatch,
    #[error("map fails to be multiplicative at basis pair ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("block structure check failed: {0}")]
    BlockCheck(&'static str),
    #[error("center computation produced a non-central or dependent set")]
    CenterCheck,
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone)]
pub struct GeneralizedDouble {
    id: u64,
    cocycle: Arc<SetCocycle>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleElement {
    double_id: u64,
    coeffs: Vec<CycScalar>,
}

impl DoubleElement {
    pub fn coeffs(&self) -> &[CycScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycScalar::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }
}

impl GeneralizedDouble {
    pub fn new(cocycle: SetCocycle) -> Result<Self, DoubleError> {
        cocycle.validate().map_err(CocycleError::Invalid)?;
        Ok(Self::new_unchecked(cocycle))
    }

    /// Skips cocycle validation; used to probe what an invalid table breaks.
    pub fn new_unchecked(cocycle: SetCocycle) -> Self {
        GeneralizedDouble {
            id: fresh_id(),
            cocycle: Arc::new(cocycle),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.cocycle.group()
    }

    pub fn gset(&self) -> &Arc<RightGSet> {
        self.cocycle.gset()
    }

    pub fn cocycle(&self) -> &SetCocycle {
        &self.cocycle
    }

    #[inline]
    pub fn index(&self, g: usize, s: usize) -> usize {
        s * self.group().order() + g
    }

    /// `(g, s)` for a basis index.
    #[inline]
    pub fn pair(&self, i: usize) -> (usize, usize) {
        let n = self.group().order();
        (i % n, i / n)
    }

    fn wrap(&self, coeffs: Vec<CycScalar>) -> DoubleElement {
        DoubleElement {
            double_id: self.id,
            coeffs,
        }
    }

    fn check(&self, a: &DoubleElement) -> Result<(), DoubleError> {
        if a.double_id != self.id {
            return Err(DoubleError::Mismatch);
        }
        Ok(())
    }

    pub fn element(&self, coeffs: Vec<CycScalar>) -> Result<DoubleElement, DoubleError> {
        if coeffs.len() != self.dim() {
            return Err(DoubleError::Length {
                got: coeffs.len(),
                expected: self.dim(),
            });
        }
        Ok(self.wrap(coeffs))
    }

    /// `d_{g,s}`.
    pub fn basis(&self, g: usize, s: usize) -> DoubleElement {
        self.wrap(monomial::basis_vector(self, self.index(g, s)))
    }

    /// `sum_t d_{1,t}`.
    pub fn identity(&self) -> DoubleElement {
        self.wrap(monomial::identity_vector(self))
    }

    pub fn multiply(&self, a: &DoubleElement, b: &DoubleElement) -> Result<DoubleElement, DoubleError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(monomial::multiply(self, &a.coeffs, &b.coeffs)))
    }

    /// `(i, j, k)` of the first non-associative basis triple.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        monomial::associativity_violation(self)
    }

    pub fn identity_violation(&self) -> Option<usize> {
        monomial::identity_violation(self)
    }

    /// The diagonal map `d_{g,s} -> lambda_s(g)^-1 d_{g,s}` from this double to
    /// the double of the twisted cocycle, verified multiplicative on all basis pairs.
    pub fn cohomologous_iso(&self, target: &GeneralizedDouble, lambda: &SetCoboundary) -> Result<DiagonalMap, DoubleError> {
        let twisted = self.cocycle.apply_coboundary(lambda)?;
        if twisted != *target.cocycle {
            return Err(DoubleError::CoboundaryMismatch);
        }
        let factors: Vec<RootOfUnity> = (0..self.dim())
            .map(|i| {
                let (g, s) = self.pair(i);
                lambda.value(s, g).inv()
            })
            .collect();
        let map = DiagonalMap { factors };
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                // f(b_i b_j) against f(b_i) f(b_j)
                let lhs = self.basis_product(i, j).map(|(c, k)| (c.mul(&map.factors[k]), k));
                let rhs = target
                    .basis_product(i, j)
                    .map(|(c, k)| (c.mul(&map.factors[i]).mul(&map.factors[j]), k));
                if lhs != rhs {
                    return Err(DoubleError::NotMultiplicative(i, j));
                }
            }
        }
        Ok(map)
    }

    /// Basis indices of `S(s)`: `d_{a,s}` with `a` in the stabilizer.
    pub fn stabilizer_part(&self, s: usize) -> Vec<usize> {
        self.group()
            .elements()
            .filter(|&a| self.gset().act(s, a) == s)
            .map(|a| self.index(a, s))
            .collect()
    }

    /// Basis indices of `N(s)`: `d_{a,s}` with `a` outside the stabilizer.
    pub fn nilpotent_part(&self, s: usize) -> Vec<usize> {
        self.group()
            .elements()
            .filter(|&a| self.gset().act(s, a) != s)
            .map(|a| self.index(a, s))
            .collect()
    }

    /// Basis indices of `D(s)`: all `d_{a,s}`.
    pub fn column(&self, s: usize) -> Vec<usize> {
        self.group().elements().map(|a| self.index(a, s)).collect()
    }

    /// Basis indices of `D(O_s)`.
    pub fn orbit_part(&self, s: usize) -> Vec<usize> {
        let data = self.gset().orbit_stabilizer(self.group(), s);
        let mut orbit = data.orbit;
        orbit.sort_unstable();
        orbit.iter().flat_map(|&t| self.column(t)).collect()
    }

    /// Orbit blocks with representatives the smallest point of each orbit,
    /// after verifying every structural property of the blocks.
    pub fn decompose_blocks(&self) -> Result<BlockDecomposition, DoubleError> {
        let dec = self.blocks();
        let checks = self.block_checks(&dec);
        if let Some(name) = checks.first_failure() {
            return Err(DoubleError::BlockCheck(name));
        }
        Ok(dec)
    }

    /// Orbit blocks without verification.
    pub fn blocks(&self) -> BlockDecomposition {
        let blocks = self
            .gset()
            .orbits(self.group())
            .into_iter()
            .map(|data| {
                let indices = self.orbit_part(data.point);
                OrbitBlock {
                    rep: data.point,
                    orbit: data.orbit,
                    stabilizer: data.stabilizer,
                    transversal: data.transversal.reps,
                    indices,
                }
            })
            .collect();
        BlockDecomposition { blocks }
    }

    fn products_vanish(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().all(|&i| b.iter().all(|&j| self.basis_product(i, j).is_none()))
    }

    fn products_land_in(&self, a: &[usize], b: &[usize], target: &[usize]) -> bool {
        let mut inside = vec![false; self.dim()];
        for &t in target {
            inside[t] = true;
        }
        a.iter()
            .all(|&i| b.iter().all(|&j| self.basis_product(i, j).is_none_or(|(_, k)| inside[k])))
    }

    /// Exhaustive exact checks of the block and subspace relations.
    pub fn block_checks(&self, dec: &BlockDecomposition) -> BlockChecks {
        let all: Vec<usize> = (0..self.dim()).collect();
        let mut seen = vec![0usize; self.dim()];
        for b in &dec.blocks {
            for &i in &b.indices {
                seen[i] += 1;
            }
        }
        let mut c = BlockChecks {
            partition: seen.iter().all(|&k| k == 1),
            ..BlockChecks::default()
        };
        c.two_sided_ideals = dec
            .blocks
            .iter()
            .all(|b| self.products_land_in(&all, &b.indices, &b.indices) && self.products_land_in(&b.indices, &all, &b.indices));
        c.cross_orbit_zero = dec.blocks.iter().enumerate().all(|(x, a)| {
            dec.blocks
                .iter()
                .enumerate()
                .all(|(y, b)| x == y || self.products_vanish(&a.indices, &b.indices))
        });
        c.block_identity = dec.blocks.iter().all(|b| {
            let mut one = vec![CycScalar::zero(); self.dim()];
            for &t in &b.orbit {
                one[self.index(self.group().identity(), t)] = CycScalar::one();
            }
            b.indices.iter().all(|&i| {
                let x = monomial::basis_vector(self, i);
                monomial::multiply(self, &one, &x) == x && monomial::multiply(self, &x, &one) == x
            })
        });
        c.stabilizer_closed = true;
        c.column_kills_nilpotent = true;
        c.nilpotent_square_zero = true;
        c.nilpotent_ideal = true;
        for s in 0..self.gset().size() {
            let (st, nil, col) = (self.stabilizer_part(s), self.nilpotent_part(s), self.column(s));
            c.stabilizer_closed &= self.products_land_in(&st, &st, &st);
            c.column_kills_nilpotent &= self.products_vanish(&col, &nil);
            c.nilpotent_square_zero &= self.products_vanish(&nil, &nil);
            c.nilpotent_ideal &= self.products_land_in(&nil, &col, &nil) && self.products_land_in(&col, &nil, &nil);
        }
        c
    }

    /// `S(s)` as a twisted group algebra on the re-indexed stabilizer, with
    /// the embedding `local index -> group element`. The map
    /// `d_{a,s} -> ā` is checked multiplicative on all pairs.
    pub fn stabilizer_subalgebra_iso(&self, s: usize) -> Result<(TwistedGroupAlgebra, Vec<usize>), DoubleError> {
        let (res, emb) = self.cocycle.restrict(s)?;
        let alg = TwistedGroupAlgebra::new(res)?;
        for (x, &a) in emb.iter().enumerate() {
            for (y, &b) in emb.iter().enumerate() {
                let ours = self.basis_product(self.index(a, s), self.index(b, s));
                let theirs = alg.basis_product(x, y).map(|(c, z)| (c, self.index(emb[z], s)));
                if ours != theirs {
                    return Err(DoubleError::NotMultiplicative(self.index(a, s), self.index(b, s)));
                }
            }
        }
        Ok((alg, emb))
    }

    /// The orbit block containing `s` as an algebra in its own right.
    pub fn block_view(&self, s: usize) -> BlockView {
        let data = self.gset().orbit_stabilizer(self.group(), s);
        let mut orbit = data.orbit;
        orbit.sort_unstable();
        let indices = self.orbit_part(s);
        let mut local = vec![None; self.dim()];
        for (l, &i) in indices.iter().enumerate() {
            local[i] = Some(l);
        }
        BlockView {
            double: self.clone(),
            orbit,
            indices,
            local,
        }
    }

    /// Center basis of the whole double, orbit by orbit.
    ///
    /// Each restricted component is first brought to normal form by a set
    /// coboundary supported on stabilizers. If the transported cocycle passes
    /// the class-compatibility condition, the class sums
    /// `Z(L) = sum_{a in L} sum_i g_i^-1 a g_i ⊗ e(s g_i)` are used and
    /// mapped back; otherwise (or if they fail the exact centrality and
    /// independence check) the block center is solved from the commutation
    /// equations.
    pub fn center_basis(&self) -> Result<DoubleCenter, DoubleError> {
        let (normal_cocycle, lambda) = self.normalize_components()?;
        let normal = GeneralizedDouble::new(normal_cocycle)?;
        let mut elements = Vec::new();
        let mut orbits = Vec::new();
        for block in self.blocks().blocks {
            let formula = if normal.compatibility_holds(&block) {
                normal
                    .class_sum_center(&block)?
                    .map(|zs| {
                        zs.into_iter()
                            .map(|z| {
                                // pull back along d_{g,s} -> lambda_s(g)^-1 d_{g,s}
                                z.into_iter()
                                    .enumerate()
                                    .map(|(i, c)| {
                                        let (g, s) = self.pair(i);
                                        c.mul(&lambda.value(s, g).to_scalar())
                                    })
                                    .collect::<Vec<_>>()
                            })
                            .collect::<Vec<_>>()
                    })
                    .filter(|zs| self.is_block_center_basis(zs, &block))
            } else {
                None
            };
            let (zs, path) = match formula {
                Some(zs) => (zs, CenterPath::Formula),
                None => (monomial::center_within(self, &block.indices), CenterPath::Kernel),
            };
            orbits.push(OrbitCenter {
                rep: block.rep,
                dim: zs.len(),
                path,
            });
            elements.extend(zs.into_iter().map(|z| self.wrap(z)));
        }
        Ok(DoubleCenter { elements, orbits })
    }

    /// Exact center of the whole algebra from the commutation equations.
    pub fn center_by_kernel(&self) -> Vec<DoubleElement> {
        monomial::center_by_kernel(self).into_iter().map(|v| self.wrap(v)).collect()
    }

    /// Cohomologous set cocycle whose every stabilizer restriction is normal,
    /// with the set coboundary producing it.
    pub fn normalize_components(&self) -> Result<(SetCocycle, SetCoboundary), DoubleError> {
        let g = self.group();
        let m = self.gset().size();
        let n = self.cocycle.conductor();
        let mut values = vec![vec![0u32; g.order()]; m];
        for (s, row) in values.iter_mut().enumerate() {
            let (res, emb) = self.cocycle.restrict(s)?;
            let (_, lam) = res.normalize();
            let lam = lam_at(&lam, n);
            for (x, &a) in emb.iter().enumerate() {
                row[a] = lam[x];
            }
        }
        let lambda = SetCoboundary::new(g, self.gset(), n, values)?;
        Ok((self.cocycle.apply_coboundary(&lambda)?, lambda))
    }

    /// Exhaustive check of
    /// `alpha_{s g_i}(g_j^-1 h g_i, g_i^-1 a g_i) = alpha_{s g_i}(g_j^-1 h a h^-1 g_j, g_j^-1 h g_i)`
    /// over transversal indices `i, j`, `h` in the stabilizer and regular `a`.
    pub fn compatibility_holds(&self, block: &OrbitBlock) -> bool {
        let g = self.group();
        let s = block.rep;
        let Ok((res, emb)) = self.cocycle.restrict(s) else {
            return false;
        };
        let regular: Vec<usize> = (0..emb.len()).filter(|&x| res.is_alpha_regular(x)).map(|x| emb[x]).collect();
        for &gi in &block.transversal {
            let sgi = self.gset().act(s, gi);
            let gii = g.inv(gi);
            for &gj in &block.transversal {
                let gji = g.inv(gj);
                for &h in &block.stabilizer {
                    let hinv = g.inv(h);
                    let x1 = g.mul(g.mul(gji, h), gi);
                    for &a in &regular {
                        let y1 = g.mul(g.mul(gii, a), gi);
                        let hah = g.mul(g.mul(h, a), hinv);
                        let x2 = g.mul(g.mul(gji, hah), gj);
                        if self.cocycle.exp(sgi, x1, y1) != self.cocycle.exp(sgi, x2, x1) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Class sums `Z(L)` for the regular classes of the stabilizer of the
    /// block representative; `None` if the stabilizer cocycle is unusable.
    fn class_sum_center(&self, block: &OrbitBlock) -> Result<Option<Vec<Vec<CycScalar>>>, DoubleError> {
        let g = self.group();
        let s = block.rep;
        let (res, emb) = self.cocycle.restrict(s)?;
        let Ok(classes) = res.alpha_regular_classes() else {
            return Ok(None);
        };
        let mut out = Vec::new();
        for class in classes {
            let mut z = vec![CycScalar::zero(); self.dim()];
            for &x in &class.members {
                let a = emb[x];
                for &gi in &block.transversal {
                    let conj = g.mul(g.mul(g.inv(gi), a), gi);
                    let idx = self.index(conj, self.gset().act(s, gi));
                    z[idx] = z[idx].add(&CycScalar::one());
                }
            }
            out.push(z);
        }
        Ok(Some(out))
    }

    fn is_block_center_basis(&self, zs: &[Vec<CycScalar>], block: &OrbitBlock) -> bool {
        let r = self
            .cocycle
            .restrict(block.rep)
            .ok()
            .and_then(|(res, _)| res.alpha_regular_classes().ok())
            .map(|c| c.len());
        Some(zs.len()) == r && zs.iter().all(|z| monomial::is_central(self, z)) && rank_of(zs, 0.0) == zs.len()
    }
}

fn lam_at(lam: &crate::cocycles::Coboundary, n: u32) -> Vec<u32> {
    (0..lam.exps().len())
        .map(|x| lam.value(x).exponent_in(n).expect("coboundary of a mu_N cocycle lies in mu_N"))
        .collect()
}

impl MonomialAlgebra for GeneralizedDouble {
    fn dim(&self) -> usize {
        self.group().order() * self.gset().size()
    }

    fn conductor(&self) -> u32 {
        self.cocycle.conductor()
    }

    fn basis_product(&self, i: usize, j: usize) -> Option<(RootOfUnity, usize)> {
        let (g, s) = self.pair(i);
        let (h, t) = self.pair(j);
        if self.gset().act(s, h) != t {
            return None;
        }
        Some((self.cocycle.value(t, g, h), self.index(self.group().mul(g, h), t)))
    }

    fn identity_support(&self) -> Vec<usize> {
        (0..self.gset().size()).map(|t| self.index(self.group().identity(), t)).collect()
    }

    /// `d_{1,t}` for every point and `sum_t d_{g,t}` for generators `g` of `G`.
    fn generators(&self) -> Vec<Vec<usize>> {
        let e = self.group().identity();
        let m = self.gset().size();
        let mut gens: Vec<Vec<usize>> = (0..m).map(|t| vec![self.index(e, t)]).collect();
        for g in self.group().generators() {
            gens.push((0..m).map(|t| self.index(g, t)).collect());
        }
        gens
    }
}

/// Diagonal linear map on the basis, `b_i -> factors[i] b_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalMap {
    pub factors: Vec<RootOfUnity>,
}

impl DiagonalMap {
    pub fn apply(&self, v: &[CycScalar]) -> Vec<CycScalar> {
        v.iter().zip(&self.factors).map(|(x, f)| x.mul(&f.to_scalar())).collect()
    }

    pub fn inverse(&self) -> DiagonalMap {
        DiagonalMap {
            factors: self.factors.iter().map(RootOfUnity::inv).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(RootOfUnity::is_one)
    }
}

/// One orbit block `D(O_s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitBlock {
    pub rep: usize,
    /// `orbit[i] = rep · transversal[i]`.
    pub orbit: Vec<usize>,
    pub stabilizer: Vec<usize>,
    /// Right coset representatives of the stabilizer, identity first.
    pub transversal: Vec<usize>,
    /// Basis indices spanning the block, sorted.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<OrbitBlock>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BlockChecks {
    pub partition: bool,
    pub two_sided_ideals: bool,
    pub cross_orbit_zero: bool,
    pub block_identity: bool,
    pub stabilizer_closed: bool,
    pub column_kills_nilpotent: bool,
    pub nilpotent_square_zero: bool,
    pub nilpotent_ideal: bool,
}

impl BlockChecks {
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.partition, "blocks do not partition the basis"),
            (self.two_sided_ideals, "a block is not a two-sided ideal"),
            (self.cross_orbit_zero, "products across blocks do not vanish"),
            (self.block_identity, "orbit identity fails on its block"),
            (self.stabilizer_closed, "stabilizer part not closed"),
            (self.column_kills_nilpotent, "D(s)·N(s) is nonzero"),
            (self.nilpotent_square_zero, "N(s)^2 is nonzero"),
            (self.nilpotent_ideal, "N(s) is not an ideal of D(s)"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, name)| name)
    }

    pub fn all(&self) -> bool {
        self.first_failure().is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterPath {
    Formula,
    Kernel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCenter {
    pub rep: usize,
    pub dim: usize,
    pub path: CenterPath,
}

#[derive(Debug, Clone)]
pub struct DoubleCenter {
    pub elements: Vec<DoubleElement>,
    pub orbits: Vec<OrbitCenter>,
}

impl DoubleCenter {
    /// `Formula` only if every orbit used the class-sum formula.
    pub fn path(&self) -> CenterPath {
        if self.orbits.iter().all(|o| o.path == CenterPath::Formula) {
            CenterPath::Formula
        } else {
            CenterPath::Kernel
        }
    }
}

/// The ideal `D(O_s)` with its own local basis numbering.
#[derive(Debug, Clone)]
pub struct BlockView {
    double: GeneralizedDouble,
    orbit: Vec<usize>,
    indices: Vec<usize>,
    local: Vec<Option<usize>>,
}

impl BlockView {
    pub fn double(&self) -> &GeneralizedDouble {
        &self.double
    }

    /// Sorted orbit points.
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    /// Global basis index of each local index.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Local index of `d_{g,t}`, if `t` lies in the orbit.
    pub fn local_index(&self, g: usize, t: usize) -> Option<usize> {
        self.local[self.double.index(g, t)]
    }
}

impl MonomialAlgebra for BlockView {
    fn dim(&self) -> usize {
        self.indices.len()
    }

    fn conductor(&self) -> u32 {
        self.double.conductor()
    }

    fn basis_product(&self, i: usize, j: usize) -> Option<(RootOfUnity, usize)> {
        self.double
            .basis_product(self.indices[i], self.indices[j])
            .map(|(c, k)| (c, self.local[k].expect("blocks are ideals")))
    }

    fn identity_support(&self) -> Vec<usize> {
        let e = self.double.group().identity();
        self.orbit.iter().map(|&t| self.local_index(e, t).expect("orbit point")).collect()
    }

    fn generators(&self) -> Vec<Vec<usize>> {
        let e = self.double.group().identity();
        let mut gens: Vec<Vec<usize>> = self.orbit.iter().map(|&t| vec![self.local_index(e, t).expect("orbit point")]).collect();
        for g in self.double.group().generators() {
            gens.push(self.orbit.iter().map(|&t| self.local_index(g, t).expect("orbit point")).collect());
        }
        gens
    }
}

/// The double of `alpha` on a G-set with trivial action: one copy of the
/// twisted group algebra per point.
pub fn trivial_action_double(alpha: &TwoCocycle, points: usize) -> Result<GeneralizedDouble, DoubleError> {
    let gset = Arc::new(RightGSet::trivial(alpha.group(), points));
    GeneralizedDouble::new(SetCocycle::constant(gset, alpha)?)
}

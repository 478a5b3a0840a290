//! Root-of-unity valued 2-cocycles on a finite group, and their
//! `U(CS)`-valued analogue on a right G-set.
//!
//! Values are stored as exponents `k` meaning `zeta_N^k` for the cocycle's
//! conductor `N`, so every comparison here is exact integer arithmetic.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::group::{ConjugacyClass, FiniteGroup, GroupError, RightGSet};
use crate::scalars::{lcm, RootOfUnity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("cocycle table has wrong shape")]
    Shape,
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("coboundary must satisfy lambda(1) = 1")]
    CoboundaryNotNormalized,
    #[error("cocycles live on different groups or G-sets")]
    Mismatch,
    #[error("value does not lie in mu_{0}")]
    NotInConductor(u32),
    #[error("alpha-regularity not constant on the class of {0}")]
    RegularityNotClassInvariant(usize),
    #[error("invalid cocycle: {0}")]
    Invalid(Violation),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// First failure found by exhaustive validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `alpha(x,1)` or `alpha(1,x)` is not 1.
    Normalization { x: usize },
    /// `alpha(x,y) alpha(xy,z) != alpha(y,z) alpha(x,yz)`.
    CocycleLaw { x: usize, y: usize, z: usize },
    SetNormalization { s: usize, h: usize },
    /// `alpha_s(hk,l) alpha_{s l^-1}(h,k) != alpha_s(h,kl) alpha_s(k,l)`.
    SetCocycleLaw { s: usize, h: usize, k: usize, l: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Normalization { x } => write!(f, "normalization fails at x={x}"),
            Violation::CocycleLaw { x, y, z } => write!(f, "cocycle law fails at ({x},{y},{z})"),
            Violation::SetNormalization { s, h } => write!(f, "normalization fails at s={s}, h={h}"),
            Violation::SetCocycleLaw { s, h, k, l } => {
                write!(f, "set cocycle law fails at s={s}, ({h},{k},{l})")
            }
        }
    }
}

fn promote_exps(table: &[u32], from: u32, to: u32) -> Vec<u32> {
    let step = to / from;
    table.iter().map(|&k| k * step).collect()
}

fn demote_exp(k: u32, from: u32, to: u32) -> Result<u32, CocycleError> {
    RootOfUnity::new(from, k as i64)
        .exponent_in(to)
        .ok_or(CocycleError::NotInConductor(to))
}

/// A scalar 2-cocycle `alpha: G x G -> mu_N`.
#[derive(Debug, Clone)]
pub struct TwoCocycle {
    group: Arc<FiniteGroup>,
    conductor: u32,
    exps: Vec<u32>,
}

impl PartialEq for TwoCocycle {
    /// Value equality, independent of the conductor used to store it.
    fn eq(&self, other: &Self) -> bool {
        if self.group != other.group {
            return false;
        }
        let l = lcm(self.conductor, other.conductor);
        promote_exps(&self.exps, self.conductor, l) == promote_exps(&other.exps, other.conductor, l)
    }
}

impl TwoCocycle {
    /// Wraps an exponent table `exps[x * |G| + y]`; values are reduced mod N
    /// but not validated (see [`TwoCocycle::validate`]).
    pub fn new(group: Arc<FiniteGroup>, conductor: u32, exps: Vec<u32>) -> Result<Self, CocycleError> {
        if conductor == 0 {
            return Err(CocycleError::ZeroConductor);
        }
        let n = group.order();
        if exps.len() != n * n {
            return Err(CocycleError::Shape);
        }
        let exps = exps.into_iter().map(|k| k % conductor).collect();
        Ok(TwoCocycle {
            group,
            conductor,
            exps,
        })
    }

    /// Like [`TwoCocycle::new`] but rejects invalid tables.
    pub fn new_valid(group: Arc<FiniteGroup>, conductor: u32, exps: Vec<u32>) -> Result<Self, CocycleError> {
        let c = Self::new(group, conductor, exps)?;
        c.validate().map_err(CocycleError::Invalid)?;
        Ok(c)
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        TwoCocycle {
            group,
            conductor: 1,
            exps: vec![0; n * n],
        }
    }

    /// Bilinear cocycle on `Z/m1 x ... x Z/mr` (element index in mixed radix,
    /// first factor fastest): `alpha(a, b) = zeta_N^(sum c_ij a_j b_i)` with
    /// digits `0 <= a_j < m_j`. The cocycle law holds when `N` divides both
    /// `c_ij m_i` and `c_ij m_j`; other inputs are accepted but fail `validate`.
    ///
    /// For `Z2 x Z2` with `c = [[0, 1], [0, 0]]` and `N = 2` this is
    /// `alpha((a1,a2),(b1,b2)) = (-1)^(a2 b1)`.
    pub fn bilinear(moduli: &[usize], coefficients: &[Vec<u32>], conductor: u32) -> Result<Self, CocycleError> {
        let mut group = FiniteGroup::trivial();
        for &m in moduli {
            group = FiniteGroup::direct_product(&group, &FiniteGroup::cyclic(m));
        }
        let n = group.order();
        let digits = |mut x: usize| -> Vec<u32> {
            moduli
                .iter()
                .map(|&m| {
                    let d = (x % m) as u32;
                    x /= m;
                    d
                })
                .collect()
        };
        let mut exps = vec![0u32; n * n];
        for x in 0..n {
            let a = digits(x);
            for y in 0..n {
                let b = digits(y);
                let mut e: u64 = 0;
                for (i, row) in coefficients.iter().enumerate() {
                    for (j, &c) in row.iter().enumerate() {
                        e += c as u64 * a[j] as u64 * b[i] as u64;
                    }
                }
                exps[x * n + y] = (e % conductor as u64) as u32;
            }
        }
        Self::new(Arc::new(group), conductor, exps)
    }

    /// The standard nontrivial class on the Klein four-group,
    /// `alpha((a1,a2),(b1,b2)) = (-1)^(a2 b1)`.
    pub fn klein_four_nontrivial() -> Self {
        Self::bilinear(&[2, 2], &[vec![0, 1], vec![0, 0]], 2).expect("valid table")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `alpha(x, y)` as a power of `zeta_N`.
    #[inline]
    pub fn exp(&self, x: usize, y: usize) -> u32 {
        self.exps[x * self.group.order() + y]
    }

    pub fn value(&self, x: usize, y: usize) -> RootOfUnity {
        RootOfUnity::new(self.conductor, self.exp(x, y) as i64)
    }

    /// Same values stored with conductor `m` (a multiple of the current one).
    pub fn promote(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor));
        TwoCocycle {
            group: Arc::clone(&self.group),
            conductor: m,
            exps: promote_exps(&self.exps, self.conductor, m),
        }
    }

    /// Re-expresses the table at conductor `m`, failing if some value is outside `mu_m`.
    pub fn with_conductor(&self, m: u32) -> Result<Self, CocycleError> {
        if m == 0 {
            return Err(CocycleError::ZeroConductor);
        }
        let exps = self
            .exps
            .iter()
            .map(|&k| demote_exp(k, self.conductor, m))
            .collect::<Result<_, _>>()?;
        Ok(TwoCocycle {
            group: Arc::clone(&self.group),
            conductor: m,
            exps,
        })
    }

    /// Exhaustive check of normalization and the cocycle law.
    pub fn validate(&self) -> Result<(), Violation> {
        let g = &*self.group;
        let e = g.identity();
        let n = self.conductor;
        for x in g.elements() {
            if self.exp(x, e) != 0 || self.exp(e, x) != 0 {
                return Err(Violation::Normalization { x });
            }
        }
        for x in g.elements() {
            for y in g.elements() {
                let xy = g.mul(x, y);
                let lhs0 = self.exp(x, y);
                for z in g.elements() {
                    let lhs = (lhs0 + self.exp(xy, z)) % n;
                    let rhs = (self.exp(y, z) + self.exp(x, g.mul(y, z))) % n;
                    if lhs != rhs {
                        return Err(Violation::CocycleLaw { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// `beta(x,y) = alpha(x,y) lambda(x) lambda(y) lambda(xy)^-1`.
    pub fn apply_coboundary(&self, lambda: &Coboundary) -> Result<Self, CocycleError> {
        if lambda.values.len() != self.group.order() {
            return Err(CocycleError::Mismatch);
        }
        let n = lcm(self.conductor, lambda.conductor);
        let a = self.promote(n);
        let l = promote_exps(&lambda.values, lambda.conductor, n);
        let g = &*self.group;
        let mut exps = vec![0; g.order() * g.order()];
        for x in g.elements() {
            for y in g.elements() {
                let v = a.exp(x, y) as u64 + l[x] as u64 + l[y] as u64 + (n - l[g.mul(x, y)]) as u64;
                exps[x * g.order() + y] = (v % n as u64) as u32;
            }
        }
        Ok(TwoCocycle {
            group: Arc::clone(&self.group),
            conductor: n,
            exps,
        })
    }

    /// `alpha(g,x) = alpha(x,g)` for all `x` in the centralizer of `g`.
    pub fn is_alpha_regular(&self, g: usize) -> bool {
        self.group
            .centralizer(g)
            .into_iter()
            .all(|x| self.exp(g, x) == self.exp(x, g))
    }

    /// Classes whose members are alpha-regular; errors if some class is
    /// only partly regular, which no valid cocycle allows.
    pub fn alpha_regular_classes(&self) -> Result<Vec<ConjugacyClass>, CocycleError> {
        let mut out = Vec::new();
        for class in self.group.conjugacy_classes() {
            let rep = self.is_alpha_regular(class.representative);
            if let Some(&bad) = class.members.iter().find(|&&m| self.is_alpha_regular(m) != rep) {
                return Err(CocycleError::RegularityNotClassInvariant(bad));
            }
            if rep {
                out.push(class);
            }
        }
        Ok(out)
    }

    /// `alpha(x,g) = alpha(x g x^-1, x)` for all x and all alpha-regular g.
    pub fn is_normal(&self) -> bool {
        self.normality_violation().is_none()
    }

    /// First pair `(x, g)` breaking normality.
    pub fn normality_violation(&self) -> Option<(usize, usize)> {
        let g = &*self.group;
        for r in g.elements().filter(|&r| self.is_alpha_regular(r)) {
            for x in g.elements() {
                if self.exp(x, r) != self.exp(g.conjugate(x, r), x) {
                    return Some((x, r));
                }
            }
        }
        None
    }

    /// Cohomologous normal cocycle together with the coboundary producing it.
    ///
    /// For each regular class with smallest-index representative `g_i` and
    /// greedy left transversal `T_i` of its centralizer, the rescaled basis
    /// element of `t g_i t^-1` is `t̄ ḡ_i t̄^-1`; non-regular elements keep
    /// their basis element. `lambda(g)` is the resulting scalar.
    pub fn normalize(&self) -> (TwoCocycle, Coboundary) {
        let g = &*self.group;
        let n = self.conductor;
        let mut lambda = vec![0u32; g.order()];
        let classes = self
            .alpha_regular_classes()
            .expect("valid cocycles have class-invariant regularity");
        for class in classes {
            let gi = class.representative;
            let tr = g
                .left_transversal(&g.centralizer(gi))
                .expect("centralizer is a subgroup");
            for &t in &tr.reps {
                let tinv = g.inv(t);
                let tg = g.mul(t, gi);
                // t̄ ḡ_i t̄^-1 = alpha(t,g_i) alpha(t^-1,t)^-1 alpha(t g_i, t^-1) (t g_i t^-1)‾
                let v = self.exp(t, gi) as u64 + (n - self.exp(tinv, t)) as u64 + self.exp(tg, tinv) as u64;
                lambda[g.mul(tg, tinv)] = (v % n as u64) as u32;
            }
        }
        let cob = Coboundary {
            conductor: n,
            values: lambda,
        };
        let normal = self.apply_coboundary(&cob).expect("matching group");
        (normal, cob)
    }

    /// Restriction to a subgroup given by its sorted element list.
    pub fn restrict_to(&self, elements: &[usize]) -> Result<TwoCocycle, CocycleError> {
        let (sub, emb) = self.group.subgroup(elements)?;
        let m = emb.len();
        let mut exps = vec![0; m * m];
        for (i, &a) in emb.iter().enumerate() {
            for (j, &b) in emb.iter().enumerate() {
                exps[i * m + j] = self.exp(a, b);
            }
        }
        TwoCocycle::new(Arc::new(sub), self.conductor, exps)
    }
}

/// A map `lambda: G -> mu_N` with `lambda(1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coboundary {
    conductor: u32,
    values: Vec<u32>,
}

impl Coboundary {
    pub fn new(group: &FiniteGroup, conductor: u32, values: Vec<u32>) -> Result<Self, CocycleError> {
        if conductor == 0 {
            return Err(CocycleError::ZeroConductor);
        }
        if values.len() != group.order() {
            return Err(CocycleError::Shape);
        }
        let values: Vec<u32> = values.into_iter().map(|k| k % conductor).collect();
        if values[group.identity()] != 0 {
            return Err(CocycleError::CoboundaryNotNormalized);
        }
        Ok(Coboundary { conductor, values })
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Coboundary {
            conductor: 1,
            values: vec![0; group.order()],
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn exps(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, g: usize) -> RootOfUnity {
        RootOfUnity::new(self.conductor, self.values[g] as i64)
    }

    pub fn inverse(&self) -> Self {
        Coboundary {
            conductor: self.conductor,
            values: self.values.iter().map(|&k| (self.conductor - k) % self.conductor).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&k| k == 0)
    }
}

/// Decides whether `beta = alpha · δλ` for some `lambda: G -> mu_N`, and
/// returns one such `lambda`.
///
/// In exponents this is the linear system
/// `l(x) + l(y) - l(xy) = b(x,y) - a(x,y)` over `Z/N`, solved by a
/// Howell-form elimination so that back substitution never misses a
/// solution. This decides `mu_N`-cohomology; raise `N` for `C*`-cohomology.
pub fn solve_coboundary(
    alpha: &TwoCocycle,
    beta: &TwoCocycle,
    conductor: u32,
) -> Result<Option<Coboundary>, CocycleError> {
    if alpha.group != beta.group {
        return Err(CocycleError::Mismatch);
    }
    let a = alpha.with_conductor(conductor)?;
    let b = beta.with_conductor(conductor)?;
    let g = &*alpha.group;
    let e = g.identity();
    let unknowns: Vec<usize> = g.elements().filter(|&x| x != e).collect();
    let col = |x: usize| unknowns.iter().position(|&u| u == x);
    let n = conductor as u64;
    let mut sys = ModSystem::new(unknowns.len(), n);
    for x in g.elements() {
        for y in g.elements() {
            let mut row = vec![0u64; unknowns.len() + 1];
            for (z, sign) in [(x, 1u64), (y, 1), (g.mul(x, y), n - 1)] {
                if let Some(c) = col(z) {
                    row[c] = (row[c] + sign) % n;
                }
            }
            row[unknowns.len()] = (b.exp(x, y) as u64 + n - a.exp(x, y) as u64) % n;
            if !sys.insert(row) {
                return Ok(None);
            }
        }
    }
    let Some(sol) = sys.solve() else { return Ok(None) };
    let mut values = vec![0u32; g.order()];
    for (i, &u) in unknowns.iter().enumerate() {
        values[u] = sol[i] as u32;
    }
    Ok(Some(Coboundary { conductor, values }))
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Linear system over `Z/N` kept in Howell form: one pivot row per column,
/// and every multiple of a pivot row that kills its leading entry is
/// reduced into later pivots.
struct ModSystem {
    ncols: usize,
    n: u64,
    pivots: Vec<Option<Vec<u64>>>,
}

impl ModSystem {
    fn new(ncols: usize, n: u64) -> Self {
        ModSystem {
            ncols,
            n,
            pivots: vec![None; ncols],
        }
    }

    fn scale(&self, row: &[u64], f: u64) -> Vec<u64> {
        row.iter().map(|&v| (v as u128 * f as u128 % self.n as u128) as u64).collect()
    }

    fn combine(&self, a: &[u64], fa: i128, b: &[u64], fb: i128) -> Vec<u64> {
        let n = self.n as i128;
        a.iter()
            .zip(b)
            .map(|(&x, &y)| ((fa * x as i128 + fb * y as i128).rem_euclid(n)) as u64)
            .collect()
    }

    /// Adds a row (last entry is the right-hand side); false if the system
    /// became inconsistent.
    fn insert(&mut self, row: Vec<u64>) -> bool {
        let mut queue = vec![row];
        while let Some(mut r) = queue.pop() {
            loop {
                let Some(j) = (0..self.ncols).find(|&j| r[j] != 0) else {
                    if r[self.ncols] != 0 {
                        return false;
                    }
                    break;
                };
                match self.pivots[j].take() {
                    None => {
                        let g = gcd(r[j], self.n);
                        let ann = self.scale(&r, self.n / g);
                        self.pivots[j] = Some(r);
                        queue.push(ann);
                        break;
                    }
                    Some(p) => {
                        let (g, s, t) = egcd(p[j] as i128, r[j] as i128);
                        let new_p = self.combine(&p, s, &r, t);
                        let new_r = self.combine(&p, r[j] as i128 / g, &r, -(p[j] as i128 / g));
                        let gp = gcd(new_p[j], self.n);
                        queue.push(self.scale(&new_p, self.n / gp));
                        self.pivots[j] = Some(new_p);
                        r = new_r;
                    }
                }
            }
        }
        true
    }

    fn solve(&self) -> Option<Vec<u64>> {
        let n = self.n;
        let mut x = vec![0u64; self.ncols];
        for j in (0..self.ncols).rev() {
            let Some(p) = &self.pivots[j] else { continue };
            let mut rest: u64 = 0;
            for k in j + 1..self.ncols {
                rest = (rest + (p[k] as u128 * x[k] as u128 % n as u128) as u64) % n;
            }
            let rhs = (p[self.ncols] + n - rest) % n;
            let g = gcd(p[j], n);
            if !rhs.is_multiple_of(g) {
                return None;
            }
            let m = n / g;
            let (_, inv, _) = egcd((p[j] / g) as i128, m as i128);
            x[j] = (((rhs / g) as i128 * inv).rem_euclid(m as i128)) as u64;
        }
        Some(x)
    }
}

/// A `U(CS)`-valued 2-cocycle: one table `alpha_s` per point of the G-set.
#[derive(Debug, Clone)]
pub struct SetCocycle {
    group: Arc<FiniteGroup>,
    gset: Arc<RightGSet>,
    conductor: u32,
    exps: Vec<Vec<u32>>,
}

impl PartialEq for SetCocycle {
    fn eq(&self, other: &Self) -> bool {
        if self.group != other.group || self.gset != other.gset {
            return false;
        }
        let l = lcm(self.conductor, other.conductor);
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| promote_exps(a, self.conductor, l) == promote_exps(b, other.conductor, l))
    }
}

/// `lambda_s: G -> mu_N` per point, each with `lambda_s(1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoboundary {
    conductor: u32,
    values: Vec<Vec<u32>>,
}

impl SetCoboundary {
    pub fn new(group: &FiniteGroup, gset: &RightGSet, conductor: u32, values: Vec<Vec<u32>>) -> Result<Self, CocycleError> {
        if conductor == 0 {
            return Err(CocycleError::ZeroConductor);
        }
        if values.len() != gset.size() || values.iter().any(|v| v.len() != group.order()) {
            return Err(CocycleError::Shape);
        }
        let values: Vec<Vec<u32>> = values
            .into_iter()
            .map(|v| v.into_iter().map(|k| k % conductor).collect())
            .collect();
        if values.iter().any(|v| v[group.identity()] != 0) {
            return Err(CocycleError::CoboundaryNotNormalized);
        }
        Ok(SetCoboundary { conductor, values })
    }

    pub fn identity(group: &FiniteGroup, gset: &RightGSet) -> Self {
        SetCoboundary {
            conductor: 1,
            values: vec![vec![0; group.order()]; gset.size()],
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Exponent of `lambda_s(g)`.
    pub fn exp(&self, s: usize, g: usize) -> u32 {
        self.values[s][g]
    }

    pub fn value(&self, s: usize, g: usize) -> RootOfUnity {
        RootOfUnity::new(self.conductor, self.values[s][g] as i64)
    }
}

impl SetCocycle {
    pub fn new(
        group: Arc<FiniteGroup>,
        gset: Arc<RightGSet>,
        conductor: u32,
        exps: Vec<Vec<u32>>,
    ) -> Result<Self, CocycleError> {
        if conductor == 0 {
            return Err(CocycleError::ZeroConductor);
        }
        let n = group.order();
        if gset.group_order() != n || exps.len() != gset.size() || exps.iter().any(|t| t.len() != n * n) {
            return Err(CocycleError::Shape);
        }
        let exps = exps
            .into_iter()
            .map(|t| t.into_iter().map(|k| k % conductor).collect())
            .collect();
        Ok(SetCocycle {
            group,
            gset,
            conductor,
            exps,
        })
    }

    pub fn new_valid(
        group: Arc<FiniteGroup>,
        gset: Arc<RightGSet>,
        conductor: u32,
        exps: Vec<Vec<u32>>,
    ) -> Result<Self, CocycleError> {
        let c = Self::new(group, gset, conductor, exps)?;
        c.validate().map_err(CocycleError::Invalid)?;
        Ok(c)
    }

    pub fn trivial(group: Arc<FiniteGroup>, gset: Arc<RightGSet>) -> Self {
        let n = group.order();
        let m = gset.size();
        SetCocycle {
            group,
            gset,
            conductor: 1,
            exps: vec![vec![0; n * n]; m],
        }
    }

    /// Every component equal to the same scalar cocycle; valid for any action.
    pub fn constant(gset: Arc<RightGSet>, alpha: &TwoCocycle) -> Result<Self, CocycleError> {
        Self::new(
            Arc::clone(alpha.group()),
            Arc::clone(&gset),
            alpha.conductor(),
            vec![alpha.exps().to_vec(); gset.size()],
        )
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn gset(&self) -> &Arc<RightGSet> {
        &self.gset
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Exponent of `alpha_s(x, y)`.
    #[inline]
    pub fn exp(&self, s: usize, x: usize, y: usize) -> u32 {
        self.exps[s][x * self.group.order() + y]
    }

    pub fn value(&self, s: usize, x: usize, y: usize) -> RootOfUnity {
        RootOfUnity::new(self.conductor, self.exp(s, x, y) as i64)
    }

    pub fn component_exps(&self, s: usize) -> &[u32] {
        &self.exps[s]
    }

    /// Copy with one exponent replaced; used to probe sensitivity of checks.
    pub fn with_entry(&self, s: usize, x: usize, y: usize, k: u32) -> Self {
        let mut c = self.clone();
        let n = self.group.order();
        c.exps[s][x * n + y] = k % self.conductor.max(1);
        c
    }

    pub fn promote(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor));
        SetCocycle {
            group: Arc::clone(&self.group),
            gset: Arc::clone(&self.gset),
            conductor: m,
            exps: self.exps.iter().map(|t| promote_exps(t, self.conductor, m)).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let g = &*self.group;
        let e = g.identity();
        let n = self.conductor;
        for s in 0..self.gset.size() {
            for h in g.elements() {
                if self.exp(s, h, e) != 0 || self.exp(s, e, h) != 0 {
                    return Err(Violation::SetNormalization { s, h });
                }
            }
        }
        for s in 0..self.gset.size() {
            for l in g.elements() {
                let sl = self.gset.act(s, g.inv(l));
                for h in g.elements() {
                    for k in g.elements() {
                        let lhs = (self.exp(s, g.mul(h, k), l) + self.exp(sl, h, k)) % n;
                        let rhs = (self.exp(s, h, g.mul(k, l)) + self.exp(s, k, l)) % n;
                        if lhs != rhs {
                            return Err(Violation::SetCocycleLaw { s, h, k, l });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// `beta_s(x,y) = alpha_s(x,y) lambda_{s y^-1}(x) lambda_s(xy)^-1 lambda_s(y)`.
    pub fn apply_coboundary(&self, lambda: &SetCoboundary) -> Result<Self, CocycleError> {
        if lambda.values.len() != self.gset.size() {
            return Err(CocycleError::Mismatch);
        }
        let n = lcm(self.conductor, lambda.conductor);
        let a = self.promote(n);
        let lv: Vec<Vec<u32>> = lambda
            .values
            .iter()
            .map(|v| promote_exps(v, lambda.conductor, n))
            .collect();
        let g = &*self.group;
        let order = g.order();
        let mut exps = vec![vec![0u32; order * order]; self.gset.size()];
        for (s, table) in exps.iter_mut().enumerate() {
            for x in g.elements() {
                for y in g.elements() {
                    let sy = self.gset.act(s, g.inv(y));
                    let v = a.exp(s, x, y) as u64
                        + lv[sy][x] as u64
                        + (n - lv[s][g.mul(x, y)]) as u64
                        + lv[s][y] as u64;
                    table[x * order + y] = (v % n as u64) as u32;
                }
            }
        }
        Ok(SetCocycle {
            group: Arc::clone(&self.group),
            gset: Arc::clone(&self.gset),
            conductor: n,
            exps,
        })
    }

    /// The component `alpha_s` restricted to the stabilizer `G_s`, as a
    /// cocycle on the re-indexed stabilizer subgroup.
    pub fn restrict(&self, s: usize) -> Result<(TwoCocycle, Vec<usize>), CocycleError> {
        let data = self.gset.orbit_stabilizer(&self.group, s);
        let full = TwoCocycle::new(Arc::clone(&self.group), self.conductor, self.exps[s].clone())?;
        let res = full.restrict_to(&data.stabilizer)?;
        Ok((res, data.stabilizer))
    }

    /// Component `alpha_s` as a scalar table on all of `G` (not a cocycle in general).
    pub fn component(&self, s: usize) -> Result<TwoCocycle, CocycleError> {
        TwoCocycle::new(Arc::clone(&self.group), self.conductor, self.exps[s].clone())
    }
}

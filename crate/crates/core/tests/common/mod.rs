//! Random instances for integration tests: groups of order at most 24,
//! G-sets of size at most 8, valid cocycles and stable families.
#![allow(dead_code)]

use std::sync::Arc;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use twisted_double::cocycles::{Coboundary, SetCoboundary, SetCocycle, TwoCocycle};
use twisted_double::double::GeneralizedDouble;
use twisted_double::dual_pair::StableFamily;
use twisted_double::group::{FiniteGroup, RightGSet};
use twisted_double::linalg::Mat;
use twisted_double::rep_decomp::exact_regular;
use twisted_double::scalars::{lcm, CycScalar, RootOfUnity};

/// How random cocycles are produced for a group.
#[derive(Clone)]
pub enum CocycleSource {
    /// `Z/m1 x ... x Z/mr`, bilinear cocycles.
    Abelian(Vec<usize>),
    /// `A x H` with `A` abelian; bilinear cocycles on `A` pulled back along the projection.
    Inflated(Vec<usize>, FiniteGroup),
    /// Coboundaries only.
    Plain,
}

#[derive(Clone)]
pub struct GroupCase {
    pub name: &'static str,
    pub group: Arc<FiniteGroup>,
    pub source: CocycleSource,
}

fn abelian(moduli: &[usize]) -> FiniteGroup {
    moduli
        .iter()
        .fold(FiniteGroup::trivial(), |g, &m| FiniteGroup::direct_product(&g, &FiniteGroup::cyclic(m)))
}

/// Quaternion group, `±1, ±i, ±j, ±k` at `unit + 4 * sign`.
pub fn quaternion() -> FiniteGroup {
    // unit products (sign, unit) for 1, i, j, k
    let t = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut mul = vec![0; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (s, u) = t[x % 4][y % 4];
            mul[x * 8 + y] = u + 4 * ((s + x / 4 + y / 4) % 2);
        }
    }
    FiniteGroup::from_table(8, mul).unwrap()
}

pub fn alternating4() -> FiniteGroup {
    FiniteGroup::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
}

pub fn group_cases() -> Vec<GroupCase> {
    let ab = |name, m: &[usize]| GroupCase {
        name,
        group: Arc::new(abelian(m)),
        source: CocycleSource::Abelian(m.to_vec()),
    };
    let inflated = |name, m: &[usize], h: FiniteGroup| GroupCase {
        name,
        group: Arc::new(FiniteGroup::direct_product(&abelian(m), &h)),
        source: CocycleSource::Inflated(m.to_vec(), h),
    };
    let plain = |name, g: FiniteGroup| GroupCase {
        name,
        group: Arc::new(g),
        source: CocycleSource::Plain,
    };
    vec![
        ab("Z2", &[2]),
        ab("Z3", &[3]),
        ab("Z4", &[4]),
        ab("Z6", &[6]),
        ab("V4", &[2, 2]),
        ab("Z2xZ4", &[2, 4]),
        ab("Z3xZ3", &[3, 3]),
        ab("Z2^3", &[2, 2, 2]),
        ab("Z4xZ4", &[4, 4]),
        ab("Z2xZ6", &[2, 6]),
        ab("Z2^2xZ6", &[2, 2, 6]),
        inflated("V4xZ3", &[2, 2], FiniteGroup::cyclic(3)),
        inflated("V4xS3", &[2, 2], FiniteGroup::symmetric(3)),
        inflated("Z3xZ3xZ2", &[3, 3], FiniteGroup::cyclic(2)),
        plain("S3", FiniteGroup::symmetric(3)),
        plain("D4", FiniteGroup::dihedral(4)),
        plain("Q8", quaternion()),
        plain("D5", FiniteGroup::dihedral(5)),
        plain("A4", alternating4()),
        plain("D6", FiniteGroup::dihedral(6)),
        plain("S4", FiniteGroup::symmetric(4)),
    ]
}

/// Cases with order at most `max_order`.
pub fn small_cases(max_order: usize) -> Vec<GroupCase> {
    group_cases().into_iter().filter(|c| c.group.order() <= max_order).collect()
}

/// Bilinear cocycle on `Z/m1 x ...` with random coefficients `c_ij`
/// (`i < j`) taken in units that make the cocycle law hold.
fn random_bilinear(moduli: &[usize], rng: &mut impl Rng) -> TwoCocycle {
    let n = moduli.iter().fold(1, |a, &m| lcm(a, m as u32));
    let r = moduli.len();
    let mut c = vec![vec![0u32; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let unit = n / gcd(moduli[i] as u32, moduli[j] as u32);
            c[i][j] = unit * rng.gen_range(0..n);
        }
    }
    let a = TwoCocycle::bilinear(moduli, &c, n.max(1)).unwrap();
    assert!(a.is_valid(), "bilinear coefficients chosen to satisfy the cocycle law");
    a
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Random coboundary in `mu_n` with `lambda(1) = 1`.
pub fn random_coboundary(g: &FiniteGroup, n: u32, rng: &mut impl Rng) -> Coboundary {
    let values = g
        .elements()
        .map(|x| if x == g.identity() { 0 } else { rng.gen_range(0..n) })
        .collect();
    Coboundary::new(g, n, values).unwrap()
}

/// A valid cocycle: bilinear or inflated bilinear where available, times a
/// random coboundary in `mu_2` or `mu_4` (or none).
pub fn random_cocycle(case: &GroupCase, rng: &mut impl Rng) -> TwoCocycle {
    let g = &case.group;
    let base = match &case.source {
        CocycleSource::Abelian(m) => {
            let a = random_bilinear(m, rng);
            TwoCocycle::new(Arc::clone(g), a.conductor(), a.exps().to_vec()).unwrap()
        }
        CocycleSource::Inflated(m, _) => {
            let a = random_bilinear(m, rng);
            let na = a.group().order();
            let n = g.order();
            let exps = (0..n * n).map(|i| a.exp((i / n) % na, (i % n) % na)).collect();
            TwoCocycle::new(Arc::clone(g), a.conductor(), exps).unwrap()
        }
        CocycleSource::Plain => TwoCocycle::trivial(Arc::clone(g)),
    };
    let cob_n = *[1u32, 2, 4].choose(rng).unwrap();
    if cob_n == 1 {
        return base;
    }
    let lam = random_coboundary(g, cob_n, rng);
    base.apply_coboundary(&lam).unwrap()
}

/// Disjoint union, points of `b` after those of `a`.
pub fn disjoint_union(g: &FiniteGroup, a: &RightGSet, b: &RightGSet) -> RightGSet {
    let mut action = a.table().to_vec();
    action.extend(b.table().iter().map(|&t| t + a.size()));
    RightGSet::new(g, a.size() + b.size(), action).unwrap()
}

/// Right cosets of the cyclic subgroup generated by a random element, if at most `max` of them.
fn random_cosets(g: &FiniteGroup, max: usize, rng: &mut impl Rng) -> Option<RightGSet> {
    let x = rng.gen_range(0..g.order());
    let h = g.generated_subgroup(&[x]);
    (g.order() / h.len() <= max).then(|| RightGSet::cosets(g, &h).unwrap())
}

/// A G-set with at most `max` points (and at least one).
pub fn random_gset(g: &FiniteGroup, max: usize, rng: &mut impl Rng) -> RightGSet {
    for _ in 0..20 {
        let pick = rng.gen_range(0..4);
        let s = match pick {
            0 => Some(RightGSet::trivial(g, rng.gen_range(1..=max.min(3)))),
            1 => (g.order() <= max).then(|| RightGSet::regular(g)),
            2 => random_cosets(g, max, rng),
            _ => {
                let a = random_cosets(g, max, rng);
                let b = random_cosets(g, max, rng);
                match (a, b) {
                    (Some(a), Some(b)) if a.size() + b.size() <= max => Some(disjoint_union(g, &a, &b)),
                    _ => None,
                }
            }
        };
        if let Some(s) = s {
            return s;
        }
    }
    RightGSet::trivial(g, 1)
}

/// A valid set cocycle: one random cocycle per orbit, constant on the orbit,
/// then a random set coboundary.
pub fn random_set_cocycle(case: &GroupCase, gset: &Arc<RightGSet>, rng: &mut impl Rng) -> SetCocycle {
    let g = &case.group;
    let orbits = gset.orbits(g);
    let per_orbit: Vec<TwoCocycle> = orbits.iter().map(|_| random_cocycle(case, rng)).collect();
    let lam_n = *[1u32, 2, 3, 4].choose(rng).unwrap();
    let n = per_orbit.iter().fold(lam_n, |acc, a| lcm(acc, a.conductor()));
    let mut exps = vec![Vec::new(); gset.size()];
    for (o, a) in orbits.iter().zip(&per_orbit) {
        let promoted = a.promote(n);
        for &t in &o.orbit {
            exps[t] = promoted.exps().to_vec();
        }
    }
    let sc = SetCocycle::new(Arc::clone(g), Arc::clone(gset), n, exps).unwrap();
    let lam = random_set_coboundary(g, gset, lam_n, rng);
    let out = sc.apply_coboundary(&lam).unwrap();
    assert!(out.is_valid());
    out
}

pub fn random_set_coboundary(g: &FiniteGroup, gset: &RightGSet, n: u32, rng: &mut impl Rng) -> SetCoboundary {
    let values = (0..gset.size())
        .map(|_| {
            g.elements()
                .map(|x| if x == g.identity() { 0 } else { rng.gen_range(0..n) })
                .collect()
        })
        .collect();
    SetCoboundary::new(g, gset, n, values).unwrap()
}

/// Random group (order at most `max_order`), G-set (at most `max_points`)
/// and valid set cocycle.
pub fn random_double(max_order: usize, max_points: usize, rng: &mut impl Rng) -> (GroupCase, GeneralizedDouble) {
    let cases = small_cases(max_order);
    let case = cases.choose(rng).unwrap().clone();
    let gset = Arc::new(random_gset(&case.group, max_points, rng));
    let sc = random_set_cocycle(&case, &gset, rng);
    let d = GeneralizedDouble::new(sc).unwrap();
    (case, d)
}

/// Exact unimodular matrix: a product of `2n` random shears `I + e_ij` or
/// `I - e_ij`. Entries of it and its inverse stay small, unlike `L U`.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> Mat<CycScalar> {
    let mut p = Mat::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = CycScalar::from_integer(if rng.gen_bool(0.5) { 1 } else { -1 });
        // row_i += c * row_j
        for col in 0..n {
            let v = p.get(i, col).add(&c.mul(p.get(j, col)));
            p.set(i, col, v);
        }
    }
    p
}

/// Random complex matrix with entries in the unit square, shifted towards
/// the identity so it is well conditioned.
pub fn random_complex_invertible(n: usize, rng: &mut impl Rng) -> Mat<Complex64> {
    Mat::from_fn(n, n, |r, c| {
        let z = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        if r == c {
            z + Complex64::new(2.0, 0.0)
        } else {
            z
        }
    })
}

/// Exact stable family from the regular modules of all stabilizer
/// algebras, in a random basis per label and rescaled by a random unit
/// function. Returns the family and the conductor that holds its cocycle.
pub fn random_family(d: &GeneralizedDouble, rng: &mut impl Rng) -> (StableFamily<CycScalar>, u32) {
    let modules: Vec<_> = d
        .blocks()
        .blocks
        .iter()
        .map(|b| exact_regular(&d.stabilizer_subalgebra_iso(b.rep).unwrap().0))
        .collect();
    let fam = StableFamily::from_induced(d, &modules, 0.0).unwrap();
    let p: Vec<Mat<CycScalar>> = (0..d.gset().size()).map(|n| random_unimodular(fam.label_dim(n), rng)).collect();
    let fam = fam.change_basis(&p, 0.0).unwrap();
    let lam_n = *[1u32, 2, 4].choose(rng).unwrap();
    let lam = random_units(d.group(), d.gset().size(), lam_n, rng);
    (fam.rescale(&lam), lcm(d.cocycle().conductor(), lam_n))
}

/// `lambda_N(x)` in `mu_n` with `lambda_N(1) = 1`.
pub fn random_units(g: &FiniteGroup, labels: usize, n: u32, rng: &mut impl Rng) -> Vec<Vec<RootOfUnity>> {
    (0..labels)
        .map(|_| {
            g.elements()
                .map(|x| if x == g.identity() { RootOfUnity::one() } else { RootOfUnity::new(n, rng.gen_range(0..n as i64)) })
                .collect()
        })
        .collect()
}

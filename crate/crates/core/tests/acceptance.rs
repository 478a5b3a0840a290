//! Acceptance suite. Runs every criterion, prints one `[PASS]` or `[FAIL]`
//! line per criterion and exits non-zero if any failed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twisted_double::cocycles::{SetCoboundary, SetCocycle, TwoCocycle};
use twisted_double::double::{trivial_action_double, GeneralizedDouble};
use twisted_double::dual_pair::{dual_pair_decompose, StableFamily};
use twisted_double::group::{FiniteGroup, RightGSet};
use twisted_double::linalg::{same_span, Mat};
use twisted_double::monomial::{self, MonomialAlgebra};
use twisted_double::oracle::RawAlgebra;
use twisted_double::rep_decomp::{
    classify_double_simples, classify_simples, endomorphism_dim, exact_regular, induce, induce_restrict_witness,
    is_isomorphism, restrict_by_idempotent, restrict_induce_witness, MatrixModule,
};
use twisted_double::scalars::{lcm, CycScalar};
use twisted_double::twisted_algebra::TwistedGroupAlgebra;

use common::*;

const TOL: f64 = 1e-9;
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ (criterion << 32))
}

/// Random double with `|G| <= max_order`, at most 8 points and `|G||S| <= max_dim`.
fn bounded_double(max_order: usize, max_dim: usize, min_order: usize, rng: &mut ChaCha8Rng) -> (GroupCase, GeneralizedDouble) {
    let cases: Vec<GroupCase> = small_cases(max_order).into_iter().filter(|c| c.group.order() >= min_order).collect();
    let case = cases.choose(rng).unwrap().clone();
    let max_points = (max_dim / case.group.order()).clamp(1, 8);
    let gset = Arc::new(random_gset(&case.group, max_points, rng));
    let sc = random_set_cocycle(&case, &gset, rng);
    let d = GeneralizedDouble::new(sc).unwrap();
    (case, d)
}

fn raw_double(d: &GeneralizedDouble) -> RawAlgebra {
    let sc = d.cocycle();
    let exps: Vec<Vec<u32>> = (0..sc.gset().size()).map(|s| sc.component_exps(s).to_vec()).collect();
    RawAlgebra::double(d.group().table(), d.gset().table(), sc.conductor(), &exps)
}

fn swap_double() -> GeneralizedDouble {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let gset = Arc::new(RightGSet::new(&g, 2, vec![0, 1, 1, 0]).unwrap());
    GeneralizedDouble::new(SetCocycle::trivial(g, gset)).unwrap()
}

fn s3_two_points() -> GeneralizedDouble {
    trivial_action_double(&TwoCocycle::trivial(Arc::new(FiniteGroup::symmetric(3))), 2).unwrap()
}

/// The fifty doubles of criterion 1, also reused by criterion 5.
fn criterion1_doubles() -> Vec<(GroupCase, GeneralizedDouble)> {
    let mut r = rng(1);
    (0..50).map(|_| bounded_double(24, 96, 3, &mut r)).collect()
}

fn criterion_1() -> Outcome {
    let mut r = rng(101);
    let doubles = criterion1_doubles();
    for (i, (case, d)) in doubles.iter().enumerate() {
        let sc = d.cocycle();
        ensure!(sc.is_valid(), "instance {i} ({}) generated invalid", case.name);
        ensure!(d.associativity_violation().is_none(), "instance {i} ({}): valid cocycle but not associative", case.name);
        ensure!(raw_double(d).is_associative(1e-12), "instance {i} ({}): oracle finds non-associativity", case.name);

        // corrupt alpha_s(x,y) with x, y != 1; the law instance (x, y, l) with
        // l not in {1, y} contains that entry exactly once, so it must fail
        let g = d.group();
        let n = lcm(sc.conductor(), 2);
        let promoted = sc.promote(n);
        let non_id: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
        let s = r.gen_range(0..d.gset().size());
        let x = *non_id.choose(&mut r).unwrap();
        let y = *non_id.choose(&mut r).unwrap();
        let old = promoted.exp(s, x, y);
        let k = (old + r.gen_range(1..n)) % n;
        let bad = promoted.with_entry(s, x, y, k);
        ensure!(!bad.is_valid(), "instance {i}: corrupted cocycle still satisfies the law");
        let bd = GeneralizedDouble::new_unchecked(bad);
        ensure!(bd.associativity_violation().is_some(), "instance {i} ({}): corrupted entry ({s},{x},{y}) left the double associative", case.name);
        ensure!(!raw_double(&bd).is_associative(1e-12), "instance {i}: oracle still associative after corruption");
    }
    let max_dim = doubles.iter().map(|(_, d)| d.dim()).max().unwrap();
    Ok(format!("50 valid set cocycles associative, 50 corruptions non-associative (largest double dim {max_dim})"))
}

/// Every twisted group algebra of criteria 2 and 3.
fn algebra_cases() -> Vec<(String, TwistedGroupAlgebra)> {
    let mut r = rng(2);
    let mut out = vec![
        (
            "S3 trivial".to_string(),
            TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::symmetric(3)))).unwrap(),
        ),
        ("V4 nontrivial".to_string(), TwistedGroupAlgebra::new(TwoCocycle::klein_four_nontrivial()).unwrap()),
        (
            "trivial group".to_string(),
            TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::trivial()))).unwrap(),
        ),
    ];
    for case in group_cases() {
        let alpha = random_cocycle(&case, &mut r);
        out.push((case.name.to_string(), TwistedGroupAlgebra::new(alpha).unwrap()));
    }
    out
}

fn criterion_2() -> Outcome {
    let cases = algebra_cases();
    for (name, alg) in &cases {
        let center = alg.center_basis().map_err(|e| format!("{name}: {e}"))?;
        let classes = alg.regular_class_count().map_err(|e| format!("{name}: {e}"))?;
        ensure!(center.len() == classes, "{name}: center basis has {} elements, {classes} regular classes", center.len());
        let a: Vec<Vec<CycScalar>> = center.iter().map(|z| z.coeffs().to_vec()).collect();
        let b: Vec<Vec<CycScalar>> = alg.center_by_kernel().iter().map(|z| z.coeffs().to_vec()).collect();
        ensure!(same_span(&a, &b, 0.0), "{name}: class-sum span differs from kernel center");
        let raw = RawAlgebra::twisted_group_algebra(alg.group().table(), alg.cocycle().conductor(), alg.cocycle().exps());
        ensure!(raw.center_dim(TOL) == classes, "{name}: oracle center dim {} != {classes}", raw.center_dim(TOL));
    }
    let dim_of = |n: &str| cases.iter().find(|(c, _)| c == n).map(|(_, a)| a.center_basis().unwrap().len());
    ensure!(dim_of("S3 trivial") == Some(3), "S3 trivial center dim {:?}", dim_of("S3 trivial"));
    ensure!(dim_of("V4 nontrivial") == Some(1), "V4 nontrivial center dim {:?}", dim_of("V4 nontrivial"));
    Ok(format!("{} (group, cocycle) pairs; S3 -> 3, V4 twisted -> 1", cases.len()))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for (name, alg) in algebra_cases() {
        ensure!(alg.is_semisimple(), "{name}: trace form is degenerate");
        count += 1;
    }
    // stabilizer algebras of a few doubles as well
    let mut r = rng(3);
    for _ in 0..10 {
        let (case, d) = bounded_double(24, 96, 1, &mut r);
        for block in d.blocks().blocks {
            let (stab, _) = d.stabilizer_subalgebra_iso(block.rep).map_err(|e| e.to_string())?;
            ensure!(stab.is_semisimple(), "{}: stabilizer algebra of {} degenerate", case.name, block.rep);
            count += 1;
        }
    }
    Ok(format!("{count} twisted group algebras with nondegenerate trace form"))
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let cases = group_cases();
    let mut nonnormal = 0;
    for i in 0..20 {
        let case = &cases[i % cases.len()];
        let alpha = random_cocycle(case, &mut r);
        if !alpha.is_normal() {
            nonnormal += 1;
        }
        let (normal, lambda) = alpha.normalize();
        ensure!(normal.normality_violation().is_none(), "input {i} ({}): output not normal", case.name);
        let via = alpha.apply_coboundary(&lambda).map_err(|e| e.to_string())?;
        ensure!(via == normal, "input {i} ({}): output differs from alpha times the returned coboundary", case.name);
        ensure!(normal.is_valid(), "input {i}: output is not a cocycle");
    }
    Ok(format!("20 inputs ({nonnormal} not normal beforehand)"))
}

fn criterion_5() -> Outcome {
    let mut doubles: Vec<GeneralizedDouble> = criterion1_doubles().into_iter().map(|(_, d)| d).collect();
    doubles.push(swap_double());
    doubles.push(s3_two_points());
    for (i, d) in doubles.iter().enumerate() {
        let dec = d.decompose_blocks().map_err(|e| format!("double {i}: {e}"))?;
        let checks = d.block_checks(&dec);
        if let Some(f) = checks.first_failure() {
            return Err(format!("double {i}: {f}"));
        }
    }
    Ok(format!("{} doubles: D(s)N(s)=0, N(s)^2=0, cross-orbit products zero, block identities", doubles.len()))
}

/// Random module over the stabilizer algebra: a simple, a sum of two
/// simples (both numeric, in a random basis) or the exact regular module.
enum TestModule {
    Numeric(MatrixModule<num_complex::Complex64>),
    Exact(MatrixModule<CycScalar>),
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut simple_cases = 0;
    for i in 0..20 {
        let (case, d) = bounded_double(12, 48, 1, &mut r);
        let blocks = d.blocks().blocks;
        let s = blocks.choose(&mut r).unwrap().rep;
        let view = d.block_view(s);
        let (stab, emb) = d.stabilizer_subalgebra_iso(s).map_err(|e| e.to_string())?;
        let kind = i % 3;
        let module = if kind == 2 {
            TestModule::Exact(exact_regular(&stab))
        } else {
            let simples = classify_simples(&stab, TOL, r.gen()).map_err(|e| e.to_string())?;
            let a = simples.modules.choose(&mut r).unwrap().clone();
            let m = if kind == 0 {
                a
            } else {
                a.direct_sum(simples.modules.choose(&mut r).unwrap()).unwrap()
            };
            let p = random_complex_invertible(m.dim(), &mut r);
            TestModule::Numeric(m.change_basis(&p, TOL).ok_or("basis change not invertible")?)
        };
        let label = format!("module {i} ({}, point {s})", case.name);
        let simple = match &module {
            TestModule::Numeric(m) => round_trip(&view, &stab, s, &emb, m, TOL, &label, &mut r)?,
            TestModule::Exact(m) => round_trip(&view, &stab, s, &emb, m, 0.0, &label, &mut r)?,
        };
        if simple {
            simple_cases += 1;
        }
    }
    Ok(format!("20 modules round-tripped explicitly, {simple_cases} simple on both sides"))
}

/// Checks `M ~ Res Ind M` and `Ind Res N ~ N` for `N = Ind M` in a random
/// basis, and that `End M` and `End Ind M` have the same dimension. Returns
/// whether `M` is simple.
#[allow(clippy::too_many_arguments)]
fn round_trip<F: twisted_double::linalg::Field>(
    view: &twisted_double::double::BlockView,
    stab: &TwistedGroupAlgebra,
    s: usize,
    emb: &[usize],
    m: &MatrixModule<F>,
    tol: f64,
    label: &str,
    r: &mut ChaCha8Rng,
) -> Result<bool, String> {
    m.verify_exhaustive(stab, tol.max(1e-12).sqrt()).map_err(|e| format!("{label}: input not a module: {e}"))?;
    let ind = induce(view, s, emb, m).map_err(|e| format!("{label}: {e}"))?;
    ind.verify_exhaustive(view, tol.max(1e-12).sqrt()).map_err(|e| format!("{label}: induced not a module: {e}"))?;
    let res = restrict_by_idempotent(view, s, emb, &ind, tol).map_err(|e| format!("{label}: {e}"))?;
    let x = restrict_induce_witness(&res, m.dim(), tol).ok_or(format!("{label}: no witness M -> Res Ind M"))?;
    ensure!(is_isomorphism(stab, m, &res.module, &x, tol.max(1e-12).sqrt()), "{label}: M -> Res Ind M is not an isomorphism");

    // N = Ind M in a random basis
    let p = Mat::<F>::from_fn(ind.dim(), ind.dim(), |a, b| {
        if a == b {
            F::from_i64(1)
        } else if a > b {
            F::from_i64(r.gen_range(-1..=1))
        } else {
            F::from_i64(0)
        }
    });
    let n = ind.change_basis(&p, tol).ok_or(format!("{label}: basis change failed"))?;
    let res_n = restrict_by_idempotent(view, s, emb, &n, tol).map_err(|e| format!("{label}: {e}"))?;
    let back = induce(view, s, emb, &res_n.module).map_err(|e| format!("{label}: {e}"))?;
    let y = induce_restrict_witness(view, s, &n, &res_n);
    ensure!(is_isomorphism(view, &back, &n, &y, tol.max(1e-12).sqrt()), "{label}: Ind Res N -> N is not an isomorphism");

    let end_m = endomorphism_dim(stab, m, tol);
    let end_ind = endomorphism_dim(view, &ind, tol);
    ensure!(end_m == end_ind, "{label}: End M has dim {end_m}, End Ind M has dim {end_ind}");
    Ok(end_m == 1)
}

fn criterion_7() -> Outcome {
    let mut doubles = vec![("Z2 swap".to_string(), swap_double()), ("S3 on 2 fixed points".to_string(), s3_two_points())];
    let mut r = rng(7);
    for i in 0..12 {
        let (case, d) = bounded_double(12, 48, 1, &mut r);
        doubles.push((format!("random {i} ({})", case.name), d));
    }
    for (name, d) in &doubles {
        let rep = classify_double_simples(d, TOL, SEED).map_err(|e| format!("{name}: {e}"))?;
        let expected = d.group().order() * d.gset().size();
        ensure!(rep.square_sum == expected, "{name}: sum of squares {} != |G||S| = {expected}", rep.square_sum);
        ensure!(rep.all_checks(), "{name}: per-block accounting, simplicity or inequivalence failed");
    }
    let swap = classify_double_simples(&doubles[0].1, TOL, SEED).unwrap();
    ensure!(swap.square_sum == 4 && swap.orbits[0].simple_dims == vec![2], "swap double: {:?}", swap.orbits[0].simple_dims);
    let s3 = classify_double_simples(&doubles[1].1, TOL, SEED).unwrap();
    ensure!(s3.square_sum == 12, "S3 on two points: {}", s3.square_sum);
    Ok(format!("{} doubles, swap -> 4, S3 on 2 points -> 12", doubles.len()))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    for i in 0..10 {
        let (case, d) = bounded_double(12, 48, 1, &mut r);
        let n = *[2u32, 3, 4].choose(&mut r).unwrap();
        let lambda = random_set_coboundary(d.group(), d.gset(), n, &mut r);
        let beta = d.cocycle().apply_coboundary(&lambda).map_err(|e| e.to_string())?;
        let target = GeneralizedDouble::new(beta).map_err(|e| e.to_string())?;
        let f = d.cohomologous_iso(&target, &lambda).map_err(|e| format!("trial {i}: {e}"))?;
        let image = |v: &[CycScalar]| target.element(f.apply(v)).unwrap();
        for a in 0..d.dim() {
            let (ga, sa) = d.pair(a);
            let ba = d.basis(ga, sa);
            for b in 0..d.dim() {
                let (gb, sb) = d.pair(b);
                let bb = d.basis(gb, sb);
                let lhs = image(d.multiply(&ba, &bb).unwrap().coeffs());
                let rhs = target.multiply(&image(ba.coeffs()), &image(bb.coeffs())).unwrap();
                ensure!(lhs == rhs, "trial {i} ({}): not multiplicative on basis pair ({a},{b})", case.name);
            }
        }
        ensure!(image(d.identity().coeffs()) == target.identity(), "trial {i}: identity not preserved");
    }
    Ok("10 coboundaries, multiplicative on all basis pairs".into())
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut maps = 0;
    for i in 0..10 {
        let (case, d) = bounded_double(8, 24, 1, &mut r);
        let (fam, n) = random_family(&d, &mut r);
        let alpha = fam.extract_set_cocycle(Some(n), 0.0).map_err(|e| format!("family {i}: {e}"))?;
        let dd = GeneralizedDouble::new(alpha).map_err(|e| e.to_string())?;
        for block in dd.blocks().blocks {
            let m = fam.psi_isomorphism(&dd, block.rep, 0.0).map_err(|e| format!("family {i} ({}), label {}: {e}", case.name, block.rep))?;
            ensure!(m.psi.matmul(&m.chi) == Mat::identity(m.psi.rows()), "family {i}: Psi chi != 1");
            ensure!(m.chi.matmul(&m.psi) == Mat::identity(m.chi.rows()), "family {i}: chi Psi != 1");
            maps += 1;
        }
    }
    Ok(format!("10 families, {maps} orbit maps round-trip exactly"))
}

fn pauli() -> StableFamily<CycScalar> {
    let z = CycScalar::from_integer;
    let x = Mat::from_rows(vec![vec![z(0), z(1)], vec![z(1), z(0)]]);
    let zz = Mat::from_rows(vec![vec![z(1), z(0)], vec![z(0), z(-1)]]);
    let phi = vec![Mat::identity(2), x.clone(), zz.clone(), x.matmul(&zz)];
    StableFamily::projective(Arc::new(FiniteGroup::klein_four()), vec![2], phi, 0.0).unwrap()
}

fn s3_regular() -> StableFamily<CycScalar> {
    let alg = TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::symmetric(3)))).unwrap();
    let reg = monomial::regular_module::<CycScalar, _>(&alg);
    StableFamily::projective(Arc::clone(alg.group()), vec![6], reg.actions().to_vec(), 0.0).unwrap()
}

fn criterion_10() -> Outcome {
    let fam = s3_regular();
    let d = GeneralizedDouble::new(fam.extract_set_cocycle(None, TOL).map_err(|e| e.to_string())?).unwrap();
    let rep = dual_pair_decompose(&fam, &d, TOL, SEED).map_err(|e| e.to_string())?;
    let again = dual_pair_decompose(&fam, &d, TOL, SEED).map_err(|e| e.to_string())?;
    ensure!(
        serde_json::to_string(&rep).unwrap() == serde_json::to_string(&again).unwrap(),
        "S3 regular: report differs between runs with the same seed"
    );
    ensure!(rep.multiplicities() == vec![1, 1, 2], "S3 regular multiplicities {:?}", rep.multiplicities());
    ensure!(rep.all_irreducible(), "S3 regular: commutant not irreducible on some multiplicity space");
    ensure!(rep.all_inequivalent(), "S3 regular: multiplicity spaces not pairwise inequivalent");
    ensure!(rep.commutant_dim == 6 && rep.commutant_square_sum == 6, "S3 regular commutant dim {}", rep.commutant_dim);

    let fam = pauli();
    let d = GeneralizedDouble::new(fam.extract_set_cocycle(None, TOL).map_err(|e| e.to_string())?).unwrap();
    let rep = dual_pair_decompose(&fam, &d, TOL, SEED).map_err(|e| e.to_string())?;
    ensure!(rep.entries.len() == 1, "Pauli: {} simples", rep.entries.len());
    ensure!(
        rep.entries[0].simple_dim == 2 && rep.entries[0].multiplicity == 1,
        "Pauli: simple dim {}, multiplicity {}",
        rep.entries[0].simple_dim,
        rep.entries[0].multiplicity
    );
    ensure!(rep.all_irreducible() && rep.all_inequivalent() && rep.commutant_dim == 1, "Pauli flags");
    Ok("S3 regular -> (1,1,2), commutant 6; Pauli V4 -> W=2 once".into())
}

fn criterion_11() -> Outcome {
    let mut r = rng(11);
    for i in 0..20 {
        let (case, d) = bounded_double(12, 36, 1, &mut r);
        let (fam, n0) = random_family(&d, &mut r);
        let c = *[2u32, 3, 4, 5, 6, 8].choose(&mut r).unwrap();
        let n = lcm(n0, c);
        let lam = random_units(d.group(), d.gset().size(), c, &mut r);
        let alpha = fam.extract_set_cocycle(Some(n), 0.0).map_err(|e| format!("trial {i}: {e}"))?;
        let beta = fam.rescale(&lam).extract_set_cocycle(Some(n), 0.0).map_err(|e| format!("trial {i}: {e}"))?;
        let values = lam.iter().map(|row| row.iter().map(|x| x.exponent_in(n).unwrap()).collect()).collect();
        let cob = SetCoboundary::new(d.group(), d.gset(), n, values).map_err(|e| e.to_string())?;
        let expected = alpha.apply_coboundary(&cob).map_err(|e| e.to_string())?;
        ensure!(beta == expected, "trial {i} ({}): rescaled cocycle is not alpha times the set coboundary", case.name);
    }
    Ok("20 rescalings change the cocycle by exactly the set coboundary".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "set cocycle law <=> associativity of the double", criterion_1),
        (2, "class-sum center = kernel center = #regular classes", criterion_2),
        (3, "trace form nondegenerate", criterion_3),
        (4, "normalization yields a normal cohomologous cocycle", criterion_4),
        (5, "orbit block structure of the double", criterion_5),
        (6, "induction/restriction round trips preserve simplicity", criterion_6),
        (7, "sum of squared simple dimensions = |G||S|", criterion_7),
        (8, "cohomologous doubles are isomorphic", criterion_8),
        (9, "Psi and chi are mutually inverse", criterion_9),
        (10, "dual-pair decompositions of S3 regular and Pauli", criterion_10),
        (11, "rescaling phi changes the cocycle by a set coboundary", criterion_11),
    ];
    let mut failed = Vec::new();
    for (n, what, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {n}: {what}: {detail} ({secs:.2}s)"),
            Err(why) => {
                println!("[FAIL] criterion {n}: {what}: {why} ({secs:.2}s)");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

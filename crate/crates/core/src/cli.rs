//! Command-line front end: argument model, command dispatch and canonical
//! JSON reports. The binary only parses arguments, calls [`run`] and maps the
//! outcome to an exit code.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cocycles::SetCocycle;
use crate::double::{CenterPath, GeneralizedDouble};
use crate::dual_pair::{b_group_consistent, dual_pair_decompose, StableFamily};
use crate::group::{FiniteGroup, RightGSet};
use crate::io::{self, ParseError, ParsedCocycle, ParsedFamily};
use crate::linalg::{Field, Mat};
use crate::monomial::MonomialAlgebra;
use crate::oracle::{self, RawAlgebra};
use crate::rep_decomp::{classify_double_simples, classify_simples};
use crate::scalars::CycScalar;
use crate::twisted_algebra::TwistedGroupAlgebra;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 0;

/// Twisted group algebras, generalized twisted doubles, their centers,
/// simple modules and dual-pair decompositions.
///
/// Cocycle equivalence is decided in mu_N for the conductor N given in the
/// file. Two cocycles equivalent over C* may fail to be equivalent in mu_N;
/// raise N in the file to search a larger group of roots of unity.
#[derive(Debug, Parser)]
#[command(name = "twisted-double", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check a group, G-set and cocycle file for consistency.
    Validate,
    /// Report on the twisted group algebra of a group and scalar cocycle.
    Tga,
    /// Report on the double of a group, G-set and set cocycle.
    Double,
    /// Classify simple modules (of the double when a G-set is given).
    Simples,
    /// Decompose the direct sum of a stable family under the double and its commutant.
    Dualpair,
    /// Recompute a quantity on an independent brute-force path and compare.
    Oracle {
        #[arg(value_enum)]
        target: OracleTarget,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleTarget {
    Center,
    Associativity,
    RegularClasses,
    SimpleCount,
}

#[derive(Debug, Clone, Args)]
pub struct Inputs {
    #[arg(long, global = true)]
    pub group: Option<PathBuf>,
    #[arg(long, global = true)]
    pub gset: Option<PathBuf>,
    #[arg(long, global = true)]
    pub cocycle: Option<PathBuf>,
    #[arg(long, global = true)]
    pub family: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Include the action matrices in the dualpair report.
    #[arg(long, global = true)]
    pub dump_matrices: bool,
}

impl Default for Inputs {
    fn default() -> Self {
        Inputs {
            group: None,
            gset: None,
            cocycle: None,
            family: None,
            tolerance: DEFAULT_TOLERANCE,
            seed: DEFAULT_SEED,
            json: None,
            dump_matrices: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("missing input: {0}")]
    Missing(&'static str),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("computation failed: {0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io { .. } | CliError::Parse(_) | CliError::Missing(_) => 2,
            CliError::Computation(_) => 3,
        }
    }
}

fn computation(e: impl std::fmt::Display) -> CliError {
    CliError::Computation(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 over the input files, in flag order.
    pub inputs_digest: String,
    pub results: Value,
    pub timing_ms: f64,
    pub seed: u64,
    pub tolerance: f64,
    pub backend: Backend,
    pub warnings: Vec<String>,
    /// Set when the inputs were read but failed a check; exit code 1.
    #[serde(skip)]
    pub failed: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.failed {
            1
        } else {
            0
        }
    }

    pub fn to_canonical_json(&self) -> String {
        canonical_json(&serde_json::to_value(self).expect("report serializes"))
    }
}

/// Sorted keys (the default map is ordered) and floats rounded to 12
/// significant digits.
pub fn canonical_json(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(&round_floats(v)).expect("value serializes");
    out.push('\n');
    out
}

fn round_floats(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
            serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.iter().map(round_floats).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, x)| (k.clone(), round_floats(x))).collect()),
        other => other.clone(),
    }
}

struct Loaded {
    digest: Sha256,
    warnings: Vec<String>,
}

impl Loaded {
    fn read(&mut self, tag: &str, path: &Path) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        self.digest.update(tag.as_bytes());
        self.digest.update((text.len() as u64).to_le_bytes());
        self.digest.update(text.as_bytes());
        Ok(text)
    }

    fn group(&mut self, inputs: &Inputs) -> Result<Arc<FiniteGroup>, CliError> {
        let path = inputs.group.as_deref().ok_or(CliError::Missing("--group"))?;
        Ok(Arc::new(io::parse_group(&self.read("group", path)?)?))
    }

    fn gset(&mut self, inputs: &Inputs, group: &FiniteGroup) -> Result<Option<Arc<RightGSet>>, CliError> {
        match inputs.gset.as_deref() {
            Some(p) => Ok(Some(Arc::new(io::parse_gset(&self.read("gset", p)?, group)?))),
            None => Ok(None),
        }
    }

    fn cocycle(&mut self, inputs: &Inputs, group: &Arc<FiniteGroup>, gset: Option<&Arc<RightGSet>>) -> Result<Option<ParsedCocycle>, CliError> {
        match inputs.cocycle.as_deref() {
            Some(p) => Ok(Some(io::parse_cocycle(&self.read("cocycle", p)?, group, gset)?)),
            None => Ok(None),
        }
    }

    fn scalar_cocycle(&mut self, inputs: &Inputs, group: &Arc<FiniteGroup>) -> Result<TwistedGroupAlgebra, CliError> {
        let alpha = match self.cocycle(inputs, group, None)? {
            Some(c) => c.into_scalar()?,
            None => {
                self.warnings.push("no cocycle given; using the trivial cocycle".into());
                crate::cocycles::TwoCocycle::trivial(Arc::clone(group))
            }
        };
        if let Err(v) = alpha.validate() {
            return Err(CliError::Validation(format!("cocycle law fails: {v:?}")));
        }
        TwistedGroupAlgebra::new(alpha).map_err(computation)
    }

    fn double(&mut self, inputs: &Inputs, group: &Arc<FiniteGroup>) -> Result<GeneralizedDouble, CliError> {
        let gset = match self.gset(inputs, group)? {
            Some(g) => g,
            None => {
                self.warnings.push("no G-set given; using a single fixed point".into());
                Arc::new(RightGSet::trivial(group, 1))
            }
        };
        let sc = match self.cocycle(inputs, group, Some(&gset))? {
            Some(c) => c.into_set(Arc::clone(&gset))?,
            None => {
                self.warnings.push("no cocycle given; using the trivial set cocycle".into());
                SetCocycle::trivial(Arc::clone(group), Arc::clone(&gset))
            }
        };
        if let Err(v) = sc.validate() {
            return Err(CliError::Validation(format!("set cocycle law fails: {v:?}")));
        }
        GeneralizedDouble::new(sc).map_err(computation)
    }
}

/// Runs one command. Parse and cross-reference problems, failed checks and
/// numerical failures map to exit codes 2, 1 and 3.
pub fn run(command: &Command, inputs: &Inputs) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut loaded = Loaded {
        digest: Sha256::new(),
        warnings: Vec::new(),
    };
    let tol = inputs.tolerance;
    let seed = inputs.seed;
    let (name, results, backend, failed) = match command {
        Command::Validate => {
            let (r, ok) = validate(&mut loaded, inputs)?;
            ("validate".to_string(), r, Backend::Exact, !ok)
        }
        Command::Tga => {
            let group = loaded.group(inputs)?;
            let alg = loaded.scalar_cocycle(inputs, &group)?;
            ("tga".into(), tga_results(&alg, tol, seed)?, Backend::Numeric, false)
        }
        Command::Double => {
            let group = loaded.group(inputs)?;
            let d = loaded.double(inputs, &group)?;
            ("double".into(), double_results(&d, tol, seed)?, Backend::Numeric, false)
        }
        Command::Simples => {
            let group = loaded.group(inputs)?;
            let r = if inputs.gset.is_some() {
                let d = loaded.double(inputs, &group)?;
                let rep = classify_double_simples(&d, tol, seed).map_err(computation)?;
                let dims: Vec<Vec<usize>> = rep.orbits.iter().map(|o| o.simple_dims.clone()).collect();
                json!({
                    "report": rep,
                    "simple_dims": dims,
                    "accounting_holds": rep.accounting_holds(),
                    "all_checks": rep.all_checks(),
                })
            } else {
                let alg = loaded.scalar_cocycle(inputs, &group)?;
                let s = classify_simples(&alg, tol, seed).map_err(computation)?;
                json!({
                    "simple_dims": s.dims,
                    "attempts": s.attempts,
                    "square_sum": s.dims.iter().map(|d| d * d).sum::<usize>(),
                    "algebra_dim": alg.group().order(),
                })
            };
            ("simples".into(), r, Backend::Numeric, false)
        }
        Command::Dualpair => ("dualpair".into(), dualpair(&mut loaded, inputs)?, Backend::Numeric, false),
        Command::Oracle { target } => {
            let (r, ok) = run_oracle(&mut loaded, inputs, *target)?;
            ("oracle".into(), r, Backend::Numeric, !ok)
        }
    };
    let digest = loaded.digest.finalize();
    Ok(Report {
        command: name,
        inputs_digest: digest.iter().map(|b| format!("{b:02x}")).collect(),
        results,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
        seed,
        tolerance: tol,
        backend,
        warnings: loaded.warnings,
        failed,
    })
}

fn validate(loaded: &mut Loaded, inputs: &Inputs) -> Result<(Value, bool), CliError> {
    let group = loaded.group(inputs)?;
    let gset = loaded.gset(inputs, &group)?;
    let mut out = json!({ "group_order": group.order() });
    if let Some(gs) = &gset {
        out["gset_size"] = json!(gs.size());
        out["orbit_count"] = json!(gs.orbits(&group).len());
    }
    let valid = match loaded.cocycle(inputs, &group, gset.as_ref())? {
        None => true,
        Some(ParsedCocycle::Scalar(a)) => {
            let v = a.validate().err();
            out["kind"] = json!("two_cocycle");
            out["conductor"] = json!(a.conductor());
            out["violation"] = serde_json::to_value(v).expect("violation serializes");
            if v.is_none() {
                out["normal"] = json!(a.is_normal());
                out["regular_class_count"] = json!(a.alpha_regular_classes().map_err(computation)?.len());
            }
            v.is_none()
        }
        Some(ParsedCocycle::Set(s)) => {
            let v = s.validate().err();
            out["kind"] = json!("set_cocycle");
            out["conductor"] = json!(s.conductor());
            out["violation"] = serde_json::to_value(v).expect("violation serializes");
            v.is_none()
        }
    };
    out["valid"] = json!(valid);
    Ok((out, valid))
}

/// `{dim, regular_class_count, center_dim, semisimple, simple_dims}`.
pub fn tga_results(alg: &TwistedGroupAlgebra, tol: f64, seed: u64) -> Result<Value, CliError> {
    let center = alg.center_basis().map_err(computation)?;
    let simples = classify_simples(alg, tol, seed).map_err(computation)?;
    Ok(json!({
        "dim": alg.group().order(),
        "regular_class_count": alg.regular_class_count().map_err(computation)?,
        "center_dim": center.len(),
        "semisimple": alg.is_semisimple(),
        "simple_dims": simples.dims,
    }))
}

/// `{dim, orbits, total_center_dim, zlt_path}`.
pub fn double_results(d: &GeneralizedDouble, tol: f64, seed: u64) -> Result<Value, CliError> {
    let center = d.center_basis().map_err(computation)?;
    let simples = classify_double_simples(d, tol, seed).map_err(computation)?;
    let orbits: Vec<Value> = simples
        .orbits
        .iter()
        .map(|o| {
            let c = center.orbits.iter().find(|c| c.rep == o.rep).map(|c| c.dim).unwrap_or(0);
            json!({
                "rep": o.rep,
                "stabilizer_order": o.stabilizer_order,
                "block_dim": o.block_dim,
                "center_dim": c,
                "simple_dims": o.simple_dims,
            })
        })
        .collect();
    let path = match center.path() {
        CenterPath::Formula => "formula",
        CenterPath::Kernel => "kernel",
    };
    Ok(json!({
        "dim": d.dim(),
        "orbits": orbits,
        "total_center_dim": center.elements.len(),
        "zlt_path": path,
    }))
}

/// Number of `label` lines, used to size the default G-set.
fn label_count(text: &str) -> usize {
    text.lines()
        .filter(|l| l.split('#').next().unwrap_or("").trim_start().starts_with("label "))
        .count()
}

fn dualpair(loaded: &mut Loaded, inputs: &Inputs) -> Result<Value, CliError> {
    let group = loaded.group(inputs)?;
    let gset = loaded.gset(inputs, &group)?;
    let path = inputs.family.as_deref().ok_or(CliError::Missing("--family"))?;
    let text = loaded.read("family", path)?;
    let gset = gset.unwrap_or_else(|| Arc::new(RightGSet::trivial(&group, label_count(&text).max(1))));
    match io::parse_family(&text, &group, &gset, inputs.tolerance)? {
        ParsedFamily::Exact(f) => family_results(&f, inputs, "exact"),
        ParsedFamily::Numeric(f) => family_results(&f, inputs, "numeric"),
    }
}

fn family_results<F: Field + EntryText>(f: &StableFamily<F>, inputs: &Inputs, field: &str) -> Result<Value, CliError> {
    let tol = inputs.tolerance;
    let alpha = f.extract_set_cocycle(None, tol).map_err(|e| CliError::Validation(e.to_string()))?;
    let d = GeneralizedDouble::new(alpha.clone()).map_err(computation)?;
    let report = dual_pair_decompose(f, &d, tol, inputs.seed).map_err(computation)?;
    let module = f.double_action(&d, tol).map_err(computation)?;
    let mut out = json!({
        "field": field,
        "report": report,
        "multiplicities": report.multiplicities(),
        "all_irreducible": report.all_irreducible(),
        "all_inequivalent": report.all_inequivalent(),
        "accounting_holds": report.accounting_holds(),
        "commutant_matches": report.commutant_matches(),
        "orbit_sums_are_submodules": f.orbit_sums_are_submodules(&module, tol),
        "b_group_consistent": b_group_consistent(f, &alpha, 20, inputs.seed, tol),
        "cocycle": io::format_set_cocycle(&alpha),
    });
    if inputs.dump_matrices {
        let mats: Vec<Vec<Vec<String>>> = module.actions().iter().map(matrix_strings).collect();
        out["matrices"] = json!(mats);
    }
    Ok(out)
}

fn matrix_strings<F: Field + EntryText>(m: &Mat<F>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(EntryText::to_string_repr).collect())
        .collect()
}

/// Entry text: exact scalars as written in family files, complex numbers as `c(re,im)`.
pub trait EntryText {
    fn to_string_repr(&self) -> String;
}

impl EntryText for CycScalar {
    fn to_string_repr(&self) -> String {
        self.to_string().replace(' ', "")
    }
}

impl EntryText for Complex64 {
    fn to_string_repr(&self) -> String {
        format!("c({:.11e},{:.11e})", self.re, self.im)
    }
}

fn run_oracle(loaded: &mut Loaded, inputs: &Inputs, target: OracleTarget) -> Result<(Value, bool), CliError> {
    let tol = inputs.tolerance;
    let group = loaded.group(inputs)?;
    let table = group.table().to_vec();
    let with_double = inputs.gset.is_some();
    let (oracle_value, main_value) = if with_double {
        let d = loaded.double(inputs, &group)?;
        let sc = d.cocycle();
        let exps: Vec<Vec<u32>> = (0..sc.gset().size()).map(|s| sc.component_exps(s).to_vec()).collect();
        let raw = RawAlgebra::double(&table, d.gset().table(), sc.conductor(), &exps);
        match target {
            OracleTarget::Center => (json!(raw.center_dim(tol)), json!(d.center_basis().map_err(computation)?.elements.len())),
            OracleTarget::Associativity => (json!(raw.is_associative(tol)), json!(d.associativity_violation().is_none())),
            OracleTarget::SimpleCount => {
                let rep = classify_double_simples(&d, tol, inputs.seed).map_err(computation)?;
                let count: usize = rep.orbits.iter().map(|o| o.simple_dims.len()).sum();
                (json!(raw.center_dim(tol)), json!(count))
            }
            OracleTarget::RegularClasses => {
                return Err(CliError::Parse(ParseError::CrossRef(
                    "regular-classes takes a group and scalar cocycle, not a G-set".into(),
                )))
            }
        }
    } else {
        let alg = loaded.scalar_cocycle(inputs, &group)?;
        let a = alg.cocycle();
        let raw = RawAlgebra::twisted_group_algebra(&table, a.conductor(), a.exps());
        match target {
            OracleTarget::Center => (json!(raw.center_dim(tol)), json!(alg.center_basis().map_err(computation)?.len())),
            OracleTarget::Associativity => (
                json!(raw.is_associative(tol)),
                json!(crate::monomial::associativity_violation(&alg).is_none()),
            ),
            OracleTarget::RegularClasses => (
                json!(oracle::regular_class_count(&table, a.conductor(), a.exps())),
                json!(alg.regular_class_count().map_err(computation)?),
            ),
            OracleTarget::SimpleCount => {
                let s = classify_simples(&alg, tol, inputs.seed).map_err(computation)?;
                (json!(raw.commutant_center_dim(tol)), json!(s.dims.len()))
            }
        }
    };
    let agree = oracle_value == main_value;
    Ok((
        json!({
            "target": target,
            "algebra": if with_double { "double" } else { "twisted_group_algebra" },
            "oracle": oracle_value,
            "main": main_value,
            "agree": agree,
        }),
        agree,
    ))
}

/// Runs the parsed command line and writes the report; returns the exit code.
pub fn main_with(cli: Cli) -> i32 {
    match run(&cli.command, &cli.inputs) {
        Ok(report) => {
            let text = report.to_canonical_json();
            print!("{text}");
            if let Some(p) = &cli.inputs.json {
                if let Err(e) = std::fs::write(p, &text) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return 2;
                }
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

//! Line-oriented text formats for groups, G-sets, cocycles and stable
//! families. Blank lines and anything after `#` are ignored.
//!
//! ```text
//! order 2          perm             size 2       cocycle N=2
//! 0 1              (0 1 2)          0 1          1 1 1
//! 1 0              (0 1)            1 0
//! ```
//!
//! A cocycle line `x y k` sets `alpha(x,y) = zeta_N^k`; a line `s x y k`
//! sets the component at point `s`. Omitted entries are 0.
//!
//! A family file lists one `label <name> levels <d1> <d2> ...` line per
//! G-set point, in point order, followed by blocks `phi <label> <g>` with one
//! matrix row per line. `phi <label> <identity>` may be omitted. Entries are
//! exact (`-1/2`, `zeta(8)^3`, `1/2*zeta(12)^1+-2*zeta(12)^3`) or complex
//! (`0.5`, `c(0.5,-1e-3)`); a single complex entry makes the family numeric.

use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::cocycles::{CocycleError, SetCocycle, TwoCocycle};
use crate::dual_pair::{DualPairError, StableFamily};
use crate::group::{FiniteGroup, GroupError, RightGSet};
use crate::linalg::{Field, Mat};
use crate::scalars::CycScalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error("cross-reference: {0}")]
    CrossRef(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Family(#[from] DualPairError),
}

/// Non-empty lines with comments stripped, tagged with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("expected a non-negative integer, got `{tok}`")))
}

fn parse_usizes(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace().map(|t| parse_usize(line, t)).collect()
}

/// `key value` or `key=value` header; returns the value.
fn header<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, ParseError> {
    let rest = text
        .strip_prefix(key)
        .ok_or_else(|| syntax(line, format!("expected `{key}` header")))?;
    Ok(rest.trim())
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, ParseError> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or_else(|| ParseError::Eof("group header".into()))?;
    if first == "perm" {
        let gens: Vec<Vec<Vec<usize>>> = lines.map(|(l, t)| parse_cycles(l, t)).collect::<Result<_, _>>()?;
        let degree = gens.iter().flatten().flatten().map(|&p| p + 1).max().unwrap_or(1);
        let perms: Vec<Vec<usize>> = gens.iter().map(|cycles| cycles_to_images(cycles, degree)).collect();
        return Ok(FiniteGroup::from_permutations(&perms)?);
    }
    let n = parse_usize(ln, header(ln, first, "order")?)?;
    let mut table = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (l, t) in lines {
        let row = parse_usizes(l, t)?;
        if row.len() != n {
            return Err(syntax(l, format!("table row must have {n} entries")));
        }
        table.extend(row);
        rows += 1;
    }
    if rows != n {
        return Err(ParseError::Eof(format!("expected {n} table rows, found {rows}")));
    }
    Ok(FiniteGroup::from_table(n, table)?)
}

/// `(0 1 2)(3 4)`; `()` is the identity.
fn parse_cycles(line: usize, text: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| syntax(line, "expected cycle notation like (0 1 2)"))?;
        let cycle: Vec<usize> = inner
            .0
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_usize(line, t))
            .collect::<Result<_, _>>()?;
        let mut seen = cycle.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != cycle.len() {
            return Err(syntax(line, "repeated point in a cycle"));
        }
        out.push(cycle);
        rest = inner.1.trim_start();
    }
    Ok(out)
}

/// Product of cycles, rightmost applied first.
fn cycles_to_images(cycles: &[Vec<usize>], degree: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..degree).collect();
    for cycle in cycles.iter().rev() {
        let mut step: Vec<usize> = (0..degree).collect();
        for (i, &p) in cycle.iter().enumerate() {
            step[p] = cycle[(i + 1) % cycle.len()];
        }
        perm = perm.iter().map(|&p| step[p]).collect();
    }
    perm
}

pub fn parse_gset(text: &str, group: &FiniteGroup) -> Result<RightGSet, ParseError> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or_else(|| ParseError::Eof("G-set header".into()))?;
    let m = parse_usize(ln, header(ln, first, "size")?)?;
    let mut action = Vec::with_capacity(m * group.order());
    let mut rows = 0;
    for (l, t) in lines {
        let row = parse_usizes(l, t)?;
        if row.len() != group.order() {
            return Err(ParseError::CrossRef(format!(
                "line {l}: G-set row must have one entry per group element ({})",
                group.order()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&p| p >= m) {
            return Err(syntax(l, format!("point {bad} out of range")));
        }
        action.extend(row);
        rows += 1;
    }
    if rows != m {
        return Err(ParseError::Eof(format!("expected {m} G-set rows, found {rows}")));
    }
    Ok(RightGSet::new(group, m, action)?)
}

/// A parsed cocycle file: scalar (three columns) or per point (four columns).
#[derive(Debug, Clone)]
pub enum ParsedCocycle {
    Scalar(TwoCocycle),
    Set(SetCocycle),
}

impl ParsedCocycle {
    /// The set cocycle on `gset`; a scalar cocycle becomes the constant family.
    pub fn into_set(self, gset: Arc<RightGSet>) -> Result<SetCocycle, ParseError> {
        match self {
            ParsedCocycle::Scalar(a) => Ok(SetCocycle::constant(gset, &a)?),
            ParsedCocycle::Set(s) => {
                if **s.gset() != *gset {
                    return Err(ParseError::CrossRef("set cocycle was read against a different G-set".into()));
                }
                Ok(s)
            }
        }
    }

    pub fn into_scalar(self) -> Result<TwoCocycle, ParseError> {
        match self {
            ParsedCocycle::Scalar(a) => Ok(a),
            ParsedCocycle::Set(_) => Err(ParseError::CrossRef("expected a scalar cocycle (x y k lines)".into())),
        }
    }
}

/// Reads `cocycle N=<n>` followed by entry lines. Four-column entries need `gset`.
pub fn parse_cocycle(text: &str, group: &Arc<FiniteGroup>, gset: Option<&Arc<RightGSet>>) -> Result<ParsedCocycle, ParseError> {
    let mut lines = content_lines(text).peekable();
    let (ln, first) = lines.next().ok_or_else(|| ParseError::Eof("cocycle header".into()))?;
    let rest = header(ln, first, "cocycle")?;
    let n_text = rest
        .strip_prefix("N")
        .map(|r| r.trim_start().trim_start_matches('=').trim())
        .ok_or_else(|| syntax(ln, "expected `cocycle N=<conductor>`"))?;
    let n = parse_usize(ln, n_text)?;
    if n == 0 || n > u32::MAX as usize {
        return Err(syntax(ln, "conductor must be a positive 32-bit integer"));
    }
    let n = n as u32;
    let order = group.order();
    let columns = lines.peek().map(|(_, t)| t.split_whitespace().count()).unwrap_or(3);
    let points = match (columns, gset) {
        (3, _) => None,
        (4, Some(gs)) => Some(gs.size()),
        (4, None) => return Err(ParseError::CrossRef("per-point cocycle entries need a G-set".into())),
        (_, _) => return Err(syntax(ln + 1, "entries have 3 columns (x y k) or 4 (s x y k)")),
    };
    let mut exps = vec![vec![0u32; order * order]; points.unwrap_or(1)];
    for (l, t) in lines {
        let v = parse_usizes(l, t)?;
        if v.len() != columns {
            return Err(syntax(l, format!("expected {columns} columns")));
        }
        let (s, x, y, k) = if columns == 3 { (0, v[0], v[1], v[2]) } else { (v[0], v[1], v[2], v[3]) };
        if x >= order || y >= order {
            return Err(ParseError::CrossRef(format!("line {l}: element index out of range for a group of order {order}")));
        }
        if s >= exps.len() {
            return Err(ParseError::CrossRef(format!("line {l}: point {s} out of range")));
        }
        exps[s][x * order + y] = (k % n as usize) as u32;
    }
    match gset.filter(|_| points.is_some()) {
        Some(gs) => Ok(ParsedCocycle::Set(SetCocycle::new(Arc::clone(group), Arc::clone(gs), n, exps)?)),
        None => Ok(ParsedCocycle::Scalar(TwoCocycle::new(
            Arc::clone(group),
            n,
            exps.pop().expect("one table"),
        )?)),
    }
}

pub fn format_group(g: &FiniteGroup) -> String {
    let mut out = format!("order {}\n", g.order());
    for row in g.table().chunks(g.order().max(1)) {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

pub fn format_gset(s: &RightGSet) -> String {
    let mut out = format!("size {}\n", s.size());
    for row in s.table().chunks(s.group_order().max(1)) {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

/// Nonzero entries only.
pub fn format_cocycle(a: &TwoCocycle) -> String {
    let n = a.group().order();
    let mut out = format!("cocycle N={}\n", a.conductor());
    for (i, &k) in a.exps().iter().enumerate() {
        if k != 0 {
            let _ = writeln!(out, "{} {} {}", i / n, i % n, k);
        }
    }
    out
}

/// Nonzero entries only.
pub fn format_set_cocycle(a: &SetCocycle) -> String {
    let n = a.group().order();
    let mut out = format!("cocycle N={}\n", a.conductor());
    for s in 0..a.gset().size() {
        for (i, &k) in a.component_exps(s).iter().enumerate() {
            if k != 0 {
                let _ = writeln!(out, "{s} {} {} {k}", i / n, i % n);
            }
        }
    }
    out
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// A family read from text, exact unless some entry is a decimal.
#[derive(Debug, Clone)]
pub enum ParsedFamily {
    Exact(StableFamily<CycScalar>),
    Numeric(StableFamily<Complex64>),
}

/// `(label, g, rows)` with rows as `(line, tokens)`.
type RawBlock = (usize, usize, Vec<(usize, Vec<String>)>);

struct RawFamily {
    labels: Vec<String>,
    levels: Vec<Vec<usize>>,
    blocks: Vec<RawBlock>,
    numeric: bool,
}

fn looks_numeric(tok: &str) -> bool {
    tok.starts_with("c(") || tok.contains('.') || (tok.contains(['e', 'E']) && !tok.contains("zeta"))
}

fn parse_complex(line: usize, tok: &str) -> Result<Complex64, ParseError> {
    if let Some(inner) = tok.strip_prefix("c(").and_then(|r| r.strip_suffix(')')) {
        let (re, im) = inner.split_once(',').ok_or_else(|| syntax(line, "expected c(re,im)"))?;
        let p = |s: &str| s.trim().parse::<f64>().map_err(|_| syntax(line, format!("bad number `{s}`")));
        return Ok(Complex64::new(p(re)?, p(im)?));
    }
    if let Ok(x) = tok.parse::<f64>() {
        return Ok(Complex64::new(x, 0.0));
    }
    Ok(parse_exact(line, tok)?.embed_complex())
}

fn parse_exact(line: usize, tok: &str) -> Result<CycScalar, ParseError> {
    tok.parse().map_err(|e| syntax(line, format!("bad scalar `{tok}`: {e}")))
}

fn read_family(text: &str, group: &FiniteGroup, gset: &RightGSet) -> Result<RawFamily, ParseError> {
    let mut lines = content_lines(text).peekable();
    if let Some((_, "family")) = lines.peek() {
        lines.next();
    }
    let mut labels = Vec::new();
    let mut levels = Vec::new();
    while let Some(&(l, t)) = lines.peek() {
        let Some(rest) = t.strip_prefix("label ") else { break };
        lines.next();
        let mut toks = rest.split_whitespace();
        let name = toks.next().ok_or_else(|| syntax(l, "missing label name"))?;
        if toks.next() != Some("levels") {
            return Err(syntax(l, "expected `label <name> levels <dims...>`"));
        }
        let dims = toks.map(|x| parse_usize(l, x)).collect::<Result<Vec<_>, _>>()?;
        if labels.iter().any(|n| n == name) {
            return Err(syntax(l, format!("duplicate label `{name}`")));
        }
        labels.push(name.to_string());
        levels.push(dims);
    }
    if labels.len() != gset.size() {
        return Err(ParseError::CrossRef(format!(
            "family has {} labels but the G-set has {} points",
            labels.len(),
            gset.size()
        )));
    }
    let dim = |n: usize| -> usize { levels[n].iter().sum() };
    let mut blocks = Vec::new();
    let mut numeric = false;
    while let Some((l, t)) = lines.next() {
        let mut toks = t.split_whitespace();
        if toks.next() != Some("phi") {
            return Err(syntax(l, "expected `phi <label> <g>`"));
        }
        let name = toks.next().ok_or_else(|| syntax(l, "missing label"))?;
        let label = labels
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ParseError::CrossRef(format!("line {l}: unknown label `{name}`")))?;
        let g = parse_usize(l, toks.next().ok_or_else(|| syntax(l, "missing group element"))?)?;
        if g >= group.order() {
            return Err(ParseError::CrossRef(format!("line {l}: element {g} out of range")));
        }
        let target = gset.act(label, group.inv(g));
        let mut rows = Vec::new();
        for _ in 0..dim(target) {
            let (rl, rt) = lines.next().ok_or_else(|| ParseError::Eof(format!("matrix for phi {name} {g}")))?;
            let row: Vec<String> = rt.split_whitespace().map(str::to_string).collect();
            if row.len() != dim(label) {
                return Err(syntax(rl, format!("matrix row must have {} entries", dim(label))));
            }
            numeric |= row.iter().any(|e| looks_numeric(e));
            rows.push((rl, row));
        }
        if blocks.iter().any(|(n, x, _)| *n == label && *x == g) {
            return Err(syntax(l, format!("duplicate phi {name} {g}")));
        }
        blocks.push((label, g, rows));
    }
    Ok(RawFamily {
        labels,
        levels,
        blocks,
        numeric,
    })
}

fn assemble<F: Field>(
    raw: RawFamily,
    group: &Arc<FiniteGroup>,
    gset: &Arc<RightGSet>,
    entry: impl Fn(usize, &str) -> Result<F, ParseError>,
    tol: f64,
) -> Result<StableFamily<F>, ParseError> {
    let dims: Vec<usize> = raw.levels.iter().map(|l| l.iter().sum()).collect();
    let mut phi: Vec<Vec<Option<Mat<F>>>> = vec![vec![None; group.order()]; raw.labels.len()];
    for (label, g, rows) in raw.blocks {
        let parsed: Vec<Vec<F>> = rows
            .into_iter()
            .map(|(l, r)| r.iter().map(|e| entry(l, e)).collect())
            .collect::<Result<_, _>>()?;
        let target = gset.act(label, group.inv(g));
        phi[label][g] = Some(if parsed.is_empty() {
            Mat::zeros(dims[target], dims[label])
        } else {
            Mat::from_rows(parsed)
        });
    }
    let mut full = Vec::with_capacity(phi.len());
    for (label, maps) in phi.into_iter().enumerate() {
        let mut row = Vec::with_capacity(maps.len());
        for (g, m) in maps.into_iter().enumerate() {
            row.push(match m {
                Some(m) => m,
                None if g == group.identity() => Mat::identity(dims[label]),
                None if dims[label] == 0 => Mat::zeros(dims[gset.act(label, group.inv(g))], 0),
                None => {
                    return Err(ParseError::CrossRef(format!(
                        "missing phi {} {g}",
                        raw.labels[label]
                    )))
                }
            });
        }
        full.push(row);
    }
    Ok(StableFamily::new(
        Arc::clone(group),
        Arc::clone(gset),
        raw.labels,
        raw.levels,
        full,
        tol,
    )?)
}

pub fn parse_family(text: &str, group: &Arc<FiniteGroup>, gset: &Arc<RightGSet>, tol: f64) -> Result<ParsedFamily, ParseError> {
    let raw = read_family(text, group, gset)?;
    if raw.numeric {
        Ok(ParsedFamily::Numeric(assemble(raw, group, gset, parse_complex, tol)?))
    } else {
        Ok(ParsedFamily::Exact(assemble(raw, group, gset, parse_exact, 0.0)?))
    }
}

/// Serializes an exact family; entries are written without spaces.
pub fn format_family(f: &StableFamily<CycScalar>) -> String {
    let mut out = String::from("family\n");
    for (n, name) in f.labels().iter().enumerate() {
        let _ = writeln!(out, "label {name} levels {}", join(f.levels(n)));
    }
    for (n, name) in f.labels().iter().enumerate() {
        for g in f.group().elements() {
            let _ = writeln!(out, "phi {name} {g}");
            let m = f.phi(n, g);
            for r in 0..m.rows() {
                let row: Vec<String> = m.row(r).iter().map(|x| x.to_string().replace(' ', "")).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
    }
    out
}

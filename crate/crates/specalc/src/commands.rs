//! Command bodies: each turns validated arguments into an [`OutputRecord`].

use num_traits::ToPrimitive;
use specalc_core::dsl::{self, ParseError};
use specalc_core::numkit::{as_integer, int_partitions_up_to, k_rect_count, NumError};
use specalc_core::oracle::{self, OracleError};
use specalc_core::series::{dirichlet_of, SeriesError};
use specalc_core::species::{
    eval_counts, eval_egf, eval_ogf, eval_zi, mnr_formula, pittel_numeric, pr_k_exact, EvalError,
    SpeciesExpr,
};
use thiserror::Error;

use crate::output::{Cell, OutputRecord, PlainStyle};

/// Bound on `--n` for every command except `zindex`.
pub const DEFAULT_MAX_N: u64 = 30;
pub const DEFAULT_MAX_N_ZINDEX: u64 = 10;
pub const MAX_N_VAR: &str = "SPECALC_MAX_N";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {0}\n{1}")]
    Parse(ParseError, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("scale limit: {0}")]
    ScaleLimit(String),
    #[error("evaluator and oracle disagree at n = {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(..) => 2,
            CliError::Precondition(_) => 3,
            CliError::ScaleLimit(_) => 4,
            CliError::Mismatch(_) => 5,
            CliError::Io(_) | CliError::Other(_) => 1,
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::IncompleteData(_) => CliError::Other(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::ScaleLimit { .. } => CliError::ScaleLimit(e.to_string()),
            OracleError::UnsupportedAtom(_) | OracleError::Precondition(..) => {
                CliError::Precondition(e.to_string())
            }
            OracleError::DomainMismatch | OracleError::NotTransportable(_) => CliError::Other(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<NumError> for CliError {
    fn from(e: NumError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

/// The configured bound, or the default when the variable is unset.
pub fn max_n(default: u64) -> Result<u64, CliError> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Other(format!("{MAX_N_VAR} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(default),
    }
}

fn check_bound(n: u64, default: u64) -> Result<usize, CliError> {
    let max = max_n(default)?;
    if n > max {
        return Err(CliError::ScaleLimit(format!("--n {n} exceeds the bound {max} (set {MAX_N_VAR} to raise it)")));
    }
    Ok(n as usize)
}

pub fn parse(text: &str) -> Result<SpeciesExpr, CliError> {
    dsl::parse_expr(text).map_err(|e| {
        let line = text.lines().nth(e.line - 1).unwrap_or("");
        let caret = format!("  {line}\n  {}^", " ".repeat(e.column.saturating_sub(1)));
        CliError::Parse(e, caret)
    })
}

pub fn counts(text: &str, n: u64) -> Result<OutputRecord, CliError> {
    let e = parse(text)?;
    let n = check_bound(n, DEFAULT_MAX_N)?;
    let c = eval_counts(&e, n)?;
    let mut rec = OutputRecord::new("counts", Some(e.to_string()), n as u64, vec!["n", "count"]);
    for (i, v) in c.counts().iter().enumerate() {
        rec.push(vec![Cell::int(i as u64), Cell::Int(v.clone())]);
    }
    Ok(rec)
}

pub fn types(text: &str, n: u64) -> Result<OutputRecord, CliError> {
    let e = parse(text)?;
    let n = check_bound(n, DEFAULT_MAX_N)?;
    let ogf = eval_ogf(&e, n)?;
    let mut rec = OutputRecord::new("types", Some(e.to_string()), n as u64, vec!["n", "types"]);
    for (i, v) in ogf.coeffs().iter().enumerate() {
        // a species has a whole number of types; anything else stays visible
        let cell = as_integer(v).map_or_else(|| Cell::Rat(v.clone()), Cell::Int);
        rec.push(vec![Cell::int(i as u64), cell]);
    }
    Ok(rec)
}

pub fn zindex(text: &str, n: u64) -> Result<OutputRecord, CliError> {
    let e = parse(text)?;
    let n = check_bound(n, DEFAULT_MAX_N_ZINDEX)? as u64;
    let z = eval_zi(&e, n)?;
    let mut rec = OutputRecord::new(
        "zindex",
        Some(e.to_string()),
        n,
        vec!["partition", "fix", "monomial_coeff"],
    );
    rec.plain_style = PlainStyle::CycleIndex;
    for lambda in int_partitions_up_to(n) {
        rec.push(vec![
            Cell::Text(lambda.to_string()),
            Cell::Rat(z.fix(&lambda)),
            Cell::Rat(z.monomial_coeff(&lambda)),
        ]);
    }
    Ok(rec)
}

pub fn dirichlet(text: &str, n: u64) -> Result<OutputRecord, CliError> {
    let e = parse(text)?;
    let n = check_bound(n, DEFAULT_MAX_N)?;
    let d = dirichlet_of(&eval_egf(&e, n)?)?;
    let mut rec = OutputRecord::new("dirichlet", Some(e.to_string()), n as u64, vec!["n", "coeff"]);
    for i in 1..=n {
        rec.push(vec![Cell::int(i as u64), Cell::Rat(d.term(i))]);
    }
    Ok(rec)
}

/// Evaluator against the enumerator for every size up to `n`. A mismatch
/// still produces the full report; the caller turns the status into an
/// exit code.
pub fn check(text: &str, n: u64) -> Result<OutputRecord, CliError> {
    let e = parse(text)?;
    let n = check_bound(n, DEFAULT_MAX_N)?;
    let c = eval_counts(&e, n)?;
    let mut rec = OutputRecord::new("check", Some(e.to_string()), n as u64, vec!["n", "evaluated", "oracle", "match"]);
    let mut bad = Vec::new();
    for i in 0..=n {
        let found = oracle::enumerate(&e, &oracle::atoms(i))?.len() as u64;
        let ok = c[i] == found.into();
        if !ok {
            bad.push(i.to_string());
        }
        rec.push(vec![Cell::int(i as u64), Cell::Int(c[i].clone()), Cell::int(found), Cell::Bool(ok)]);
    }
    if !bad.is_empty() {
        rec.status = "mismatch";
        rec.params.push(("mismatched", Cell::Text(bad.join(","))));
    }
    Ok(rec)
}

pub fn enumerate(text: &str, n: u64) -> Result<OutputRecord, CliError> {
    let e = parse(text)?;
    let n = check_bound(n, DEFAULT_MAX_N)?;
    let all = oracle::enumerate(&e, &oracle::atoms(n))?;
    let mut rec = OutputRecord::new("enumerate", Some(e.to_string()), n as u64, vec!["index", "structure"]);
    for (i, s) in all.iter().enumerate() {
        let v = serde_json::to_value(s).map_err(|err| CliError::Other(err.to_string()))?;
        rec.push(vec![Cell::int(i as u64), Cell::Json(v)]);
    }
    Ok(rec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableKind {
    /// Rectangles on an n-set.
    Rect,
    /// k-rectangles on an n-set.
    Krect,
    /// Partial k-rectangles on an n-set.
    Prect,
    /// m x n (0,1)-matrices with r ones and no zero row or column.
    Mnr,
    /// Partial k-rectangles, exact and by the numeric series.
    Pittel,
}

#[derive(Clone, Debug, Default)]
pub struct TableParams {
    pub n: Option<u64>,
    pub k: Option<u64>,
    pub m: Option<u64>,
    pub tol: Option<f64>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Precondition(format!("`table {kind}` needs --{flag}")))
}

fn positive_k(p: &TableParams, kind: &str) -> Result<u32, CliError> {
    let k = need(p.k, "k", kind)?;
    match u32::try_from(k) {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(CliError::Precondition(format!("--k must be between 1 and {}, got {k}", u32::MAX))),
    }
}

pub fn table(kind: TableKind, p: &TableParams) -> Result<OutputRecord, CliError> {
    let name = match kind {
        TableKind::Rect => "rect",
        TableKind::Krect => "krect",
        TableKind::Prect => "prect",
        TableKind::Mnr => "mnr",
        TableKind::Pittel => "pittel",
    };
    let n = check_bound(need(p.n, "n", name)?, DEFAULT_MAX_N)?;
    let command = format!("table {name}");
    let rec = match kind {
        TableKind::Rect | TableKind::Krect => {
            let k = if kind == TableKind::Rect { 2 } else { positive_k(p, name)? };
            let mut rec = OutputRecord::new(&command, None, n as u64, vec!["n", "count"]);
            rec.params.push(("k", Cell::int(k)));
            for i in 1..=n as u64 {
                rec.push(vec![Cell::int(i), Cell::Int(k_rect_count(i, k as usize)?)]);
            }
            rec
        }
        TableKind::Prect => {
            let k = positive_k(p, name)?;
            let mut rec = OutputRecord::new(&command, None, n as u64, vec!["n", "count"]);
            rec.params.push(("k", Cell::int(k)));
            for (i, v) in pr_k_exact(k, n).counts().iter().enumerate() {
                rec.push(vec![Cell::int(i as u64), Cell::Int(v.clone())]);
            }
            rec
        }
        TableKind::Mnr => {
            let m = need(p.m, "m", name)?;
            check_bound(m, DEFAULT_MAX_N)?;
            let mut rec = OutputRecord::new(&command, None, n as u64, vec!["r", "matrices", "partial_rectangles"]);
            rec.params.push(("m", Cell::int(m)));
            rec.params.push(("n", Cell::int(n as u64)));
            for r in 0..=m * n as u64 {
                let pr = specalc_core::species::partial_rect_mnr(m, n as u64, r);
                rec.push(vec![Cell::int(r), Cell::Int(mnr_formula(m, n as u64, r)), Cell::Int(pr)]);
            }
            rec
        }
        TableKind::Pittel => {
            let k = positive_k(p, name)?;
            let tol = need(p.tol, "tol", name)?;
            if !(tol.is_finite() && tol > 0.0) {
                return Err(CliError::Precondition(format!("--tol must be positive, got {tol}")));
            }
            let exact = pr_k_exact(k, n);
            let mut rec = OutputRecord::new(
                &command,
                None,
                n as u64,
                vec!["n", "exact", "numeric", "error_bound", "abs_error", "certified"],
            );
            rec.params.push(("k", Cell::int(k)));
            rec.params.push(("tol", Cell::Float(tol)));
            for i in 0..=n {
                let est = pittel_numeric(k, i as u64, tol)?;
                let want = exact[i].to_f64().unwrap_or(f64::INFINITY);
                rec.push(vec![
                    Cell::int(i as u64),
                    Cell::Int(exact[i].clone()),
                    Cell::Float(est.value),
                    Cell::Float(est.error_bound),
                    Cell::Float((est.value - want).abs()),
                    Cell::Bool(est.contains(&exact[i])),
                ]);
            }
            rec
        }
    };
    Ok(rec)
}

//! Running identity families against the evaluator and reporting the
//! outcome as JSON, CSV or a console table.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::Instant;

use dashu_ratio::RBig;
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::eval::{real, EvalError, EvalResult, Evaluator, Real};
use crate::identities::{families, instances_for, Exactness, Expr, IdentityError, IdentityInstance, Param, Params, Ranges};
use crate::rational;

pub const REPORT_VERSION: u32 = 1;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MIN_TOLERANCE: f64 = 1e-30;
pub const MAX_TOLERANCE: f64 = 1e-4;
/// Tolerance ratio between the two evaluations of an exploration quantity.
pub const EXPLORATION_STEP: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown suite '{0}' (see list-identities)")]
    UnknownSuite(String),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Family ids, `euler-special:<name>`, or `all`.
    pub suites: Vec<String>,
    pub ranges: Ranges,
    pub tol: f64,
    pub workers: Option<usize>,
    pub cache: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: vec!["all".into()],
            ranges: Ranges::default(),
            tol: DEFAULT_TOLERANCE,
            workers: None,
            cache: None,
            report: None,
            csv: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&self.tol) {
            return Err(VerifyError::InvalidConfig(format!(
                "tolerance {:e} outside [{MIN_TOLERANCE:e}, {MAX_TOLERANCE:e}]",
                self.tol
            )));
        }
        if self.workers == Some(0) {
            return Err(VerifyError::InvalidConfig("workers must be at least 1".into()));
        }
        if self.suites.is_empty() {
            return Err(VerifyError::InvalidConfig("no suite given".into()));
        }
        self.resolved_suites().map(|_| ())
    }

    /// Suite ids with `all` expanded, duplicates removed, in registry order.
    pub fn resolved_suites(&self) -> Result<Vec<String>, VerifyError> {
        let mut out: Vec<String> = Vec::new();
        for s in &self.suites {
            let s = s.trim();
            if s == "all" {
                out.extend(families().iter().filter(|f| f.in_all).map(|f| f.id.to_string()));
            } else if instances_for(s, &Ranges { p_max: Some(0), w_max: Some(2), ..Ranges::default() }).is_some() {
                out.push(s.to_string());
            } else {
                return Err(VerifyError::UnknownSuite(s.to_string()));
            }
        }
        let mut seen = BTreeSet::new();
        out.retain(|s| seen.insert(s.clone()));
        Ok(out)
    }

    fn echo(&self, suites: &[String]) -> Value {
        let lambdas: Option<Vec<String>> =
            self.ranges.lambdas.as_ref().map(|v| v.iter().map(rational::format).collect());
        json!({
            "suites": suites,
            "tol": self.tol,
            "p_max": self.ranges.p_max,
            "q_max": self.ranges.q_max,
            "w_max": self.ranges.w_max,
            "lambdas": lambdas,
            "seed": self.ranges.seed,
        })
    }
}

/// Tolerance each side of a numeric identity is evaluated to.
pub fn side_tolerance(tol: f64) -> f64 {
    (tol / 10.0).max(MIN_TOLERANCE)
}

fn exploration_tolerances(tol: f64) -> (f64, f64) {
    let loose = side_tolerance(tol);
    (loose, (loose * EXPLORATION_STEP).max(MIN_TOLERANCE))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceRecord {
    pub id: String,
    pub params: Value,
    #[serde(skip)]
    pub params_text: String,
    pub exactness: &'static str,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub lhs_value: Option<String>,
    pub rhs_value: Option<String>,
    pub residual: Option<f64>,
    pub error_bound: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub error: Option<String>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub by_id: BTreeMap<String, Counts>,
}

/// Facts about one run that are not part of the deterministic result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunInfo {
    pub elapsed_ms: f64,
    pub executor: String,
    pub cache_hits: u64,
    pub cache_misses: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub report_version: u32,
    pub config: Value,
    pub results: Vec<InstanceRecord>,
    pub summary: Summary,
    pub run: RunInfo,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// JSON with timing and cache statistics removed, for comparing runs.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        let obj = v.as_object_mut().expect("object");
        obj.remove("run");
        if let Some(Value::Array(rs)) = obj.get_mut("results") {
            for r in rs {
                r.as_object_mut().expect("object").remove("wall_ms");
            }
        }
        serde_json::to_string_pretty(&v).expect("report serialises")
    }

    pub fn write_json(&self, path: &std::path::Path) -> Result<(), VerifyError> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), VerifyError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "id",
            "params",
            "exactness",
            "lhs_value",
            "rhs_value",
            "residual",
            "error_bound",
            "tolerance",
            "pass",
            "error",
            "wall_ms",
        ])?;
        for r in &self.results {
            let opt = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
            w.write_record([
                r.id.clone(),
                r.params_text.clone(),
                r.exactness.to_string(),
                r.lhs_value.clone().unwrap_or_default(),
                r.rhs_value.clone().unwrap_or_default(),
                opt(r.residual),
                opt(r.error_bound),
                format!("{:e}", r.tolerance),
                r.pass.to_string(),
                r.error.clone().unwrap_or_default(),
                format!("{:.3}", r.wall_ms),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Fixed-width table, one line per instance, then the summary.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let width = self.results.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
        let pwidth = self.results.iter().map(|r| r.params_text.len()).max().unwrap_or(6).clamp(6, 40);
        out.push_str(&format!(
            "{:<width$}  {:<pwidth$}  {:<14}  {:>10}  {:>10}  {}\n",
            "id", "params", "exactness", "residual", "bound", "status"
        ));
        for r in &self.results {
            let num = |x: Option<f64>| x.map(|v| format!("{v:.2e}")).unwrap_or_else(|| "-".into());
            let status = match (&r.error, r.pass) {
                (Some(e), _) => format!("FAIL ({e})"),
                (None, true) => "ok".into(),
                (None, false) => "FAIL".into(),
            };
            out.push_str(&format!(
                "{:<width$}  {:<pwidth$}  {:<14}  {:>10}  {:>10}  {}\n",
                r.id,
                r.params_text,
                r.exactness,
                num(r.residual),
                num(r.error_bound),
                status
            ));
        }
        out.push_str(&format!(
            "{} instances: {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }
}

fn params_json(p: &Params) -> Value {
    let mut m = Map::new();
    for (name, v) in &p.0 {
        let value = match v {
            Param::Int(n) => json!(n),
            Param::Rational(r) => json!(rational::format(r)),
            Param::List(xs) => json!(xs),
            Param::Text(s) => json!(s),
        };
        m.insert(name.to_string(), value);
    }
    Value::Object(m)
}

/// Every instance of the configured suites, in a canonical order.
pub fn collect_instances(cfg: &SuiteConfig) -> Result<Vec<IdentityInstance>, VerifyError> {
    let mut out = Vec::new();
    for id in cfg.resolved_suites()? {
        let built = instances_for(&id, &cfg.ranges).ok_or_else(|| VerifyError::UnknownSuite(id.clone()))??;
        out.extend(built);
    }
    out.sort_by(|a, b| (&a.id, a.params.sort_key()).cmp(&(&b.id, b.params.sort_key())));
    Ok(out)
}

fn eval_expr(ev: &Evaluator, e: &Expr, tol: f64) -> Result<EvalResult, EvalError> {
    with_constant(e, ev.eval_sum(&e.sum, tol)?, tol)
}

fn with_constant(e: &Expr, r: EvalResult, tol: f64) -> Result<EvalResult, EvalError> {
    if e.constant == RBig::ZERO {
        return Ok(r);
    }
    let prec = real::precision_for(tol) + 16;
    let c = real::from_rational(&e.constant, prec);
    let magnitude = rational::abs(&e.constant).to_f64_fast() + r.to_f64().abs() + r.error_bound;
    Ok(EvalResult::new(c + &r.value, r.error_bound + 4.0 * magnitude * real::unit_roundoff(prec)))
}

fn sign_free_diff(a: &Real, b: &Real) -> f64 {
    let d = real::to_f64(&(a - b));
    d.abs()
}

/// Check one instance. Numeric: `|lhs − rhs| ≤ tol + err(lhs) + err(rhs)`.
/// Symbolic: exact equality. Exploration: the two evaluations agree within
/// twice the looser tolerance.
pub fn check_instance(ev: &Evaluator, inst: &IdentityInstance, tol: f64) -> InstanceRecord {
    let start = Instant::now();
    let mut rec = InstanceRecord {
        id: inst.id.clone(),
        params: params_json(&inst.params),
        params_text: inst.params.to_string(),
        exactness: inst.exactness.as_str(),
        lhs_terms: inst.lhs.sum.len(),
        rhs_terms: inst.rhs.sum.len(),
        lhs_value: None,
        rhs_value: None,
        residual: None,
        error_bound: None,
        tolerance: tol,
        pass: false,
        error: None,
        wall_ms: 0.0,
    };
    match inst.exactness {
        Exactness::Symbolic => {
            rec.pass = inst.holds_symbolically();
            if inst.lhs.sum.is_empty() && inst.rhs.sum.is_empty() {
                rec.lhs_value = Some(rational::format(&inst.lhs.constant));
                rec.rhs_value = Some(rational::format(&inst.rhs.constant));
            }
            if rec.pass {
                rec.residual = Some(0.0);
                rec.error_bound = Some(0.0);
            }
        }
        Exactness::Numeric => {
            let side = side_tolerance(tol);
            match eval_expr(ev, &inst.lhs, side).and_then(|l| Ok((l, eval_expr(ev, &inst.rhs, side)?))) {
                Ok((l, r)) => {
                    let digits = real::digits_for(side);
                    let residual = sign_free_diff(&l.value, &r.value);
                    let bound = l.error_bound + r.error_bound;
                    rec.lhs_value = Some(l.to_fixed(digits));
                    rec.rhs_value = Some(r.to_fixed(digits));
                    rec.residual = Some(residual);
                    rec.error_bound = Some(bound);
                    rec.pass = residual <= tol + bound;
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
        }
        Exactness::Exploration => {
            let (loose, tight) = exploration_tolerances(tol);
            // the loose value is computed afresh so a tighter cached entry
            // cannot stand in for it
            let loose_value = ev.eval_sum_uncached(&inst.lhs.sum, loose).and_then(|r| with_constant(&inst.lhs, r, loose));
            match loose_value.and_then(|l| Ok((l, eval_expr(ev, &inst.rhs, tight)?))) {
                Ok((l, r)) => {
                    let residual = sign_free_diff(&l.value, &r.value);
                    rec.lhs_value = Some(l.to_fixed(real::digits_for(loose)));
                    rec.rhs_value = Some(r.to_fixed(real::digits_for(tight)));
                    rec.residual = Some(residual);
                    rec.error_bound = Some(l.error_bound + r.error_bound);
                    rec.pass = residual <= 2.0 * loose;
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
        }
    }
    rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

fn requests_for(ev: &Evaluator, inst: &IdentityInstance, tol: f64) -> Vec<(crate::index::SignedIndex, f64)> {
    let sides = [&inst.lhs.sum, &inst.rhs.sum];
    match inst.exactness {
        Exactness::Symbolic => Vec::new(),
        Exactness::Numeric => {
            let side = side_tolerance(tol);
            sides.iter().filter(|s| !s.is_empty()).flat_map(|s| ev.sum_requests(s, side)).collect()
        }
        Exactness::Exploration => {
            let (_, tight) = exploration_tolerances(tol);
            let mut v = Vec::new();
            if !inst.rhs.sum.is_empty() {
                v.extend(ev.sum_requests(&inst.rhs.sum, tight));
            }
            v
        }
    }
}

/// Check every instance: one parallel batch for all index values that are
/// not cached yet, then the instances themselves on the same executor.
pub fn run_instances(ev: &Evaluator, instances: &[IdentityInstance], tol: f64) -> Vec<InstanceRecord> {
    let requests: Vec<_> = instances.iter().flat_map(|i| requests_for(ev, i, tol)).collect();
    // A failing index is reported against its instance below.
    let _ = ev.prefetch(&requests);
    ev.exec().map(instances, |inst| check_instance(ev, inst, tol))
}

pub fn summarize(results: &[InstanceRecord]) -> Summary {
    let mut by_id: BTreeMap<String, Counts> = BTreeMap::new();
    for r in results {
        let c = by_id.entry(r.id.clone()).or_default();
        if r.pass {
            c.passed += 1;
        } else {
            c.failed += 1;
        }
    }
    let passed = results.iter().filter(|r| r.pass).count();
    Summary { total: results.len(), passed, failed: results.len() - passed, by_id }
}

pub fn run(cfg: &SuiteConfig, ev: &Evaluator) -> Result<VerificationReport, VerifyError> {
    cfg.validate()?;
    let start = Instant::now();
    let suites = cfg.resolved_suites()?;
    let instances = collect_instances(cfg)?;
    let before = ev.counters();
    let results = run_instances(ev, &instances, cfg.tol);
    let after = ev.counters();
    Ok(VerificationReport {
        report_version: REPORT_VERSION,
        config: cfg.echo(&suites),
        summary: summarize(&results),
        results,
        run: RunInfo {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            executor: ev.exec().describe(),
            cache_hits: after.hits - before.hits,
            cache_misses: after.misses - before.misses,
        },
    })
}

//! Certified numerical evaluation of indices and formal sums.

mod cache;
pub mod convolution;
pub mod direct;
pub mod real;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

pub use cache::{tier_for, tier_tolerance, LenientLoad, ValueCache};
pub use real::Real;

use crate::algebra::{star_expand, AlgebraError, FormalSum};
use crate::index::SignedIndex;
use crate::par::Executor;
use crate::rational;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("divergent index {0}")]
    DivergentIndex(String),
    #[error("precision unreachable: {0}")]
    PrecisionUnreachable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cache file {path} is corrupt at line {line}: {reason}")]
    CacheCorrupt { path: String, line: usize, reason: String },
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl From<AlgebraError> for EvalError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::DivergentTerm(s) => EvalError::DivergentIndex(s),
            other => EvalError::InvalidArgument(other.to_string()),
        }
    }
}

/// A value with an absolute error bound: `|value − true| <= error_bound`.
#[derive(Debug, Clone)]
pub struct EvalResult {
    pub value: Real,
    pub error_bound: f64,
}

impl EvalResult {
    pub fn new(value: Real, error_bound: f64) -> Self {
        EvalResult { value, error_bound }
    }

    pub fn zero() -> Self {
        EvalResult { value: Real::ZERO, error_bound: 0.0 }
    }

    pub fn to_f64(&self) -> f64 {
        real::to_f64(&self.value)
    }

    /// Fixed-point text with `frac` digits after the point.
    pub fn to_fixed(&self, frac: usize) -> String {
        real::to_fixed(&self.value, frac)
    }

    /// Upper bound on `|self.value − other.value|`, in `f64`.
    pub fn abs_diff(&self, other: &EvalResult) -> f64 {
        let d = real::to_f64(&(&self.value - &other.value)).abs();
        d * (1.0 + 4.0 * f64::EPSILON) + f64::MIN_POSITIVE
    }

    /// Whether `x` lies inside `value ± (error_bound + slack)`.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (self.to_f64() - x).abs() <= self.error_bound + slack
    }
}

#[derive(Debug, Clone)]
pub struct EvalConfig {
    /// Tightest tolerance accepted.
    pub min_tolerance: f64,
    /// Series length budget of the convolution backend.
    pub max_series_terms: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { min_tolerance: 1e-30, max_series_terms: 4096 }
    }
}

/// Cache hit and miss counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheCounters {
    pub hits: u64,
    pub misses: u64,
}

/// Outcome of [`Evaluator::rebuild_cache`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RebuildReport {
    pub checked: usize,
    pub mismatched: usize,
}

/// Evaluates through a [`ValueCache`]; independent evaluations of a batch
/// run on the configured [`Executor`].
#[derive(Debug, Default)]
pub struct Evaluator {
    cache: ValueCache,
    exec: Executor,
    config: EvalConfig,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator::default()
    }

    pub fn with_cache(cache: ValueCache) -> Self {
        Evaluator { cache, ..Default::default() }
    }

    pub fn executor(mut self, exec: Executor) -> Self {
        self.exec = exec;
        self
    }

    pub fn config(mut self, config: EvalConfig) -> Self {
        self.config = config;
        self
    }

    pub fn exec(&self) -> &Executor {
        &self.exec
    }

    pub fn cache(&self) -> &ValueCache {
        &self.cache
    }

    pub fn counters(&self) -> CacheCounters {
        CacheCounters { hits: self.hits.load(Ordering::Relaxed), misses: self.misses.load(Ordering::Relaxed) }
    }

    fn check_tol(&self, tol: f64) -> Result<(), EvalError> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(EvalError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        if tol < self.config.min_tolerance {
            return Err(EvalError::PrecisionUnreachable(format!(
                "tolerance {tol:e} is below the supported minimum {:e}",
                self.config.min_tolerance
            )));
        }
        Ok(())
    }

    fn compute(&self, idx: &SignedIndex, tier: u32) -> Result<EvalResult, EvalError> {
        convolution::evaluate(idx, tier_tolerance(tier) / 2.0, self.config.max_series_terms)
    }

    /// `ζ(idx)` to within `tol`; starred indices go through their expansion.
    pub fn eval_index(&self, idx: &SignedIndex, tol: f64) -> Result<EvalResult, EvalError> {
        self.check_tol(tol)?;
        if idx.is_starred() {
            return self.eval_sum(&star_expand(idx)?, tol);
        }
        if !idx.is_admissible() {
            return Err(EvalError::DivergentIndex(idx.to_string()));
        }
        let tier = tier_for(tol);
        if let Some(hit) = self.cache.lookup(idx, tier) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(hit);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let fresh = self.compute(idx, tier)?;
        Ok(self.cache.store(idx, tier, &fresh))
    }

    /// `Σ c_i ζ(idx_i)`; each term gets `tol / (2 Σ|c_i|)`.
    pub fn eval_sum(&self, s: &FormalSum, tol: f64) -> Result<EvalResult, EvalError> {
        self.check_tol(tol)?;
        if s.is_empty() {
            return Ok(EvalResult::zero());
        }
        let batch = self.sum_requests(s, tol);
        let term_tol = batch[0].1;
        self.prefetch(&batch)?;
        self.combine(s, tol, |idx| self.eval_index(idx, term_tol))
    }

    /// As [`Evaluator::eval_sum`], but every term is computed afresh at its
    /// own tier; the cache is neither read nor written.
    pub fn eval_sum_uncached(&self, s: &FormalSum, tol: f64) -> Result<EvalResult, EvalError> {
        self.check_tol(tol)?;
        if s.is_empty() {
            return Ok(EvalResult::zero());
        }
        let batch = self.sum_requests(s, tol);
        let tier = tier_for(batch[0].1);
        let fresh = self.exec.map(&batch, |(idx, _)| self.compute(idx, tier));
        let mut values: BTreeMap<&SignedIndex, EvalResult> = BTreeMap::new();
        for ((idx, _), r) in batch.iter().zip(fresh) {
            values.insert(idx, r?);
        }
        self.combine(s, tol, |idx| Ok(values[idx].clone()))
    }

    fn combine<F>(&self, s: &FormalSum, tol: f64, mut value: F) -> Result<EvalResult, EvalError>
    where
        F: FnMut(&SignedIndex) -> Result<EvalResult, EvalError>,
    {
        let prec = real::precision_for(tol) + 16;
        let mut acc = real::from_int(0, prec);
        let mut bound = 0.0f64;
        let mut magnitude = 0.0f64;
        for (idx, c) in s.iter() {
            let r = value(idx)?;
            let abs_c = rational::abs(c).to_f64_fast() * (1.0 + 1e-12);
            acc = &acc + &(real::from_rational(c, prec) * &r.value);
            bound += abs_c * r.error_bound;
            magnitude += abs_c * (r.to_f64().abs() + r.error_bound);
        }
        bound += magnitude * (s.len() as f64 + 3.0) * real::unit_roundoff(prec);
        let bound = bound * (1.0 + 1e-12);
        if bound > tol {
            return Err(EvalError::PrecisionUnreachable(format!(
                "combined bound {bound:e} exceeds tolerance {tol:e}"
            )));
        }
        Ok(EvalResult::new(acc, bound))
    }

    /// The per-term evaluations [`Evaluator::eval_sum`] makes for `s` at
    /// `tol`, for batching ahead of time with [`Evaluator::prefetch`].
    pub fn sum_requests(&self, s: &FormalSum, tol: f64) -> Vec<(SignedIndex, f64)> {
        let total = rational::abs(&s.abs_coefficient_sum()).to_f64_fast() * (1.0 + 1e-12);
        let term_tol = (tol / (2.0 * total.max(1.0))).max(self.config.min_tolerance);
        s.indices().map(|i| (i.clone(), term_tol)).collect()
    }

    pub fn eval_star(&self, idx: &SignedIndex, tol: f64) -> Result<EvalResult, EvalError> {
        self.eval_index(&idx.clone().with_star(true), tol)
    }

    /// `ξ_k(s) = ζ★({1}^{s−1}, k+1)`.
    pub fn xi(&self, k: u32, s: u32, tol: f64) -> Result<EvalResult, EvalError> {
        if k == 0 || s == 0 {
            return Err(EvalError::InvalidArgument(format!("xi needs k, s >= 1, got k={k}, s={s}")));
        }
        let mut exps = vec![1u32; s as usize - 1];
        exps.push(k + 1);
        self.eval_star(&SignedIndex::star(exps), tol)
    }

    /// Evaluate every cache miss among `requests` in one parallel batch.
    /// Starred indices are expanded first; each plain index is evaluated
    /// once at the tightest tier requested for it.
    pub fn prefetch(&self, requests: &[(SignedIndex, f64)]) -> Result<(), EvalError> {
        let mut wanted: BTreeMap<SignedIndex, u32> = BTreeMap::new();
        let mut note = |idx: SignedIndex, tol: f64| {
            let t = tier_for(tol.max(self.config.min_tolerance));
            let e = wanted.entry(idx).or_insert(t);
            *e = (*e).max(t);
        };
        for (idx, tol) in requests {
            self.check_tol(*tol)?;
            if idx.is_starred() {
                let expanded = star_expand(idx)?;
                let total = expanded.abs_coefficient_sum().to_f64_fast();
                for term in expanded.indices() {
                    note(term.clone(), tol / (2.0 * total.max(1.0)));
                }
            } else if !idx.is_admissible() {
                return Err(EvalError::DivergentIndex(idx.to_string()));
            } else {
                note(idx.clone(), *tol);
            }
        }
        let missing: Vec<(SignedIndex, u32)> =
            wanted.into_iter().filter(|(idx, tier)| self.cache.lookup(idx, *tier).is_none()).collect();
        let results = self.exec.map(&missing, |(idx, tier)| self.compute(idx, *tier));
        for ((idx, tier), r) in missing.iter().zip(results) {
            self.misses.fetch_add(1, Ordering::Relaxed);
            self.cache.store(idx, *tier, &r?);
        }
        Ok(())
    }

    /// Recompute every cache entry at its tier, replacing entries that do
    /// not agree within the two bounds, then rewrite the cache file.
    pub fn rebuild_cache(&self) -> Result<RebuildReport, EvalError> {
        let entries = self.cache.entries();
        let fresh = self.exec.map(&entries, |(idx, tier, _)| self.compute(idx, *tier));
        let mut report = RebuildReport { checked: entries.len(), mismatched: 0 };
        for ((idx, tier, cached), f) in entries.iter().zip(fresh) {
            let f = f?;
            if cached.abs_diff(&f) > cached.error_bound + f.error_bound {
                report.mismatched += 1;
                self.cache.replace(idx, *tier, &f);
            }
        }
        self.cache.flush_replacing()?;
        Ok(report)
    }
}

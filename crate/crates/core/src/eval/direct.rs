//! Direct nested partial sums in `f64`, with a rigorous truncation bound.
//!
//! `S_j(k) = S_j(k-1) + S_{j-1}(k-1) · σ_j^k / k^{s_j}`, cost `O(N · depth)`.
//! Slow, but independent of the integral representation used by the
//! convolution backend, so it serves as the reference oracle.

use super::real::Real;
use super::{EvalError, EvalResult};
use crate::index::SignedIndex;

/// `∫_N^∞ (1 + ln x)^d x^{-1-a} dx / d!`.
fn log_power_tail(n: f64, d: u32, a: f64) -> f64 {
    let l = 1.0 + n.ln();
    let mut sum = 0.0;
    let mut falling = 1.0; // d!/(d-i)!
    for i in 0..=d {
        sum += falling * l.powi((d - i) as i32) / a.powi(i as i32 + 1);
        falling *= (d - i) as f64;
    }
    let d_fact: f64 = (1..=d).map(f64::from).product();
    sum * n.powf(-a) / d_fact
}

/// Upper bound for the tail `|ζ − S_r(N)|`.
///
/// Inner sums are bounded by `H_{k-1}^d / d! <= (1 + ln k)^d / d!`. For a
/// last exponent `s >= 2` the tail is compared with an integral; for a
/// barred last part consecutive terms are paired (summation by parts).
pub fn tail_bound(idx: &SignedIndex, n: u64) -> f64 {
    let parts = idx.parts();
    let d = parts.len() as u32 - 1;
    let last = parts[parts.len() - 1];
    let s = last.exponent as f64;
    let nf = n as f64;
    // the integrands decrease from here on
    if nf < (f64::from(d) + 1.0).exp() {
        return f64::INFINITY;
    }
    let mut best = f64::INFINITY;
    if last.exponent >= 2 {
        best = log_power_tail(nf, d, s - 1.0);
    }
    if last.sign.is_minus() {
        let mut abel = s * log_power_tail(nf, d, s);
        if d >= 1 {
            abel += log_power_tail(nf, d - 1, s);
        }
        // the boundary term at N+1
        abel += (1.0 + (nf + 1.0).ln()).powi(d as i32) / (nf + 1.0).powf(s);
        best = best.min(abel);
    }
    best
}

/// Smallest power-of-two-ish `N` with `tail_bound <= target`, if any below
/// `max_terms`.
fn terms_for(idx: &SignedIndex, target: f64, max_terms: u64) -> Option<u64> {
    let mut n = 16u64;
    while tail_bound(idx, n) > target {
        if n >= max_terms {
            return None;
        }
        n = (n * 2).min(max_terms);
    }
    // shrink by bisection between n/2 and n
    let (mut lo, mut hi) = (n / 2, n);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail_bound(idx, mid) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Evaluate by direct summation. Only tolerances well above `f64`
/// resolution are reachable.
pub fn evaluate(idx: &SignedIndex, tol: f64, max_terms: u64) -> Result<EvalResult, EvalError> {
    if idx.is_starred() {
        return Err(EvalError::PrecisionUnreachable(format!(
            "direct summation takes unstarred indices, got {idx}"
        )));
    }
    if !idx.is_admissible() {
        return Err(EvalError::DivergentIndex(idx.to_string()));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(EvalError::PrecisionUnreachable(format!("tolerance {tol} is not a positive number")));
    }
    let parts = idx.parts();
    let r = parts.len();
    let n = terms_for(idx, tol / 2.0, max_terms).ok_or_else(|| {
        EvalError::PrecisionUnreachable(format!("{idx} at tolerance {tol:e} needs more than {max_terms} terms"))
    })?;
    let mut s = vec![0.0f64; r + 1];
    s[0] = 1.0;
    let mut magnitude = 1.0f64;
    for k in 1..=n {
        let kf = k as f64;
        for j in (1..=r).rev() {
            let p = parts[j - 1];
            let mut t = s[j - 1] / kf.powi(p.exponent as i32);
            if p.sign.is_minus() && k % 2 == 1 {
                t = -t;
            }
            s[j] += t;
            magnitude = magnitude.max(s[j].abs());
        }
    }
    // each update is one division, one power and one addition
    let u = f64::EPSILON;
    let rounding = (n as f64) * (r as f64) * (8.0 + f64::from(idx.weight())) * u * magnitude.max(1.0);
    let bound = (tail_bound(idx, n) + rounding) * (1.0 + 1e-9);
    if bound > tol {
        return Err(EvalError::PrecisionUnreachable(format!(
            "{idx}: rounding in double precision exceeds tolerance {tol:e}"
        )));
    }
    let value = Real::try_from(s[r]).expect("partial sums are finite");
    Ok(EvalResult::new(value, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bounds_shrink() {
        let idx = SignedIndex::plain([1, 2]);
        assert!(tail_bound(&idx, 10_000) < tail_bound(&idx, 1000));
        let alt = SignedIndex::alt(&[-1]);
        assert!(tail_bound(&alt, 1000) < 2e-3);
    }

    #[test]
    fn zeta_two() {
        let r = evaluate(&SignedIndex::plain([2]), 1e-6, 10_000_000).unwrap();
        assert!(r.error_bound <= 1e-6);
        assert!((r.to_f64() - std::f64::consts::PI.powi(2) / 6.0).abs() <= r.error_bound);
    }

    #[test]
    fn alternating_log_two() {
        let r = evaluate(&SignedIndex::alt(&[-1]), 1e-5, 10_000_000).unwrap();
        assert!((r.to_f64() + std::f64::consts::LN_2).abs() <= r.error_bound);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            evaluate(&SignedIndex::plain([1, 2]), 1e-9, 1000),
            Err(EvalError::PrecisionUnreachable(_))
        ));
    }
}

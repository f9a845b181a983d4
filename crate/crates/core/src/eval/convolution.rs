//! Geometric-convergence backend.
//!
//! An admissible index is written as an iterated integral over `[0, 1]` of
//! the forms `x_c = dt/(c - t)` and `x_0 = dt/t`. Splitting the path at
//! `1/2` turns the integral into a convolution of two iterated integrals
//! whose power series converge like `2^-K`.

use super::real::{self, Real};
use super::{EvalError, EvalResult};
use crate::index::SignedIndex;

/// A letter after the change of variables: either `dt/t` or
/// `dt/(c - t)` with `|c| >= 2`, carrying a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Form {
    Zero,
    Pole(i32),
}

/// Letters `x_c, x_0^{s-1}` for each part, innermost first; `c` is the
/// product of the signs from that part outwards.
fn letters(idx: &SignedIndex) -> Vec<Option<i32>> {
    let parts = idx.parts();
    let mut out = Vec::with_capacity(idx.weight() as usize);
    let mut c = 1i32;
    let mut tails = vec![0i32; parts.len()];
    for (j, p) in parts.iter().enumerate().rev() {
        c *= p.sign.as_i32();
        tails[j] = c;
    }
    for (p, &cj) in parts.iter().zip(&tails) {
        out.push(Some(cj));
        out.extend(std::iter::repeat_n(None, p.exponent as usize - 1));
    }
    out
}

/// `t = s/2` on `[0, 1/2]`.
fn near_half(word: &[Option<i32>]) -> Vec<(Form, bool)> {
    word.iter()
        .map(|l| match l {
            None => (Form::Zero, false),
            Some(c) => (Form::Pole(2 * c), false),
        })
        .collect()
}

/// `t = 1 - s/2` on `[1/2, 1]`, read backwards.
fn far_half(word: &[Option<i32>]) -> Vec<(Form, bool)> {
    word.iter()
        .rev()
        .map(|l| match l {
            None => (Form::Pole(2), false),
            Some(1) => (Form::Zero, false),
            Some(_) => (Form::Pole(4), true),
        })
        .collect()
}

/// Values of the iterated integrals of every prefix of `forms`, truncated
/// at `n_terms`. Entry `j` is the prefix of length `j`; entry 0 is 1.
fn prefix_values(forms: &[(Form, bool)], n_terms: usize, inv_k: &[Real], prec: usize) -> Vec<Real> {
    let one = real::from_int(1, prec);
    let zero = real::from_int(0, prec);
    let mut out = Vec::with_capacity(forms.len() + 1);
    out.push(one.clone());
    if forms.is_empty() {
        return out;
    }
    let mut a = vec![zero.clone(); n_terms + 1];
    let mut negative = false;
    for (j, &(form, flip)) in forms.iter().enumerate() {
        negative ^= flip;
        match form {
            Form::Zero => {
                debug_assert!(j > 0, "words start with a pole");
                for k in 1..=n_terms {
                    a[k] = &a[k] * &inv_k[k];
                }
            }
            Form::Pole(c) => {
                let inv_c = real::signed_pow2(c < 0, -(c.unsigned_abs().trailing_zeros() as isize));
                if j == 0 {
                    let mut pw = one.clone();
                    for k in 1..=n_terms {
                        pw = &pw * &inv_c;
                        a[k] = &pw * &inv_k[k];
                    }
                } else {
                    let mut b = zero.clone();
                    let mut prev = a[0].clone();
                    for k in 1..=n_terms {
                        b = (&b + &prev) * &inv_c;
                        prev = std::mem::replace(&mut a[k], &b * &inv_k[k]);
                    }
                }
            }
        }
        let mut sum = zero.clone();
        for v in &a[1..] {
            sum = &sum + v;
        }
        out.push(if negative { -sum } else { sum });
    }
    out
}

/// Series length so that the truncation error of the whole convolution
/// stays below `tol / 4`.
fn terms_for(tol: f64, weight: usize) -> f64 {
    (12.0 * (weight as f64 + 1.0) / tol).log2().ceil().max(4.0)
}

/// Evaluate an admissible, unstarred index to absolute accuracy `tol`.
pub fn evaluate(idx: &SignedIndex, tol: f64, max_terms: usize) -> Result<EvalResult, EvalError> {
    debug_assert!(!idx.is_starred());
    if !idx.is_admissible() {
        return Err(EvalError::DivergentIndex(idx.to_string()));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(EvalError::PrecisionUnreachable(format!("tolerance {tol} is not a positive number")));
    }
    let word = letters(idx);
    let n = word.len();
    let n_terms = terms_for(tol, n);
    if n_terms > max_terms as f64 {
        return Err(EvalError::PrecisionUnreachable(format!(
            "{idx} at tolerance {tol:e} needs {n_terms} series terms, budget is {max_terms}"
        )));
    }
    let n_terms = n_terms as usize;
    let prec = real::precision_for(tol) + 2 * (usize::BITS - n_terms.leading_zeros()) as usize;
    let one = real::from_int(1, prec);
    let inv_k: Vec<Real> =
        (0..=n_terms).map(|k| if k == 0 { one.clone() } else { &one / &real::from_int(k as i64, prec) }).collect();

    let left = prefix_values(&near_half(&word), n_terms, &inv_k, prec);
    let right = prefix_values(&far_half(&word), n_terms, &inv_k, prec);
    let mut value = real::from_int(0, prec);
    for j in 0..=n {
        value = &value + &(&left[j] * &right[n - j]);
    }

    // Every coefficient is at most 2^-K in size, so each truncated word
    // value is within 2^-N of its limit and at most 1 in size.
    let u = real::unit_roundoff(prec);
    let nt = n_terms as f64;
    let per_word = 2f64.powi(-(n_terms as i32)) + 4.0 * (n as f64 + 2.0) * (nt + 2.0) * (nt + 2.0) * u;
    let per_product = 2.0 * per_word + per_word * per_word + 2.0 * u;
    let bound = (n as f64 + 1.0) * per_product * (1.0 + 1e-12) + (n as f64 + 2.0) * 4.0 * u;
    Ok(EvalResult::new(value, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str, tol: f64) -> (f64, f64) {
        let r = evaluate(&s.parse().unwrap(), tol, 10_000).unwrap();
        (r.to_f64(), r.error_bound)
    }

    #[test]
    fn letters_follow_sign_products() {
        let w = letters(&SignedIndex::alt(&[-1, 2, -2]));
        assert_eq!(w, vec![Some(1), Some(-1), None, Some(-1), None]);
    }

    #[test]
    fn classical_values() {
        let cases = [
            ("z(2)", std::f64::consts::PI.powi(2) / 6.0),
            ("z(-1)", -std::f64::consts::LN_2),
            ("z(1,2)", 1.2020569031595942),
            ("z(3)", 1.2020569031595942),
            ("z(-2)", -std::f64::consts::PI.powi(2) / 12.0),
        ];
        for (s, expected) in cases {
            let (v, e) = eval(s, 1e-14);
            assert!(e <= 1e-14, "{s}: bound {e}");
            assert!((v - expected).abs() < 1e-15, "{s}: {v} vs {expected}");
        }
    }

    #[test]
    fn rejects_divergent() {
        assert!(matches!(
            evaluate(&SignedIndex::plain([2, 1]), 1e-10, 1000),
            Err(EvalError::DivergentIndex(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        assert!(matches!(
            evaluate(&SignedIndex::plain([2]), 1e-30, 50),
            Err(EvalError::PrecisionUnreachable(_))
        ));
    }
}

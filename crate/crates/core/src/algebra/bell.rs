//! Modified Bell polynomials, `exp(Σ x_k z^k / k) = Σ P_m(x_1..x_m) z^m`.

use dashu_int::UBig;
use dashu_ratio::RBig;

use super::FormalSum;
use crate::rational::factorial;

/// One monomial of `P_m`: `coef · Π x_j^{k_j}`, listed as `(j, k_j)` with
/// `k_j > 0` (1-based `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellMonomial {
    pub coef: RBig,
    pub powers: Vec<(usize, u32)>,
}

/// Monomials of `P_m` from the sum over `k_1 + 2k_2 + ⋯ + m k_m = m`.
pub fn bell_monomials(m: usize) -> Vec<BellMonomial> {
    let mut out = Vec::new();
    let mut ks = vec![0u32; m + 1];
    fill(m, m, &mut ks, &mut out);
    out
}

fn fill(j: usize, remaining: usize, ks: &mut Vec<u32>, out: &mut Vec<BellMonomial>) {
    if j == 0 {
        if remaining == 0 {
            let mut den = UBig::ONE;
            let mut powers = Vec::new();
            for (i, &k) in ks.iter().enumerate().skip(1) {
                if k > 0 {
                    den *= factorial(k as u64) * UBig::from(i as u64).pow(k as usize);
                    powers.push((i, k));
                }
            }
            out.push(BellMonomial { coef: RBig::from_parts(1.into(), den), powers });
        }
        return;
    }
    for k in 0..=(remaining / j) as u32 {
        ks[j] = k;
        fill(j - 1, remaining - j * k as usize, ks, out);
    }
    ks[j] = 0;
}

/// Values the polynomials can be evaluated over.
pub trait BellValue: Clone {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &RBig) -> Self;
}

impl BellValue for RBig {
    fn one() -> Self {
        RBig::ONE
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &RBig) -> Self {
        self * c
    }
}

impl BellValue for f64 {
    fn one() -> Self {
        1.0
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &RBig) -> Self {
        self * c.to_f64_fast()
    }
}

/// `P_m(x_1, …, x_m)`; `xs` may be longer than `m`.
///
/// # Panics
/// If `xs.len() < m`.
pub fn bell_p<T: BellValue>(m: usize, xs: &[T]) -> T {
    assert!(xs.len() >= m, "P_{m} needs {m} arguments, got {}", xs.len());
    if m == 0 {
        return T::one();
    }
    let mut acc: Option<T> = None;
    for mono in bell_monomials(m) {
        let term = monomial_value(&mono, xs, |a, b| a.mul(b)).scale(&mono.coef);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.expect("m >= 1 has at least one monomial")
}

fn monomial_value<T: Clone>(mono: &BellMonomial, xs: &[T], mul: impl Fn(&T, &T) -> T) -> T {
    let mut acc: Option<T> = None;
    for &(j, k) in &mono.powers {
        for _ in 0..k {
            acc = Some(match acc {
                None => xs[j - 1].clone(),
                Some(a) => mul(&a, &xs[j - 1]),
            });
        }
    }
    acc.expect("every monomial of P_m, m >= 1, has a factor")
}

/// `P_m` over formal sums, products taken by stuffle. Requires `m >= 1`
/// since a formal sum cannot hold the constant 1.
pub fn bell_p_formal(m: usize, xs: &[FormalSum]) -> FormalSum {
    assert!(m >= 1 && xs.len() >= m);
    let mut out = FormalSum::zero();
    for mono in bell_monomials(m) {
        out += &monomial_value(&mono, xs, |a, b| a.stuffle(b)).scaled(&mono.coef);
    }
    out
}

/// Both sides of `P_n(h_1..h_n) = Σ_{k1 ≤ ℓ_1 ≤ ⋯ ≤ ℓ_n ≤ k2} 1/(ℓ_1⋯ℓ_n)` with
/// `h_j = Σ_{i=k1}^{k2} i^{-j}`, exactly.
pub fn bell_harmonic(k1: u64, k2: u64, n: usize) -> (RBig, RBig) {
    assert!(1 <= k1 && k1 <= k2, "need 1 <= k1 <= k2");
    let h: Vec<RBig> = (1..=n as u32)
        .map(|j| {
            (k1..=k2).fold(RBig::ZERO, |acc, i| {
                acc + RBig::from_parts(1.into(), UBig::from(i).pow(j as usize))
            })
        })
        .collect();
    let lhs = bell_p(n, &h);
    let rhs = nondecreasing_sum(k1, k2, n);
    (lhs, rhs)
}

fn nondecreasing_sum(lo: u64, hi: u64, n: usize) -> RBig {
    if n == 0 {
        return RBig::ONE;
    }
    // S(n, l) = Σ_{ℓ ≥ l} 1/ℓ · S(n-1, ℓ) over lo..=hi
    let mut prev: Vec<RBig> = vec![RBig::ONE; (hi - lo + 1) as usize];
    for _ in 0..n {
        let mut cur = vec![RBig::ZERO; prev.len()];
        let mut running = RBig::ZERO;
        for i in (0..prev.len()).rev() {
            running += &prev[i] / RBig::from(lo + i as u64);
            cur[i] = running.clone();
        }
        prev = cur;
    }
    prev[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn small_polynomials() {
        let x = [ratio(3, 1), ratio(5, 1), ratio(7, 1)];
        assert_eq!(bell_p::<RBig>(0, &[]), RBig::ONE);
        assert_eq!(bell_p(1, &x), ratio(3, 1));
        // (x1^2 + x2) / 2
        assert_eq!(bell_p(2, &x), ratio(9 + 5, 2));
        // (x1^3 + 3 x1 x2 + 2 x3) / 6
        assert_eq!(bell_p(3, &x), ratio(27 + 45 + 14, 6));
    }

    #[test]
    fn monomial_counts_are_partition_numbers() {
        let p = [1, 1, 2, 3, 5, 7, 11, 15];
        for (m, &count) in p.iter().enumerate() {
            assert_eq!(bell_monomials(m).len(), count);
        }
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(bell_harmonic(1, 1, 3), (RBig::ONE, RBig::ONE));
        assert_eq!(bell_harmonic(1, 2, 2), (ratio(7, 4), ratio(7, 4)));
        assert_eq!(bell_harmonic(2, 3, 1), (ratio(5, 6), ratio(5, 6)));
    }

    #[test]
    fn nondecreasing_sum_matches_brute_force() {
        fn brute(lo: u64, hi: u64, n: usize, start: u64) -> RBig {
            if n == 0 {
                return RBig::ONE;
            }
            (start.max(lo)..=hi).fold(RBig::ZERO, |acc, l| acc + brute(lo, hi, n - 1, l) / RBig::from(l))
        }
        for (lo, hi, n) in [(1, 3, 3), (2, 5, 2), (3, 3, 4), (1, 4, 4)] {
            assert_eq!(nondecreasing_sum(lo, hi, n), brute(lo, hi, n, lo));
        }
    }
}

//! Modified Bell polynomials evaluated at zeta values and harmonic sums, and
//! instances of the reflection formula.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{one, z, zs, Expr, IdentityError, IdentityInstance, Params};
use crate::algebra::{bell_harmonic, bell_p_formal, reflection_instance, FormalSum};
use crate::rational::{int, neg_one_pow};

/// `P_n(ζ(2), −ζ(4), …, (−1)^{n+1} ζ(2n)) = ζ({2}^n)`, or with all signs
/// positive, `ζ★({2}^n)`. Products are taken by stuffle.
pub fn bell_zeta_pair(n: u32, star: bool) -> Result<IdentityInstance, IdentityError> {
    if n == 0 {
        return Err(IdentityError::ParameterOutOfRange("bell-zeta needs n >= 1".into()));
    }
    let xs: Vec<FormalSum> = (1..=n)
        .map(|k| {
            let sign = if star { 1 } else { neg_one_pow((k + 1).into()) };
            one(z([2 * k])).scaled(&int(sign))
        })
        .collect();
    let lhs = bell_p_formal(n as usize, &xs);
    let twos = std::iter::repeat_n(2, n as usize);
    let rhs = if star { FormalSum::single(zs(twos))? } else { one(z(twos)) };
    let params = Params::new().int("n", n).text("kind", if star { "star" } else { "plain" });
    Ok(IdentityInstance::numeric("bell-zeta", params, lhs, rhs))
}

/// `P_n(h_1, …, h_n) = Σ_{k1 ≤ ℓ_1 ≤ ⋯ ≤ ℓ_n ≤ k2} 1/(ℓ_1⋯ℓ_n)` with
/// `h_j = Σ_{i=k1}^{k2} i^{−j}`, both sides exact rationals.
pub fn bell_harmonic_pair(k1: u64, k2: u64, n: u32) -> Result<IdentityInstance, IdentityError> {
    if k1 == 0 || k1 > k2 {
        return Err(IdentityError::ParameterOutOfRange(format!("need 1 <= k1 <= k2, got k1={k1}, k2={k2}")));
    }
    let (lhs, rhs) = bell_harmonic(k1, k2, n as usize);
    let params = Params::new().int("k1", k1 as i64).int("k2", k2 as i64).int("n", n);
    Ok(IdentityInstance::symbolic("bell-harmonic", params, Expr::constant(lhs), Expr::constant(rhs)))
}

/// `ζ(α_1..α_r) + (−1)^r ζ★(α_r..α_1) = Σ_k (−1)^{k+1} ζ★(α_k..α_1) ζ(α_{k+1}..α_r)`.
pub fn reflection_pair(alpha: &[u32]) -> Result<IdentityInstance, IdentityError> {
    let inst = reflection_instance(alpha)?;
    let params = Params::new().list("alpha", alpha.iter().map(|&a| a as i64));
    Ok(IdentityInstance::numeric("reflection", params, inst.lhs_sum(), inst.rhs_sum()))
}

/// `count` distinct random exponent lists of depth 2 to 4 and weight at
/// most 10 with first and last entries at least 2, drawn reproducibly from
/// `seed`, sorted.
pub fn reflection_sample(seed: u64, count: usize) -> Vec<Vec<u32>> {
    const MAX_WEIGHT: u32 = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut attempts = 0;
    while seen.len() < count && attempts < 100 * count.max(1) {
        attempts += 1;
        let depth = rng.gen_range(2..=4usize);
        let mut alpha = vec![1u32; depth];
        alpha[0] = 2;
        alpha[depth - 1] = 2;
        let spare = MAX_WEIGHT - alpha.iter().sum::<u32>();
        for _ in 0..rng.gen_range(0..=spare) {
            alpha[rng.gen_range(0..depth)] += 1;
        }
        seen.insert(alpha);
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_zeta_is_a_stuffle_identity() {
        // exp/log relation between power sums and elementary symmetric
        // functions holds in the quasi-shuffle algebra itself
        for n in 1..=4 {
            assert!(bell_zeta_pair(n, false).unwrap().holds_symbolically(), "n={n}");
            assert!(bell_zeta_pair(n, true).unwrap().holds_symbolically(), "n={n}");
        }
        assert!(bell_zeta_pair(0, false).is_err());
    }

    #[test]
    fn harmonic_pairs_hold() {
        for k2 in 1..=4 {
            for n in 0..=3 {
                assert!(bell_harmonic_pair(1, k2, n).unwrap().holds_symbolically());
            }
        }
        assert!(bell_harmonic_pair(3, 2, 1).is_err());
    }

    #[test]
    fn sample_is_reproducible_and_valid() {
        let a = reflection_sample(7, 20);
        assert_eq!(a, reflection_sample(7, 20));
        assert_eq!(a.len(), 20);
        for alpha in &a {
            assert!((2..=4).contains(&alpha.len()));
            assert!(alpha.iter().sum::<u32>() <= 10);
            assert!(alpha[0] >= 2 && *alpha.last().unwrap() >= 2);
        }
        assert_ne!(a, reflection_sample(8, 20));
    }

    #[test]
    fn reflection_is_exact_after_expansion() {
        for alpha in reflection_sample(1, 20) {
            assert!(reflection_pair(&alpha).unwrap().holds_symbolically(), "{alpha:?}");
        }
        assert!(reflection_pair(&[1, 2]).is_err());
    }
}

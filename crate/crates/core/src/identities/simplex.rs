//! The four-fold integral `J_p`, its six simplex parts `𝕁(1)…𝕁(6)` and the
//! weighted sum formula they produce.

use dashu_ratio::RBig;

use super::{comps, one, ones, single, weight_w, z, zbar, zs, IdentityError, IdentityInstance, Params};
use crate::algebra::FormalSum;
use crate::rational::{int, pow2, ratio};

fn bumped(mut alpha: Vec<u32>) -> Vec<u32> {
    *alpha.last_mut().expect("nonempty composition") += 1;
    alpha
}

fn half_triangle(p: u32) -> RBig {
    ratio((p as i64 + 1) * (p as i64 + 2), 2)
}

/// `𝕁(j)` for `j = 1..=6` as an exact sum of MZVs.
pub fn j_part(j: u32, p: u32) -> Result<FormalSum, IdentityError> {
    let mut s = FormalSum::zero();
    match j {
        1 => {
            for m in 0..=p {
                let n = p - m;
                for a in 0..=m {
                    for b in 0..=m - a {
                        let c = m - a - b;
                        for u in 0..=n {
                            let v = n - u;
                            for alpha in comps(a + u + 1, a as usize + 1) {
                                for beta in comps(c + v + 1, c as usize + 1) {
                                    let parts = bumped(alpha.clone()).into_iter().chain(ones(b)).chain(bumped(beta));
                                    s.push(int(1), z(parts));
                                }
                            }
                        }
                    }
                }
            }
        }
        2 => {
            for c in 0..=p {
                for d in 0..=p - c {
                    let m = p - c - d;
                    s.push(int(if m.is_multiple_of(2) { 1 } else { -1 }), z([c + 2].into_iter().chain(ones(m)).chain([d + 2])));
                }
            }
        }
        3..=6 => {
            for m in 0..=p as usize {
                for alpha in comps(p + 3, m + 2) {
                    let mut w = RBig::ZERO;
                    match j {
                        3 => {
                            for a in 0..=m {
                                for b in 0..=m - a {
                                    w += weight_w(&alpha, a, b, m - a - b)?;
                                }
                            }
                        }
                        4 => {
                            for a in 0..=m {
                                w += weight_w(&alpha, a, m - a, 0)?;
                            }
                        }
                        5 => w = weight_w(&alpha, 0, m, 0)?,
                        _ => {
                            for b in 0..=m {
                                w += weight_w(&alpha, 0, b, m - b)?;
                            }
                        }
                    }
                    s.push(w, z(bumped(alpha)));
                }
            }
        }
        _ => return Err(IdentityError::ParameterOutOfRange(format!("simplex part j={j}, expected 1..=6"))),
    }
    Ok(s)
}

/// `J_p = 2((−1)^p − 1) ζ(p+2, ō2) + (p+2)(p+1+2^{−p−2}) ζ(p+4)`.
pub fn j_total_closed(p: u32) -> FormalSum {
    let mut s = FormalSum::zero();
    if p % 2 == 1 {
        s.push(int(-4), zbar(&[p as i64 + 2, -2]));
    }
    let pi = p as i64;
    s.push(int(pi + 2) * (int(pi + 1) + pow2(-pi - 2)), z([p + 4]));
    s
}

/// `𝕁(1) = (p(p+3)/2 + (p+3)/2^{p+2}) ζ(p+4)`.
pub fn j1_closed(p: u32) -> FormalSum {
    let pi = p as i64;
    single(ratio(pi * (pi + 3), 2) + int(pi + 3) * pow2(-pi - 2), z([p + 4]))
}

/// `𝕁(2) = 2((−1)^p − 1) ζ(p+2, ō2) + (1 − 2^{−p−2}) ζ(p+4)`.
pub fn j2_closed(p: u32) -> FormalSum {
    let mut s = FormalSum::zero();
    if p % 2 == 1 {
        s.push(int(-4), zbar(&[p as i64 + 2, -2]));
    }
    s.push(int(1) - pow2(-(p as i64) - 2), z([p + 4]));
    s
}

/// Sizes of the weighted sum: compositions enumerated and those with a
/// nonzero total weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MainTheoremCounts {
    pub considered: usize,
    pub surviving: usize,
}

/// Right side of the weighted sum formula, with the four weight families
/// written out in their expanded forms:
///
/// * `Σ_{a+b+c=m} W(a,b,c) = Σ_{a+b≤m} 2^{α_{a+1}+⋯+α_{a+b} − b} (2^{α_{a+b+1}−1} − 1)`
/// * `Σ_{a=0}^{m} 2^{σ(m+1) − σ(a) − (m−a+1)} (1 − 2^{1−α_{m+1}})`
/// * `Σ_{b=0}^{m} 2^{σ(b+1) − α_0 − (b+1)} (1 − 2^{1−α_{b+1}})`
/// * `2^{n+2−α_0} (1 − 2^{1−α_{m+1}})`
pub fn main_theorem_rhs(p: u32) -> (FormalSum, MainTheoremCounts) {
    let mut s = FormalSum::zero();
    let mut counts = MainTheoremCounts { considered: 0, surviving: 0 };
    for m in 0..=p as usize {
        let n = p as i64 - m as i64;
        for alpha in comps(p + 3, m + 2) {
            let al: Vec<i64> = alpha.iter().map(|&x| x as i64).collect();
            let sigma = |r: usize| -> i64 { al[..=r].iter().sum() };
            let vanish = |k: usize| int(1) - pow2(1 - al[k]);
            let mut w = RBig::ZERO;
            for a in 0..=m {
                for b in 0..=m - a {
                    let inner: i64 = al[a + 1..a + 1 + b].iter().sum();
                    w += pow2(inner - b as i64) * (pow2(al[a + b + 1] - 1) - int(1));
                }
            }
            for a in 0..=m {
                w += pow2(sigma(m + 1) - sigma(a) - (m - a + 1) as i64) * vanish(m + 1);
            }
            for b in 0..=m {
                w += pow2(sigma(b + 1) - al[0] - (b + 1) as i64) * vanish(b + 1);
            }
            w += pow2(n + 2 - al[0]) * vanish(m + 1);
            counts.considered += 1;
            if w != RBig::ZERO {
                counts.surviving += 1;
            }
            s.push(w, z(bumped(alpha)));
        }
    }
    (s, counts)
}

/// `((p+1)(p+2)/2) ζ(p+4)` against the weighted sum.
pub fn main_theorem(p: u32) -> IdentityInstance {
    let lhs = single(half_triangle(p), z([p + 4]));
    IdentityInstance::numeric("main-theorem", Params::new().int("p", p), lhs, main_theorem_rhs(p).0)
}

/// The weighted sum equals `𝕁(3) + ⋯ + 𝕁(6)` coefficient by coefficient.
pub fn main_theorem_symbolic(p: u32) -> Result<IdentityInstance, IdentityError> {
    let mut parts = FormalSum::zero();
    for j in 3..=6 {
        parts += &j_part(j, p)?;
    }
    Ok(IdentityInstance::symbolic("main-theorem-symbolic", Params::new().int("p", p), main_theorem_rhs(p).0, parts))
}

/// The three decomposition identities: all six parts against `J_p`,
/// parts 1–2 against `J_p − ((p+1)(p+2)/2) ζ(p+4)`, parts 3–6 against
/// `((p+1)(p+2)/2) ζ(p+4)`.
pub fn j_decomposition(p: u32) -> Result<Vec<IdentityInstance>, IdentityError> {
    let parts: Vec<FormalSum> = (1..=6).map(|j| j_part(j, p)).collect::<Result<_, _>>()?;
    let sum = |range: std::ops::RangeInclusive<usize>| {
        let mut s = FormalSum::zero();
        for j in range {
            s += &parts[j - 1];
        }
        s
    };
    let tri = single(half_triangle(p), z([p + 4]));
    let params = || Params::new().int("p", p);
    Ok(vec![
        IdentityInstance::numeric("j-decomp-total", params(), sum(1..=6), j_total_closed(p)),
        IdentityInstance::numeric("j-decomp-12", params(), sum(1..=2), j_total_closed(p) - tri.clone()),
        IdentityInstance::numeric("j-decomp-36", params(), sum(3..=6), tri),
    ])
}

/// `J_p = Σ_{m+n=p} (−1)^m Z₋(m) Z★₊(n)`, products by stuffle.
pub fn j_via_convolution(p: u32) -> FormalSum {
    let mut s = FormalSum::zero();
    for m in 0..=p {
        let term = super::z_minus(m).stuffle(&super::z_star_plus(p - m));
        s += &term.scaled(&int(if m % 2 == 0 { 1 } else { -1 }));
    }
    s
}

pub fn j_convolution_pair(p: u32) -> IdentityInstance {
    IdentityInstance::numeric("j-convolution", Params::new().int("p", p), j_via_convolution(p), j_total_closed(p))
}

/// `𝕁(1)` and `𝕁(2)` sums against their closed forms.
pub fn j_closed_pairs(p: u32) -> Result<Vec<IdentityInstance>, IdentityError> {
    let params = |part: i64| Params::new().int("p", p).int("part", part);
    Ok(vec![
        IdentityInstance::numeric("j-closed", params(1), j_part(1, p)?, j1_closed(p)),
        IdentityInstance::numeric("j-closed", params(2), j_part(2, p)?, j2_closed(p)),
    ])
}

/// `𝕁(1) = Σ_{m+n=p} Σ_{c+d=n} {ζ★(c+2, {1}^m, d+2) − ζ(p+4)}`.
pub fn j1_star_pair(p: u32) -> Result<IdentityInstance, IdentityError> {
    let mut rhs = FormalSum::zero();
    for m in 0..=p {
        let n = p - m;
        for c in 0..=n {
            rhs.add_term(int(1), zs([c + 2].into_iter().chain(ones(m)).chain([n - c + 2])))?;
            rhs.push(int(-1), z([p + 4]));
        }
    }
    Ok(IdentityInstance::numeric("j1-star", Params::new().int("p", p), j_part(1, p)?, rhs))
}

/// `𝕁(2) = Σ_{a+b+c+d=p} (−1)^b ζ★({1}^a, c+2) ζ({1}^b, d+2) − Σ_{c+d+m=p} ζ★(d+2, {1}^m, c+2)`.
pub fn j2_reflection_pair(p: u32) -> Result<IdentityInstance, IdentityError> {
    let mut rhs = FormalSum::zero();
    for a in 0..=p {
        for b in 0..=p - a {
            for c in 0..=p - a - b {
                let d = p - a - b - c;
                let star = FormalSum::single(zs(ones(a).chain([c + 2])))?;
                let plain = one(z(ones(b).chain([d + 2])));
                rhs += &star.stuffle(&plain).scaled(&int(if b % 2 == 0 { 1 } else { -1 }));
            }
        }
    }
    for c in 0..=p {
        for d in 0..=p - c {
            let m = p - c - d;
            rhs.add_term(int(-1), zs([d + 2].into_iter().chain(ones(m)).chain([c + 2])))?;
        }
    }
    Ok(IdentityInstance::numeric("j2-reflection", Params::new().int("p", p), j_part(2, p)?, rhs))
}

/// `Σ_{a+b+m=p} ζ★(a+2, {1}^m, b+2) = (p² + 3p + 1 + (p+3)/2^{p+2}) ζ(p+4)`.
pub fn star_double_sum_pair(p: u32) -> Result<IdentityInstance, IdentityError> {
    let mut lhs = FormalSum::zero();
    for a in 0..=p {
        for b in 0..=p - a {
            let m = p - a - b;
            lhs.add_term(int(1), zs([a + 2].into_iter().chain(ones(m)).chain([b + 2])))?;
        }
    }
    let pi = p as i64;
    let rhs = single(int(pi * pi + 3 * pi + 1) + int(pi + 3) * pow2(-pi - 2), z([p + 4]));
    Ok(IdentityInstance::numeric("star-double-sum", Params::new().int("p", p), lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binom;

    #[test]
    fn small_parts() {
        assert_eq!(j_part(1, 0).unwrap(), one(z([2, 2])));
        assert_eq!(j_part(2, 0).unwrap(), one(z([2, 2])));
        assert_eq!(j_part(3, 0).unwrap(), one(z([1, 3])));
        assert!(j_part(7, 0).is_err());
        assert!(j_part(0, 0).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(j_total_closed(0), single(ratio(5, 2), z([4])));
        assert_eq!(j_total_closed(1).coefficient(&zbar(&[3, -2])), int(-4));
        assert_eq!(j_total_closed(2).coefficient(&zbar(&[4, -2])), int(0));
        assert_eq!(j1_closed(0), single(ratio(3, 4), z([4])));
        assert_eq!(j2_closed(0), single(ratio(3, 4), z([4])));
        assert_eq!(j1_closed(1), single(ratio(5, 2), z([5])));
    }

    #[test]
    fn main_theorem_base_case() {
        let (rhs, counts) = main_theorem_rhs(0);
        assert_eq!(rhs, single(int(4), z([1, 3])));
        assert_eq!(counts, MainTheoremCounts { considered: 2, surviving: 1 });
        assert_eq!(main_theorem(0).lhs.sum, one(z([4])));
    }

    #[test]
    fn main_theorem_enumerates_expected_compositions() {
        for p in 0..=6u32 {
            let expected: u64 = (0..=p as u64).map(|m| binom(p as u64 + 2, m + 1).to_f64_fast() as u64).sum();
            assert_eq!(main_theorem_rhs(p).1.considered as u64, expected, "p={p}");
        }
    }

    #[test]
    fn weighted_sum_matches_simplex_parts() {
        for p in 0..=6 {
            assert!(main_theorem_symbolic(p).unwrap().holds_symbolically(), "p={p}");
        }
    }

    #[test]
    fn star_double_sum_shapes() {
        let inst = star_double_sum_pair(0).unwrap();
        assert_eq!(inst.lhs.sum.to_string(), "z(2,2) + z(4)");
        assert_eq!(inst.rhs.sum, single(ratio(7, 4), z([4])));
    }

    #[test]
    fn decomposition_base_case() {
        let d = j_decomposition(0).unwrap();
        assert_eq!(d[1].lhs.sum, single(int(2), z([2, 2])));
        assert_eq!(d[1].rhs.sum, single(ratio(3, 2), z([4])));
    }
}

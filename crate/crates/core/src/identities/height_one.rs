//! Height-one sums and the classical sum formulas built on them.

use dashu_ratio::RBig;

use super::{comps, one, ones, single, z, zbar, zs, IdentityError, IdentityInstance, Params};
use crate::algebra::FormalSum;
use crate::rational::{int, pow2};

/// `Z₋(m) = Σ_{a+b=m} (−1)^b ζ({1}^a, b+2)`.
pub fn z_minus(m: u32) -> FormalSum {
    let mut s = FormalSum::zero();
    for a in 0..=m {
        let b = m - a;
        s.push(int(if b.is_multiple_of(2) { 1 } else { -1 }), z(ones(a).chain([b + 2])));
    }
    s
}

/// `Z★₊(n) = Σ_{c+d=n} ζ★({1}^c, d+2)`, stars expanded.
pub fn z_star_plus(n: u32) -> FormalSum {
    let mut s = FormalSum::zero();
    for c in 0..=n {
        s.push(int(1), zs(ones(c).chain([n - c + 2])));
    }
    s
}

/// `0` for odd `m`, `2(1 − 2^{−(m+1)}) ζ(m+2)` for even `m`.
pub fn z_minus_closed(m: u32) -> FormalSum {
    if m % 2 == 1 {
        return FormalSum::zero();
    }
    single(int(2) * (int(1) - pow2(-(m as i64 + 1))), z([m + 2]))
}

/// `2(n+1)(1 − 2^{−(n+1)}) ζ(n+2)`.
pub fn z_star_plus_closed(n: u32) -> FormalSum {
    single(int(2 * (n as i64 + 1)) * (int(1) - pow2(-(n as i64 + 1))), z([n + 2]))
}

/// `Σ_{a+b=2w−2} (−1)^{a+1} ζ({1}^a, b+2) = 2ζ(ō{2w})`.
pub fn le_murakami_pair(w: u32) -> Result<IdentityInstance, IdentityError> {
    if w == 0 {
        return Err(IdentityError::ParameterOutOfRange("le-murakami needs w >= 1".into()));
    }
    let total = 2 * w - 2;
    let mut lhs = FormalSum::zero();
    for a in 0..=total {
        lhs.push(int(if a % 2 == 1 { 1 } else { -1 }), z(ones(a).chain([total - a + 2])));
    }
    let rhs = single(int(2), zbar(&[-2 * w as i64]));
    Ok(IdentityInstance::numeric("le-murakami", Params::new().int("w", w), lhs, rhs))
}

/// `Σ_{|α|=q+r+1} ζ(α_0, …, α_q + 1) = ζ(q+r+2)`, `α` of length `q+1`.
pub fn granville_pair(q: u32, r: u32) -> IdentityInstance {
    let mut lhs = FormalSum::zero();
    for mut alpha in comps(q + r + 1, q as usize + 1) {
        *alpha.last_mut().expect("q+1 >= 1 parts") += 1;
        lhs.push(int(1), z(alpha));
    }
    IdentityInstance::numeric("granville", Params::new().int("q", q).int("r", r), lhs, one(z([q + r + 2])))
}

/// Each form of the height-one evaluation for a given `m`:
/// `Z₋(m)` against its closed form; for even `m` also
/// `ζ★({2}^{m/2+1})` and `−2ζ(ō{m+2})`; for odd `m` the exact cancellation
/// of `Z₋(m)` once each term is identified with its dual.
pub fn prop22_instances(m: u32) -> Vec<IdentityInstance> {
    let params = |form: &str| Params::new().int("m", m).text("form", form);
    let mut out = vec![IdentityInstance::numeric("prop22", params("z-minus"), z_minus(m), z_minus_closed(m))];
    if m.is_multiple_of(2) {
        let k = m / 2;
        let star_twos = FormalSum::single(zs(std::iter::repeat_n(2, k as usize + 1))).expect("admissible");
        out.push(IdentityInstance::numeric("prop22", params("star-twos"), star_twos, z_minus_closed(m)));
        out.push(IdentityInstance::numeric(
            "prop22",
            params("alternating"),
            z_minus(m),
            single(int(-2), zbar(&[-(m as i64 + 2)])),
        ));
    } else {
        let folded = z_minus(m)
            .map_indices(|idx| {
                let d = idx.dual()?;
                Ok(if d < *idx { d } else { idx.clone() })
            })
            .expect("height-one indices are admissible");
        out.push(IdentityInstance::symbolic("prop22", params("dual-cancel"), folded, FormalSum::zero()));
    }
    out
}

/// `Σ_{a+b=w−2} ζ★({1}^a, b+2) = 2(w−1)(1 − 2^{1−w}) ζ(w)`.
pub fn ohno_pair(w: u32) -> Result<IdentityInstance, IdentityError> {
    if w < 2 {
        return Err(IdentityError::ParameterOutOfRange("ohno-zstar needs w >= 2".into()));
    }
    let rhs = single(int(2 * (w as i64 - 1)) * (int(1) - pow2(1 - w as i64)), z([w]));
    Ok(IdentityInstance::numeric("ohno-zstar", Params::new().int("w", w), z_star_plus(w - 2), rhs))
}

fn zeta_star_3_2n_rhs(n: u32, star_twos: bool) -> FormalSum {
    let mut rhs = z_star_plus(2 * n + 1);
    for a in 0..=n {
        let b = n - a;
        let odd = one(z([2 * b + 3]));
        // ζ({2}^0) = 1
        let product = if a == 0 {
            odd
        } else {
            let twos = std::iter::repeat_n(2, a as usize);
            let even = if star_twos { FormalSum::single(zs(twos)).expect("admissible") } else { one(z(twos)) };
            even.stuffle(&odd)
        };
        rhs -= &product.scaled(&RBig::from(2));
    }
    rhs
}

fn zeta_star_3_2n_lhs(n: u32) -> FormalSum {
    FormalSum::single(zs([3].into_iter().chain(std::iter::repeat_n(2, n as usize)))).expect("admissible")
}

/// `ζ★(3, {2}^n) = Z★₊(2n+1) − 2 Σ_{a+b=n} ζ★({2}^a) ζ(2b+3)`.
pub fn zeta_star_3_2n_pair(n: u32) -> IdentityInstance {
    IdentityInstance::numeric("zstar3-2n", Params::new().int("n", n), zeta_star_3_2n_lhs(n), zeta_star_3_2n_rhs(n, true))
}

/// The same with `ζ({2}^a)` in place of `ζ★({2}^a)`. The two agree for
/// `n <= 1` only; from `n = 2` on this form is false.
pub fn zeta_star_3_2n_plain_twos(n: u32) -> IdentityInstance {
    IdentityInstance::numeric(
        "zstar3-2n-plain-twos",
        Params::new().int("n", n),
        zeta_star_3_2n_lhs(n),
        zeta_star_3_2n_rhs(n, false),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_minus_small() {
        assert_eq!(z_minus(0).to_string(), "z(2)");
        assert_eq!(z_minus(1).to_string(), "z(1,2) - z(3)");
        assert_eq!(z_minus_closed(0), one(z([2])));
        assert_eq!(z_minus_closed(2), single(RBig::from(7) / RBig::from(4), z([4])));
        assert!(z_minus_closed(3).is_empty());
    }

    #[test]
    fn z_star_plus_small() {
        // ζ★(1,2) + ζ★(3) = ζ(1,2) + 2ζ(3)
        assert_eq!(z_star_plus(1).to_string(), "z(1,2) + 2*z(3)");
        assert_eq!(z_star_plus_closed(0), one(z([2])));
        assert_eq!(z_star_plus_closed(1), single(int(3), z([3])));
    }

    #[test]
    fn le_murakami_shapes() {
        let w1 = le_murakami_pair(1).unwrap();
        assert_eq!(w1.lhs.sum.to_string(), "-z(2)");
        assert_eq!(w1.rhs.sum.to_string(), "2*z(-2)");
        assert_eq!(le_murakami_pair(2).unwrap().lhs.sum.len(), 3);
        assert!(le_murakami_pair(0).is_err());
    }

    #[test]
    fn granville_shapes() {
        assert!(granville_pair(0, 0).holds_symbolically());
        assert_eq!(granville_pair(1, 0).lhs.sum.to_string(), "z(1,2)");
        assert_eq!(granville_pair(1, 1).lhs.sum.to_string(), "z(2,2) + z(1,3)");
    }

    #[test]
    fn odd_z_minus_cancels_under_duality() {
        for m in [1, 3, 5, 7, 9] {
            let inst = prop22_instances(m).pop().unwrap();
            assert_eq!(inst.params.get("form"), Some(&super::super::Param::Text("dual-cancel".into())));
            assert!(inst.holds_symbolically(), "m={m}: {}", inst.lhs);
        }
    }

    #[test]
    fn zstar3_base_case() {
        // 3ζ(3) − 2ζ(3) leaves ζ(1,2) from the star expansion
        let inst = zeta_star_3_2n_pair(0);
        assert_eq!(inst.lhs.sum.to_string(), "z(3)");
        assert_eq!(inst.rhs.sum.to_string(), "z(1,2)");
    }

    #[test]
    fn plain_twos_form_breaks_at_n_2() {
        for n in 0..=1 {
            assert_eq!(zeta_star_3_2n_pair(n).rhs, zeta_star_3_2n_plain_twos(n).rhs);
        }
        let ev = crate::eval::Evaluator::new();
        for n in 0..=3 {
            assert!(crate::verify::check_instance(&ev, &zeta_star_3_2n_pair(n), 1e-12).pass, "n={n}");
        }
        let r = crate::verify::check_instance(&ev, &zeta_star_3_2n_plain_twos(2), 1e-12);
        assert!(!r.pass && r.residual.unwrap() > 1.0);
    }
}

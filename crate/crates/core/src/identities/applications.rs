//! Consequences of the weighted sum formula: the 𝕀(p) sum formula, height
//! one zeta-star sums and the `T(m, n)` decomposition of `𝕁(3)`.

use super::{comps, one, ones, single, z, zs, IdentityError, IdentityInstance, Params};
use crate::algebra::FormalSum;
use crate::rational::{int, pow2, ratio};

/// `Σ_{a+b+c=p} [Σ_{|α|=a+b+1} ζ(α_0, …, α_a + 1, c+2) + Σ_{|β|=b+c+1} ζ(a+2, β_0, …, β_b + 1)]`.
fn sec6_lhs(p: u32) -> FormalSum {
    let mut s = FormalSum::zero();
    for a in 0..=p {
        for b in 0..=p - a {
            let c = p - a - b;
            for mut alpha in comps(a + b + 1, a as usize + 1) {
                *alpha.last_mut().expect("a+1 parts") += 1;
                alpha.push(c + 2);
                s.push(int(1), z(alpha));
            }
            for mut beta in comps(b + c + 1, b as usize + 1) {
                *beta.last_mut().expect("b+1 parts") += 1;
                s.push(int(1), z([a + 2].into_iter().chain(beta)));
            }
        }
    }
    s
}

/// `((p+2)/2) Σ_{m+n=p} ζ(m+2) ζ(n+2) − ((p+1)(p+2)/2) ζ(p+4)`.
fn sec6_rhs(p: u32) -> FormalSum {
    let mut products = FormalSum::zero();
    for m in 0..=p {
        products += &one(z([m + 2])).stuffle(&one(z([p - m + 2])));
    }
    let pi = p as i64;
    products.scaled(&ratio(pi + 2, 2)) - single(ratio((pi + 1) * (pi + 2), 2), z([p + 4]))
}

pub fn sec6_pair(p: u32) -> IdentityInstance {
    IdentityInstance::numeric("sec6", Params::new().int("p", p), sec6_lhs(p), sec6_rhs(p))
}

/// `Σ_{a=0}^{p} Σ_{d1+d2=p−a} [ζ(d1+2, d2+a+2) + ζ(d1+a+2, d2+2)]`, the
/// dual-pair sums that replace the two composition sums of [`sec6_pair`].
pub fn sec6_dual_pairs(p: u32) -> FormalSum {
    let mut pairs = FormalSum::zero();
    for a in 0..=p {
        for d1 in 0..=p - a {
            let d2 = p - a - d1;
            pairs.push(int(1), z([d1 + 2, d2 + a + 2]));
            pairs.push(int(1), z([d1 + a + 2, d2 + 2]));
        }
    }
    pairs
}

/// The route through duality, split in two: the dual-pair sums equal the
/// right side of [`sec6_pair`] exactly (route `stuffle`), and equal the left
/// side by Ohno's relation, checked numerically (route `ohno`).
pub fn sec6_dual_route(p: u32) -> Vec<IdentityInstance> {
    let params = |route: &str| Params::new().int("p", p).text("route", route);
    vec![
        IdentityInstance::symbolic("sec6-dual", params("stuffle"), sec6_dual_pairs(p), sec6_rhs(p)),
        IdentityInstance::numeric("sec6-dual", params("ohno"), sec6_lhs(p), sec6_dual_pairs(p)),
    ]
}

/// `ζ★({1}^m, 2) = (m+1) ζ(m+2)`.
pub fn sec6_star_height1(m: u32) -> IdentityInstance {
    let lhs = FormalSum::single(zs(ones(m).chain([2]))).expect("admissible");
    IdentityInstance::numeric("sec6-star", Params::new().int("m", m), lhs, single(int(m as i64 + 1), z([m + 2])))
}

/// `T(m, n) = Σ_{|α|=n+3} {ζ★(α_1, {1}^m, α_2 + 1) − ζ(m+n+4)} (2^{α_2 − 1} − 1)`
/// over two-part compositions `α`.
pub fn t_mn(m: u32, n: u32) -> FormalSum {
    let mut s = FormalSum::zero();
    for alpha in comps(n + 3, 2) {
        let w = pow2(alpha[1] as i64 - 1) - int(1);
        let star = FormalSum::single(zs([alpha[0]].into_iter().chain(ones(m)).chain([alpha[1] + 1])))
            .expect("admissible");
        s += &(star - one(z([m + n + 4]))).scaled(&w);
    }
    s
}

/// `Σ_{m+n=p} T(m, n) = 𝕁(3)`.
pub fn t_sum_pair(p: u32) -> Result<IdentityInstance, IdentityError> {
    let mut lhs = FormalSum::zero();
    for m in 0..=p {
        lhs += &t_mn(m, p - m);
    }
    Ok(IdentityInstance::numeric("sec7-t", Params::new().int("p", p), lhs, super::j_part(3, p)?))
}

fn star_height1_sum(m: u32, n: u32, weighted: bool) -> FormalSum {
    let mut s = FormalSum::zero();
    for alpha in comps(n + 3, 2) {
        let c = if weighted { pow2(alpha[1] as i64) } else { int(1) };
        s.push(c, zs([alpha[0]].into_iter().chain(ones(m)).chain([alpha[1] + 1])));
    }
    s
}

/// `Σ_{|α|=n+3} ζ★(α_1, {1}^m, α_2 + 1) = (m+n+3) ζ(m+n+4)`.
pub fn star_height1_dual_sum(m: u32, n: u32) -> IdentityInstance {
    IdentityInstance::numeric(
        "sec7-dual",
        Params::new().int("m", m).int("n", n),
        star_height1_sum(m, n, false),
        single(int((m + n + 3) as i64), z([m + n + 4])),
    )
}

/// `Σ_{|α|=n+3} 2^{α_2} ζ★(α_1, {1}^m, α_2 + 1)`, for which no closed form
/// is known.
pub fn unknown_weighted_sum(m: u32, n: u32) -> FormalSum {
    star_height1_sum(m, n, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::stuffle;

    #[test]
    fn sec6_base_case() {
        let inst = sec6_pair(0);
        assert_eq!(inst.lhs.sum, single(int(2), z([2, 2])));
        // ζ(2)² − ζ(4) = 2ζ(2,2)
        assert!(inst.holds_symbolically());
        let mut expected = stuffle(&z([2]), &z([2])).unwrap();
        expected -= &one(z([4]));
        assert_eq!(inst.rhs.sum, expected);
    }

    #[test]
    fn duality_route() {
        for p in 0..=6 {
            let [exact, ohno] = <[_; 2]>::try_from(sec6_dual_route(p)).unwrap();
            assert!(exact.holds_symbolically(), "p={p}");
            assert_eq!(ohno.exactness, super::super::Exactness::Numeric);
        }
        // at p = 0 the relation is plain duality
        let dual = sec6_lhs(0).map_indices(|idx| Ok(idx.dual()?)).unwrap();
        assert_eq!(dual, sec6_dual_pairs(0));
        for a in 0..5 {
            assert_eq!(z(ones(a).chain([2, 2])).dual().unwrap(), z([2, a + 2]));
            assert_eq!(z([2].into_iter().chain(ones(a)).chain([2])).dual().unwrap(), z([a + 2, 2]));
        }
    }

    #[test]
    fn t_base_case() {
        assert_eq!(t_mn(0, 0), one(z([1, 3])));
        // α_2 = 1 carries weight 0
        let with_unit_top = t_mn(1, 1);
        assert!(with_unit_top.iter().all(|(idx, _)| idx.weight() == 6));
    }

    #[test]
    fn dual_sum_shapes() {
        let lhs = star_height1_dual_sum(0, 0).lhs.sum;
        assert_eq!(lhs.coefficient(&z([1, 3])), int(1));
        assert_eq!(lhs.coefficient(&z([2, 2])), int(1));
        assert_eq!(lhs.coefficient(&z([4])), int(2));
        assert_eq!(star_height1_sum(0, 1, false).len(), 4);
        let u = unknown_weighted_sum(0, 0);
        assert_eq!(u.coefficient(&z([1, 3])), int(4));
        assert_eq!(u.coefficient(&z([2, 2])), int(2));
        assert_eq!(u.coefficient(&z([4])), int(6));
    }

    #[test]
    fn star_height_one() {
        assert!(sec6_star_height1(0).holds_symbolically());
        assert_eq!(sec6_star_height1(1).lhs.sum.to_string(), "z(1,2) + z(3)");
    }
}

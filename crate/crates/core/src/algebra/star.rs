use dashu_ratio::RBig;

use super::{AlgebraError, FormalSum};
use crate::index::{Part, SignedIndex};

/// Expand `ζ★(s_1, …, s_r)` into the `2^{r-1}` zeta values obtained by
/// merging runs of adjacent slots.
pub fn star_expand(idx: &SignedIndex) -> Result<FormalSum, AlgebraError> {
    if !idx.is_admissible() {
        return Err(AlgebraError::DivergentTerm(idx.to_string()));
    }
    let parts = idx.parts();
    let gaps = parts.len() - 1;
    let mut out = FormalSum::zero();
    for mask in 0u64..(1u64 << gaps) {
        let mut merged: Vec<Part> = vec![parts[0]];
        for (g, p) in parts.iter().enumerate().skip(1) {
            if mask >> (g - 1) & 1 == 1 {
                let last = merged.last_mut().expect("nonempty");
                *last = last.merge(*p);
            } else {
                merged.push(*p);
            }
        }
        let term = SignedIndex::new(merged, false)?;
        debug_assert!(term.is_admissible(), "merging keeps the last slot admissible");
        out.add_term(RBig::ONE, term)?;
    }
    Ok(out)
}

/// One product `coef · ζ★(star) · ζ(plain)` on the right of the reflection
/// formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPlainProduct {
    pub coef: i64,
    pub star: SignedIndex,
    pub plain: SignedIndex,
}

/// Both sides of
/// `ζ(α_1..α_r) + (-1)^r ζ★(α_r..α_1) = Σ_k (-1)^{k+1} ζ★(α_k..α_1) ζ(α_{k+1}..α_r)`
/// with stars left symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionInstance {
    pub alpha: Vec<u32>,
    /// `(coef, index)` with the second index starred.
    pub lhs: Vec<(i64, SignedIndex)>,
    pub rhs: Vec<StarPlainProduct>,
}

impl ReflectionInstance {
    pub fn lhs_sum(&self) -> FormalSum {
        let mut s = FormalSum::zero();
        for (c, idx) in &self.lhs {
            s.push(RBig::from(*c), idx.clone());
        }
        s
    }

    /// Right side with stars expanded and products taken by stuffle.
    pub fn rhs_sum(&self) -> FormalSum {
        let mut s = FormalSum::zero();
        for t in &self.rhs {
            let star = star_expand(&t.star).expect("boundary exponents >= 2");
            let plain = FormalSum::single(t.plain.clone()).expect("admissible");
            s += &star.stuffle(&plain).scaled(&RBig::from(t.coef));
        }
        s
    }
}

pub fn reflection_instance(alpha: &[u32]) -> Result<ReflectionInstance, AlgebraError> {
    let r = alpha.len();
    if r == 0 || alpha[0] < 2 || alpha[r - 1] < 2 || alpha.contains(&0) {
        return Err(AlgebraError::PreconditionViolated(format!(
            "reflection needs first and last exponent >= 2, got {alpha:?}"
        )));
    }
    let rev = |s: &[u32]| SignedIndex::star(s.iter().rev().copied());
    let lhs = vec![
        (1, SignedIndex::plain(alpha.iter().copied())),
        (if r.is_multiple_of(2) { 1 } else { -1 }, rev(alpha)),
    ];
    let rhs = (1..r)
        .map(|k| StarPlainProduct {
            coef: if k % 2 == 1 { 1 } else { -1 },
            star: rev(&alpha[..k]),
            plain: SignedIndex::plain(alpha[k..].iter().copied()),
        })
        .collect();
    Ok(ReflectionInstance { alpha: alpha.to_vec(), lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        assert_eq!(star_expand(&SignedIndex::star([2, 3])).unwrap().to_string(), "z(2,3) + z(5)");
        assert_eq!(star_expand(&SignedIndex::star([1, 2])).unwrap().to_string(), "z(1,2) + z(3)");
        assert_eq!(star_expand(&SignedIndex::star([2, 2])).unwrap().to_string(), "z(2,2) + z(4)");
    }

    #[test]
    fn signs_multiply_on_merge() {
        let s = star_expand(&SignedIndex::alt(&[-1, -2]).with_star(true)).unwrap();
        assert_eq!(s.to_string(), "z(-1,-2) + z(3)");
    }

    #[test]
    fn term_count_is_power_of_two() {
        for depth in 1..=7u32 {
            let mut exps = vec![3u32; depth as usize];
            for (i, e) in exps.iter_mut().enumerate() {
                *e = 2 + i as u32; // distinct, so no two merge patterns collide
            }
            let s = star_expand(&SignedIndex::star(exps)).unwrap();
            assert_eq!(s.len(), 1 << (depth - 1));
            assert!(s.iter().all(|(_, c)| *c == RBig::ONE));
        }
    }

    #[test]
    fn divergent_star_rejected() {
        assert!(matches!(
            star_expand(&SignedIndex::star([2, 1])),
            Err(AlgebraError::DivergentTerm(_))
        ));
    }

    #[test]
    fn reflection_depth_two_is_symbolic() {
        // z(a,b) + zs(b,a) = z(a) z(b) holds term by term after stuffle
        for (a, b) in [(2, 2), (2, 3), (3, 2), (4, 2)] {
            let inst = reflection_instance(&[a, b]).unwrap();
            assert_eq!(inst.lhs_sum(), inst.rhs_sum(), "alpha=({a},{b})");
        }
    }

    #[test]
    fn reflection_shape() {
        let inst = reflection_instance(&[2, 1, 2]).unwrap();
        assert_eq!(inst.lhs[1], (-1, SignedIndex::star([2, 1, 2])));
        assert_eq!(inst.rhs.len(), 2);
        assert_eq!(inst.rhs[0].star, SignedIndex::star([2]));
        assert_eq!(inst.rhs[0].plain, SignedIndex::plain([1, 2]));
        assert_eq!(inst.rhs[1].coef, -1);
        assert_eq!(inst.rhs[1].star, SignedIndex::star([1, 2]));
        assert!(reflection_instance(&[1, 2]).is_err());
    }
}

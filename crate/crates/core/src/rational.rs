//! Small helpers around exact rationals.

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

pub fn abs(x: &RBig) -> RBig {
    if *x < RBig::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn int(n: i64) -> RBig {
    RBig::from(n)
}

pub fn ratio(num: i64, den: u64) -> RBig {
    assert!(den != 0, "zero denominator");
    RBig::from_parts(IBig::from(num), UBig::from(den))
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> RBig {
    if e >= 0 {
        RBig::from(IBig::ONE << e as usize)
    } else {
        RBig::from_parts(IBig::ONE, UBig::ONE << (-e) as usize)
    }
}

/// `base^e` with the convention `0^0 = 1`.
pub fn powi(base: &RBig, e: u32) -> RBig {
    let mut acc = RBig::ONE;
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Binomial coefficient, zero when `k > n`.
pub fn binom(n: u64, k: u64) -> RBig {
    if k > n {
        return RBig::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = UBig::ONE;
    for i in 0..k {
        acc = acc * UBig::from(n - i) / UBig::from(i + 1);
    }
    RBig::from(acc)
}

pub fn factorial(n: u64) -> UBig {
    (1..=n).fold(UBig::ONE, |acc, i| acc * UBig::from(i))
}

/// `(-1)^e` as a small integer.
pub fn neg_one_pow(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `p/q` text, or just `p` for integers.
pub fn format(r: &RBig) -> String {
    if r.denominator() == &UBig::ONE {
        r.numerator().to_string()
    } else {
        format!("{}/{}", r.numerator(), r.denominator())
    }
}

/// Parse `a` or `a/b` (optionally signed).
pub fn parse(text: &str) -> Option<RBig> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: IBig = num.parse().ok()?;
    let den: UBig = den.parse().ok()?;
    if den == UBig::ZERO {
        return None;
    }
    Some(RBig::from_parts(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(pow2(-3), ratio(1, 8));
        assert_eq!(pow2(4), int(16));
        assert_eq!(binom(5, 2), int(10));
        assert_eq!(binom(2, 5), RBig::ZERO);
        assert_eq!(powi(&RBig::ZERO, 0), RBig::ONE);
        assert_eq!(format(&ratio(-6, 4)), "-3/2");
        assert_eq!(format(&int(7)), "7");
        assert_eq!(parse("3/2"), Some(ratio(3, 2)));
        assert_eq!(parse("-2"), Some(int(-2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(factorial(5), UBig::from(120u8));
    }
}

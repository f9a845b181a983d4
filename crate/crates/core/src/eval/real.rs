//! Binary floating point helpers on top of `dashu-float`.

use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::{DBig, FBig};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

/// Working real type; base 2, round-half-even.
pub type Real = FBig<HalfEven, 2>;

/// Binary precision giving `tol` plus 64 guard bits.
pub fn precision_for(tol: f64) -> usize {
    let bits = (-tol.log2()).ceil().max(0.0) as usize;
    bits + 64
}

/// Unit roundoff at `prec` bits, rounded up into f64.
pub fn unit_roundoff(prec: usize) -> f64 {
    2f64.powi(1 - prec.min(1000) as i32)
}

pub fn from_int(n: i64, prec: usize) -> Real {
    Real::from(n).with_precision(prec).value()
}

/// `±2^e` exactly.
pub fn signed_pow2(negative: bool, e: isize) -> Real {
    let m: IBig = if negative { IBig::from(-1) } else { IBig::ONE };
    Real::from_parts(m, e)
}

/// Nearest `Real` to a rational; relative error at most one unit roundoff.
pub fn from_rational(r: &RBig, prec: usize) -> Real {
    let num = Real::from(r.numerator().clone()).with_precision(prec).value();
    let den = Real::from(IBig::from(r.denominator().clone())).with_precision(prec).value();
    num / den
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// `x` rounded to `frac` digits after the decimal point, in fixed notation.
/// The rounding error is at most `0.5·10^-frac` plus a binary-to-decimal
/// conversion error far below that.
pub fn to_fixed(x: &Real, frac: usize) -> String {
    let scale = Real::from(UBig::from(10u8).pow(frac)).with_precision(x.precision().max(64) + 4 * frac).value();
    let scaled = x.clone().with_precision(x.precision().max(64) + 4 * frac).value() * scale;
    let n: IBig = scaled.round().to_int().value();
    let negative = n < IBig::ZERO;
    let digits = if negative { (-n).to_string() } else { n.to_string() };
    let digits = format!("{digits:0>width$}", width = frac + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - frac);
    let sign = if negative && digits.bytes().any(|b| b != b'0') { "-" } else { "" };
    if frac == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Parse a decimal string to the nearest `Real` at `prec` bits.
pub fn parse_decimal(text: &str, prec: usize) -> Option<Real> {
    let d = DBig::from_str(text.trim()).ok()?;
    let b = d.with_base_and_precision::<2>(prec).value();
    Some(b.with_rounding::<HalfEven>())
}

/// Decimal digits after the point needed to display a value to `tol`.
pub fn digits_for(tol: f64) -> usize {
    ((-tol.log10()).ceil().max(0.0) as usize) + 2
}

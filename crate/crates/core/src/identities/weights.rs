use dashu_ratio::RBig;

use super::IdentityError;
use crate::rational::{int, pow2};

/// `W_α(a, b, c) = 2^{σ(a+b+1) − σ(a) − (b+1)} (1 − 2^{1 − α_{a+b+1}})` with
/// `σ(r) = α_0 + ⋯ + α_r`, for `α = (α_0, …, α_{m+1})`.
///
/// `c` does not enter the value; it only has to fit, `a + b + c <= m`.
pub fn weight_w(alpha: &[u32], a: usize, b: usize, c: usize) -> Result<RBig, IdentityError> {
    if alpha.len() < 2 || a + b + c + 2 > alpha.len() || alpha.contains(&0) {
        return Err(IdentityError::IndexOutOfRange(format!(
            "W({a},{b},{c}) on a composition of length {}",
            alpha.len()
        )));
    }
    let window: i64 = alpha[a + 1..=a + b + 1].iter().map(|&x| x as i64).sum();
    let top = alpha[a + b + 1] as i64;
    Ok(pow2(window - (b as i64 + 1)) * (int(1) - pow2(1 - top)))
}

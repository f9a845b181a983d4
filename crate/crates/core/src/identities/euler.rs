//! Weighted sums of alternating double Euler sums `ζ(m+1, n̄+1)` and
//! products `ζ(m̄+1) ζ(n̄+1)`, with a real weight `λ`.

use dashu_ratio::RBig;

use super::{one, single, zbar, IdentityError, IdentityInstance, Params};
use crate::algebra::FormalSum;
use crate::rational::{binom, int, neg_one_pow, pow2, powi, ratio};

fn i(n: u32) -> i64 {
    n as i64
}

/// `ζ(ā) ζ(b̄)` expanded by stuffle.
fn bar_product(a: u32, b: u32) -> FormalSum {
    one(zbar(&[-i(a)])).stuffle(&one(zbar(&[-i(b)])))
}

/// `ζ(m+1, n̄+1)`.
fn mixed(m: u32, n: u32) -> crate::index::SignedIndex {
    zbar(&[i(m) + 1, -(i(n) + 1)])
}

fn check_q(p: u32, q: u32) -> Result<(), IdentityError> {
    if q > p {
        return Err(IdentityError::ParameterOutOfRange(format!("need q <= p, got p={p}, q={q}")));
    }
    Ok(())
}

fn check_p(name: &str, p: u32, min: u32) -> Result<(), IdentityError> {
    if p < min {
        return Err(IdentityError::ParameterOutOfRange(format!("{name} needs p >= {min}, got {p}")));
    }
    Ok(())
}

/// The `q`-th λ-derivative (divided by `q!`) of
/// `Σ_{m+n=p} λ^n ζ(m̄+1) ζ(n̄+1) = Σ_{m+n=p} (λ+1)^n (λ^m + 1) ζ(m+1, n̄+1)`:
///
/// `Σ C(n,q) λ^{n−q} ζ(m̄+1) ζ(n̄+1) = Σ C(n,q) (λ+1)^{n−q} ζ(m+1, n̄+1)
///  + Σ_{a+b=q} C(m,a) C(n,b) λ^{m−a} (λ+1)^{n−b} ζ(m+1, n̄+1)`.
pub fn euler_family(p: u32, q: u32, lambda: &RBig) -> Result<IdentityInstance, IdentityError> {
    check_q(p, q)?;
    let l1 = lambda + int(1);
    let mut lhs = FormalSum::zero();
    let mut rhs = FormalSum::zero();
    for m in 0..=p {
        let n = p - m;
        if n >= q {
            let c = binom(n.into(), q.into());
            lhs += &bar_product(m + 1, n + 1).scaled(&(&c * powi(lambda, n - q)));
            rhs.push(c * powi(&l1, n - q), mixed(m, n));
        }
        for a in 0..=q.min(m) {
            let b = q - a;
            if b > n {
                continue;
            }
            let c = binom(m.into(), a.into()) * binom(n.into(), b.into());
            rhs.push(c * powi(lambda, m - a) * powi(&l1, n - b), mixed(m, n));
        }
    }
    let params = Params::new().int("p", p).int("q", q).rational("lambda", lambda.clone());
    Ok(IdentityInstance::numeric("euler-family", params, lhs, rhs))
}

/// Closed specialisations of [`euler_family`] and the classical formulas
/// derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EulerSpecial {
    /// λ = 0, general `q`.
    Lambda0,
    Lambda0Q0,
    Lambda0Q1,
    Lambda0Q2,
    /// λ = −1, general `q`.
    LambdaM1,
    LambdaM1Q0,
    LambdaM1Q1,
    /// λ = 1, general `q`.
    Lambda1,
    Lambda1Q0,
    /// `Σ 2^n ζ(m+1, n̄+1) = (p+1)/2 ζ(p+2) + ζ(p+1, 1̄) + ζ(p̄+2)`.
    Weighted2n,
    /// `Σ ζ(m̄+1, n̄+1) = ζ(1̄) ζ(p+1) − ζ(1̄, p+1)`.
    Teo,
    /// `ζ(r̄) ζ(s̄) = ζ(r̄, s̄) + ζ(s̄, r̄) + ζ(r+s)` with `r = q+1`, `s = p+1`.
    AStuffle,
    /// λ = −2, general `q`, scaled by `(−1)^{p−q}`.
    LambdaM2,
    LambdaM2Q0,
    /// `((−2)^{p+1} − 1)/3 ζ(p+2) = Σ [(−2)^n + (−2)^m] ζ(m̄+1, n̄+1) − Σ (−1)^n [1 + (−2)^m] ζ(m+1, n̄+1)`.
    Final,
    /// The undifferentiated form at a given λ.
    LambdaProduct,
}

pub const EULER_SPECIALS: [EulerSpecial; 16] = [
    EulerSpecial::Lambda0,
    EulerSpecial::Lambda0Q0,
    EulerSpecial::Lambda0Q1,
    EulerSpecial::Lambda0Q2,
    EulerSpecial::LambdaM1,
    EulerSpecial::LambdaM1Q0,
    EulerSpecial::LambdaM1Q1,
    EulerSpecial::Lambda1,
    EulerSpecial::Lambda1Q0,
    EulerSpecial::Weighted2n,
    EulerSpecial::Teo,
    EulerSpecial::AStuffle,
    EulerSpecial::LambdaM2,
    EulerSpecial::LambdaM2Q0,
    EulerSpecial::Final,
    EulerSpecial::LambdaProduct,
];

impl EulerSpecial {
    pub fn name(self) -> &'static str {
        match self {
            EulerSpecial::Lambda0 => "lambda0",
            EulerSpecial::Lambda0Q0 => "lambda0-q0",
            EulerSpecial::Lambda0Q1 => "lambda0-q1",
            EulerSpecial::Lambda0Q2 => "lambda0-q2",
            EulerSpecial::LambdaM1 => "lambdam1",
            EulerSpecial::LambdaM1Q0 => "lambdam1-q0",
            EulerSpecial::LambdaM1Q1 => "lambdam1-q1",
            EulerSpecial::Lambda1 => "lambda1",
            EulerSpecial::Lambda1Q0 => "lambda1-q0",
            EulerSpecial::Weighted2n => "weighted-2n",
            EulerSpecial::Teo => "teo",
            EulerSpecial::AStuffle => "astuffle",
            EulerSpecial::LambdaM2 => "lambdam2",
            EulerSpecial::LambdaM2Q0 => "lambdam2-q0",
            EulerSpecial::Final => "final",
            EulerSpecial::LambdaProduct => "lambda-product",
        }
    }

    pub fn from_name(name: &str) -> Option<EulerSpecial> {
        EULER_SPECIALS.iter().copied().find(|s| s.name() == name)
    }

    /// Whether the form depends on `q`.
    pub fn uses_q(self) -> bool {
        matches!(
            self,
            EulerSpecial::Lambda0
                | EulerSpecial::LambdaM1
                | EulerSpecial::Lambda1
                | EulerSpecial::AStuffle
                | EulerSpecial::LambdaM2
        )
    }

    pub fn uses_lambda(self) -> bool {
        self == EulerSpecial::LambdaProduct
    }

    /// Smallest admissible `p`.
    pub fn min_p(self) -> u32 {
        match self {
            EulerSpecial::Lambda0Q1 | EulerSpecial::LambdaM1Q1 | EulerSpecial::Teo => 1,
            EulerSpecial::Lambda0Q2 => 2,
            _ => 0,
        }
    }
}

/// Build one instance of a special form. `q` is ignored unless
/// [`EulerSpecial::uses_q`], `lambda` unless [`EulerSpecial::uses_lambda`].
pub fn euler_special(kind: EulerSpecial, p: u32, q: u32, lambda: &RBig) -> Result<IdentityInstance, IdentityError> {
    use EulerSpecial as E;
    check_p(kind.name(), p, kind.min_p())?;
    if kind.uses_q() && kind != E::AStuffle {
        check_q(p, q)?;
    }
    let mut lhs = FormalSum::zero();
    let mut rhs = FormalSum::zero();
    match kind {
        E::Lambda0 => {
            for m in 0..=p - q {
                lhs.push(binom((p - m).into(), q.into()), mixed(m, p - m));
            }
            rhs = bar_product(q + 1, p + 1 - q);
            for a in 0..=q {
                rhs.push(-binom((p - a).into(), (q - a).into()), mixed(a, p - a));
            }
        }
        E::Lambda0Q0 => {
            for m in 0..=p {
                lhs.push(int(1), mixed(m, p - m));
            }
            rhs = bar_product(1, p + 1);
            rhs.push(int(-1), mixed(0, p));
        }
        E::Lambda0Q1 => {
            for m in 0..=p {
                lhs.push(int(i(p - m)), mixed(m, p - m));
            }
            rhs = bar_product(2, p);
            rhs.push(int(-i(p)), mixed(0, p));
            rhs.push(int(-1), mixed(1, p - 1));
        }
        E::Lambda0Q2 => {
            for m in 0..=p {
                lhs.push(binom((p - m).into(), 2), mixed(m, p - m));
            }
            rhs = bar_product(3, p - 1);
            rhs.push(-binom(p.into(), 2), mixed(0, p));
            rhs.push(int(1 - i(p)), mixed(1, p - 1));
            rhs.push(int(-1), mixed(2, p - 2));
        }
        E::LambdaM1 => {
            for m in 0..=p {
                let n = p - m;
                let c = binom(n.into(), q.into()) * int(neg_one_pow(m.into()));
                lhs += &bar_product(m + 1, n + 1).scaled(&c);
            }
            rhs.push(int(neg_one_pow((p + q).into())), mixed(p - q, q));
            for b in 0..=q {
                let a = q - b;
                rhs.push(binom((p - b).into(), a.into()), mixed(p - b, b));
            }
        }
        E::LambdaM1Q0 => {
            for m in 0..=p {
                lhs += &bar_product(m + 1, p - m + 1).scaled(&int(neg_one_pow(m.into())));
            }
            rhs.push(int(1 + neg_one_pow(p.into())), mixed(p, 0));
        }
        E::LambdaM1Q1 => {
            for m in 0..=p {
                let c = int(neg_one_pow(m.into()) * i(p - m));
                lhs += &bar_product(m + 1, p - m + 1).scaled(&c);
            }
            rhs.push(int(1 + neg_one_pow((p + 1).into())), mixed(p - 1, 1));
            rhs.push(int(i(p)), mixed(p, 0));
        }
        E::Lambda1 => {
            for m in 0..=p {
                let n = p - m;
                lhs += &bar_product(m + 1, n + 1).scaled(&binom(n.into(), q.into()));
                if n >= q {
                    rhs.push(binom(n.into(), q.into()) * pow2(i(n - q)), mixed(m, n));
                }
                for a in 0..=q.min(m) {
                    let b = q - a;
                    if b <= n {
                        rhs.push(binom(m.into(), a.into()) * binom(n.into(), b.into()) * pow2(i(n - b)), mixed(m, n));
                    }
                }
            }
        }
        E::Lambda1Q0 => {
            for m in 0..=p {
                lhs += &bar_product(m + 1, p - m + 1);
                rhs.push(pow2(i(p - m) + 1), mixed(m, p - m));
            }
        }
        E::Weighted2n => {
            for m in 0..=p {
                lhs.push(pow2(i(p - m)), mixed(m, p - m));
            }
            rhs.push(ratio(i(p) + 1, 2), zbar(&[i(p) + 2]));
            rhs.push(int(1), mixed(p, 0));
            rhs.push(int(1), zbar(&[-(i(p) + 2)]));
        }
        E::Teo => {
            for m in 0..=p {
                lhs.push(int(1), zbar(&[-(i(m) + 1), -(i(p - m) + 1)]));
            }
            rhs = one(zbar(&[-1])).stuffle(&one(zbar(&[i(p) + 1])));
            rhs.push(int(-1), zbar(&[-1, i(p) + 1]));
        }
        E::AStuffle => {
            let (r, s) = (i(q) + 1, i(p) + 1);
            lhs = bar_product(q + 1, p + 1);
            // built by hand rather than by stuffle so the two sides differ
            rhs.push(int(1), zbar(&[-r, -s]));
            rhs.push(int(1), zbar(&[-s, -r]));
            rhs.push(int(1), zbar(&[r + s]));
        }
        E::LambdaM2 => {
            for m in 0..=p {
                let n = p - m;
                let sign = int(neg_one_pow(m.into()));
                if n >= q {
                    let c = binom(n.into(), q.into()) * &sign;
                    lhs += &bar_product(m + 1, n + 1).scaled(&(&c * pow2(i(n - q))));
                    rhs.push(c, mixed(m, n));
                }
                for a in 0..=q.min(m) {
                    let b = q - a;
                    if b <= n {
                        rhs.push(binom(m.into(), a.into()) * binom(n.into(), b.into()) * pow2(i(m - a)), mixed(m, n));
                    }
                }
            }
        }
        E::LambdaM2Q0 => {
            for m in 0..=p {
                let n = p - m;
                let sign = int(neg_one_pow(m.into()));
                lhs += &bar_product(m + 1, n + 1).scaled(&(&sign * pow2(i(n))));
                rhs.push(pow2(i(m)) + sign, mixed(m, n));
            }
        }
        E::Final => {
            let m2 = int(-2);
            lhs = single((powi(&m2, p + 1) - int(1)) / int(3), zbar(&[i(p) + 2]));
            for m in 0..=p {
                let n = p - m;
                rhs.push(powi(&m2, n) + powi(&m2, m), zbar(&[-(i(m) + 1), -(i(n) + 1)]));
                rhs.push(-(int(neg_one_pow(n.into())) * (int(1) + powi(&m2, m))), mixed(m, n));
            }
        }
        E::LambdaProduct => {
            let l1 = lambda + int(1);
            for m in 0..=p {
                let n = p - m;
                lhs += &bar_product(m + 1, n + 1).scaled(&powi(lambda, n));
                rhs.push(powi(&l1, n) * (powi(lambda, m) + int(1)), mixed(m, n));
            }
        }
    }
    let mut params = Params::new().int("p", p);
    if kind.uses_q() {
        params = params.int("q", q);
    }
    if kind.uses_lambda() {
        params = params.rational("lambda", lambda.clone());
    }
    Ok(IdentityInstance::numeric(format!("euler-special:{}", kind.name()), params, lhs, rhs))
}

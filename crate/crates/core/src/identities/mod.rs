//! Named quantities and identities, each built as a pair of exact
//! expressions ready for verification.
//!
//! Both sides of an identity are assembled independently: no side is
//! derived from the other by simplification.

mod applications;
mod euler;
mod height_one;
mod registry;
mod simplex;
mod structures;
mod weights;

use std::fmt;

use dashu_ratio::RBig;
use thiserror::Error;

use crate::algebra::{AlgebraError, FormalSum};
use crate::index::{IndexError, SignedIndex};
use crate::rational;

pub use applications::{
    sec6_dual_pairs, sec6_dual_route, sec6_pair, sec6_star_height1, star_height1_dual_sum, t_mn, t_sum_pair, unknown_weighted_sum,
};
pub use euler::{euler_family, euler_special, EulerSpecial, EULER_SPECIALS};
pub use height_one::{
    granville_pair, le_murakami_pair, ohno_pair, prop22_instances, z_minus, z_minus_closed, z_star_plus,
    z_star_plus_closed, zeta_star_3_2n_pair, zeta_star_3_2n_plain_twos,
};
pub use registry::{default_lambdas, families, family, instances_for, Bound, Family, Ranges, DEFAULT_Q_MAX, REFLECTION_SAMPLES};
pub use simplex::{
    j1_closed, j1_star_pair, j2_closed, j2_reflection_pair, j_closed_pairs, j_convolution_pair, j_decomposition,
    j_part, j_total_closed, j_via_convolution, main_theorem, main_theorem_rhs, main_theorem_symbolic,
    star_double_sum_pair, MainTheoremCounts,
};
pub use structures::{bell_harmonic_pair, bell_zeta_pair, reflection_pair, reflection_sample};
pub use weights::weight_w;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<IndexError> for IdentityError {
    fn from(e: IndexError) -> Self {
        IdentityError::Algebra(e.into())
    }
}

/// `constant + Σ c_i ζ(idx_i)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expr {
    pub constant: RBig,
    pub sum: FormalSum,
}

impl Expr {
    pub fn constant(c: RBig) -> Self {
        Expr { constant: c, sum: FormalSum::zero() }
    }
}

impl From<FormalSum> for Expr {
    fn from(sum: FormalSum) -> Self {
        Expr { constant: RBig::ZERO, sum }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant == RBig::ZERO, self.sum.is_empty()) {
            (true, _) => write!(f, "{}", self.sum),
            (false, true) => f.write_str(&rational::format(&self.constant)),
            (false, false) => write!(f, "{} + {}", rational::format(&self.constant), self.sum),
        }
    }
}

/// How an identity is to be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exactness {
    /// The two sides are equal as exact expressions.
    Symbolic,
    /// The two sides agree numerically.
    Numeric,
    /// No identity: `lhs` and `rhs` are the same quantity, evaluated at
    /// two tolerances to show the value is stable.
    Exploration,
}

impl Exactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::Symbolic => "exact-symbolic",
            Exactness::Numeric => "numeric",
            Exactness::Exploration => "exploration",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Int(i64),
    Rational(RBig),
    List(Vec<i64>),
    Text(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(n) => write!(f, "{n}"),
            Param::Rational(r) => f.write_str(&rational::format(r)),
            Param::List(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            Param::Text(s) => f.write_str(s),
        }
    }
}

/// Ordered parameter list, echoed into reports.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(pub Vec<(&'static str, Param)>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn int(mut self, name: &'static str, v: impl Into<i64>) -> Self {
        self.0.push((name, Param::Int(v.into())));
        self
    }

    pub fn rational(mut self, name: &'static str, v: RBig) -> Self {
        self.0.push((name, Param::Rational(v)));
        self
    }

    pub fn list(mut self, name: &'static str, v: impl IntoIterator<Item = i64>) -> Self {
        self.0.push((name, Param::List(v.into_iter().collect())));
        self
    }

    pub fn text(mut self, name: &'static str, v: impl Into<String>) -> Self {
        self.0.push((name, Param::Text(v.into())));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Param> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    /// Sort key: numeric parameters compare numerically.
    pub fn sort_key(&self) -> Vec<(u8, RBig, Vec<i64>, String)> {
        self.0
            .iter()
            .map(|(_, p)| match p {
                Param::Int(n) => (0, RBig::from(*n), Vec::new(), String::new()),
                Param::Rational(r) => (0, r.clone(), Vec::new(), String::new()),
                Param::List(v) => (1, RBig::ZERO, v.clone(), String::new()),
                Param::Text(s) => (2, RBig::ZERO, Vec::new(), s.clone()),
            })
            .collect()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityInstance {
    pub id: String,
    pub params: Params,
    pub lhs: Expr,
    pub rhs: Expr,
    pub exactness: Exactness,
}

impl IdentityInstance {
    pub fn numeric(id: impl Into<String>, params: Params, lhs: FormalSum, rhs: FormalSum) -> Self {
        IdentityInstance { id: id.into(), params, lhs: lhs.into(), rhs: rhs.into(), exactness: Exactness::Numeric }
    }

    pub fn symbolic(id: impl Into<String>, params: Params, lhs: impl Into<Expr>, rhs: impl Into<Expr>) -> Self {
        IdentityInstance {
            id: id.into(),
            params,
            lhs: lhs.into(),
            rhs: rhs.into(),
            exactness: Exactness::Symbolic,
        }
    }

    pub fn exploration(id: impl Into<String>, params: Params, quantity: FormalSum) -> Self {
        IdentityInstance {
            id: id.into(),
            params,
            lhs: quantity.clone().into(),
            rhs: quantity.into(),
            exactness: Exactness::Exploration,
        }
    }

    /// Exact equality of the two sides.
    pub fn holds_symbolically(&self) -> bool {
        self.lhs == self.rhs
    }
}

// Small builders shared by the submodules.

pub(crate) fn z(parts: impl IntoIterator<Item = u32>) -> SignedIndex {
    SignedIndex::plain(parts)
}

pub(crate) fn zs(parts: impl IntoIterator<Item = u32>) -> SignedIndex {
    SignedIndex::star(parts)
}

/// Signed index from `±s` entries (negative means barred).
pub(crate) fn zbar(parts: &[i64]) -> SignedIndex {
    SignedIndex::alt(parts)
}

pub(crate) fn ones(k: u32) -> impl Iterator<Item = u32> {
    std::iter::repeat_n(1, k as usize)
}

pub(crate) fn single(coef: RBig, idx: SignedIndex) -> FormalSum {
    let mut s = FormalSum::zero();
    s.push(coef, idx);
    s
}

pub(crate) fn one(idx: SignedIndex) -> FormalSum {
    single(RBig::ONE, idx)
}

/// Compositions of `total` into `len` positive parts, in lexicographic
/// order; empty when there are none.
pub(crate) fn comps(total: u32, len: usize) -> Vec<Vec<u32>> {
    match crate::index::enumerate_compositions(total, len as u32) {
        Ok(it) => it.map(|c| c.parts().to_vec()).collect(),
        Err(_) => Vec::new(),
    }
}

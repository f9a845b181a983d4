use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use dashu_ratio::RBig;

use super::{star_expand, stuffle, AlgebraError};
use crate::index::SignedIndex;
use crate::rational;

/// Finite rational linear combination of admissible, unstarred indices.
///
/// Zero coefficients are never stored. Starred indices are expanded into
/// plain ones on insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<SignedIndex, RBig>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    /// `1 · idx`, expanding a star and rejecting divergent indices.
    pub fn single(idx: SignedIndex) -> Result<Self, AlgebraError> {
        let mut s = FormalSum::zero();
        s.add_term(RBig::ONE, idx)?;
        Ok(s)
    }

    pub fn from_terms<I>(terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (RBig, SignedIndex)>,
    {
        let mut s = FormalSum::zero();
        for (c, idx) in terms {
            s.add_term(c, idx)?;
        }
        Ok(s)
    }

    /// Parse the `c1*z(...) + c2*zs(...)` grammar.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        Self::from_terms(crate::parse::parse_terms(text)?)
    }

    pub fn add_term(&mut self, coef: RBig, idx: SignedIndex) -> Result<(), AlgebraError> {
        if idx.is_starred() {
            let expanded = star_expand(&idx)?;
            *self += &expanded.scaled(&coef);
            return Ok(());
        }
        if !idx.is_admissible() {
            return Err(AlgebraError::DivergentTerm(idx.to_string()));
        }
        self.add_plain(coef, idx);
        Ok(())
    }

    /// Builder shorthand for indices known to be admissible.
    ///
    /// # Panics
    /// If `idx` is divergent.
    pub fn push(&mut self, coef: RBig, idx: SignedIndex) {
        self.add_term(coef, idx).expect("builder produced a divergent term");
    }

    fn add_plain(&mut self, coef: RBig, idx: SignedIndex) {
        if coef == RBig::ZERO {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + coef;
                if v == RBig::ZERO {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, idx: &SignedIndex) -> RBig {
        self.terms.get(idx).cloned().unwrap_or(RBig::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SignedIndex, &RBig)> {
        self.terms.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = &SignedIndex> {
        self.terms.keys()
    }

    pub fn scaled(&self, c: &RBig) -> FormalSum {
        if *c == RBig::ZERO {
            return FormalSum::zero();
        }
        FormalSum { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// `Σ |c_i|`.
    pub fn abs_coefficient_sum(&self) -> RBig {
        self.terms.values().fold(RBig::ZERO, |acc, c| acc + rational::abs(c))
    }

    /// Bilinear extension of the harmonic product.
    pub fn stuffle(&self, other: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                let prod = stuffle(x, y).expect("stored terms are admissible and unstarred");
                out += &prod.scaled(&(cx * cy));
            }
        }
        out
    }

    /// Apply `f` to every index, summing coefficients that collide.
    pub fn map_indices<F>(&self, mut f: F) -> Result<FormalSum, AlgebraError>
    where
        F: FnMut(&SignedIndex) -> Result<SignedIndex, AlgebraError>,
    {
        let mut out = FormalSum::zero();
        for (idx, c) in &self.terms {
            out.add_term(c.clone(), f(idx)?)?;
        }
        Ok(out)
    }

    /// Maximum weight over the terms (0 for the empty sum).
    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|k| k.weight()).max().unwrap_or(0)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (idx, c)) in self.terms.iter().enumerate() {
            let negative = *c < RBig::ZERO;
            let mag = rational::abs(c);
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != RBig::ONE {
                write!(f, "{}*", rational::format(&mag))?;
            }
            write!(f, "{idx}")?;
        }
        Ok(())
    }
}

impl AddAssign<&FormalSum> for FormalSum {
    fn add_assign(&mut self, rhs: &FormalSum) {
        for (k, v) in &rhs.terms {
            self.add_plain(v.clone(), k.clone());
        }
    }
}

impl SubAssign<&FormalSum> for FormalSum {
    fn sub_assign(&mut self, rhs: &FormalSum) {
        for (k, v) in &rhs.terms {
            self.add_plain(-v.clone(), k.clone());
        }
    }
}

impl Add for FormalSum {
    type Output = FormalSum;

    fn add(mut self, rhs: FormalSum) -> FormalSum {
        self += &rhs;
        self
    }
}

impl Sub for FormalSum {
    type Output = FormalSum;

    fn sub(mut self, rhs: FormalSum) -> FormalSum {
        self -= &rhs;
        self
    }
}

impl Neg for FormalSum {
    type Output = FormalSum;

    fn neg(self) -> FormalSum {
        self.scaled(&RBig::NEG_ONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn cancels_and_renders() {
        let mut s = FormalSum::zero();
        s.push(int(2), SignedIndex::plain([2, 2]));
        s.push(int(4), SignedIndex::plain([1, 3]));
        assert_eq!(s.to_string(), "2*z(2,2) + 4*z(1,3)");
        s.push(int(-2), SignedIndex::plain([2, 2]));
        assert_eq!(s.len(), 1);
        assert_eq!(FormalSum::zero().to_string(), "0");
        let t = FormalSum::parse("z(1,2) - z(3)").unwrap();
        assert_eq!(t.to_string(), "z(1,2) - z(3)");
        let u = FormalSum::parse("-3/2*z(-2)").unwrap();
        assert_eq!(u.to_string(), "-3/2*z(-2)");
    }

    #[test]
    fn rejects_divergent_terms() {
        assert!(matches!(
            FormalSum::single(SignedIndex::plain([2, 1])),
            Err(AlgebraError::DivergentTerm(_))
        ));
    }

    #[test]
    fn star_terms_expand_on_insert() {
        let s = FormalSum::parse("zs(2,2)").unwrap();
        assert_eq!(s.to_string(), "z(2,2) + z(4)");
    }

    #[test]
    fn parse_round_trips_rendering() {
        let s = FormalSum::parse("1/3*z(1,-2) - 5*z(3) + z(2,2,2)").unwrap();
        assert_eq!(FormalSum::parse(&s.to_string()).unwrap(), s);
    }
}

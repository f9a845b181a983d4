//! Signed indices, two-letter words and compositions.
//!
//! A [`SignedIndex`] is the argument of every zeta symbol in the crate: a
//! nonempty list of exponents, each optionally barred (alternating), plus a
//! flag selecting zeta-star semantics. Unsigned, unstarred admissible
//! indices have a word encoding over `{A, B}` where `A` stands for
//! `dt/(1-t)` and `B` for `dt/t`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("an index needs at least one part")]
    Empty,
    #[error("exponents must be at least 1")]
    ZeroExponent,
    #[error("word operations need an unsigned, unstarred index, got {0}")]
    SignedWordUnsupported(String),
    #[error("index {0} is not admissible")]
    NotAdmissible(String),
    #[error("word {0} is not admissible (must start with A and end with B)")]
    NonAdmissibleWord(String),
    #[error("no compositions of {total} into {length} parts")]
    EmptyRange { total: u32, length: u32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Sign attached to one slot of an index; `Minus` is the bar decoration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    /// `+1` or `-1`.
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Part {
    pub exponent: u32,
    pub sign: Sign,
}

impl Part {
    pub fn plain(exponent: u32) -> Part {
        Part { exponent, sign: Sign::Plus }
    }

    pub fn barred(exponent: u32) -> Part {
        Part { exponent, sign: Sign::Minus }
    }

    /// Merge of two slots as produced by the harmonic product.
    pub fn merge(self, other: Part) -> Part {
        Part { exponent: self.exponent + other.exponent, sign: self.sign * other.sign }
    }
}

/// Weight, depth and height of an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub weight: u32,
    pub depth: u32,
    pub height: u32,
}

/// An index `(±s_1, …, ±s_r)` with zeta or zeta-star semantics.
///
/// Ordering is canonical rather than lexicographic: deeper indices sort
/// first, then parts compare in descending order. Formal sums iterate in
/// this order, which keeps rendered output and reports stable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedIndex {
    parts: Vec<Part>,
    starred: bool,
}

impl SignedIndex {
    pub fn new(parts: Vec<Part>, starred: bool) -> Result<Self, IndexError> {
        if parts.is_empty() {
            return Err(IndexError::Empty);
        }
        if parts.iter().any(|p| p.exponent == 0) {
            return Err(IndexError::ZeroExponent);
        }
        Ok(SignedIndex { parts, starred })
    }

    /// Unsigned, unstarred index.
    ///
    /// # Panics
    /// If `exponents` is empty or contains a zero.
    pub fn plain<I: IntoIterator<Item = u32>>(exponents: I) -> Self {
        let parts = exponents.into_iter().map(Part::plain).collect();
        Self::new(parts, false).expect("invalid exponent list")
    }

    /// Unsigned zeta-star index. Panics like [`SignedIndex::plain`].
    pub fn star<I: IntoIterator<Item = u32>>(exponents: I) -> Self {
        Self::plain(exponents).with_star(true)
    }

    /// Index from signed integers, negative entries are barred.
    pub fn from_signed(values: &[i64]) -> Result<Self, IndexError> {
        let mut parts = Vec::with_capacity(values.len());
        for &v in values {
            let exponent = u32::try_from(v.unsigned_abs()).map_err(|_| IndexError::ZeroExponent)?;
            let sign = if v < 0 { Sign::Minus } else { Sign::Plus };
            parts.push(Part { exponent, sign });
        }
        Self::new(parts, false)
    }

    /// Shorthand for [`SignedIndex::from_signed`] in builders whose input is
    /// known to be valid. Panics on a zero entry.
    pub fn alt(values: &[i64]) -> Self {
        Self::from_signed(values).expect("invalid signed index")
    }

    pub fn with_star(mut self, starred: bool) -> Self {
        self.starred = starred;
        self
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Part> {
        self.parts
    }

    pub fn is_starred(&self) -> bool {
        self.starred
    }

    pub fn is_unsigned(&self) -> bool {
        self.parts.iter().all(|p| p.sign == Sign::Plus)
    }

    pub fn depth(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().map(|p| p.exponent).sum()
    }

    pub fn height(&self) -> u32 {
        self.parts.iter().filter(|p| p.exponent > 1).count() as u32
    }

    pub fn classify(&self) -> Classification {
        Classification { weight: self.weight(), depth: self.depth(), height: self.height() }
    }

    /// The defining series converges: the last slot has exponent at least 2
    /// or carries a bar.
    pub fn is_admissible(&self) -> bool {
        let last = self.parts[self.parts.len() - 1];
        last.exponent >= 2 || last.sign == Sign::Minus
    }

    /// Same parts in reverse order, star flag kept.
    pub fn reversed(&self) -> SignedIndex {
        let mut parts = self.parts.clone();
        parts.reverse();
        SignedIndex { parts, starred: self.starred }
    }

    /// Concatenation of the parts of `self` and `other` (star flag of `self`).
    pub fn concat(&self, other: &SignedIndex) -> SignedIndex {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        SignedIndex { parts, starred: self.starred }
    }

    fn check_word_compatible(&self) -> Result<(), IndexError> {
        if self.starred || !self.is_unsigned() {
            return Err(IndexError::SignedWordUnsupported(self.to_string()));
        }
        if !self.is_admissible() {
            return Err(IndexError::NotAdmissible(self.to_string()));
        }
        Ok(())
    }

    /// `A B^{s_1-1} A B^{s_2-1} ⋯`, of length equal to the weight.
    pub fn to_word(&self) -> Result<Word, IndexError> {
        self.check_word_compatible()?;
        let mut letters = Vec::with_capacity(self.weight() as usize);
        for p in &self.parts {
            letters.push(Letter::A);
            letters.extend(std::iter::repeat_n(Letter::B, p.exponent as usize - 1));
        }
        Ok(Word { letters })
    }

    /// Dual index: reverse the word and exchange the letters.
    pub fn dual(&self) -> Result<SignedIndex, IndexError> {
        self.to_word()?.dual().to_index()
    }
}

impl Ord for SignedIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .parts
            .len()
            .cmp(&self.parts.len())
            .then_with(|| other.parts.cmp(&self.parts))
            .then_with(|| self.starred.cmp(&other.starred))
    }
}

impl PartialOrd for SignedIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.starred { "zs(" } else { "z(" })?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if p.sign == Sign::Minus {
                f.write_str("-")?;
            }
            write!(f, "{}", p.exponent)?;
        }
        f.write_str(")")
    }
}

impl FromStr for SignedIndex {
    type Err = IndexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_index(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// `dt/(1-t)`
    A,
    /// `dt/t`
    B,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, IndexError> {
        if letters.is_empty() {
            return Err(IndexError::Empty);
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.letters.first() == Some(&Letter::A) && self.letters.last() == Some(&Letter::B)
    }

    /// Reverse the word and exchange `A` and `B`.
    pub fn dual(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.swapped()).collect() }
    }

    /// Inverse of [`SignedIndex::to_word`].
    pub fn to_index(&self) -> Result<SignedIndex, IndexError> {
        if !self.is_admissible() {
            return Err(IndexError::NonAdmissibleWord(self.to_string()));
        }
        let mut exps = Vec::new();
        for l in &self.letters {
            match l {
                Letter::A => exps.push(1),
                Letter::B => *exps.last_mut().expect("admissible words start with A") += 1,
            }
        }
        Ok(SignedIndex::plain(exps))
    }
}

/// Free-function form of [`Word::to_index`].
pub fn from_word(w: &Word) -> Result<SignedIndex, IndexError> {
    w.to_index()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::A => "A",
                Letter::B => "B",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = IndexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .char_indices()
            .map(|(pos, c)| match c {
                'A' | 'a' => Ok(Letter::A),
                'B' | 'b' => Ok(Letter::B),
                _ => Err(IndexError::Parse { pos, msg: format!("unexpected letter {c:?}") }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters)
    }
}

/// Ordered list of positive integers with a fixed total.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, IndexError> {
        if parts.is_empty() {
            return Err(IndexError::Empty);
        }
        if parts.contains(&0) {
            return Err(IndexError::ZeroExponent);
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for Composition {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

/// Lexicographic stream of all compositions of `total` into `length` parts.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let out = self.current.clone()?;
        let parts = self.current.as_mut().expect("checked above");
        let len = parts.len();
        // rightmost slot that can grow while everything after it stays >= 1
        let mut suffix = 0u32;
        let mut advanced = false;
        for i in (0..len.saturating_sub(1)).rev() {
            suffix += parts[i + 1];
            let slots_after = (len - 1 - i) as u32;
            if suffix > slots_after {
                parts[i] += 1;
                let rest = suffix - 1;
                for p in parts.iter_mut().take(len - 1).skip(i + 1) {
                    *p = 1;
                }
                parts[len - 1] = rest - (slots_after - 1);
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(Composition(out))
    }
}

pub fn enumerate_compositions(total: u32, length: u32) -> Result<Compositions, IndexError> {
    if length == 0 || total < length {
        return Err(IndexError::EmptyRange { total, length });
    }
    let mut first = vec![1u32; length as usize];
    first[length as usize - 1] = total - (length - 1);
    Ok(Compositions { current: Some(first) })
}

/// Nonnegative vectors of the given length summing to `total`, lexicographic.
pub fn weak_compositions(total: u32, length: u32) -> impl Iterator<Item = Vec<u32>> {
    let shifted = if length == 0 { None } else { enumerate_compositions(total + length, length).ok() };
    shifted
        .into_iter()
        .flatten()
        .map(|c| c.0.into_iter().map(|x| x - 1).collect())
}

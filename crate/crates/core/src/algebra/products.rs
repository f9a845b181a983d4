//! Shuffle product on words and harmonic (stuffle) product on indices.

use std::collections::{BTreeMap, HashMap};

use dashu_ratio::RBig;

use super::{AlgebraError, FormalSum};
use crate::index::{Letter, Part, SignedIndex, Word};

/// Integer combination of words, as produced by [`shuffle`].
pub type WordSum = BTreeMap<Word, u64>;

/// All order-preserving interleavings of `w1` and `w2`, with multiplicity.
pub fn shuffle(w1: &Word, w2: &Word) -> WordSum {
    let (a, b) = (w1.letters(), w2.letters());
    // row[j] holds the shuffles of a[i..] and b[j..]; fill from the back
    let mut below: Vec<HashMap<Vec<Letter>, u64>> = vec![HashMap::new(); b.len() + 1];
    for i in (0..=a.len()).rev() {
        let mut row: Vec<HashMap<Vec<Letter>, u64>> = vec![HashMap::new(); b.len() + 1];
        for j in (0..=b.len()).rev() {
            let mut cell = HashMap::new();
            if i == a.len() && j == b.len() {
                cell.insert(Vec::new(), 1);
            }
            if i < a.len() {
                prepend_into(&mut cell, a[i], &below[j]);
            }
            if j < b.len() {
                prepend_into(&mut cell, b[j], &row[j + 1]);
            }
            row[j] = cell;
        }
        below = row;
    }
    below
        .swap_remove(0)
        .into_iter()
        .map(|(letters, n)| (Word::new(letters).expect("nonempty inputs"), n))
        .collect()
}

fn prepend_into(cell: &mut HashMap<Vec<Letter>, u64>, first: Letter, from: &HashMap<Vec<Letter>, u64>) {
    for (tail, n) in from {
        let mut w = Vec::with_capacity(tail.len() + 1);
        w.push(first);
        w.extend_from_slice(tail);
        *cell.entry(w).or_insert(0) += n;
    }
}

/// Shuffle product of two admissible MZVs, read back as indices.
pub fn shuffle_indices(x: &SignedIndex, y: &SignedIndex) -> Result<FormalSum, AlgebraError> {
    let product = shuffle(&x.to_word()?, &y.to_word()?);
    let mut out = FormalSum::zero();
    for (w, n) in product {
        let idx = w.to_index().map_err(|_| {
            AlgebraError::DivergentTerm(format!("shuffle produced non-admissible word {w}"))
        })?;
        out.add_term(RBig::from(n), idx)?;
    }
    Ok(out)
}

/// Harmonic product of two unstarred admissible indices: interleave the
/// parts or merge neighbouring ones (exponents add, signs multiply).
pub fn stuffle(x: &SignedIndex, y: &SignedIndex) -> Result<FormalSum, AlgebraError> {
    for idx in [x, y] {
        if idx.is_starred() {
            return Err(AlgebraError::PreconditionViolated(format!(
                "stuffle needs unstarred input, got {idx}"
            )));
        }
        if !idx.is_admissible() {
            return Err(AlgebraError::DivergentTerm(idx.to_string()));
        }
    }
    let (a, b) = (x.parts(), y.parts());
    // table[i][j]: quasi-shuffles of a[..i] and b[..j]
    let mut table: Vec<Vec<HashMap<Vec<Part>, u64>>> = vec![vec![HashMap::new(); b.len() + 1]; a.len() + 1];
    table[0][0].insert(Vec::new(), 1);
    for i in 0..=a.len() {
        for j in 0..=b.len() {
            if i == 0 && j == 0 {
                continue;
            }
            let mut cell: HashMap<Vec<Part>, u64> = HashMap::new();
            if i > 0 {
                append_into(&mut cell, &table[i - 1][j], a[i - 1]);
            }
            if j > 0 {
                append_into(&mut cell, &table[i][j - 1], b[j - 1]);
            }
            if i > 0 && j > 0 {
                append_into(&mut cell, &table[i - 1][j - 1], a[i - 1].merge(b[j - 1]));
            }
            table[i][j] = cell;
        }
    }
    let mut out = FormalSum::zero();
    let mut terms: Vec<_> = std::mem::take(&mut table[a.len()][b.len()]).into_iter().collect();
    terms.sort();
    for (parts, n) in terms {
        out.add_term(RBig::from(n), SignedIndex::new(parts, false)?)?;
    }
    Ok(out)
}

fn append_into(cell: &mut HashMap<Vec<Part>, u64>, from: &HashMap<Vec<Part>, u64>, last: Part) {
    for (head, n) in from {
        let mut v = head.clone();
        v.push(last);
        *cell.entry(v).or_insert(0) += n;
    }
}

//! Text grammar for indices and formal sums.
//!
//! ```text
//! index    := ("z" | "zs") "(" partlist ")"
//! partlist := part ("," part)*
//! part     := int | int "^" uint        negative int = barred, a^k = k copies
//! sum      := ["-"] term (("+" | "-") term)*
//! term     := [coef "*"] index
//! coef     := uint | uint "/" uint
//! ```
//!
//! Whitespace is allowed between tokens.

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::index::{IndexError, Part, Sign, SignedIndex};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, IndexError> {
        Err(IndexError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), IndexError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str, IndexError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn small_uint(&mut self) -> Result<u32, IndexError> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse::<u32>()
            .map_err(|_| IndexError::Parse { pos: start, msg: format!("number {d} out of range") })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn index(&mut self) -> Result<SignedIndex, IndexError> {
        let starred = match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b's') {
                    self.pos += 1;
                    true
                } else {
                    false
                }
            }
            _ => return self.err("expected 'z' or 'zs'"),
        };
        self.expect(b'(')?;
        let mut parts = Vec::new();
        loop {
            let sign = if self.eat(b'-') { Sign::Minus } else { Sign::Plus };
            let at = self.pos;
            let exponent = self.small_uint()?;
            if exponent == 0 {
                return Err(IndexError::Parse { pos: at, msg: "exponents must be nonzero".into() });
            }
            let repeat = if self.eat(b'^') { self.small_uint()? } else { 1 };
            if repeat == 0 {
                return self.err("repetition count must be positive");
            }
            parts.extend(std::iter::repeat_n(Part { exponent, sign }, repeat as usize));
            if self.eat(b',') {
                continue;
            }
            self.expect(b')')?;
            break;
        }
        SignedIndex::new(parts, starred)
    }

    fn coefficient(&mut self) -> Result<RBig, IndexError> {
        let num: UBig = self.digits()?.parse().expect("digits parse");
        let den: UBig = if self.eat(b'/') {
            let at = self.pos;
            let d: UBig = self.digits()?.parse().expect("digits parse");
            if d == UBig::ZERO {
                return Err(IndexError::Parse { pos: at, msg: "zero denominator".into() });
            }
            d
        } else {
            UBig::ONE
        };
        Ok(RBig::from_parts(IBig::from(num), den))
    }

    fn term(&mut self) -> Result<(RBig, SignedIndex), IndexError> {
        let coef = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let c = self.coefficient()?;
            self.expect(b'*')?;
            c
        } else {
            RBig::ONE
        };
        Ok((coef, self.index()?))
    }
}

/// Parse one index such as `z(1,-2)` or `zs(1^3,2)`.
pub fn parse_index(text: &str) -> Result<SignedIndex, IndexError> {
    let mut cur = Cursor::new(text);
    let idx = cur.index()?;
    if !cur.at_end() {
        return cur.err("trailing input");
    }
    Ok(idx)
}

/// Parse a signed linear combination of indices. Starred terms are kept as
/// written; callers decide whether to expand them.
pub fn parse_terms(text: &str) -> Result<Vec<(RBig, SignedIndex)>, IndexError> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    let mut negate = cur.eat(b'-');
    loop {
        let (c, idx) = cur.term()?;
        out.push((if negate { -c } else { c }, idx));
        if cur.eat(b'+') {
            negate = false;
        } else if cur.eat(b'-') {
            negate = true;
        } else if cur.at_end() {
            return Ok(out);
        } else {
            return cur.err("expected '+', '-' or end of input");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_barred_and_repeated() {
        assert_eq!(parse_index("z(1,-2)").unwrap(), SignedIndex::alt(&[1, -2]));
        assert_eq!(parse_index("zs(1^3, 2)").unwrap(), SignedIndex::star([1, 1, 1, 2]));
        assert_eq!(parse_index(" z( -1^2 ,3 ) ").unwrap(), SignedIndex::alt(&[-1, -1, 3]));
    }

    #[test]
    fn parsing_is_syntax_only() {
        let idx = parse_index("z(2,1)").unwrap();
        assert!(!idx.is_admissible());
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_index("z(1,,2)") {
            Err(IndexError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_index("z(0)").is_err());
        assert!(parse_index("y(2)").is_err());
        assert!(parse_index("z(2) z(3)").is_err());
        assert!(parse_index("z(2^0)").is_err());
    }

    #[test]
    fn terms() {
        let t = parse_terms("2*z(2,2) + 4*z(1,3) - 1/3*zs(2)").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].0, RBig::from(2));
        assert_eq!(t[2].0, RBig::from_parts(IBig::from(-1), UBig::from(3u8)));
        assert!(t[2].1.is_starred());
        let t = parse_terms("-z(3)").unwrap();
        assert_eq!(t[0].0, RBig::from(-1));
        assert!(parse_terms("2*").is_err());
        assert!(parse_terms("1/0*z(2)").is_err());
    }
}

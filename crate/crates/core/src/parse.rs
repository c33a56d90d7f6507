//! Text grammar:
//!
//! ```text
//! poly := term (('+'|'-') term)*
//! term := [int] ('*'? var)*
//! var  := 'x' posint ('^' nonnegint)?
//! ```
//!
//! Whitespace is insignificant and a leading sign is allowed. The variable
//! count is the largest index that appears (at least 1).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{ParseError, ParseErrorKind};
use crate::poly::{ExponentVector, SparsePolynomial};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.pos,
            kind,
        }
    }

    fn unexpected(&mut self) -> ParseError {
        self.skip_ws();
        match self.src.get(self.pos) {
            // Report the full char even for non-ASCII input.
            Some(_) => {
                let rest = core::str::from_utf8(&self.src[self.pos..]).unwrap_or("");
                let c = rest.chars().next().unwrap_or('\u{fffd}');
                self.err(ParseErrorKind::UnexpectedChar(c))
            }
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    /// Digits with whitespace allowed only before the first digit.
    fn digits(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            let s = core::str::from_utf8(&self.src[start..self.pos]).ok()?;
            Some((start, s))
        }
    }
}

pub fn parse_polynomial(text: &str) -> Result<SparsePolynomial, ParseError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut raw: Vec<(BigInt, Vec<(usize, u64)>)> = Vec::new();
    let mut nvars = 1usize;

    let mut negative = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        Some(b'+') => {
            cur.pos += 1;
            false
        }
        _ => false,
    };

    loop {
        let (coeff, factors) = parse_term(&mut cur)?;
        for &(i, _) in &factors {
            nvars = nvars.max(i);
        }
        raw.push((if negative { -coeff } else { coeff }, factors));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) => return Err(cur.unexpected()),
        }
    }

    let end = cur.pos;
    let mut terms = Vec::with_capacity(raw.len());
    for (c, factors) in raw {
        let mut a = alloc::vec![0i64; nvars];
        for (i, e) in factors {
            let slot = &mut a[i - 1];
            *slot = slot.checked_add(e as i64).ok_or(ParseError {
                offset: end,
                kind: ParseErrorKind::NumberTooLarge,
            })?;
        }
        terms.push((c, ExponentVector(a)));
    }
    let f = SparsePolynomial::new(nvars, terms).expect("lengths match by construction");
    if f.is_zero() {
        return Err(ParseError {
            offset: end,
            kind: ParseErrorKind::EmptyPolynomial,
        });
    }
    Ok(f)
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(BigInt, Vec<(usize, u64)>), ParseError> {
    let mut coeff = BigInt::one();
    let mut saw_anything = false;
    if let Some((_, digits)) = cur.digits() {
        coeff = digits.parse::<BigInt>().expect("ascii digits");
        saw_anything = true;
    }
    let mut factors = Vec::new();
    loop {
        let save = cur.pos;
        let had_star = if cur.peek() == Some(b'*') {
            if !saw_anything {
                return Err(cur.unexpected());
            }
            cur.pos += 1;
            true
        } else {
            false
        };
        if cur.peek() == Some(b'x') {
            cur.pos += 1;
            let (at, idx) = cur.digits().ok_or_else(|| cur.unexpected())?;
            let idx: usize = idx.parse().map_err(|_| ParseError {
                offset: at,
                kind: ParseErrorKind::NumberTooLarge,
            })?;
            if idx == 0 {
                return Err(ParseError {
                    offset: at,
                    kind: ParseErrorKind::ZeroVariableIndex,
                });
            }
            let mut e = 1u64;
            if cur.peek() == Some(b'^') {
                cur.pos += 1;
                if cur.peek() == Some(b'-') {
                    return Err(cur.err(ParseErrorKind::NegativeExponent));
                }
                let (at, d) = cur.digits().ok_or_else(|| cur.unexpected())?;
                e = d
                    .parse()
                    .ok()
                    .filter(|&v: &u64| v <= i64::MAX as u64)
                    .ok_or(ParseError {
                        offset: at,
                        kind: ParseErrorKind::NumberTooLarge,
                    })?;
                if matches!(cur.src.get(cur.pos), Some(b'.') | Some(b'/')) {
                    return Err(cur.err(ParseErrorKind::NonIntegerExponent));
                }
            }
            factors.push((idx, e));
            saw_anything = true;
        } else {
            if had_star {
                return Err(cur.unexpected());
            }
            cur.pos = save;
            break;
        }
    }
    if !saw_anything {
        return Err(cur.unexpected());
    }
    if coeff.is_zero() {
        // A literal zero term contributes nothing but is still syntactically fine.
        factors.clear();
    }
    Ok((coeff, factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn leading_star_is_rejected() {
        assert!(parse_polynomial("1 + * x1").is_err());
        assert!(parse_polynomial("*x1").is_err());
    }

    #[test]
    fn trinomial_from_intro() {
        let f = parse_polynomial("1 + 7*x1 - 43*x1^99").unwrap();
        assert_eq!(f.nvars(), 1);
        assert_eq!(f.len(), 3);
        let exps: Vec<i64> = f.support().iter().map(|a| a.0[0]).collect();
        assert_eq!(exps, vec![0, 1, 99]);
        assert_eq!(f.coefficients(), vec![1.into(), 7.into(), (-43).into()]);
    }

    #[test]
    fn cancellation_is_empty() {
        let e = parse_polynomial("x1 - x1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyPolynomial);
    }

    #[test]
    fn duplicates_combined() {
        let f = parse_polynomial("2*x1*x2 + 3*x2*x1").unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.terms()[0].coeff, BigInt::from(5));
        assert_eq!(f.terms()[0].exponent.0, vec![1, 1]);
    }

    #[test]
    fn implicit_products_and_leading_sign() {
        let f = parse_polynomial("-3x1x2^2 + x3").unwrap();
        assert_eq!(f.nvars(), 3);
        assert_eq!(f.to_string(), "x3 - 3*x1*x2^2");
    }

    #[test]
    fn repeated_variable_adds_exponents() {
        let f = parse_polynomial("x1^2*x1^3").unwrap();
        assert_eq!(f.terms()[0].exponent.0, vec![5]);
    }

    #[test]
    fn zero_index_rejected() {
        let e = parse_polynomial("1 + x0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroVariableIndex);
        assert_eq!(e.offset, 5);
    }

    #[test]
    fn fractional_exponent_rejected() {
        let e = parse_polynomial("x1^2.5").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonIntegerExponent);
        assert_eq!(e.offset, 4);
    }

    #[test]
    fn negative_exponent_rejected() {
        let e = parse_polynomial("x1^-2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
    }

    #[test]
    fn syntax_error_offset() {
        let e = parse_polynomial("1 + + x1").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_polynomial("1 + y").unwrap_err();
        assert_eq!(
            e,
            ParseError {
                offset: 4,
                kind: ParseErrorKind::UnexpectedChar('y')
            }
        );
        let e = parse_polynomial("1 +").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
    }

    #[test]
    fn big_coefficients() {
        let f = parse_polynomial("123456789012345678901234567890*x2").unwrap();
        assert_eq!(f.nvars(), 2);
        assert_eq!(
            f.terms()[0].coeff.to_string(),
            "123456789012345678901234567890"
        );
    }
}

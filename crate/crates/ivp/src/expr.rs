//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace-insensitive, ASCII):
//!
//! ```text
//! input   := expr ('/' natprod)?
//! expr    := term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := base ('^' nat)?
//! base    := nat | 'x' | '(' expr ')'
//! natprod := nat ('*' nat)*
//! ```
//!
//! When the numerator is a plain product, the factor structure is preserved
//! so callers can hand a known factorization straight through; a numerator
//! with top-level `+`/`-` collapses into a single polynomial. All arithmetic
//! is arbitrary precision, guarded against degree and bit-size blowups so the
//! parser stays safe on untrusted input.

use num::bigint::BigInt;
use num::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::polyz::Poly;

/// Cap on the numerator degree accepted from an expression.
pub const MAX_DEGREE: usize = 512;
const MAX_LITERAL_DIGITS: usize = 10_000;
const MAX_CONSTANT_BITS: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// A parsed input: the numerator as a list of `(factor, exponent)` pairs
/// (a single pair when the expression is not a top-level product) and the
/// denominator (1 when absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInput {
    pub numerator_factors: Vec<(Poly, u32)>,
    pub denominator: BigInt,
}

impl ParsedInput {
    /// Multiplies the numerator back out.
    pub fn numerator_poly(&self) -> Poly {
        self.numerator_factors
            .iter()
            .fold(Poly::one(), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

pub fn parse(input: &str) -> Result<ParsedInput, ParseError> {
    let mut p = Parser { s: input.as_bytes(), pos: 0 };
    let first = p.parse_term()?;
    let numerator_factors = if matches!(p.peek(), Some(b'+') | Some(b'-')) {
        let mut acc = p.eval_product(first)?;
        while let Some(op @ (b'+' | b'-')) = p.peek() {
            p.pos += 1;
            let term = p.parse_term()?;
            let value = p.eval_product(term)?;
            acc = if op == b'+' { &acc + &value } else { &acc - &value };
        }
        vec![(acc, 1)]
    } else {
        first
    };
    // guard the preserved product against exponent blowups
    let mut total_degree = 0usize;
    for (base, exp) in &numerator_factors {
        match base.degree() {
            Some(0) => {
                let bits = base.coeff(0).bits();
                if bits.saturating_mul(*exp as u64) > MAX_CONSTANT_BITS {
                    return Err(ParseError { offset: 0, message: "constant power too large".into() });
                }
            }
            Some(d) => {
                total_degree = total_degree.saturating_add(d.saturating_mul(*exp as usize));
                if total_degree > MAX_DEGREE {
                    return Err(ParseError {
                        offset: 0,
                        message: format!("numerator degree exceeds the limit {MAX_DEGREE}"),
                    });
                }
            }
            None => {}
        }
    }
    let denominator = if p.peek() == Some(b'/') {
        p.pos += 1;
        p.parse_nat_product()?
    } else {
        BigInt::one()
    };
    if p.peek().is_some() {
        return Err(p.err("end of input"));
    }
    Ok(ParsedInput { numerator_factors, denominator })
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.s.get(self.pos).map_or(false, |c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&mut self, expected: &str) -> ParseError {
        self.skip_ws();
        let found = match self.s.get(self.pos) {
            Some(&c) => format!("'{}'", c as char),
            None => "end of input".to_string(),
        };
        ParseError { offset: self.pos, message: format!("expected {expected}, found {found}") }
    }

    fn parse_nat(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("a digit"));
        }
        if self.pos - start > MAX_LITERAL_DIGITS {
            return Err(ParseError { offset: start, message: "integer literal too long".into() });
        }
        Ok(BigInt::parse_bytes(&self.s[start..self.pos], 10).expect("digits"))
    }

    fn parse_nat_product(&mut self) -> Result<BigInt, ParseError> {
        let mut acc = self.parse_positive_nat()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc *= self.parse_positive_nat()?;
        }
        Ok(acc)
    }

    fn parse_positive_nat(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let offset = self.pos;
        let n = self.parse_nat()?;
        if n.is_zero() {
            return Err(ParseError { offset, message: "denominator parts must be positive".into() });
        }
        Ok(n)
    }

    fn parse_base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Poly::from_coeffs(vec![self.parse_nat()?])),
            Some(b'x') | Some(b'X') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.err("')'"))
                }
            }
            _ => Err(self.err("a number, 'x', or '('")),
        }
    }

    fn parse_factor(&mut self) -> Result<(Poly, u32), ParseError> {
        let base = self.parse_base()?;
        if self.peek() != Some(b'^') {
            return Ok((base, 1));
        }
        self.pos += 1;
        self.skip_ws();
        let offset = self.pos;
        let nat = self.parse_nat()?;
        let exp = nat
            .to_u32()
            .ok_or_else(|| ParseError { offset, message: "exponent too large".into() })?;
        Ok((base, exp))
    }

    fn parse_term(&mut self) -> Result<Vec<(Poly, u32)>, ParseError> {
        let mut factors = vec![self.parse_factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.parse_factor()?);
        }
        Ok(factors)
    }

    fn parse_expr(&mut self) -> Result<Poly, ParseError> {
        let term = self.parse_term()?;
        let mut acc = self.eval_product(term)?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let term = self.parse_term()?;
            let value = self.eval_product(term)?;
            acc = if op == b'+' { &acc + &value } else { &acc - &value };
        }
        Ok(acc)
    }

    fn eval_product(&mut self, factors: Vec<(Poly, u32)>) -> Result<Poly, ParseError> {
        let mut acc = Poly::one();
        for (base, exp) in factors {
            let value = self.pow_checked(&base, exp)?;
            let degree = acc.degree().unwrap_or(0) + value.degree().unwrap_or(0);
            if degree > MAX_DEGREE {
                return Err(ParseError {
                    offset: self.pos,
                    message: format!("degree exceeds the limit {MAX_DEGREE}"),
                });
            }
            acc = &acc * &value;
        }
        Ok(acc)
    }

    fn pow_checked(&mut self, base: &Poly, exp: u32) -> Result<Poly, ParseError> {
        match base.degree() {
            Some(0) => {
                if base.coeff(0).bits().saturating_mul(exp as u64) > MAX_CONSTANT_BITS {
                    return Err(ParseError {
                        offset: self.pos,
                        message: "constant power too large".into(),
                    });
                }
            }
            Some(d) => {
                if d.saturating_mul(exp as usize) > MAX_DEGREE {
                    return Err(ParseError {
                        offset: self.pos,
                        message: format!("degree exceeds the limit {MAX_DEGREE}"),
                    });
                }
            }
            None => {}
        }
        Ok(base.pow(exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_i64s(coeffs)
    }

    #[test]
    fn factored_products_are_preserved() {
        let parsed = parse("x*(x-1)*(x-2)/6").unwrap();
        assert_eq!(
            parsed.numerator_factors,
            vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 1), (p(&[-2, 1]), 1)]
        );
        assert_eq!(parsed.denominator, BigInt::from(6));

        let parsed = parse("(x^2-x+3)*(x^2+2)/3").unwrap();
        assert_eq!(parsed.numerator_factors, vec![(p(&[3, -1, 1]), 1), (p(&[2, 0, 1]), 1)]);
        assert_eq!(parsed.denominator, BigInt::from(3));
    }

    #[test]
    fn sums_collapse_to_one_polynomial() {
        let parsed = parse("x^2 + x + 2").unwrap();
        assert_eq!(parsed.numerator_factors, vec![(p(&[2, 1, 1]), 1)]);
        assert_eq!(parsed.denominator, BigInt::one());
    }

    #[test]
    fn exponents_kept_on_factors() {
        let parsed = parse("x*(x-1)^2/2").unwrap();
        assert_eq!(parsed.numerator_factors, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(parsed.numerator_poly(), &p(&[0, 1]) * &p(&[-1, 1]).pow(2));
    }

    #[test]
    fn inner_arithmetic_evaluates() {
        let parsed = parse("(x*(x+1)-2)*(0-1+x)").unwrap();
        // x^2+x-2 times x-1
        assert_eq!(parsed.numerator_factors, vec![(p(&[-2, 1, 1]), 1), (p(&[-1, 1]), 1)]);
        assert_eq!(parsed.numerator_poly(), &p(&[-2, 1, 1]) * &p(&[-1, 1]));
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(parse(" x * ( x - 1 ) / 2 ").unwrap(), parse("x*(x-1)/2").unwrap());
        assert_eq!(parse("x ^ 2").unwrap(), parse("x^2").unwrap());
    }

    #[test]
    fn denominator_products() {
        assert_eq!(parse("x/2*3").unwrap().denominator, BigInt::from(6));
        assert_eq!(parse("x").unwrap().denominator, BigInt::one());
    }

    #[test]
    fn error_offsets() {
        let err = parse("x/)").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.message.contains("digit"), "{}", err.message);

        let err = parse("").unwrap_err();
        assert_eq!(err.offset, 0);

        let err = parse("x^").unwrap_err();
        assert_eq!(err.offset, 2);

        let err = parse("(x+1").unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(err.message.contains("')'"));

        let err = parse("x)").unwrap_err();
        assert_eq!(err.offset, 1);
        assert!(err.message.contains("end of input"));

        let err = parse("x**2").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn leading_minus_is_rejected() {
        // the grammar has no unary minus; negatives arrive via subtraction
        assert!(parse("-x+1").is_err());
        assert!(parse("(0-x)*(x-1)").is_ok());
    }

    #[test]
    fn zero_denominator_rejected() {
        let err = parse("x/0").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.message.contains("positive"));
        assert!(parse("x/2*0").is_err());
    }

    #[test]
    fn guards_against_blowups() {
        assert!(parse("x^600").is_err());
        assert!(parse("x^4294967296").unwrap_err().message.contains("exponent too large"));
        assert!(parse("(x+1)^600").is_err());
        assert!(parse("9^99999999").unwrap_err().message.contains("constant power"));
        assert!(parse("(x^100)^100").is_err());
        assert!(parse("x^100*x^100*x^100*x^100*x^100*x^100").is_err());
    }

    #[test]
    fn case_insensitive_variable() {
        assert_eq!(parse("X^2+1").unwrap(), parse("x^2+1").unwrap());
    }

    #[test]
    fn display_reparses_for_canonical_polys() {
        for g in [p(&[2, 1, 1]), p(&[-9, 1]), p(&[0, 2, 0, 3]), p(&[5])] {
            let shown = g.to_string();
            let back = parse(&shown).unwrap();
            assert_eq!(back.numerator_poly(), g, "display {shown}");
        }
    }
}

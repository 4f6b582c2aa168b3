//! Recursive-descent parser for polynomial text such as
//! `x^a*y^b + x^c + y^d` or `(y^2-x^3)^2-x^5*y`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('+' | '-')? power ('*' power)*
//! power  := atom ('^' natural)?
//! atom   := natural | 'x' | 'y' | 'z' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use thiserror::Error;

use super::monomial::{Monomial, MAX_VARS, VAR_NAMES};
use super::poly::Poly;
use crate::spectra::ExactRatio;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("at most {max} variables are supported, {requested} requested", max = MAX_VARS)]
    TooManyVariables { requested: usize },
    #[error("variable `{name}` at position {position} is not in a ring with {nvars} variables")]
    VariableOutOfRing {
        name: char,
        position: usize,
        nvars: usize,
    },
}

pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly, ParseError> {
    if nvars > MAX_VARS {
        return Err(ParseError::TooManyVariables { requested: nvars });
    }
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        nvars,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error(format!("unexpected `{}`", parser.chars[parser.pos])));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::SyntaxError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' | '-' => {
                    // the sign is consumed by `term`
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut negate = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negate = c == '-';
            self.pos += 1;
        }
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
        Ok(if negate { -&acc } else { acc })
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a natural-number exponent after `^`"));
            }
            let exp: u32 = digits.parse().map_err(|_| ParseError::SyntaxError {
                position: start,
                message: format!("exponent `{digits}` is too large"),
            })?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let value: BigInt = digits.parse().expect("ascii digits");
                Ok(Poly::constant(self.nvars, ExactRatio::from_integer(value)))
            }
            Some(c) => {
                if let Some(var) = VAR_NAMES.iter().position(|&v| v == c) {
                    if var >= self.nvars {
                        return Err(ParseError::VariableOutOfRing {
                            name: c,
                            position: self.pos,
                            nvars: self.nvars,
                        });
                    }
                    self.pos += 1;
                    Ok(Poly::monomial(
                        self.nvars,
                        Monomial::var(var, 1),
                        ExactRatio::one(),
                    ))
                } else {
                    Err(self.error(format!("unexpected `{c}`")))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::ratio;

    #[test]
    fn three_terms() {
        let f = parse_poly("x^7+y^7+x^5*y^5", 2).unwrap();
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn grouped_power_expands() {
        let f = parse_poly("(y^2-x^3)^2-x^5*y", 2).unwrap();
        let expected = Poly::from_terms(
            2,
            [
                (Monomial::xy(0, 4), ratio(1, 1)),
                (Monomial::xy(3, 2), ratio(-2, 1)),
                (Monomial::xy(6, 0), ratio(1, 1)),
                (Monomial::xy(5, 1), ratio(-1, 1)),
            ],
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn coefficients_signs_and_spaces() {
        let f = parse_poly(" -3*x^2 + 2 * x*y - (-y) ", 2).unwrap();
        assert_eq!(f.coeff(&Monomial::xy(2, 0)), ratio(-3, 1));
        assert_eq!(f.coeff(&Monomial::xy(1, 1)), ratio(2, 1));
        assert_eq!(f.coeff(&Monomial::xy(0, 1)), ratio(1, 1));
        let g = parse_poly("x^0+x^1", 1).unwrap();
        assert_eq!(g.coeff(&Monomial::ONE), ratio(1, 1));
    }

    #[test]
    fn syntax_errors_report_position() {
        assert_eq!(
            parse_poly("x^^2", 2),
            Err(ParseError::SyntaxError {
                position: 2,
                message: "expected a natural-number exponent after `^`".into()
            })
        );
        assert!(matches!(
            parse_poly("x+", 2),
            Err(ParseError::SyntaxError { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("(x+y", 2),
            Err(ParseError::SyntaxError { position: 4, .. })
        ));
        assert!(matches!(
            parse_poly("x y", 2),
            Err(ParseError::SyntaxError { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x^-1", 2),
            Err(ParseError::SyntaxError { .. })
        ));
    }

    #[test]
    fn variable_limits() {
        assert_eq!(
            parse_poly("x", 4),
            Err(ParseError::TooManyVariables { requested: 4 })
        );
        assert!(matches!(
            parse_poly("x+z", 2),
            Err(ParseError::VariableOutOfRing {
                name: 'z',
                position: 2,
                ..
            })
        ));
        assert!(parse_poly("x+z", 3).is_ok());
    }
}

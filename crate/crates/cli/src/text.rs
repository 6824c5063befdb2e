//! Text syntax for polynomials and Gaussian rationals.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*      division only by constants
//! factor := atom ('^' integer)?
//! atom   := integer | variable | 'i' | '(' expr ')'
//! ```
//!
//! A single variable name is accepted per call (`z` for functions, `n` for
//! recurrence coefficients); juxtaposition such as `2z` multiplies.

use holonomica::arith::{Field, GaussRat, Poly, Rat};
use num_bigint::BigInt;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().expect("ascii digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(CliError::malformed(format!(
                "unexpected character {c:?} in {s:?}"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    var: &'a str,
    max_degree: usize,
}

type P = Poly<GaussRat>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn check_degree(&self, p: &P) -> Result<(), CliError> {
        match p.degree() {
            Some(d) if d > self.max_degree => Err(CliError::precondition(format!(
                "degree {d} exceeds HOLONOMICA_MAX_DEGREE = {}",
                self.max_degree
            ))),
            _ => Ok(()),
        }
    }

    fn expr(&mut self) -> Result<P, CliError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Int(_) | Token::Ident(_) | Token::Op('('))
        )
    }

    fn term(&mut self) -> Result<P, CliError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(CliError::malformed("division only by nonzero constants"));
                }
                let inv = d.coeff(0).inv().expect("nonzero");
                acc = acc.scale(&inv);
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                self.check_degree(&acc)?;
                return Ok(acc);
            }
            self.check_degree(&acc)?;
        }
    }

    fn factor(&mut self) -> Result<P, CliError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = match self.peek() {
            Some(Token::Int(n)) => n.clone(),
            _ => {
                return Err(CliError::malformed(
                    "exponent must be a nonnegative integer",
                ))
            }
        };
        self.pos += 1;
        let e: u32 = e
            .try_into()
            .map_err(|_| CliError::precondition("exponent too large"))?;
        if let Some(d) = base.degree() {
            if d as u64 * e as u64 > self.max_degree as u64 {
                return Err(CliError::precondition(format!(
                    "degree {} exceeds HOLONOMICA_MAX_DEGREE = {}",
                    d as u64 * e as u64,
                    self.max_degree
                )));
            }
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<P, CliError> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| CliError::malformed("unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Token::Int(n) => Ok(P::constant(GaussRat::from(Rat::from_integer(n)))),
            Token::Ident(name) if name == self.var => Ok(P::x()),
            Token::Ident(name) if name == "i" => Ok(P::constant(GaussRat::i())),
            Token::Ident(name) => Err(CliError::malformed(format!(
                "unknown symbol {name:?} (expected {:?} or i)",
                self.var
            ))),
            Token::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(CliError::malformed("missing ')'"));
                }
                Ok(inner)
            }
            Token::Op(c) => Err(CliError::malformed(format!("unexpected {c:?}"))),
        }
    }
}

/// Parses a polynomial in `var` with Gaussian-rational coefficients.
pub fn parse_gauss_poly(s: &str, var: &str, max_degree: usize) -> Result<Poly<GaussRat>, CliError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(CliError::malformed("empty expression"));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        var,
        max_degree,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(CliError::malformed(format!("trailing input in {s:?}")));
    }
    Ok(out)
}

/// Parses a polynomial with rational coefficients.
pub fn parse_poly(s: &str, var: &str, max_degree: usize) -> Result<Poly, CliError> {
    let g = parse_gauss_poly(s, var, max_degree)?;
    let (re, im) = g.re_im();
    if !im.is_zero() {
        return Err(CliError::malformed(format!(
            "{s:?} has non-real coefficients"
        )));
    }
    Ok(re)
}

/// Parses a constant such as `3/4`, `-2*i` or `1/2 - i/3`.
pub fn parse_gauss(s: &str) -> Result<GaussRat, CliError> {
    let p = parse_gauss_poly(s, "", 0)?;
    Ok(p.coeff(0))
}

pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let g = parse_gauss(s)?;
    if !g.im.is_zero() {
        return Err(CliError::malformed(format!("{s:?} is not real")));
    }
    Ok(g.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use holonomica::arith::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("2*z^2 - 1", "z", 100).unwrap(), p(&[-1, 0, 2]));
        assert_eq!(parse_poly("2z^2-1", "z", 100).unwrap(), p(&[-1, 0, 2]));
        assert_eq!(parse_poly("(z+1)^3", "z", 100).unwrap(), p(&[1, 3, 3, 1]));
        assert_eq!(
            parse_poly("-z/2 + 3/4", "z", 100).unwrap(),
            Poly::from_terms([(0, rat(3, 4)), (1, rat(-1, 2))])
        );
        assert_eq!(
            parse_poly("(n-3)*(n+1)", "n", 100).unwrap(),
            p(&[-3, -2, 1])
        );
        assert_eq!(parse_poly("0", "z", 100).unwrap(), Poly::zero());
    }

    #[test]
    fn round_trip_display() {
        for s in ["1 - z - 3/2*z^5", "-1 + 2*z^2", "4 + 4*z", "0"] {
            assert_eq!(parse_poly(s, "z", 100).unwrap().to_string(), s);
        }
    }

    #[test]
    fn gaussian_constants() {
        assert_eq!(
            parse_gauss("1/2-i/3").unwrap(),
            GaussRat::new(rat(1, 2), rat(-1, 3))
        );
        assert_eq!(
            parse_gauss("-2*i").unwrap(),
            GaussRat::new(rat(0, 1), rat(-2, 1))
        );
        let c = GaussRat::new(rat(3, 7), rat(-5, 2));
        assert_eq!(parse_gauss(&c.to_string()).unwrap(), c);
        assert!(parse_rat("i").is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_poly("z +", "z", 100).is_err());
        assert!(parse_poly("x", "z", 100).is_err());
        assert!(parse_poly("1/z", "z", 100).is_err());
        assert!(parse_poly("(z", "z", 100).is_err());
        assert!(parse_poly("", "z", 100).is_err());
        assert!(parse_poly("z^2", "z", 1).is_err());
        assert!(parse_poly("1/0", "z", 1).is_err());
    }
}

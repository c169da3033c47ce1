//! Expression language for polynomials in `A`, `B`, `C` over the
//! coefficient field.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*      divisor must be a nonzero scalar
//! factor := '-' factor | atom ('^' uint)?
//! atom   := A | B | C | I | q | r | s | alpha | beta | uint
//!         | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Multiplication is always written with `*`; `AB` is an unknown
//! identifier, not a product.

use num_bigint::BigInt;
use num_rational::BigRational;
use qlie_core::coeffs::Var;
use qlie_core::{Alphabet, Error, NCPoly, RatFunc, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Param(Var),
    /// `A`, `B`, `C`, or `I` for the unit.
    Letter(char),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Num(digits.parse().expect("ascii digits"))));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[start..i].iter().map(|c| c.1).collect()),
            ));
        } else if "+-*/^()[],".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(parse_err(pos, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_err(self.pos(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let e = u32::try_from(&n).map_err(|_| parse_err(pos, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(parse_err(pos, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(parse_err(pos, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Num(n) => Ok(Expr::Num(n)),
            Tok::Ident(id) => match id.as_str() {
                "A" | "B" | "C" | "I" => Ok(Expr::Letter(id.chars().next().unwrap())),
                _ => Var::from_name(&id)
                    .map(Expr::Param)
                    .ok_or_else(|| parse_err(pos, format!("unknown identifier `{id}`"))),
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                let x = self.expr()?;
                self.expect(',')?;
                let y = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Bracket(Box::new(x), Box::new(y)))
            }
            Tok::Sym(c) => Err(parse_err(pos, format!("unexpected `{c}`"))),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(parse_err(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

fn as_scalar(p: &NCPoly) -> Option<RatFunc> {
    match p.len() {
        0 => Some(RatFunc::zero()),
        1 => p
            .terms()
            .next()
            .filter(|(w, _)| w.is_empty())
            .map(|(_, c)| c.clone()),
        _ => None,
    }
}

impl Expr {
    /// Lowers to a polynomial over `alphabet`, which must contain every
    /// letter used.
    pub fn lower(&self, alphabet: &Alphabet) -> Result<NCPoly> {
        Ok(match self {
            Expr::Num(n) => NCPoly::scalar(
                alphabet,
                RatFunc::from_rational(BigRational::from_integer(n.clone())),
            ),
            Expr::Param(v) => NCPoly::scalar(alphabet, RatFunc::var(*v)),
            Expr::Letter('I') => NCPoly::one(alphabet),
            Expr::Letter(c) => {
                if alphabet.letter(*c).is_none() {
                    return Err(parse_err(0, format!("letter `{c}` is not in the alphabet")));
                }
                NCPoly::letter(alphabet, *c)
            }
            Expr::Add(a, b) => a.lower(alphabet)?.try_add(&b.lower(alphabet)?)?,
            Expr::Sub(a, b) => a.lower(alphabet)?.try_sub(&b.lower(alphabet)?)?,
            Expr::Mul(a, b) => a.lower(alphabet)?.multiply(&b.lower(alphabet)?)?,
            Expr::Div(a, b) => {
                let d = as_scalar(&b.lower(alphabet)?)
                    .ok_or_else(|| parse_err(0, "divisor must be a scalar"))?;
                a.lower(alphabet)?.scale(&d.inv()?)
            }
            Expr::Neg(a) => -a.lower(alphabet)?,
            Expr::Pow(a, n) => a.lower(alphabet)?.pow(*n),
            Expr::Bracket(a, b) => a.lower(alphabet)?.bracket(&b.lower(alphabet)?)?,
        })
    }
}

/// Parses and lowers in one step.
pub fn parse_poly(text: &str, alphabet: &Alphabet) -> Result<NCPoly> {
    parse_expression(text)?.lower(alphabet)
}

/// Parses a coefficient: an expression without letters other than `I`.
pub fn parse_scalar(text: &str) -> Result<RatFunc> {
    let p = parse_poly(text, &Alphabet::abc())?;
    as_scalar(&p).ok_or_else(|| parse_err(0, format!("`{text}` is not a scalar")))
}

/// Parses a rational constant such as `-3/2`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    parse_scalar(text)?
        .constant_value()
        .ok_or_else(|| parse_err(0, format!("`{text}` is not a rational number")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::abc()
    }

    #[test]
    fn defining_relation() {
        let p = parse_poly("A*B - q*B*A - r*A", &abc()).unwrap();
        let m = |w| NCPoly::monomial(&abc(), w);
        let expected = &(&m("AB") - &m("BA").scale(&RatFunc::q())) - &m("A").scale(&RatFunc::r());
        assert_eq!(p, expected);
    }

    #[test]
    fn bracket_and_powers() {
        let a = abc();
        assert_eq!(
            parse_poly("[A,B]", &a).unwrap(),
            &NCPoly::monomial(&a, "AB") - &NCPoly::monomial(&a, "BA")
        );
        assert_eq!(
            parse_poly("B*C^3*A", &a).unwrap(),
            NCPoly::monomial(&a, "BCCCA")
        );
        assert_eq!(
            parse_poly("-q^2", &a).unwrap(),
            NCPoly::scalar(&a, -RatFunc::q().pow(2))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expression("A * AB") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse_expression("(A + B") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_expression("A $ B").is_err());
        assert!(parse_poly("A / B", &abc()).is_err());
        assert!(parse_poly("A / 0", &abc()).is_err());
    }

    #[test]
    fn renders_reparse() {
        let p = parse_poly("(3/4*q - 1)*B^2*C + [C*A, B] / (1 - q) - 7", &abc()).unwrap();
        assert_eq!(parse_poly(&p.to_string(), &abc()).unwrap(), p);
    }

    #[test]
    fn scalars() {
        assert_eq!(
            parse_rational("-3/2").unwrap(),
            BigRational::new((-3).into(), 2.into())
        );
        assert!(parse_rational("q").is_err());
        assert_eq!(
            parse_scalar("alpha*beta").unwrap(),
            RatFunc::var(Var::Alpha) * RatFunc::var(Var::Beta)
        );
    }
}

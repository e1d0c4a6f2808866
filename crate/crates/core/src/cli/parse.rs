//! Pratt parser for exact polynomial and rational expressions.
//!
//! Grammar: integer literals, the imaginary unit `i`, variable names from the
//! ring, `+ - * / ^` and parentheses. Exponents are integer literals (a
//! leading minus is allowed and needs an invertible base). `a/b` of literals
//! yields an exact rational. Positions in errors are character offsets.

use num_bigint::BigInt;

use crate::algebra::{RationalFunction, Scalar, SparsePoly, Vars};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
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
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else if c == '(' {
            out.push((Tok::LParen, i));
            i += 1;
        } else if c == ')' {
            out.push((Tok::RParen, i));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a Vars,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self, min_bp: u8) -> Result<RationalFunction> {
        let (tok, pos) = self.bump();
        let mut lhs = match tok {
            Tok::Int(n) => RationalFunction::constant(self.vars, Scalar::from(n)),
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(k) => RationalFunction::from_poly(SparsePoly::var(self.vars, k)),
                None if name == "i" => RationalFunction::constant(self.vars, Scalar::i()),
                None => {
                    let allowed = self.vars.names().join(", ");
                    return Err(syntax(pos, format!("unknown name {name:?} (expected one of {allowed} or i)")));
                }
            },
            Tok::LParen => {
                let inner = self.expr(0)?;
                match self.bump() {
                    (Tok::RParen, _) => inner,
                    (_, p) => return Err(syntax(p, "expected ')'")),
                }
            }
            Tok::Op('-') => self.expr(5)?.neg(),
            Tok::Op('+') => self.expr(5)?,
            Tok::End => return Err(syntax(pos, "unexpected end of input")),
            t => return Err(syntax(pos, format!("unexpected {}", describe(&t)))),
        };
        loop {
            let op = match self.peek() {
                Tok::Op(c) => *c,
                Tok::End | Tok::RParen => break,
                t => return Err(syntax(self.pos(), format!("expected an operator, found {}", describe(t)))),
            };
            let (lbp, rbp) = match op {
                '+' | '-' => (1, 2),
                '*' | '/' => (3, 4),
                '^' => (7, 6),
                _ => unreachable!(),
            };
            if lbp < min_bp {
                break;
            }
            let (_, op_pos) = self.bump();
            if op == '^' {
                let e = self.exponent()?;
                lhs = lhs.pow(e).map_err(|_| syntax(op_pos, "negative power of zero"))?;
                continue;
            }
            let rhs = self.expr(rbp)?;
            lhs = match op {
                '+' => lhs.add(&rhs),
                '-' => lhs.sub(&rhs),
                '*' => lhs.mul(&rhs),
                '/' => lhs.div(&rhs).map_err(|_| syntax(op_pos, "division by zero"))?,
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn exponent(&mut self) -> Result<i32> {
        let neg = matches!(self.peek(), Tok::Op('-'));
        if neg {
            self.bump();
        }
        let paren = matches!(self.peek(), Tok::LParen);
        if paren {
            self.bump();
        }
        let (tok, pos) = self.bump();
        let Tok::Int(n) = tok else {
            return Err(syntax(pos, "exponent must be an integer literal"));
        };
        let mut e: i32 = n.try_into().map_err(|_| syntax(pos, "exponent too large"))?;
        // right-associative: a^b^c = a^(b^c)
        if matches!(self.peek(), Tok::Op('^')) {
            let (_, p) = self.bump();
            let inner = self.exponent()?;
            let inner = u32::try_from(inner).map_err(|_| syntax(p, "negative exponent on an exponent"))?;
            e = e.checked_pow(inner).ok_or_else(|| syntax(p, "exponent too large"))?;
        }
        if paren {
            match self.bump() {
                (Tok::RParen, _) => {}
                (_, p) => return Err(syntax(p, "expected ')'")),
            }
        }
        Ok(if neg { -e } else { e })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("name {s:?}"),
        Tok::Op(c) => format!("'{c}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses a rational expression in the variables of `vars`.
pub fn parse_expression(text: &str, vars: &Vars) -> Result<RationalFunction> {
    let mut p = Parser { toks: lex(text)?, at: 0, vars };
    let out = p.expr(0)?;
    match p.peek() {
        Tok::End => Ok(out),
        t => Err(syntax(p.pos(), format!("unexpected {}", describe(t)))),
    }
}

/// Like [`parse_expression`] but the result must be a polynomial.
pub fn parse_polynomial(text: &str, vars: &Vars) -> Result<SparsePoly> {
    let r = parse_expression(text, vars)?;
    if r.den().is_constant() {
        let inv = r.den().constant_term().inv().expect("nonzero denominator");
        Ok(r.num().scale(&inv))
    } else {
        Err(Error::NonPolynomial(text.trim().to_string()))
    }
}

/// Parses a scalar literal such as `3/2`, `-i` or `(1+2*i)`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let v = Vars::new::<&str>(&[]);
    let p = parse_polynomial(text, &v)?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vars {
        Vars::xy()
    }

    #[test]
    fn examples() {
        let v = xy();
        assert_eq!(parse_polynomial("-y", &v).unwrap().to_string(), "-y");
        assert_eq!(parse_polynomial("x + y + y^2", &v).unwrap().to_string(), "y^2 + x + y");
        assert_eq!(parse_polynomial("y^3 - 2*x*y^2", &v).unwrap().to_string(), "-2*x*y^2 + y^3");
        assert_eq!(parse_polynomial("(1+2*i)*x/2", &v).unwrap().to_string(), "(1/2+i)*x");
    }

    #[test]
    fn precedence() {
        let v = xy();
        assert_eq!(parse_polynomial("-x^2", &v).unwrap().to_string(), "-x^2");
        assert_eq!(parse_polynomial("2^3^2", &v).unwrap().to_string(), "512");
        assert_eq!(parse_polynomial("1 - 2 - 3", &v).unwrap().to_string(), "-4");
        assert_eq!(parse_polynomial("12/4/3", &v).unwrap().to_string(), "1");
        assert_eq!(parse_expression("x^-1", &v).unwrap().to_string(), "1/x");
    }

    #[test]
    fn rational_and_errors() {
        let v = xy();
        assert_eq!(parse_expression("x^2 - 1/y", &v).unwrap().to_string(), "(x^2*y - 1)/y");
        assert!(matches!(parse_polynomial("1/y", &v), Err(Error::NonPolynomial(_))));
        assert_eq!(parse_expression("x + * y", &v).unwrap_err(), Error::Syntax { pos: 4, msg: "unexpected '*'".into() });
        assert!(matches!(parse_expression("z", &v), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_expression("(x + y", &v), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_expression("x / 0", &v), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression("x^y", &v), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression("x y", &v), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression("", &v), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn transform_names() {
        let v = Vars::new(&["X", "Y"]);
        assert_eq!(parse_expression("1/(Y^2 - X)", &v).unwrap().to_string(), "1/(Y^2 - X)");
        assert!(parse_expression("x", &v).is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("-3/6").unwrap(), Scalar::from_ratio(-1, 2));
        assert_eq!(parse_scalar("(1-2*i)").unwrap(), Scalar::from_parts((1, 1), (-2, 1)));
    }
}

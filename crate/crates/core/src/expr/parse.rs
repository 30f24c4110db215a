//! Recursive-descent parser for coefficient expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := ident | int | int '/' uint | '(' expr ')' | '-' atom
//! ```
//!
//! Unary minus lives at the atom level, so `-x^2` reads as `(-x)^2`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::poly::{Poly, Rational};
use super::{ExprError, ParseError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Dot,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Dot => "'.'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or(c);
                return Err(ParseError::new(start, format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a, S> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc += self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ExprError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Dot {
                    return Err(ParseError::new(at, "non-integer exponent").into());
                }
                let e = n.to_u32().ok_or_else(|| ParseError::new(at, "exponent too large"))?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(ParseError::new(at, "negative exponent").into()),
            other => Err(ParseError::new(
                at,
                format!(
                    "exponent must be a nonnegative integer literal, found {}",
                    other.describe()
                ),
            )
            .into()),
        }
    }

    fn atom(&mut self) -> Result<Poly, ExprError> {
        let at = self.offset();
        match self.bump() {
            Tok::Ident(name) => match self.names.iter().position(|n| n.as_ref() == name) {
                Some(i) => Ok(Poly::var(self.nvars(), i)),
                None => Err(ExprError::UnknownIdentifier { name, position: at }),
            },
            Tok::Int(n) => {
                if *self.peek() == Tok::Dot {
                    return Err(ParseError::new(self.offset(), "decimal literals are not supported").into());
                }
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dat = self.offset();
                    match self.bump() {
                        Tok::Int(d) => {
                            if d.is_zero() {
                                return Err(ParseError::new(dat, "zero denominator").into());
                            }
                            Ok(Poly::constant(self.nvars(), Rational::new(n, d)))
                        }
                        other => Err(
                            ParseError::new(dat, format!("expected denominator, found {}", other.describe())).into(),
                        ),
                    }
                } else {
                    Ok(Poly::constant(self.nvars(), Rational::from_integer(n)))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let cat = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    other => Err(ParseError::new(cat, format!("expected ')', found {}", other.describe())).into()),
                }
            }
            Tok::Minus => Ok(-self.atom()?),
            other => Err(ParseError::new(
                at,
                format!("expected a number, coordinate or '(', found {}", other.describe()),
            )
            .into()),
        }
    }
}

/// Parses `text` into a canonical polynomial over the coordinates `names`.
pub fn parse<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Poly, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, names };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        let at = p.offset();
        return Err(ParseError::new(at, format!("unexpected {}", p.peek().describe())).into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::poly::{integer, rational};

    const NAMES: [&str; 3] = ["x1", "x2", "y3"];

    fn p(s: &str) -> Poly {
        parse(s, &NAMES).unwrap()
    }

    #[test]
    fn zero_and_commutativity() {
        assert!(p("0").is_zero());
        assert!(p("x1*y3 - y3*x1").is_zero());
    }

    #[test]
    fn square_expansion() {
        // (x2 + 1)^2 by explicit distribution
        let x2 = Poly::var(3, 1);
        let one = Poly::one(3);
        let expected = &x2 * &x2 + &x2 * &one + &one * &x2 + &one * &one;
        assert_eq!(p("(x2 + 1)^2"), expected);
        assert_eq!(p("(x2 + 1)^2"), p("x2^2 + 2*x2 + 1"));
    }

    #[test]
    fn rationals_and_unary_minus() {
        assert_eq!(p("3/4"), Poly::constant(3, rational(3, 4)));
        assert_eq!(p("-x1^2"), p("x1^2"));
        assert_eq!(p("-1*x1^2"), -p("x1^2"));
        assert_eq!(p("2 - -3"), Poly::constant(3, integer(5)));
        assert_eq!(p("  x1 *\n y3 "), Poly::var(3, 0) * Poly::var(3, 2));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x1^-1", &NAMES) {
            Err(ExprError::Parse(e)) => {
                assert_eq!(e.position, 3);
                assert!(e.message.contains("negative"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse("x1^1.5", &NAMES) {
            Err(ExprError::Parse(e)) => assert!(e.message.contains("non-integer")),
            other => panic!("unexpected {other:?}"),
        }
        match parse("x1 + z9", &NAMES) {
            Err(ExprError::UnknownIdentifier { name, position }) => {
                assert_eq!(name, "z9");
                assert_eq!(position, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("(x1", &NAMES).is_err());
        assert!(parse("x1 x2", &NAMES).is_err());
        assert!(parse("1/0", &NAMES).is_err());
        assert!(parse("x1/2", &NAMES).is_err());
        assert!(parse("", &NAMES).is_err());
        assert!(parse("x1 $ 2", &NAMES).is_err());
    }

    #[test]
    fn print_then_parse_is_identity() {
        for s in [
            "0",
            "-x1^2 + 3/4*x2*y3 - 7",
            "-(x1 + y3)^3",
            "x2^2*y3 - 1/3",
            "-2/5*x1*x2^4",
        ] {
            let q = p(s);
            let printed = q.display(&NAMES).to_string();
            assert_eq!(p(&printed), q, "{s} printed as {printed}");
        }
    }
}

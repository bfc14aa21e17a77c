//! Recursive-descent parser for the symbol DSL.
//!
//! ```text
//! symbol   := piece (';' piece)*
//! piece    := expr ('on' interval)?
//! interval := '[' num ',' num (')' | ']')
//! num      := '-'? (rational | rational '*'? 'pi' ('/' int)? | 'pi' ('/' int)?)
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor | '/' rational)*
//! factor   := rational | 't' | 'pi' | 'cos' '(' linarg ')' | 'sin' '(' linarg ')'
//!           | 'exp' '(' 'i' '*' linarg ')' | '(' expr ')' | '-' factor
//! linarg   := (rational '*')? 't'
//! ```

use std::f64::consts::PI;

use super::expr::Expr;
use super::Interval;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let lit = &text[start..i];
            let v = lit.parse::<f64>().map_err(|_| Error::Syntax {
                pos: start,
                msg: format!("malformed number '{lit}'"),
            })?;
            out.push(Token { tok: Tok::Num(v), pos: start });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                pos: start,
            });
        } else if "+-*/()[],;".contains(c) {
            out.push(Token { tok: Tok::Sym(c), pos: i });
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

#[derive(Debug)]
pub(super) struct RawPiece {
    pub expr: Expr,
    pub interval: Option<Interval>,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    len: usize,
}

pub(super) fn parse_pieces(text: &str) -> Result<Vec<RawPiece>> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        len: text.len(),
    };
    let mut pieces = vec![p.piece()?];
    while p.eat_sym(';') {
        pieces.push(p.piece()?);
    }
    if let Some(t) = p.peek() {
        return Err(Error::Syntax {
            pos: t.pos,
            msg: format!("unexpected trailing token {:?}", t.tok),
        });
    }
    Ok(pieces)
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.len, |t| t.pos)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn eat_ident(&mut self, name: &str) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == name) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<f64> {
        if let Some(Token { tok: Tok::Num(v), .. }) = self.peek() {
            let v = *v;
            self.at += 1;
            Some(v)
        } else {
            None
        }
    }

    fn piece(&mut self) -> Result<RawPiece> {
        let expr = self.expr()?;
        let interval = if self.eat_ident("on") {
            Some(self.interval()?)
        } else {
            None
        };
        Ok(RawPiece { expr, interval })
    }

    fn interval(&mut self) -> Result<Interval> {
        self.expect_sym('[')?;
        let lo = self.bound()?;
        self.expect_sym(',')?;
        let hi = self.bound()?;
        let hi_closed = if self.eat_sym(']') {
            true
        } else if self.eat_sym(')') {
            false
        } else {
            return self.err("expected ']' or ')'");
        };
        if hi <= lo {
            return Err(Error::Partition(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed,
        })
    }

    fn bound(&mut self) -> Result<f64> {
        let sign = if self.eat_sym('-') { -1.0 } else { 1.0 };
        let value = if let Some(v) = self.number() {
            let starred = self.eat_sym('*');
            if self.eat_ident("pi") {
                v * PI / self.pi_divisor()?
            } else if starred {
                return self.err("expected 'pi'");
            } else {
                v
            }
        } else if self.eat_ident("pi") {
            PI / self.pi_divisor()?
        } else {
            return self.err("expected interval endpoint");
        };
        Ok(sign * value)
    }

    fn pi_divisor(&mut self) -> Result<f64> {
        if !self.eat_sym('/') {
            return Ok(1.0);
        }
        match self.number() {
            Some(d) if d != 0.0 && d.fract() == 0.0 => Ok(d),
            _ => self.err("expected nonzero integer divisor"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat_sym('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat_sym('/') {
                let pos = self.pos();
                let d = match self.number() {
                    Some(d) => d,
                    None => return self.err("division is only allowed by a number"),
                };
                if d == 0.0 {
                    return Err(Error::Unbounded(format!("division by zero at offset {pos}")));
                }
                lhs = Expr::Div(Box::new(lhs), d);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if let Some(v) = self.number() {
            return Ok(Expr::Const(v));
        }
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        if self.eat_sym('(') {
            let e = self.expr()?;
            self.expect_sym(')')?;
            return Ok(e);
        }
        if self.eat_ident("t") {
            return Ok(Expr::Var);
        }
        if self.eat_ident("pi") {
            return Ok(Expr::Const(PI));
        }
        for (name, build) in [("cos", Expr::Cos as fn(f64) -> Expr), ("sin", Expr::Sin)] {
            if self.eat_ident(name) {
                self.expect_sym('(')?;
                let w = self.linarg()?;
                self.expect_sym(')')?;
                return Ok(build(w));
            }
        }
        if self.eat_ident("exp") {
            self.expect_sym('(')?;
            if !self.eat_ident("i") {
                return self.err("expected 'i' in exp(i*...)");
            }
            self.expect_sym('*')?;
            let w = self.linarg()?;
            self.expect_sym(')')?;
            return Ok(Expr::ExpI(w));
        }
        self.err("expected a number, 't', 'pi', a function call, or '('")
    }

    fn linarg(&mut self) -> Result<f64> {
        let w = match self.number() {
            Some(w) => {
                self.expect_sym('*')?;
                w
            }
            None => 1.0,
        };
        if self.eat_ident("t") {
            Ok(w)
        } else {
            self.err("expected 't'")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_position_of_syntax_errors() {
        match parse_pieces("1 + cos(t") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("unexpected {other:?}"),
        }
        match parse_pieces("2 $ t") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn division_by_zero_is_unbounded() {
        assert!(matches!(parse_pieces("1/0"), Err(Error::Unbounded(_))));
    }

    #[test]
    fn interval_bounds() {
        let p = parse_pieces("1 on [0, pi/2); t on [pi/2, 1*pi]; 2 on [-3pi/4, 0.5]").unwrap();
        let iv = p[0].interval.unwrap();
        assert_eq!((iv.lo, iv.hi, iv.hi_closed), (0.0, PI / 2.0, false));
        assert_eq!(p[1].interval.unwrap().hi, PI);
        assert_eq!(p[2].interval.unwrap().lo, -3.0 * PI / 4.0);
    }

    #[test]
    fn exp_requires_imaginary_unit() {
        assert!(parse_pieces("exp(i*2*t)").is_ok());
        assert!(parse_pieces("exp(2*t)").is_err());
        assert!(parse_pieces("cos(2*x)").is_err());
    }
}

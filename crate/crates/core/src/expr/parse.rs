use super::{Expr, Func};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = bytes[pos] as char;
        if ch.is_ascii_whitespace() {
            pos += 1;
        } else if ch.is_ascii_digit()
            || (ch == '.' && bytes.get(pos + 1).is_some_and(u8::is_ascii_digit))
        {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'.' {
                pos += 1;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
            }
            // exponent only when digits follow, so `2*e` and `2e` stay distinct
            if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
                let mut k = pos + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    pos = k;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                }
            }
            let text = &src[start..pos];
            let value = text.parse::<f64>().map_err(|_| Error::Syntax {
                pos: start,
                msg: format!("malformed number `{text}`"),
            })?;
            out.push((start, Tok::Num(value)));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            out.push((start, Tok::Ident(src[start..pos].to_string())));
        } else {
            let tok = match ch {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(ch),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("unexpected character `{ch}`"),
                    })
                }
            };
            out.push((pos, tok));
            pos += 1;
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
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.unary()?;
            lhs = if op == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.at += 1;
            let n = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn signed_integer(&mut self) -> Result<i32> {
        let sign = match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                -1
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                1
            }
            _ => 1,
        };
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(x)) if x.fract() == 0.0 && x.abs() <= i32::MAX as f64 => {
                Ok(sign * x as i32)
            }
            _ => Err(Error::Syntax {
                pos,
                msg: "exponent must be an integer literal".into(),
            }),
        }
    }

    fn exponent(&mut self) -> Result<i32> {
        if self.peek() == Some(&Tok::LParen) {
            self.at += 1;
            let n = self.signed_integer()?;
            self.expect(Tok::RParen, "`)` after exponent")?;
            Ok(n)
        } else {
            self.signed_integer()
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(x)) => Ok(Expr::Num(x)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "z" => Ok(Expr::Z),
                "i" => Ok(Expr::I),
                "pi" => Ok(Expr::Pi),
                "e" => Ok(Expr::E),
                _ => match Func::from_name(&name) {
                    Some(f) => {
                        self.expect(Tok::LParen, "`(` after function name")?;
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, "`)` closing function call")?;
                        Ok(Expr::Call(f, Box::new(arg)))
                    }
                    None => Err(Error::UnknownIdentifier { pos, name }),
                },
            },
            Some(Tok::Op(op)) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected operator `{op}`"),
            }),
            Some(Tok::RParen) => Err(Error::Syntax {
                pos,
                msg: "unexpected `)`".into(),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses an expression in `z`.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

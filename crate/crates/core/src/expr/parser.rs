use super::{BinaryOp, ExprError, Function, ScalarExpr as Expr};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                // Only treat as exponent when followed by digits (optionally signed),
                // so that `2e` is not swallowed.
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let lexeme = &text[start..i];
            let value: f64 = lexeme.parse().map_err(|_| ExprError::Syntax {
                offset: start,
                message: format!("malformed number `{lexeme}`"),
            })?;
            out.push((Token::Number(value), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Token::Ident(text[start..i].to_string()), start));
        } else {
            let tok = match c {
                b'+' | b'-' | b'*' | b'/' | b'^' => Token::Op(c as char),
                b'(' => Token::LParen,
                b')' => Token::RParen,
                _ => {
                    let ch = text[i..].chars().next().unwrap_or('?');
                    return Err(ExprError::Syntax {
                        offset: i,
                        message: format!("unexpected character `{ch}`"),
                    });
                }
            };
            out.push((tok, i));
            i += 1;
        }
    }
    Ok(out)
}

pub(super) struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
    coords: &'a [String],
    params: &'a [String],
}

impl<'a> Parser<'a> {
    pub(super) fn new(
        text: &str,
        coords: &'a [String],
        params: &'a [String],
    ) -> Result<Self, ExprError> {
        Ok(Self {
            tokens: tokenize(text)?,
            pos: 0,
            end: text.len(),
            coords,
            params,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        tok
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    pub(super) fn parse_all(mut self) -> Result<Expr, ExprError> {
        if self.tokens.is_empty() {
            return self.syntax("empty expression");
        }
        let expr = self.sum()?;
        if self.peek().is_some() {
            return self.syntax("unexpected trailing input");
        }
        Ok(expr)
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(Token::Op('+')) => BinaryOp::Add,
                Some(Token::Op('-')) => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Token::Op('*')) => BinaryOp::Mul,
                Some(Token::Op('/')) => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Token::Op('+')) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.bump();
            let exp_offset = self.offset();
            // right-associative: a^b^c = a^(b^c); the exponent may carry a sign
            let exponent = self.unary()?;
            if !exponent.is_chart_constant() && !base.is_chart_constant() {
                return Err(ExprError::NonConstantExponent { offset: exp_offset });
            }
            return Ok(Expr::Binary(BinaryOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let offset = self.offset();
        match self.bump() {
            Some(Token::Number(v)) => Ok(Expr::Number(v)),
            Some(Token::LParen) => {
                let inner = self.sum()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        self.syntax("expected `)`")
                    }
                }
            }
            Some(Token::Ident(name)) => {
                if let Some(Token::LParen) = self.peek() {
                    let func = Function::from_name(&name)
                        .ok_or_else(|| ExprError::UnknownFunction { name: name.clone(), offset })?;
                    self.bump();
                    let arg = self.sum()?;
                    match self.bump() {
                        Some(Token::RParen) => Ok(Expr::Call(func, Box::new(arg))),
                        _ => {
                            self.pos -= 1;
                            self.syntax("expected `)` after function argument")
                        }
                    }
                } else if let Some(k) = self.coords.iter().position(|c| *c == name) {
                    Ok(Expr::Coord(k))
                } else if let Some(k) = self.params.iter().position(|p| *p == name) {
                    Ok(Expr::Param(k))
                } else if name == "pi" {
                    Ok(Expr::Pi)
                } else if name == "e" {
                    Ok(Expr::E)
                } else {
                    Err(ExprError::UnknownSymbol { name, offset })
                }
            }
            Some(Token::Op(c)) => {
                self.pos -= 1;
                self.syntax(format!("unexpected operator `{c}`"))
            }
            Some(Token::RParen) => {
                self.pos -= 1;
                self.syntax("unexpected `)`")
            }
            None => self.syntax("unexpected end of expression"),
        }
    }
}

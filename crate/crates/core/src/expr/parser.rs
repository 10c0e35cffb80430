//! Recursive-descent parser.
//!
//! ```text
//! stmt    := IDENT '=' expr | expr
//! expr    := addexpr (REL addexpr)?
//! addexpr := mulexpr (('+' | '-') mulexpr)*
//! mulexpr := unary ('*' unary)*
//! unary   := '-' unary | atom
//! atom    := NUMBER | IDENT | '(' expr ')' | '<' opts '|' opts '>'
//! opts    := (addexpr (',' addexpr)*)?
//! ```
//!
//! Form options are additive expressions, so a `>` inside a form always
//! closes it. `⟨ ⟩` may be used in place of `< >`.

use super::ast::{Ast, RelOp};
use super::lexer::{tokenize, Tok, Token};
use super::ExprError;

pub fn parse(input: &str) -> Result<Ast, ExprError> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, at: 0 };
    let ast = p.statement()?;
    p.finish()?;
    Ok(ast)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.at + ahead).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn pos(&self) -> usize {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.at].tok.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        if *self.peek() == Tok::Slash {
            return Err(ExprError::Division);
        }
        Err(ExprError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn finish(&mut self) -> Result<(), ExprError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => {
                let msg = format!("unexpected {}", describe(t));
                self.error(msg)
            }
        }
    }

    fn statement(&mut self) -> Result<Ast, ExprError> {
        if let (Tok::Ident(name), Tok::Eq) = (self.peek(), self.peek_at(1)) {
            let name = name.clone();
            self.bump();
            self.bump();
            let value = self.expr()?;
            return Ok(Ast::Let(name, Box::new(value)));
        }
        self.expr()
    }

    fn expr(&mut self) -> Result<Ast, ExprError> {
        let lhs = self.add_expr()?;
        let Some(op) = relop(self.peek()) else {
            return Ok(lhs);
        };
        self.bump();
        let rhs = self.add_expr()?;
        if relop(self.peek()).is_some() {
            return self.error("comparisons cannot be chained");
        }
        Ok(Ast::Compare(op, Box::new(lhs), Box::new(rhs)))
    }

    fn add_expr(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.mul_expr()?;
        loop {
            lhs = match self.peek() {
                Tok::Plus => {
                    self.bump();
                    Ast::Add(Box::new(lhs), Box::new(self.mul_expr()?))
                }
                Tok::Minus => {
                    self.bump();
                    Ast::Sub(Box::new(lhs), Box::new(self.mul_expr()?))
                }
                _ => return Ok(lhs),
            };
        }
    }

    fn mul_expr(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => return Err(ExprError::Division),
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Ast, ExprError> {
        match self.peek().clone() {
            Tok::Number(d) => {
                self.bump();
                Ok(Ast::Dyadic(d))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Ast::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Lt | Tok::FormOpen => {
                self.bump();
                let left = self.options()?;
                self.expect(&Tok::Bar, "'|'")?;
                let right = self.options()?;
                match self.peek() {
                    Tok::Gt | Tok::FormClose => {
                        self.bump();
                        Ok(Ast::Form(left, right))
                    }
                    _ => self.error("expected '>' to close the form"),
                }
            }
            t => {
                let msg = format!("expected an operand, found {}", describe(&t));
                self.error(msg)
            }
        }
    }

    fn options(&mut self) -> Result<Vec<Ast>, ExprError> {
        let mut out = Vec::new();
        if matches!(self.peek(), Tok::Bar | Tok::Gt | Tok::FormClose) {
            return Ok(out);
        }
        out.push(self.add_expr()?);
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.add_expr()?);
        }
        Ok(out)
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ExprError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            let msg = format!("expected {what}, found {}", describe(self.peek()));
            self.error(msg)
        }
    }
}

fn relop(t: &Tok) -> Option<RelOp> {
    Some(match t {
        Tok::Lt => RelOp::Lt,
        Tok::Le => RelOp::Le,
        Tok::Eq => RelOp::Eq,
        Tok::Ne => RelOp::Ne,
        Tok::Ge => RelOp::Ge,
        Tok::Gt => RelOp::Gt,
        _ => return None,
    })
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Number(d) => format!("number {d}"),
        Tok::Ident(s) => format!("name {s}"),
        Tok::Eof => "end of input".to_string(),
        other => {
            let s = match other {
                Tok::Plus => "+",
                Tok::Minus => "-",
                Tok::Star => "*",
                Tok::Slash => "/",
                Tok::LParen => "(",
                Tok::RParen => ")",
                Tok::Lt => "<",
                Tok::Gt => ">",
                Tok::FormOpen => "⟨",
                Tok::FormClose => "⟩",
                Tok::Bar => "|",
                Tok::Comma => ",",
                Tok::Le => "<=",
                Tok::Ge => ">=",
                Tok::Eq => "=",
                Tok::Ne => "!=",
                Tok::Number(_) | Tok::Ident(_) | Tok::Eof => unreachable!(),
            };
            format!("'{s}'")
        }
    }
}

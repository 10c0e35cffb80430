//! The calculator's expression language.

mod ast;
mod lexer;
mod parser;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::arithmetic::Engine;
use crate::error::SurrealError;
use crate::form::{Form, Surreal};
use crate::genealogy::Node;

pub use ast::{Ast, RelOp};
pub use lexer::{tokenize, Tok, Token};
pub use parser::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("denominator must be a power of two")]
    NotDyadic,
    #[error("unknown operator /")]
    Division,
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("expected a surreal number, found a boolean")]
    NotSurreal,
    #[error(transparent)]
    Engine(#[from] SurrealError),
    #[error("{0}")]
    Command(String),
}

impl ExprError {
    /// The stable user-facing message, `error: ...`.
    pub fn report(&self) -> String {
        format!("error: {self}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Surreal(Node),
    Bool(bool),
}

impl Value {
    pub fn as_node(&self) -> Option<&Node> {
        match self {
            Value::Surreal(n) => Some(n),
            Value::Bool(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

/// `name = ⟨...⟩ (gen g)` for surreals, `true`/`false` for booleans.
pub fn format(v: &Value) -> String {
    match v {
        Value::Surreal(n) => n.describe(),
        Value::Bool(b) => b.to_string(),
    }
}

/// Variable bindings of one calculator session.
pub type Env = HashMap<String, Value>;

pub fn eval(engine: &Engine, ast: &Ast, env: &mut Env) -> Result<Value, ExprError> {
    if let Ast::Let(name, rhs) = ast {
        let v = eval(engine, rhs, env)?;
        env.insert(name.clone(), v.clone());
        return Ok(v);
    }
    eval_expr(engine, ast, env)
}

fn eval_expr(engine: &Engine, ast: &Ast, env: &Env) -> Result<Value, ExprError> {
    let surreal = |a: &Ast| -> Result<Node, ExprError> {
        match eval_expr(engine, a, env)? {
            Value::Surreal(n) => Ok(n),
            Value::Bool(_) => Err(ExprError::NotSurreal),
        }
    };
    let node = match ast {
        Ast::Dyadic(d) => engine.from_dyadic(d)?,
        Ast::Var(name) => {
            return env
                .get(name)
                .cloned()
                .ok_or_else(|| ExprError::Unbound(name.clone()))
        }
        Ast::Form(l, r) => {
            let opts = |items: &[Ast]| -> Result<Vec<Surreal>, ExprError> {
                items
                    .iter()
                    .map(|a| surreal(a).map(Surreal::Node))
                    .collect()
            };
            let form = Surreal::from(Form::new(opts(l)?, opts(r)?));
            if !engine.is_number(&form)? {
                return Err(SurrealError::NotANumber.into());
            }
            engine.canonical(&form)?
        }
        Ast::Neg(a) => engine.negate(&surreal(a)?)?,
        Ast::Add(a, b) => engine.add(&surreal(a)?, &surreal(b)?)?,
        Ast::Sub(a, b) => engine.sub(&surreal(a)?, &surreal(b)?)?,
        Ast::Mul(a, b) => engine.mul(&surreal(a)?, &surreal(b)?)?,
        Ast::Compare(op, a, b) => {
            let (x, y) = (Surreal::Node(surreal(a)?), Surreal::Node(surreal(b)?));
            let order = engine.order();
            let r = match op {
                RelOp::Lt => order.lt(&x, &y)?,
                RelOp::Le => order.le(&x, &y)?,
                RelOp::Eq => order.eq(&x, &y)?,
                RelOp::Ne => order.ne(&x, &y)?,
                RelOp::Ge => order.ge(&x, &y)?,
                RelOp::Gt => order.gt(&x, &y)?,
            };
            return Ok(Value::Bool(r));
        }
        Ast::Let(..) => {
            return Err(ExprError::Syntax {
                pos: 0,
                msg: "assignment is only allowed at the start of a statement".into(),
            })
        }
    };
    Ok(Value::Surreal(node))
}

/// Parses and evaluates one statement.
pub fn run(engine: &Engine, input: &str, env: &mut Env) -> Result<Value, ExprError> {
    eval(engine, &parse(input)?, env)
}

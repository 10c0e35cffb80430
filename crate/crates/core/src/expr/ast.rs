use std::fmt;

use crate::dyadic::Dyadic;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelOp {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl RelOp {
    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            // `=` alone at the start of a statement means assignment.
            RelOp::Eq => "==",
            RelOp::Ne => "!=",
            RelOp::Ge => ">=",
            RelOp::Gt => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Dyadic(Dyadic),
    Form(Vec<Ast>, Vec<Ast>),
    Var(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Compare(RelOp, Box<Ast>, Box<Ast>),
    Let(String, Box<Ast>),
}

// Binding strength, loosest first.
const LET: u8 = 0;
const CMP: u8 = 1;
const ADD: u8 = 2;
const MUL: u8 = 3;
const UNARY: u8 = 4;
const ATOM: u8 = 5;

impl Ast {
    fn precedence(&self) -> u8 {
        match self {
            Ast::Let(..) => LET,
            Ast::Compare(..) => CMP,
            Ast::Add(..) | Ast::Sub(..) => ADD,
            Ast::Mul(..) => MUL,
            Ast::Neg(_) => UNARY,
            Ast::Dyadic(d) if d.is_negative() => UNARY,
            Ast::Dyadic(_) | Ast::Form(..) | Ast::Var(_) => ATOM,
        }
    }

    fn render(&self, out: &mut String, min: u8) {
        let paren = self.precedence() < min;
        if paren {
            out.push('(');
        }
        match self {
            Ast::Dyadic(d) => out.push_str(&d.to_string()),
            Ast::Var(v) => out.push_str(v),
            Ast::Form(l, r) => {
                out.push('<');
                render_list(out, l);
                out.push_str(if r.is_empty() { " |" } else { " | " });
                render_list(out, r);
                out.push('>');
            }
            Ast::Neg(a) => {
                out.push('-');
                a.render(out, UNARY);
            }
            Ast::Add(a, b) => binary(out, a, " + ", b, ADD),
            Ast::Sub(a, b) => binary(out, a, " - ", b, ADD),
            Ast::Mul(a, b) => binary(out, a, " * ", b, MUL),
            Ast::Compare(op, a, b) => {
                a.render(out, ADD);
                out.push(' ');
                out.push_str(op.symbol());
                out.push(' ');
                b.render(out, ADD);
            }
            Ast::Let(name, a) => {
                out.push_str(name);
                out.push_str(" = ");
                a.render(out, CMP);
            }
        }
        if paren {
            out.push(')');
        }
    }
}

fn binary(out: &mut String, a: &Ast, op: &str, b: &Ast, level: u8) {
    a.render(out, level);
    out.push_str(op);
    b.render(out, level + 1);
}

fn render_list(out: &mut String, items: &[Ast]) {
    for (i, a) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        a.render(out, ADD);
    }
}

/// Renders source text that parses back to the same tree.
impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(&mut s, LET);
        f.write_str(&s)
    }
}

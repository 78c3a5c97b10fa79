//! Gate parameter expressions.
//!
//! Angles are kept symbolically so a circuit can be printed back out and
//! user gates can be expanded with their arguments substituted. Nothing in
//! the metric set evaluates them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

pub const UNARY_FUNCTIONS: &[&str] = &["sin", "cos", "tan", "exp", "ln", "sqrt"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Expr {
    /// Numeric literal, stored as written.
    Number(String),
    Pi,
    /// Formal parameter of an enclosing gate definition.
    Param(String),
    Neg(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(String, Box<Expr>),
}

impl Expr {
    /// Replaces formal parameters by the bound expressions.
    pub fn substitute(&self, bindings: &HashMap<&str, &Expr>) -> Expr {
        match self {
            Expr::Param(name) => bindings
                .get(name.as_str())
                .map(|e| (*e).clone())
                .unwrap_or_else(|| self.clone()),
            Expr::Neg(inner) => Expr::Neg(Box::new(inner.substitute(bindings))),
            Expr::Binary(op, l, r) => Expr::Binary(
                *op,
                Box::new(l.substitute(bindings)),
                Box::new(r.substitute(bindings)),
            ),
            Expr::Call(f, arg) => Expr::Call(f.clone(), Box::new(arg.substitute(bindings))),
            Expr::Number(_) | Expr::Pi => self.clone(),
        }
    }
}

// Fully parenthesized so the printed form re-parses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(n) => f.write_str(n),
            Expr::Pi => f.write_str("pi"),
            Expr::Param(p) => f.write_str(p),
            Expr::Neg(inner) => write!(f, "-({inner})"),
            Expr::Binary(op, l, r) => write!(f, "({l}){}({r})", op.symbol()),
            Expr::Call(func, arg) => write!(f, "{func}({arg})"),
        }
    }
}

//! A small language for ideal expressions.
//!
//! ```text
//! ring T = [x y | u v];
//! I = (x^2, x*y);
//! J = (u*v);
//! reg(symb(fiber(I, J), 2, ass))
//! ```
//!
//! `+` is the sum, `*` the product, `&` the intersection, `:` the colon and
//! `^k` the ordinary power. `(0)` and `(1)` are the zero and unit ideals.

mod emit;
mod eval;
mod parse;

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::ring::Ring;

pub use emit::{emit, Format};
pub use eval::{evaluate, evaluate_with, Value};
pub use parse::parse_program;

/// Byte range in the program text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Sum,
    Product,
    Intersect,
    Colon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Call {
    pub name: String,
    pub args: Vec<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    /// Generators as `(variable, exponent)` lists.
    Literal(Vec<Vec<(String, u16)>>),
    Zero,
    Unit,
    Name(String),
    Binary(Op, Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
    Call(Call),
    /// Only as a call argument.
    Int(u64),
    /// `ass` or `min`, only as a call argument.
    Word(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub expr: Expr,
}

#[derive(Debug, Clone)]
pub struct Program {
    pub text: String,
    pub ring_name: String,
    pub ring: Arc<Ring>,
    pub bindings: Vec<Binding>,
    pub result: Expr,
}

impl Program {
    pub fn source(&self, span: Span) -> &str {
        &self.text[span.start..span.end]
    }
}

/// 1-based line and column of a byte offset.
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LangError {
    Syntax {
        line: usize,
        col: usize,
        offset: usize,
        msg: String,
    },
    Unknown {
        line: usize,
        col: usize,
        name: String,
    },
    Arity {
        line: usize,
        col: usize,
        msg: String,
    },
    /// A kernel error, with the expression that raised it.
    Eval {
        line: usize,
        col: usize,
        expr: String,
        source: Error,
    },
}

impl LangError {
    pub(crate) fn syntax(text: &str, offset: usize, msg: impl Into<String>) -> Self {
        let (line, col) = line_col(text, offset);
        LangError::Syntax {
            line,
            col,
            offset,
            msg: msg.into(),
        }
    }

    pub(crate) fn unknown(text: &str, offset: usize, name: &str) -> Self {
        let (line, col) = line_col(text, offset);
        LangError::Unknown {
            line,
            col,
            name: name.to_string(),
        }
    }

    pub(crate) fn arity(p: &Program, e: &Expr, msg: impl Into<String>) -> Self {
        let (line, col) = line_col(&p.text, e.span.start);
        LangError::Arity {
            line,
            col,
            msg: msg.into(),
        }
    }

    pub(crate) fn eval(p: &Program, e: &Expr, source: Error) -> Self {
        let (line, col) = line_col(&p.text, e.span.start);
        LangError::Eval {
            line,
            col,
            expr: p.source(e.span).to_string(),
            source,
        }
    }

    /// The kernel error behind an evaluation failure.
    pub fn kernel(&self) -> Option<&Error> {
        match self {
            LangError::Eval { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl fmt::Display for LangError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LangError::Syntax { line, col, msg, .. } => {
                write!(f, "{line}:{col}: syntax error: {msg}")
            }
            LangError::Unknown { line, col, name } => {
                write!(f, "{line}:{col}: unknown identifier `{name}`")
            }
            LangError::Arity { line, col, msg } => write!(f, "{line}:{col}: {msg}"),
            LangError::Eval {
                line,
                col,
                expr,
                source,
            } => write!(f, "{line}:{col}: in `{expr}`: {source}"),
        }
    }
}

impl std::error::Error for LangError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bindings_and_calls() {
        let p = parse_program("ring R=[x y]; I=(x^2, x*y); reg(I)").unwrap();
        assert_eq!(p.ring.vars(), ["x", "y"]);
        assert_eq!(p.bindings.len(), 1);
        assert!(matches!(&p.result.kind, ExprKind::Call(c) if c.name == "reg"));
        assert_eq!(p.source(p.result.span), "reg(I)");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_program("ring R=[x y];\n(x^2,").unwrap_err();
        assert!(
            matches!(
                e,
                LangError::Syntax {
                    line: 2,
                    col: 6,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_program("ring R=[x y];\nI = (x) + K;\nI").unwrap_err();
        assert!(
            matches!(
                e,
                LangError::Unknown {
                    line: 2,
                    col: 11,
                    ..
                }
            ),
            "{e}"
        );
        assert!(parse_program("(x)").is_err());
        assert!(parse_program("ring R=[x]; (x) $ (x)").is_err());
        assert!(parse_program("ring R=[x | ]; (x)").is_err());
        assert!(parse_program("ring R=[x]; x").is_err());
    }

    #[test]
    fn precedence() {
        let p = parse_program("ring R=[x y]; (x) + (y) * (x)^2 & (y)").unwrap();
        let ExprKind::Binary(Op::Sum, _, rhs) = &p.result.kind else {
            panic!("{:?}", p.result)
        };
        assert!(matches!(rhs.kind, ExprKind::Binary(Op::Intersect, _, _)));
        let p = parse_program("ring R=[x y]; ((x) + (y))^2").unwrap();
        assert!(matches!(p.result.kind, ExprKind::Power(_, 2)));
    }

    #[test]
    fn line_col_counts_from_one() {
        assert_eq!(line_col("ab\ncd", 0), (1, 1));
        assert_eq!(line_col("ab\ncd", 4), (2, 2));
    }
}

//! Parsing and evaluation of form expressions, and rendering of
//! verification reports, for the `rumin` command-line tool.

pub mod expr;
pub mod report;

pub use expr::{eval, eval_str, parse, Expr, ExprError, ExprKind, Pos};

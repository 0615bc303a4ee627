//! The `.plx` query language.

pub mod ast;
pub mod parser;

pub use ast::{pretty_print, Expr, Query, Statement, TailQuery};
pub use parser::{parse, parse_expr, parse_rational, ParseError};

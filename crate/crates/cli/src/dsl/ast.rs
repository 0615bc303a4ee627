use std::fmt;

use rucert_core::{Rational, TailParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// `pl [(t, v), ...]`, points kept as written.
    Literal(Vec<(Rational, Rational)>),
    Var(String),
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Scale(Rational, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
    Abs(Box<Expr>),
    /// `u(t) = t`.
    U,
    One,
}

/// Queries expressible in program text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Eval { expr: Expr, at: Rational },
    Norm { expr: Expr, wrt: Expr },
    Leq { lhs: Expr, rhs: Expr },
    InIdeal { expr: Expr, wrt: Expr },
}

/// Queries about accumulating-breakpoint functions. These are reachable
/// only through command-line parameters, never through program text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailQuery {
    RatioBounds { params: TailParams },
    Verify { params: TailParams, depth: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Let(String, Expr),
    Query(Query),
}

impl Expr {
    fn is_additive(&self) -> bool {
        matches!(self, Expr::Sum(..) | Expr::Diff(..))
    }

    fn is_term_level(&self) -> bool {
        self.is_additive() || matches!(self, Expr::Scale(..))
    }
}

struct Factor<'a>(&'a Expr);

impl fmt::Display for Factor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_term_level() {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs = |e: &Expr, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if e.is_additive() {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Literal(points) => {
                f.write_str("pl [")?;
                for (i, (t, v)) in points.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "({t}, {v})")?;
                }
                f.write_str("]")
            }
            Expr::Var(name) => f.write_str(name),
            Expr::Sum(a, b) => {
                write!(f, "{a} + ")?;
                rhs(b, f)
            }
            Expr::Diff(a, b) => {
                write!(f, "{a} - ")?;
                rhs(b, f)
            }
            Expr::Scale(c, e) => write!(f, "{c} * {}", Factor(e)),
            Expr::Join(a, b) => write!(f, "max({a}, {b})"),
            Expr::Meet(a, b) => write!(f, "min({a}, {b})"),
            Expr::Abs(e) => write!(f, "abs({e})"),
            Expr::U => f.write_str("u"),
            Expr::One => f.write_str("one"),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Eval { expr, at } => write!(f, "eval {expr} at {at}"),
            Query::Norm { expr, wrt } => write!(f, "norm {expr} wrt {wrt}"),
            // Parenthesised so the first operand cannot absorb the second.
            Query::Leq { lhs, rhs } => write!(f, "leq ({lhs}) ({rhs})"),
            Query::InIdeal { expr, wrt } => write!(f, "in_ideal {expr} wrt {wrt}"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Let(name, e) => write!(f, "let {name} = {e}"),
            Statement::Query(q) => write!(f, "{q}"),
        }
    }
}

/// One statement per line.
pub fn pretty_print(stmts: &[Statement]) -> String {
    let mut out = String::new();
    for s in stmts {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

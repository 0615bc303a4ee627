use std::collections::HashMap;

use rucert_core::{
    e_norm, in_principal_ideal, strict_inclusion_certificate, PLFunction, TailFunction,
};
use thiserror::Error;

use crate::dsl::{Expr, Query, Statement, TailQuery};
use crate::report::{Report, VerifyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown identifier {0:?}")]
    Name(String),
    #[error(transparent)]
    Core(#[from] rucert_core::Error),
}

impl EvalError {
    pub fn code(&self) -> &'static str {
        match self {
            EvalError::Name(_) => "name_error",
            EvalError::Core(e) => e.code(),
        }
    }
}

impl From<&EvalError> for Report {
    fn from(e: &EvalError) -> Self {
        let message = match e {
            EvalError::Core(c) => c.message().to_string(),
            other => other.to_string(),
        };
        Report::error(e.code(), message)
    }
}

/// Bindings from `let` statements.
#[derive(Clone, Debug, Default)]
pub struct Environment {
    vars: HashMap<String, PLFunction>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, f: PLFunction) {
        self.vars.insert(name.into(), f);
    }

    pub fn get(&self, name: &str) -> Option<&PLFunction> {
        self.vars.get(name)
    }
}

pub fn eval_expr(e: &Expr, env: &Environment) -> Result<PLFunction, EvalError> {
    Ok(match e {
        Expr::Literal(points) => PLFunction::new(points.iter().cloned())?,
        Expr::Var(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::Name(name.clone()))?,
        Expr::Sum(a, b) => &eval_expr(a, env)? + &eval_expr(b, env)?,
        Expr::Diff(a, b) => &eval_expr(a, env)? - &eval_expr(b, env)?,
        Expr::Scale(c, x) => eval_expr(x, env)?.scale(c),
        Expr::Join(a, b) => eval_expr(a, env)?.join(&eval_expr(b, env)?),
        Expr::Meet(a, b) => eval_expr(a, env)?.meet(&eval_expr(b, env)?),
        Expr::Abs(x) => eval_expr(x, env)?.abs_val(),
        Expr::U => PLFunction::identity(),
        Expr::One => PLFunction::one(),
    })
}

pub fn eval_query(q: &Query, env: &Environment) -> Result<Report, EvalError> {
    Ok(match q {
        Query::Eval { expr, at } => Report::Eval {
            value: eval_expr(expr, env)?.eval(at)?,
        },
        Query::Norm { expr, wrt } => {
            let cert = e_norm(&eval_expr(expr, env)?, &eval_expr(wrt, env)?)?;
            Report::Norm {
                value: cert.value,
                witness_t: cert.witness,
            }
        }
        Query::Leq { lhs, rhs } => Report::Leq {
            verdict: eval_expr(lhs, env)?.leq(&eval_expr(rhs, env)?),
        },
        Query::InIdeal { expr, wrt } => Report::InIdeal {
            verdict: in_principal_ideal(&eval_expr(expr, env)?, &eval_expr(wrt, env)?)?,
        },
    })
}

pub fn eval_tail_query(q: &TailQuery) -> Result<Report, EvalError> {
    Ok(match q {
        TailQuery::RatioBounds { params } => {
            let (lo, hi) = TailFunction::counterexample(params.clone()).ratio_bounds();
            Report::RatioBounds {
                ratio_liminf: lo,
                ratio_limsup: hi,
            }
        }
        TailQuery::Verify { params, depth } => {
            let cert = strict_inclusion_certificate(params.clone(), *depth)?;
            Report::Verify(Box::new(VerifyReport::from(&cert)))
        }
    })
}

/// Runs statements in order. Failed statements yield error reports and
/// execution continues; a failed `let` leaves its name unbound.
pub fn eval_program(stmts: &[Statement], env: &mut Environment) -> Vec<Report> {
    let mut reports = Vec::new();
    for s in stmts {
        match s {
            Statement::Let(name, e) => match eval_expr(e, env) {
                Ok(f) => env.bind(name.clone(), f),
                Err(err) => reports.push(Report::from(&err)),
            },
            Statement::Query(q) => {
                reports.push(eval_query(q, env).unwrap_or_else(|err| Report::from(&err)))
            }
        }
    }
    reports
}

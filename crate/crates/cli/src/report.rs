//! Structured query results. Every number is an exact rational rendered
//! as `p/q` (or `p` for integers).

use rucert_core::{NormValue, Rational, StrictInclusionCert, Witness};
use serde::{Deserialize, Serialize};

pub const VERIFIED_STRICT: &str = "verified-strict";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub lambda_example: Rational,
    pub node_low: Rational,
    pub node_high: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdict: String,
    pub ideal_norm: Rational,
    pub ratio_liminf: Rational,
    pub ratio_limsup: Rational,
    pub epsilon_star: Rational,
    pub depth_checked: u32,
    pub refutation: RefutationReport,
}

impl From<&StrictInclusionCert> for VerifyReport {
    fn from(c: &StrictInclusionCert) -> Self {
        VerifyReport {
            verdict: VERIFIED_STRICT.into(),
            ideal_norm: c.ideal_norm.clone(),
            ratio_liminf: c.ratio_liminf.clone(),
            ratio_limsup: c.ratio_limsup.clone(),
            epsilon_star: c.refutation.epsilon_star.clone(),
            depth_checked: c.depth_checked,
            refutation: RefutationReport {
                lambda_example: c.refutation.lambda_example(),
                node_low: c.refutation.node_low.clone(),
                node_high: c.refutation.node_high.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "query", rename_all = "snake_case")]
pub enum Report {
    Eval { value: Rational },
    Norm { value: NormValue, witness_t: Witness },
    Leq { verdict: bool },
    InIdeal { verdict: bool },
    RatioBounds { ratio_liminf: Rational, ratio_limsup: Rational },
    Verify(Box<VerifyReport>),
    Error { code: String, message: String },
}

impl Report {
    pub fn error(code: &str, message: impl Into<String>) -> Self {
        Report::Error {
            code: code.into(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        matches!(self, Report::Error { .. })
    }

    /// Human-readable rendering, one or more lines without a trailing
    /// newline.
    pub fn to_text(&self) -> String {
        match self {
            Report::Eval { value } => value.to_string(),
            Report::Norm { value, witness_t } => format!("{value} (witness: {witness_t})"),
            Report::Leq { verdict } | Report::InIdeal { verdict } => verdict.to_string(),
            Report::RatioBounds {
                ratio_liminf,
                ratio_limsup,
            } => format!("ratio_liminf: {ratio_liminf}\nratio_limsup: {ratio_limsup}"),
            Report::Verify(v) => format!(
                "verdict: {}\nideal_norm: {}\nratio_liminf: {}\nratio_limsup: {}\n\
                 epsilon_star: {}\ndepth_checked: {}\nrefutation.lambda_example: {}\n\
                 refutation.node_low: {}\nrefutation.node_high: {}",
                v.verdict,
                v.ideal_norm,
                v.ratio_liminf,
                v.ratio_limsup,
                v.epsilon_star,
                v.depth_checked,
                v.refutation.lambda_example,
                v.refutation.node_low,
                v.refutation.node_high
            ),
            Report::Error { code, message } => format!("error[{code}]: {message}"),
        }
    }
}

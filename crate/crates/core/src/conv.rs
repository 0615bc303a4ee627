//! Relatively uniform Cauchy and limit checks on finite sequence prefixes.
//!
//! The checkers certify the displayed inequalities at the supplied indices
//! only. A failing [`CheckReport`] carries the exact node where the bound
//! breaks, so the failure can be re-verified with two evaluations.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::norm::{check_regulator, e_norm, NormValue};
use crate::pl::PLFunction;
use crate::rational::Rational;

/// Rule producing the tolerance `ε_n` for index `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpsRule {
    /// `ε_n = 1/n`.
    Reciprocal,
    /// `ε_n = q^n` with `0 < q < 1`.
    Geometric(Rational),
    /// `ε_n` is the `n`-th entry (1-based).
    Explicit(Vec<Rational>),
}

impl EpsRule {
    pub fn geometric(ratio: Rational) -> Result<Self> {
        if !ratio.is_positive() || ratio >= Rational::one() {
            return Err(Error::DegenerateInput(alloc::format!(
                "geometric ratio {} must lie in (0, 1)",
                ratio
            )));
        }
        Ok(EpsRule::Geometric(ratio))
    }

    /// Values must be strictly positive and nonincreasing.
    pub fn explicit(values: Vec<Rational>) -> Result<Self> {
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::DegenerateInput("eps values must be positive".into()));
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::DegenerateInput(
                "eps values must be nonincreasing".into(),
            ));
        }
        Ok(EpsRule::Explicit(values))
    }

    pub fn eps(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::DegenerateInput("indices start at 1".into()));
        }
        match self {
            EpsRule::Reciprocal => Ok(Rational::one() / Rational::from(n as i64)),
            EpsRule::Geometric(r) => Ok(r.pow(n as u32)),
            EpsRule::Explicit(v) => v.get((n - 1) as usize).cloned().ok_or_else(|| {
                Error::DegenerateInput(alloc::format!(
                    "explicit eps rule has {} entries, index {} requested",
                    v.len(),
                    n
                ))
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RegulatedSequence {
    terms: Vec<(u64, PLFunction)>,
    eps: EpsRule,
    regulator: PLFunction,
}

impl RegulatedSequence {
    pub fn new(terms: Vec<(u64, PLFunction)>, eps: EpsRule, regulator: PLFunction) -> Result<Self> {
        if terms.iter().any(|(n, _)| *n == 0) {
            return Err(Error::DegenerateInput("indices start at 1".into()));
        }
        if terms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::DegenerateInput(
                "indices must be strictly increasing".into(),
            ));
        }
        check_regulator(&regulator)?;
        Ok(RegulatedSequence {
            terms,
            eps,
            regulator,
        })
    }

    /// Terms `1..=k` given by `f(n)`.
    pub fn from_fn<F>(k: u64, f: F, eps: EpsRule, regulator: PLFunction) -> Result<Self>
    where
        F: Fn(u64) -> PLFunction,
    {
        Self::new((1..=k).map(|n| (n, f(n))).collect(), eps, regulator)
    }

    pub fn terms(&self) -> &[(u64, PLFunction)] {
        &self.terms
    }

    pub fn eps(&self) -> &EpsRule {
        &self.eps
    }

    pub fn regulator(&self) -> &PLFunction {
        &self.regulator
    }

    /// Same terms and regulator with another tolerance rule.
    pub fn with_eps(&self, eps: EpsRule) -> Self {
        RegulatedSequence {
            eps,
            ..self.clone()
        }
    }

    /// Keeps only the first `k` terms.
    pub fn prefix(&self, k: usize) -> Self {
        RegulatedSequence {
            terms: self.terms[..k.min(self.terms.len())].to_vec(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `|f_n − f_m| ≤ ε_n·e`.
    Cauchy,
    /// `|f_n − f| ≤ ε_n·e`.
    Limit,
    /// `|φ_n − f_n| ≤ (1/n)·e`.
    Approximation,
    /// `|φ_n − f| ≤ (1/n + ε_n)·e`.
    Transfer,
}

/// A strict violation `lhs > bound` at node `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub n: u64,
    /// Second index for Cauchy violations.
    pub m: Option<u64>,
    pub t: Rational,
    /// Left side `|difference|(t)`.
    pub lhs: Rational,
    /// Right side `coefficient · e(t)`.
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub failure: Option<Violation>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport {
            verdict: Verdict::Pass,
            failure: None,
        }
    }

    fn fail(v: Violation) -> Self {
        CheckReport {
            verdict: Verdict::Fail,
            failure: Some(v),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// First node where `|diff| > coeff·e`, as a violation record.
fn bound_violation(
    diff: &PLFunction,
    coeff: &Rational,
    e: &PLFunction,
    kind: ViolationKind,
    n: u64,
    m: Option<u64>,
) -> Option<Violation> {
    let lhs_fn = diff.abs_val();
    let rhs_fn = e.scale(coeff);
    lhs_fn.first_violation(&rhs_fn).map(|t| Violation {
        kind,
        n,
        m,
        lhs: lhs_fn.eval_in_domain(&t),
        bound: rhs_fn.eval_in_domain(&t),
        t,
    })
}

/// Checks `|f_n − f_m| ≤ ε_n·e` for every supplied pair `m > n`. The
/// first failure in `(n, m)` lexicographic order is reported.
pub fn check_ru_cauchy(seq: &RegulatedSequence) -> Result<CheckReport> {
    check_regulator(&seq.regulator)?;
    if seq.terms.len() < 2 {
        return Err(Error::DegenerateInput(
            "Cauchy check needs at least two terms".into(),
        ));
    }
    for (i, (n, f_n)) in seq.terms.iter().enumerate() {
        let eps = seq.eps.eps(*n)?;
        for (m, f_m) in &seq.terms[i + 1..] {
            let diff = f_n - f_m;
            if let Some(v) =
                bound_violation(&diff, &eps, &seq.regulator, ViolationKind::Cauchy, *n, Some(*m))
            {
                return Ok(CheckReport::fail(v));
            }
        }
    }
    Ok(CheckReport::pass())
}

/// Checks `|f_n − limit| ≤ ε_n·e` for every supplied `n`.
pub fn check_ru_limit(seq: &RegulatedSequence, limit: &PLFunction) -> Result<CheckReport> {
    check_regulator(&seq.regulator)?;
    if seq.terms.is_empty() {
        return Err(Error::DegenerateInput(
            "limit check needs at least one term".into(),
        ));
    }
    for (n, f_n) in &seq.terms {
        let eps = seq.eps.eps(*n)?;
        let diff = f_n - limit;
        if let Some(v) =
            bound_violation(&diff, &eps, &seq.regulator, ViolationKind::Limit, *n, None)
        {
            return Ok(CheckReport::fail(v));
        }
    }
    Ok(CheckReport::pass())
}

/// For `n = 1..=k`, checks `|φ_n − f_n| ≤ (1/n)·e` and `|f_n − limit| ≤
/// ε_n·e`, then the transferred bound `|φ_n − limit| ≤ (1/n + ε_n)·e`.
///
/// The transferred bound follows from the two hypotheses by the triangle
/// inequality, so a [`ViolationKind::Transfer`] failure never occurs after
/// both hypotheses passed unless the lattice arithmetic is wrong.
pub fn verify_closure_chain(
    phis: &[PLFunction],
    fs: &[PLFunction],
    limit: &PLFunction,
    eps: &EpsRule,
    regulator: &PLFunction,
) -> Result<CheckReport> {
    check_regulator(regulator)?;
    if phis.len() != fs.len() {
        return Err(Error::DegenerateInput(alloc::format!(
            "{} approximants but {} sequence terms",
            phis.len(),
            fs.len()
        )));
    }
    if phis.is_empty() {
        return Err(Error::DegenerateInput("empty chain".into()));
    }
    for (i, (phi, f)) in phis.iter().zip(fs).enumerate() {
        let n = (i + 1) as u64;
        let inv_n = Rational::one() / Rational::from(n as i64);
        let eps_n = eps.eps(n)?;
        if let Some(v) = bound_violation(
            &(phi - f),
            &inv_n,
            regulator,
            ViolationKind::Approximation,
            n,
            None,
        ) {
            return Ok(CheckReport::fail(v));
        }
        if let Some(v) =
            bound_violation(&(f - limit), &eps_n, regulator, ViolationKind::Limit, n, None)
        {
            return Ok(CheckReport::fail(v));
        }
        if let Some(v) = bound_violation(
            &(phi - limit),
            &(inv_n + eps_n),
            regulator,
            ViolationKind::Transfer,
            n,
            None,
        ) {
            return Ok(CheckReport::fail(v));
        }
    }
    Ok(CheckReport::pass())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Equal,
    /// Least `n0` where the two limit claims cannot both hold.
    Index(u64),
}

/// Turns uniqueness of limits into a computable index.
///
/// For `f ≠ g`, returns the least `n0` with `2·ε_{n0} < ‖f − g‖_e`: at that
/// index no `h` can satisfy `|h − f| ≤ ε·e` and `|h − g| ≤ ε·e` together,
/// since that would give `|f − g| ≤ 2ε·e`. An infinite norm gives `n0 = 1`.
pub fn uniqueness_breaker(
    f: &PLFunction,
    g: &PLFunction,
    regulator: &PLFunction,
    eps: &EpsRule,
) -> Result<Separation> {
    check_regulator(regulator)?;
    if f == g {
        return Ok(Separation::Equal);
    }
    let norm = match e_norm(&(f - g), regulator)?.value {
        NormValue::Infinite => return Ok(Separation::Index(1)),
        NormValue::Finite(v) => v,
    };
    let two = Rational::integer(2);
    match eps {
        EpsRule::Reciprocal => {
            // 2/n < norm  ⇔  n > 2/norm.
            let n = (&two / &norm).floor() + 1u32;
            let n: u64 = n
                .try_into()
                .map_err(|_| Error::DegenerateInput("separation index overflows u64".into()))?;
            Ok(Separation::Index(n.max(1)))
        }
        EpsRule::Geometric(r) => {
            let mut n = 1u64;
            let mut e = r.clone();
            while &two * &e >= norm {
                n += 1;
                e = e * r;
            }
            Ok(Separation::Index(n))
        }
        EpsRule::Explicit(v) => v
            .iter()
            .position(|e| &two * e < norm)
            .map(|i| Separation::Index(i as u64 + 1))
            .ok_or_else(|| {
                Error::DegenerateInput(
                    "explicit eps rule never drops below half the distance".into(),
                )
            }),
    }
}

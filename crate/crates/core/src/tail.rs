//! Continuous functions on `[0, 1]` whose breakpoints accumulate
//! geometrically at `0`, and the strict-inclusion counterexample built
//! from them.
//!
//! Period `n ≥ 1` is the interval `[b_{n+1}, b_n]` with `b_n = b1·ρ^{n-1}`.
//! Each anchor `(θ, r)` places a node at `t = θ·b_n` with value `r·t`, so
//! the pattern repeats in every period after rescaling by `ρ`, and
//! `f(t)/t` takes the same values `r_i` at the nodes of every period.
//! Between nodes `f(t)/t` is monotone, so the limit inferior and limit
//! superior of `f(t)/t` as `t → 0+` are the smallest and largest `r_i`.
//!
//! With anchors `[(1, 0), (α, 1)]` this gives `f(b_n) = 0` and
//! `f(a_n) = a_n` for `a_n = α·b_n`. Such an `f` satisfies `0 ≤ f ≤ u`
//! for `u(t) = t`, yet no piecewise-linear `φ` with `φ(0) = 0` stays within
//! `(1/3)·u` of it. Near `0`, `φ` is a single line `λt`, and the nodes force
//! both `|λ| ≤ 1/3` and `|λ − 1| ≤ 1/3`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::norm::{e_norm, NormValue};
use crate::pl::{Breakpoint, PLFunction};
use crate::rational::Rational;

/// Geometry of the accumulating periods: `b_{n+1} = ρ·b_n`, `a_n = α·b_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailParams {
    rho: Rational,
    alpha: Rational,
    b1: Rational,
}

impl TailParams {
    /// Accepts exactly the parameters with `0 < ρ < α < 1` and
    /// `0 < b1 ≤ 1`, which is the ordering
    /// `0 < a_{n+1} < b_{n+1} < a_n < b_n` for every `n`.
    pub fn new(rho: Rational, alpha: Rational, b1: Rational) -> Result<Self> {
        let violated = |need: &str, detail: alloc::string::String| {
            Err(Error::ConditionIViolated(alloc::format!(
                "ordering 0 < a_(n+1) < b_(n+1) < a_n < b_n fails: need {need} ({detail})"
            )))
        };
        if !rho.is_positive() {
            return violated("0 < b_(n+1), i.e. rho > 0", alloc::format!("rho = {rho}"));
        }
        if rho >= alpha {
            return violated(
                "b_(n+1) < a_n, i.e. rho < alpha",
                alloc::format!("rho = {rho}, alpha = {alpha}"),
            );
        }
        if alpha >= Rational::one() {
            return violated("a_n < b_n, i.e. alpha < 1", alloc::format!("alpha = {alpha}"));
        }
        if !b1.is_positive() || b1 > Rational::one() {
            return violated("0 < b_1 <= 1", alloc::format!("b_1 = {b1}"));
        }
        Ok(TailParams { rho, alpha, b1 })
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn b1(&self) -> &Rational {
        &self.b1
    }

    /// `b_n = b1·ρ^{n-1}`, `n ≥ 1`.
    pub fn b(&self, n: u32) -> Rational {
        assert!(n >= 1);
        &self.b1 * self.rho.pow(n - 1)
    }

    /// `a_n = α·b_n`.
    pub fn a(&self, n: u32) -> Rational {
        &self.alpha * self.b(n)
    }
}

/// `ρ = 1/4`, `α = 1/2`, `b1 = 1`.
impl Default for TailParams {
    fn default() -> Self {
        TailParams {
            rho: Rational::new(1, 4),
            alpha: Rational::new(1, 2),
            b1: Rational::one(),
        }
    }
}

pub fn make_tail_params(rho: Rational, alpha: Rational, b1: Rational) -> Result<TailParams> {
    TailParams::new(rho, alpha, b1)
}

/// A node at relative offset `θ` in every period, with `f(t)/t = ratio`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub offset: Rational,
    pub ratio: Rational,
}

impl Anchor {
    pub fn new(offset: Rational, ratio: Rational) -> Self {
        Anchor { offset, ratio }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailFunction {
    params: TailParams,
    anchors: Vec<Anchor>,
    /// Breakpoints on `[b1, 1]`; empty when `b1 = 1`.
    head: Vec<Breakpoint>,
}

impl TailFunction {
    /// Anchors must start at offset `1`, decrease strictly, and stay above
    /// `ρ`. A nonempty head must run from `(b1, r_0·b1)` to `t = 1` with
    /// strictly increasing `t`.
    pub fn new(params: TailParams, anchors: Vec<Anchor>, head: Vec<(Rational, Rational)>) -> Result<Self> {
        let malformed = |m: &str| Err(Error::MalformedFunction(m.into()));
        match anchors.first() {
            None => return malformed("a tail needs at least one anchor"),
            Some(a) if a.offset != Rational::one() => {
                return malformed("the first anchor must sit at offset 1")
            }
            _ => {}
        }
        if anchors.windows(2).any(|w| w[1].offset >= w[0].offset) {
            return malformed("anchor offsets must decrease strictly");
        }
        if anchors.iter().any(|a| a.offset <= params.rho) {
            return malformed("anchor offsets must exceed rho");
        }
        let head: Vec<Breakpoint> = head
            .into_iter()
            .map(|(t, v)| Breakpoint::new(t, v))
            .collect();
        if params.b1 == Rational::one() {
            if !head.is_empty() {
                return malformed("no head allowed when b1 = 1");
            }
        } else {
            let Some(first) = head.first() else {
                return malformed("b1 < 1 requires a head on [b1, 1]");
            };
            if first.t != params.b1 || first.value != &anchors[0].ratio * &params.b1 {
                return malformed("head must start at (b1, r_0 * b1)");
            }
            if head[head.len() - 1].t != Rational::one() {
                return malformed("head must end at t = 1");
            }
            if head.windows(2).any(|w| w[0].t >= w[1].t) {
                return malformed("head abscissae must increase strictly");
            }
        }
        Ok(TailFunction {
            params,
            anchors,
            head,
        })
    }

    /// Anchors `[(1, 0), (α, 1)]`: `f(b_n) = 0`, `f(a_n) = a_n`. The head
    /// on `[b1, 1]`, if any, is the zero function.
    pub fn counterexample(params: TailParams) -> Self {
        let anchors = alloc::vec![
            Anchor::new(Rational::one(), Rational::zero()),
            Anchor::new(params.alpha.clone(), Rational::one()),
        ];
        let head = if params.b1 == Rational::one() {
            Vec::new()
        } else {
            alloc::vec![
                Breakpoint::new(params.b1.clone(), Rational::zero()),
                Breakpoint::new(Rational::one(), Rational::zero()),
            ]
        };
        TailFunction {
            params,
            anchors,
            head,
        }
    }

    pub fn params(&self) -> &TailParams {
        &self.params
    }

    pub fn anchors(&self) -> &[Anchor] {
        &self.anchors
    }

    pub fn head(&self) -> &[Breakpoint] {
        &self.head
    }

    /// Nodes of period `n` in decreasing `t`, starting at `b_n`.
    pub fn period_nodes(&self, n: u32) -> Vec<Breakpoint> {
        let b = self.params.b(n);
        self.anchors
            .iter()
            .map(|a| {
                let t = &a.offset * &b;
                Breakpoint::new(t.clone(), &a.ratio * t)
            })
            .collect()
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if t.is_negative() || *t > Rational::one() {
            return Err(Error::DomainError(alloc::format!(
                "t = {t} lies outside [0, 1]"
            )));
        }
        if t.is_zero() {
            return Ok(Rational::zero());
        }
        let p = &self.params;
        if *t >= p.b1 {
            if self.head.is_empty() {
                // b1 = 1 = t.
                return Ok(&self.anchors[0].ratio * t);
            }
            let idx = self.head.partition_point(|bp| bp.t <= *t);
            let left = &self.head[idx - 1];
            if left.t == *t || idx == self.head.len() {
                return Ok(left.value.clone());
            }
            let right = &self.head[idx];
            let w = (t - &left.t) / (&right.t - &left.t);
            return Ok(&left.value + w * (&right.value - &left.value));
        }
        // Rescale into [ρ, 1): x = t / b_n for the period containing t.
        let mut x = t / &p.b1;
        while x < p.rho {
            x = x / &p.rho;
        }
        let scale = t / &x;
        let r0 = &self.anchors[0].ratio;
        let next = Anchor::new(p.rho.clone(), r0.clone());
        for (hi, lo) in self
            .anchors
            .iter()
            .zip(self.anchors.iter().skip(1).chain(core::iter::once(&next)))
        {
            if x <= hi.offset && x >= lo.offset {
                let v_hi = &hi.ratio * &hi.offset;
                let v_lo = &lo.ratio * &lo.offset;
                let w = (&x - &lo.offset) / (&hi.offset - &lo.offset);
                let g = &v_lo + w * (v_hi - &v_lo);
                return Ok(g * scale);
            }
        }
        unreachable!("offsets cover [rho, 1]")
    }

    /// The smallest and largest anchor ratio: `liminf` and `limsup` of
    /// `f(t)/t` as `t → 0+`.
    pub fn ratio_bounds(&self) -> (Rational, Rational) {
        let lo = self.anchors.iter().map(|a| &a.ratio).min().unwrap().clone();
        let hi = self.anchors.iter().map(|a| &a.ratio).max().unwrap().clone();
        (lo, hi)
    }

    fn argmin_anchor(&self) -> &Anchor {
        let (lo, _) = self.ratio_bounds();
        self.anchors.iter().find(|a| a.ratio == lo).unwrap()
    }

    fn argmax_anchor(&self) -> &Anchor {
        let (_, hi) = self.ratio_bounds();
        self.anchors.iter().find(|a| a.ratio == hi).unwrap()
    }

    /// `sup |f(t)|/t` over `(0, 1]`, which is `‖f‖_u`. Always finite.
    pub fn u_norm(&self) -> Rational {
        let tail = self.anchors.iter().map(|a| a.ratio.abs()).max().unwrap();
        self.head
            .iter()
            .map(|bp| bp.value.abs() / &bp.t)
            .fold(tail, Rational::max)
    }

    /// Member of `E` equal to `f` on `[b_{N+1}, 1]` and to `r_0·t` on
    /// `[0, b_{N+1}]`. For the counterexample `r_0 = 0`, so the filling is
    /// zero.
    pub fn truncate(&self, n: u32) -> PLFunction {
        assert!(n >= 1, "truncation depth starts at 1");
        let mut nodes = alloc::vec![Breakpoint::new(Rational::zero(), Rational::zero())];
        let b_next = self.params.b(n + 1);
        let v_next = &self.anchors[0].ratio * &b_next;
        nodes.push(Breakpoint::new(b_next, v_next));
        for k in (1..=n).rev() {
            nodes.extend(self.period_nodes(k).into_iter().rev());
        }
        // head[0] coincides with the b_1 node.
        nodes.extend(self.head.iter().skip(1).cloned());
        PLFunction::from_sorted(nodes)
    }

    /// `Some` exactly when all anchor ratios agree, i.e. `f` is linear on
    /// `[0, b1]`.
    pub fn as_pl(&self) -> Option<PLFunction> {
        let (lo, hi) = self.ratio_bounds();
        if lo != hi {
            return None;
        }
        let mut nodes = alloc::vec![Breakpoint::new(Rational::zero(), Rational::zero())];
        if self.head.is_empty() {
            nodes.push(Breakpoint::new(Rational::one(), lo));
        } else {
            nodes.extend(self.head.iter().cloned());
        }
        Some(PLFunction::from_sorted(nodes))
    }

    /// Residual `f − truncate(f, N)` on `[0, b_{N+1}]`, where it is
    /// supported. The residual is `f(t) − r_0·t` there, which rescales by
    /// `ρ` from one period to the next, so its sup is taken in period
    /// `N + 1` and its ratio to `t` repeats in every period.
    pub fn residual(&self, n: u32) -> ResidualProfile {
        let r0 = &self.anchors[0].ratio;
        let nodes = self.period_nodes(n + 1);
        let mut sup = (Rational::zero(), nodes[0].t.clone());
        let mut ratio = (Rational::zero(), nodes[0].t.clone());
        for bp in &nodes {
            let dev = (&bp.value - r0 * &bp.t).abs();
            let rel = &dev / &bp.t;
            if dev > sup.0 {
                sup = (dev, bp.t.clone());
            }
            if rel > ratio.0 {
                ratio = (rel, bp.t.clone());
            }
        }
        ResidualProfile {
            sup_abs: sup.0,
            sup_abs_at: sup.1,
            u_ratio: ratio.0,
            u_ratio_at: ratio.1,
        }
    }
}

pub fn build_counterexample(params: TailParams) -> TailFunction {
    TailFunction::counterexample(params)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualProfile {
    /// `sup |f − f_N|`.
    pub sup_abs: Rational,
    pub sup_abs_at: Rational,
    /// `sup |f − f_N|(t)/t`.
    pub u_ratio: Rational,
    pub u_ratio_at: Rational,
}

/// Evidence that no single slope `λ` tracks `f(t)/t` near `0` within
/// `epsilon_star`.
///
/// Nodes with ratio `liminf` force `λ ≤ lambda_low_bound`; nodes with ratio
/// `limsup` force `λ ≥ lambda_high_bound`; and `lambda_low_bound <
/// lambda_high_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationCert {
    pub lambda_low_bound: Rational,
    pub lambda_high_bound: Rational,
    pub epsilon_star: Rational,
    /// A first-period node with `f(t)/t = liminf`.
    pub node_low: Rational,
    /// A first-period node with `f(t)/t = limsup`.
    pub node_high: Rational,
}

impl RefutationCert {
    /// Midpoint slope, equally far from both ratio bounds.
    pub fn lambda_example(&self) -> Rational {
        (&self.lambda_low_bound + &self.lambda_high_bound) / Rational::integer(2)
    }

    /// Re-derives the certificate claims from evaluations of `f`.
    pub fn check(&self, f: &TailFunction) -> bool {
        let ratio = |t: &Rational| f.eval(t).map(|v| v / t);
        let (Ok(low), Ok(high)) = (ratio(&self.node_low), ratio(&self.node_high)) else {
            return false;
        };
        let two_eps = Rational::integer(2) * &self.epsilon_star;
        self.epsilon_star.is_positive()
            && &high - &low > two_eps
            && self.lambda_low_bound == &low + &self.epsilon_star
            && self.lambda_high_bound == &high - &self.epsilon_star
            && self.lambda_low_bound < self.lambda_high_bound
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HMembership {
    Member,
    NotMember(RefutationCert),
}

/// Decides whether `f` is a relatively uniform limit, with regulator `u`,
/// of functions in `E_u`: exactly when `f(t)/t` converges as `t → 0+`.
pub fn h_membership(f: &TailFunction) -> HMembership {
    let (lo, hi) = f.ratio_bounds();
    if lo == hi {
        return HMembership::Member;
    }
    let eps = (&hi - &lo) / Rational::integer(3);
    let b1 = f.params().b1();
    HMembership::NotMember(RefutationCert {
        lambda_low_bound: &lo + &eps,
        lambda_high_bound: &hi - &eps,
        node_low: &f.argmin_anchor().offset * b1,
        node_high: &f.argmax_anchor().offset * b1,
        epsilon_star: eps,
    })
}

/// Finds a node `t < delta` with `|λt − f(t)| > ε·t`.
///
/// `λ` is within `ε` of at most one of the two ratio bounds when
/// `2ε < limsup − liminf`, so a node carrying the other bound works. The
/// largest such node below `delta` is returned.
pub fn germ_refutation(
    f: &TailFunction,
    lambda: &Rational,
    delta: &Rational,
    epsilon: &Rational,
) -> Result<Rational> {
    if !delta.is_positive() {
        return Err(Error::DomainError(alloc::format!("delta = {delta} must be positive")));
    }
    if epsilon.is_negative() {
        return Err(Error::DomainError(alloc::format!(
            "epsilon = {epsilon} must be non-negative"
        )));
    }
    let (lo, hi) = f.ratio_bounds();
    let gap = &hi - &lo;
    if Rational::integer(2) * epsilon >= gap {
        return Err(Error::RefutationNotGuaranteed(alloc::format!(
            "epsilon = {epsilon} is not below half the ratio gap {gap}"
        )));
    }
    let anchor = if (lambda - &lo).abs() > *epsilon {
        f.argmin_anchor()
    } else {
        f.argmax_anchor()
    };
    let mut t = &anchor.offset * f.params().b1();
    while t >= *delta {
        t = t * f.params().rho();
    }
    debug_assert!({
        let v = f.eval(&t).unwrap();
        (lambda * &t - v).abs() > epsilon * &t
    });
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictInclusionCert {
    /// `‖f‖_u`; finite, so `f` lies in the ideal generated by `u`.
    pub ideal_norm: Rational,
    pub ratio_liminf: Rational,
    pub ratio_limsup: Rational,
    pub refutation: RefutationCert,
    pub depth_checked: u32,
}

impl StrictInclusionCert {
    /// Re-checks every claim against `f` without trusting stored state
    /// beyond the numbers themselves.
    pub fn revalidate(&self, f: &TailFunction) -> bool {
        let (lo, hi) = f.ratio_bounds();
        let u = PLFunction::identity();
        let bound = u.scale(&self.ideal_norm);
        lo == self.ratio_liminf
            && hi == self.ratio_limsup
            && &hi - &lo == Rational::integer(3) * &self.refutation.epsilon_star
            && self.refutation.check(f)
            && f.u_norm() == self.ideal_norm
            && (1..=self.depth_checked).all(|n| f.truncate(n).abs_val().leq(&bound))
    }
}

/// Certificate that `f` lies in `(E^ru)_u` but not in `(E_u)^ru`.
///
/// Besides the closed-form norm and ratio bounds, every truncation depth
/// `N = 1..=depth` is checked exactly: `|f_N| ≤ ‖f‖_u·u`, the exact
/// `u`-norm of `f_N` does not exceed `‖f‖_u`, and the residual `f − f_N`
/// keeps relative size `max |r_i − r_0| > 0` at an explicit node while its
/// absolute size shrinks.
pub fn certify_strict_inclusion(f: &TailFunction, depth: u32) -> Result<StrictInclusionCert> {
    if depth == 0 {
        return Err(Error::DegenerateInput("depth must be at least 1".into()));
    }
    let refutation = match h_membership(f) {
        HMembership::Member => {
            return Err(Error::StrictInclusionNotWitnessed(
                "f(t)/t converges at 0, so f is a relatively uniform limit from E_u".into(),
            ))
        }
        HMembership::NotMember(cert) => cert,
    };
    let (lo, hi) = f.ratio_bounds();
    let ideal_norm = f.u_norm();
    let u = PLFunction::identity();
    let bound = u.scale(&ideal_norm);
    let r0 = &f.anchors()[0].ratio;
    let expected_ratio = f
        .anchors()
        .iter()
        .map(|a| (&a.ratio - r0).abs())
        .max()
        .unwrap();
    let broken = |m: alloc::string::String| Err(Error::StrictInclusionNotWitnessed(m));
    for n in 1..=depth {
        let f_n = f.truncate(n);
        if !f_n.abs_val().leq(&bound) {
            return broken(alloc::format!("|f_{n}| exceeds {ideal_norm}·u"));
        }
        match e_norm(&f_n, &u)?.value {
            NormValue::Finite(v) if v <= ideal_norm => {}
            _ => return broken(alloc::format!("‖f_{n}‖_u exceeds {ideal_norm}")),
        }
        let res = f.residual(n);
        let t = &res.u_ratio_at;
        let observed = (f.eval(t)? - f_n.eval(t)?).abs() / t;
        if observed != expected_ratio || res.u_ratio != expected_ratio {
            return broken(alloc::format!(
                "residual ratio at depth {n} is {observed}, expected {expected_ratio}"
            ));
        }
    }
    Ok(StrictInclusionCert {
        ideal_norm,
        ratio_liminf: lo,
        ratio_limsup: hi,
        refutation,
        depth_checked: depth,
    })
}

/// Builds the counterexample for `params` and certifies it to `depth`.
pub fn strict_inclusion_certificate(params: TailParams, depth: u32) -> Result<StrictInclusionCert> {
    certify_strict_inclusion(&TailFunction::counterexample(params), depth)
}

/// For a tail with constant ratio `λ0`, returns `φ_n ∈ E_u` and `ε_n ≤ 1/n`
/// with `|φ_n − f| ≤ ε_n·u`.
///
/// `φ_n` keeps `f` on `[b1, 1]` and uses the germ `λ0·t` below `b1`. A
/// constant-ratio tail already equals `λ0·t` there, so the exact
/// discrepancy is `0` and `ε_n = min(1/n, 0) = 0`.
pub fn h_witness(f: &TailFunction, n: u32) -> Result<(PLFunction, Rational)> {
    if n == 0 {
        return Err(Error::DegenerateInput("n must be at least 1".into()));
    }
    let Some(f_pl) = f.as_pl() else {
        let (lo, hi) = f.ratio_bounds();
        return Err(Error::NotInH(alloc::format!(
            "f(t)/t oscillates between {lo} and {hi} near 0"
        )));
    };
    let lambda0 = f.anchors()[0].ratio.clone();
    let b1 = f.params().b1().clone();
    let mut nodes = alloc::vec![
        Breakpoint::new(Rational::zero(), Rational::zero()),
        Breakpoint::new(b1.clone(), &lambda0 * &b1),
    ];
    nodes.extend(f.head().iter().skip(1).cloned());
    let phi = PLFunction::from_sorted(nodes);
    let u = PLFunction::identity();
    let gap = match e_norm(&(&phi - &f_pl), &u)?.value {
        NormValue::Finite(v) => v,
        NormValue::Infinite => unreachable!("both vanish at 0 with finite slopes"),
    };
    let eps = gap.min(Rational::one() / Rational::from(n as i64));
    debug_assert!((&phi - &f_pl).abs_val().leq(&u.scale(&eps)));
    Ok((phi, eps))
}

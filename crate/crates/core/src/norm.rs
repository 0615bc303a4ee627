//! The regulator norm `‖x‖_e = inf{λ ≥ 0 : |x| ≤ λe}`, principal-ideal
//! membership, and Archimedean witnesses.
//!
//! Admissible regulators are `e ≥ 0` with `e > 0` on `(0, 1]`; only `e(0)`
//! may vanish. Between consecutive nodes of the merged grid of `|x|` and
//! `e`, the ratio `|x|/e` is a quotient of affine functions with positive
//! denominator and therefore monotone, so the supremum is taken at a node.
//! On the first segment, when `e(0) = 0 = x(0)`, both functions are
//! multiples of `t` and the ratio is the constant slope ratio.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::pl::PLFunction;
use crate::rational::Rational;

/// A finite norm value or `+∞`. Finite values order below infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormValue {
    Finite(Rational),
    Infinite,
}

impl NormValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, NormValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            NormValue::Finite(r) => Some(r),
            NormValue::Infinite => None,
        }
    }
}

/// Where the supremum of `|x|/e` is attained.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// At a grid node `t`. For an infinite norm this is `t = 0`.
    At(Rational),
    /// As the one-sided limit `t → 0+`, i.e. the ratio of slopes at zero.
    SlopeAtZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormCertificate {
    pub value: NormValue,
    pub witness: Witness,
}

/// Checks `e ≥ 0` and `e > 0` on `(0, 1]`.
pub fn check_regulator(e: &PLFunction) -> Result<()> {
    let pts = e.breakpoints();
    if pts[0].value.is_negative() {
        return Err(Error::InvalidRegulator(alloc::format!(
            "regulator is negative at t = 0 (value {})",
            pts[0].value
        )));
    }
    if let Some(p) = pts[1..].iter().find(|p| !p.value.is_positive()) {
        return Err(Error::InvalidRegulator(alloc::format!(
            "regulator must be positive on (0, 1], but e({}) = {}",
            p.t,
            p.value
        )));
    }
    Ok(())
}

/// Exact `‖x‖_e` together with the smallest point attaining it.
pub fn e_norm(x: &PLFunction, e: &PLFunction) -> Result<NormCertificate> {
    check_regulator(e)?;
    let a = x.abs_val();
    let grid = a.merged_grid(e);
    let zero = Rational::zero();

    let mut best: (Witness, Rational) = if e.value_at_zero().is_positive() {
        (
            Witness::At(zero.clone()),
            a.value_at_zero() / e.value_at_zero(),
        )
    } else if !a.value_at_zero().is_zero() {
        return Ok(NormCertificate {
            value: NormValue::Infinite,
            witness: Witness::At(zero),
        });
    } else {
        // a(0) = e(0) = 0: on [0, t1] both are multiples of t.
        let t1 = &grid[1];
        let slope_a = a.eval_in_domain(t1) / t1;
        let slope_e = e.eval_in_domain(t1) / t1;
        (Witness::SlopeAtZero, slope_a / slope_e)
    };
    for t in &grid[1..] {
        let ratio = a.eval_in_domain(t) / e.eval_in_domain(t);
        if ratio > best.1 {
            best = (Witness::At(t.clone()), ratio);
        }
    }
    Ok(NormCertificate {
        value: NormValue::Finite(best.1),
        witness: best.0,
    })
}

/// `x ∈ E_e`, i.e. `‖x‖_e < ∞`.
pub fn in_principal_ideal(x: &PLFunction, e: &PLFunction) -> Result<bool> {
    Ok(e_norm(x, e)?.value.is_finite())
}

/// Least `n ≥ 1` with `n·x ≰ y`, for `x, y ≥ 0` and `x ≠ 0`.
///
/// On a merged-grid segment where `x` is positive at both ends the ratio
/// `y/x` is monotone. Where `x` vanishes at one end the ratio either blows
/// up there or is constant on the segment, so in every case the minimum
/// of `y/x` over `{x > 0}` is attained at a node.
pub fn archimedean_witness(x: &PLFunction, y: &PLFunction) -> Result<BigUint> {
    if !x.is_nonnegative() || !y.is_nonnegative() {
        return Err(Error::DegenerateInput(
            "archimedean witness needs x ≥ 0 and y ≥ 0".into(),
        ));
    }
    if x.is_zero() {
        return Err(Error::DegenerateInput("x is identically zero".into()));
    }
    let min_ratio = x
        .merged_grid(y)
        .iter()
        .filter_map(|t| {
            let xv = x.eval_in_domain(t);
            xv.is_positive().then(|| y.eval_in_domain(t) / xv)
        })
        .min()
        .expect("x ≥ 0 and x ≠ 0 is positive at some node");
    let n = min_ratio.floor() + 1u32;
    Ok(n.to_biguint().expect("ratio is non-negative"))
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Finite(r) => fmt::Display::fmt(r, f),
            NormValue::Infinite => f.write_str("infinite"),
        }
    }
}

impl FromStr for NormValue {
    type Err = String;
    fn from_str(s: &str) -> core::result::Result<Self, String> {
        if s == "infinite" {
            Ok(NormValue::Infinite)
        } else {
            s.parse()
                .map(NormValue::Finite)
                .map_err(|e: crate::rational::ParseRationalError| e.to_string())
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::At(t) => fmt::Display::fmt(t, f),
            Witness::SlopeAtZero => f.write_str("slope-at-zero"),
        }
    }
}

impl FromStr for Witness {
    type Err = String;
    fn from_str(s: &str) -> core::result::Result<Self, String> {
        if s == "slope-at-zero" {
            Ok(Witness::SlopeAtZero)
        } else {
            s.parse()
                .map(Witness::At)
                .map_err(|e: crate::rational::ParseRationalError| e.to_string())
        }
    }
}

#[cfg(feature = "serde")]
macro_rules! serde_via_str {
    ($ty:ty) => {
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
                let s = <String as serde::Deserialize>::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

#[cfg(feature = "serde")]
serde_via_str!(NormValue);
#[cfg(feature = "serde")]
serde_via_str!(Witness);

//! Exact arithmetic for the vector lattice of continuous piecewise-linear
//! functions on `[0, 1]`, relatively uniform convergence checks, and a
//! certified example of a function in the ideal generated by `u(t) = t`
//! inside `C[0, 1]` that is not a relatively uniform limit of elements of
//! the principal ideal `E_u`.
//!
//! The crate is `no_std` and needs only `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod conv;
pub mod error;
pub mod norm;
pub mod pl;
pub mod rational;
pub mod tail;

pub use conv::{
    check_ru_cauchy, check_ru_limit, uniqueness_breaker, verify_closure_chain, CheckReport,
    EpsRule, RegulatedSequence, Separation, Verdict, Violation, ViolationKind,
};
pub use error::{Error, Result};
pub use norm::{
    archimedean_witness, check_regulator, e_norm, in_principal_ideal, NormCertificate, NormValue,
    Witness,
};
pub use pl::{make_pl, Breakpoint, PLFunction};
pub use rational::{q, Rational};
pub use tail::{
    build_counterexample, certify_strict_inclusion, germ_refutation, h_membership, h_witness,
    make_tail_params, strict_inclusion_certificate, Anchor, HMembership, RefutationCert,
    ResidualProfile, StrictInclusionCert, TailFunction, TailParams,
};

//! Witnesses for the existential definition of ℤ by Pell solutions:
//! `t ∈ ℤ` iff there are `x, y, f` with `x² − (z²−1)y² = 1` and
//! `(z−1)·f = y − t`, since `y(1) = t` exactly when `z − 1` divides `y − t`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{Field, Poly, Rat};
use crate::error::{Error, Result};
use crate::pell::{pell_generate, pell_verify_poly, PellWitness};
use crate::quad::has_integer_coeffs;

/// `f = (y − λ)/(z − 1)`, which exists exactly when `y(1) = λ`.
pub fn eval_at_one_divide(y: &Poly, lambda: &Rat) -> Result<Poly> {
    let remainder = y.eval(&Rat::one()).sub(lambda);
    if !remainder.is_zero() {
        return Err(Error::NotDivisible { remainder });
    }
    let shifted = y - &Poly::constant(lambda.clone());
    Ok(shifted
        .exact_div(&Poly::from_ints(&[-1, 1]))
        .expect("1 is a root"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenefWitness {
    pub t: i64,
    pub pell: PellWitness,
    pub f: Poly,
}

/// Witness for `t` built from `(x_t, y_t)`; `y_t(1) = t` makes the division exact.
pub fn denef_witness(t: i64) -> DenefWitness {
    let pell = pell_generate(t);
    let f = eval_at_one_divide(&pell.y, &Rat::from_integer(t.into())).expect("y_t(1) = t");
    let w = DenefWitness { t, pell, f };
    debug_assert!(witness_verify(&w).ok);
    w
}

/// Why a witness was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reason {
    /// `x² − (z²−1)y² ≠ 1`.
    PellIdentity,
    /// `y(1) ≠ t`.
    EvalAtOne,
    /// `(z−1)·f ≠ y − t`.
    Divisibility,
    /// `f`, `x` or `y` has a non-integer coefficient.
    NonIntegerCoefficients,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::PellIdentity => "pell identity x^2 - (z^2-1)*y^2 = 1 fails",
            Reason::EvalAtOne => "y(1) != t",
            Reason::Divisibility => "(z-1)*f != y - t",
            Reason::NonIntegerCoefficients => "non-integer coefficient",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub reasons: Vec<Reason>,
}

/// Re-checks every conjunct from scratch.
pub fn witness_verify(w: &DenefWitness) -> VerifyReport {
    let t = Rat::from_integer(w.t.into());
    let mut reasons = Vec::new();
    if !pell_verify_poly(&w.pell.x, &w.pell.y) {
        reasons.push(Reason::PellIdentity);
    }
    if w.pell.y.eval(&Rat::one()) != t {
        reasons.push(Reason::EvalAtOne);
    }
    let lhs = &Poly::from_ints(&[-1, 1]) * &w.f;
    if lhs != &w.pell.y - &Poly::constant(t) {
        reasons.push(Reason::Divisibility);
    }
    if ![&w.f, &w.pell.x, &w.pell.y]
        .into_iter()
        .all(has_integer_coeffs)
    {
        reasons.push(Reason::NonIntegerCoefficients);
    }
    VerifyReport {
        ok: reasons.is_empty(),
        reasons,
    }
}

/// Each conjunct of the defining formula with its instantiation and status.
pub fn transcript(w: &DenefWitness) -> Vec<String> {
    let report = witness_verify(w);
    let status = |r: Reason| {
        if report.reasons.contains(&r) {
            "FAILED"
        } else {
            "verified"
        }
    };
    vec![
        format!("t = {}", w.t),
        format!("x = {}", w.pell.x),
        format!("y = {}", w.pell.y),
        format!("f = {}", w.f),
        format!("x^2 - (z^2-1)*y^2 = 1: {}", status(Reason::PellIdentity)),
        format!("y(1) = {}: {}", w.t, status(Reason::EvalAtOne)),
        format!("(z-1)*f = y - {}: {}", w.t, status(Reason::Divisibility)),
        format!(
            "integer coefficients: {}",
            status(Reason::NonIntegerCoefficients)
        ),
        format!(
            "witness {}",
            if report.ok { "accepted" } else { "rejected" }
        ),
    ]
}

//! Exact holonomic calculus over ℚ and ℚ(i).
//!
//! * [`arith`]: rationals, Gaussian rationals, sparse polynomials, rational functions.
//! * [`quad`]: the quadratic ring with `w² = z² − 1` and the unit `z + w`.
//! * [`holonomic`]: differential and recurrence annihilators, conversion,
//!   closure under sum and product, and the derivation-module engine.
//! * [`series`]: truncated power series over ℚ(i), `exp`, the branch `W` of
//!   `√(z²−1)` with `W(0) = i`.
//! * [`pell`]: polynomial and entire solutions of `X² − (z²−1)Y² = 1` and
//!   their holonomic witnesses.
//! * [`lacunary`]: coefficient-support gap counting and polynomiality
//!   certificates for P-recursive sequences.
//! * [`denef`]: witnesses for the existential definition of ℤ through
//!   Pell solutions evaluated at `z = 1`.
#![no_std]

extern crate alloc;

pub mod arith;
pub mod denef;
mod error;
pub mod holonomic;
pub mod lacunary;
pub mod pell;
pub mod quad;
pub mod series;

pub use error::{Error, Result};

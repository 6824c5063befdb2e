//! The quadratic ring `K[w]/(w² − (z²−1))` for `K = ℚ[z]` or `K = ℚ(z)`.
//!
//! `w` stands for the two-valued function `√(z²−1)`; `z + w` is the unit
//! whose powers `x_n + w·y_n` are the polynomial Pell solutions.

use core::fmt;

use crate::arith::{Field, Poly, RatFunc};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadMode {
    /// Coefficients in ℚ[z].
    Poly,
    /// Coefficients in ℚ(z).
    RatFunc,
}

/// `a + b·w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadElem {
    a: RatFunc,
    b: RatFunc,
    mode: QuadMode,
}

/// `z² − 1`.
pub fn discriminant() -> Poly {
    Poly::from_ints(&[-1, 0, 1])
}

impl QuadElem {
    pub fn new(a: RatFunc, b: RatFunc, mode: QuadMode) -> Result<Self> {
        if mode == QuadMode::Poly && !(a.is_polynomial() && b.is_polynomial()) {
            return Err(Error::InvalidInput(
                "polynomial-mode coefficients must have denominator 1",
            ));
        }
        Ok(QuadElem { a, b, mode })
    }

    pub fn from_polys(a: Poly, b: Poly) -> Self {
        QuadElem {
            a: a.into(),
            b: b.into(),
            mode: QuadMode::Poly,
        }
    }

    pub fn from_ratfuncs(a: RatFunc, b: RatFunc) -> Self {
        QuadElem {
            a,
            b,
            mode: QuadMode::RatFunc,
        }
    }

    pub fn one() -> Self {
        QuadElem::from_polys(Poly::one(), Poly::zero())
    }

    /// `w` itself.
    pub fn w() -> Self {
        QuadElem::from_polys(Poly::zero(), Poly::one())
    }

    /// The fundamental unit `z + w`.
    pub fn fundamental_unit() -> Self {
        QuadElem::from_polys(Poly::x(), Poly::one())
    }

    pub fn a(&self) -> &RatFunc {
        &self.a
    }

    pub fn b(&self) -> &RatFunc {
        &self.b
    }

    pub fn mode(&self) -> QuadMode {
        self.mode
    }

    pub fn into_parts(self) -> (RatFunc, RatFunc) {
        (self.a, self.b)
    }

    /// The same element in rational-function mode.
    pub fn promote(&self) -> Self {
        QuadElem {
            mode: QuadMode::RatFunc,
            ..self.clone()
        }
    }

    fn check_mode(&self, other: &Self) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        Ok(QuadElem {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            mode: self.mode,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        Ok(QuadElem {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            mode: self.mode,
        })
    }

    /// `(a₁+b₁w)(a₂+b₂w) = (a₁a₂ + b₁b₂(z²−1)) + (a₁b₂ + a₂b₁)w`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let bb = (&self.b * &other.b).mul_poly(&discriminant());
        QuadElem {
            a: &(&self.a * &other.a) + &bb,
            b: &(&self.a * &other.b) + &(&other.a * &self.b),
            mode: self.mode,
        }
    }

    /// Multiply both components by a rational function; promotes unless
    /// the factor is a polynomial.
    pub fn scale(&self, f: &RatFunc) -> Self {
        let mode = if f.is_polynomial() {
            self.mode
        } else {
            QuadMode::RatFunc
        };
        QuadElem {
            a: &self.a * f,
            b: &self.b * f,
            mode,
        }
    }

    pub fn conj(&self) -> Self {
        QuadElem {
            a: self.a.clone(),
            b: -&self.b,
            mode: self.mode,
        }
    }

    /// `a² − (z²−1)b²`.
    pub fn norm(&self) -> RatFunc {
        &(&self.a * &self.a) - &(&self.b * &self.b).mul_poly(&discriminant())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Binary exponentiation; negative exponents go through the conjugate
    /// divided by the norm, which must be a nonzero constant.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 {
            let norm = self.norm();
            if norm.is_zero() || !norm.is_polynomial() || !norm.num().is_constant() {
                return Err(Error::NotInvertible);
            }
            let c = norm.num().coeff(0);
            let inv = RatFunc::constant(c.inv().expect("nonzero norm"));
            let conj = self.conj();
            QuadElem {
                a: &conj.a * &inv,
                b: &conj.b * &inv,
                mode: self.mode,
            }
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = QuadElem {
            mode: self.mode,
            ..QuadElem::one()
        };
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(acc)
    }

    /// Derivative with `w' = z·w/(z²−1)`: `(a + bw)' = a' + (b' + b·z/(z²−1))·w`.
    /// Always returns a rational-function-mode element.
    pub fn derivative(&self) -> Self {
        let log_w = RatFunc::new(Poly::x(), discriminant()).expect("nonzero denominator");
        QuadElem {
            a: self.a.derivative(),
            b: &self.b.derivative() + &(&self.b * &log_w),
            mode: QuadMode::RatFunc,
        }
    }

    /// Polynomial components when both denominators are 1.
    pub fn as_polys(&self) -> Option<(&Poly, &Poly)> {
        if self.a.is_polynomial() && self.b.is_polynomial() {
            Some((self.a.num(), self.b.num()))
        } else {
            None
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*w", self.a, self.b)
    }
}

/// Whether every coefficient of `p` is an integer.
pub fn has_integer_coeffs(p: &Poly) -> bool {
    p.terms().iter().all(|(_, c)| c.is_integer())
}

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::{Field, Poly, Rat};
use crate::error::{Error, Result};

/// Reduced fraction `num/den` of polynomials with `den` monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc<C = Rat> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> RatFunc<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: C) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly<C>, Poly<C>) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly<C>) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return RatFunc::from(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    /// Value at `point`; `None` when `point` is a pole.
    pub fn eval(&self, point: &C) -> Option<C> {
        self.num.eval(point).div(&self.den.eval(point))
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> RatFunc<D> {
        RatFunc::reduce(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let rhs_num = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rhs_num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs_num * &self.den);
        Self::reduce(n, &self.den * &rhs.den)
    }
}

impl<C: Field> From<Poly<C>> for RatFunc<C> {
    fn from(num: Poly<C>) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }
}

impl<C: Field> Add for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn add(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        self.add_impl(rhs, false)
    }
}

impl<C: Field> Sub for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn sub(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        self.add_impl(rhs, true)
    }
}

impl<C: Field> Mul for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn mul(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by the zero function; use [`RatFunc::inv`] to
/// handle that case.
impl<C: Field> Div for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn div(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFunc::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<C: Field> Neg for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn neg(self) -> RatFunc<C> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Field> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<C: Field> fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

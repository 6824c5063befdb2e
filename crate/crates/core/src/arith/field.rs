use core::fmt;

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GaussRat;

/// Arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// Exact coefficient field. Implemented for [`Rat`] and [`GaussRat`].
///
/// Arithmetic goes through named methods instead of operator traits so
/// generic code never has to spell out reference-operator bounds.
pub trait Field:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = Field::add(self, rhs);
    }

    fn from_rat(r: Rat) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// Multiply by a rational scalar.
    fn scale(&self, r: &Rat) -> Self;

    /// Real and imaginary parts.
    fn re_im(&self) -> (Rat, Rat);

    fn to_gauss(&self) -> GaussRat;

    /// Coefficients `0 … len−1` of the product of two sorted term lists.
    fn convolve(a: &[(usize, Self)], b: &[(usize, Self)], len: usize) -> Vec<Self> {
        let mut acc = vec![Self::zero(); len];
        for (ea, ca) in a {
            for (eb, cb) in b.iter().take_while(|(eb, _)| ea + eb < len) {
                acc[ea + eb].add_assign(&ca.mul(cb));
            }
        }
        acc
    }

    /// Sign convention used for normalizing annihilators: positive real
    /// part, or zero real part and positive imaginary part.
    fn has_positive_sign(&self) -> bool {
        let (re, im) = self.re_im();
        if Zero::is_zero(&re) {
            Signed::is_positive(&im)
        } else {
            Signed::is_positive(&re)
        }
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn from_rat(r: Rat) -> Self {
        r
    }

    fn scale(&self, r: &Rat) -> Self {
        self * r
    }

    fn re_im(&self) -> (Rat, Rat) {
        (self.clone(), Zero::zero())
    }

    fn to_gauss(&self) -> GaussRat {
        GaussRat::from(self.clone())
    }

    fn has_positive_sign(&self) -> bool {
        Signed::is_positive(self)
    }

    /// Clears denominators and convolves over the integers, so only the
    /// final coefficients are reduced.
    fn convolve(a: &[(usize, Self)], b: &[(usize, Self)], len: usize) -> Vec<Self> {
        let (ia, da) = integer_terms(a);
        let (ib, db) = integer_terms(b);
        let mut acc = vec![BigInt::zero(); len];
        for (ea, x) in &ia {
            for (eb, y) in ib.iter().take_while(|(eb, _)| ea + eb < len) {
                acc[ea + eb] += x * y;
            }
        }
        let d = da * db;
        acc.into_iter()
            .map(|n| {
                if n.is_zero() {
                    <Rat as Zero>::zero()
                } else {
                    Rat::new(n, d.clone())
                }
            })
            .collect()
    }
}

/// Integer numerators over the common denominator of the terms.
fn integer_terms(terms: &[(usize, Rat)]) -> (Vec<(usize, BigInt)>, BigInt) {
    let d = terms.iter().fold(BigInt::one(), |d, (_, c)| {
        if c.denom().is_one() {
            d
        } else {
            d.lcm(c.denom())
        }
    });
    let ints = terms
        .iter()
        .filter(|t| !Zero::is_zero(&t.1))
        .map(|(e, c)| {
            let n = if c.denom() == &d {
                c.numer().clone()
            } else {
                c.numer() * (&d / c.denom())
            };
            (*e, n)
        })
        .collect();
    (ints, d)
}

/// `a/b` with the usual normalization; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

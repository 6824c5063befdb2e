use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::{Field, Rat};

/// Element `re + im·i` of the Gaussian rationals ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: <Rat as Field>::zero(),
            im: <Rat as Field>::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl From<Rat> for GaussRat {
    fn from(re: Rat) -> Self {
        GaussRat {
            re,
            im: <Rat as Field>::zero(),
        }
    }
}

impl Field for GaussRat {
    fn zero() -> Self {
        GaussRat {
            re: <Rat as Field>::zero(),
            im: <Rat as Field>::zero(),
        }
    }

    fn one() -> Self {
        GaussRat {
            re: <Rat as Field>::one(),
            im: <Rat as Field>::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        // Most series coefficients are purely real or purely imaginary.
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussRat::from(&self.re * &rhs.re),
            (true, false) => GaussRat {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            },
            (false, true) => GaussRat {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            },
            (false, false) => GaussRat {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }

    fn neg(&self) -> Self {
        GaussRat {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    /// Real and imaginary parts are convolved separately over ℚ.
    fn convolve(a: &[(usize, Self)], b: &[(usize, Self)], len: usize) -> Vec<Self> {
        type Terms = Vec<(usize, Rat)>;
        let split = |t: &[(usize, Self)]| -> (Terms, Terms) {
            let re = t
                .iter()
                .filter(|(_, c)| !c.re.is_zero())
                .map(|(e, c)| (*e, c.re.clone()))
                .collect();
            let im = t
                .iter()
                .filter(|(_, c)| !c.im.is_zero())
                .map(|(e, c)| (*e, c.im.clone()))
                .collect();
            (re, im)
        };
        let ((ar, ai), (br, bi)) = (split(a), split(b));
        let part = |x: &[(usize, Rat)], y: &[(usize, Rat)]| -> Option<Vec<Rat>> {
            if x.is_empty() || y.is_empty() {
                None
            } else {
                Some(Rat::convolve(x, y, len))
            }
        };
        let mut out = vec![<GaussRat as Field>::zero(); len];
        if let Some(v) = part(&ar, &br) {
            out.iter_mut().zip(v).for_each(|(o, x)| o.re += x);
        }
        if let Some(v) = part(&ai, &bi) {
            out.iter_mut().zip(v).for_each(|(o, x)| o.re -= x);
        }
        if let Some(v) = part(&ar, &bi) {
            out.iter_mut().zip(v).for_each(|(o, x)| o.im += x);
        }
        if let Some(v) = part(&ai, &br) {
            out.iter_mut().zip(v).for_each(|(o, x)| o.im += x);
        }
        out
    }

    fn add_assign(&mut self, rhs: &Self) {
        if !rhs.re.is_zero() {
            self.re += &rhs.re;
        }
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }

    fn from_rat(r: Rat) -> Self {
        GaussRat::from(r)
    }

    fn scale(&self, r: &Rat) -> Self {
        GaussRat {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    fn re_im(&self) -> (Rat, Rat) {
        (self.re.clone(), self.im.clone())
    }

    fn to_gauss(&self) -> GaussRat {
        self.clone()
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        Field::add(&self, &rhs)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        Field::sub(&self, &rhs)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        Field::mul(&self, &rhs)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        Field::neg(&self)
    }
}

/// Prints `a/b`, `c/d*i` or `a/b+c/d*i`.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}*i", self.re, sign, self.im.abs())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use alloc::string::ToString;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRat::i();
        assert_eq!(i.clone() * i, GaussRat::from(rat(-1, 1)));
    }

    #[test]
    fn inverse() {
        let z = GaussRat::new(rat(1, 2), rat(-3, 4));
        let inv = z.inv().unwrap();
        assert!(Field::is_one(&Field::mul(&z, &inv)));
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            GaussRat::new(rat(1, 2), rat(-3, 4)).to_string(),
            "1/2-3/4*i"
        );
        assert_eq!(GaussRat::new(rat(0, 1), rat(2, 1)).to_string(), "2*i");
        assert_eq!(GaussRat::from(rat(-5, 3)).to_string(), "-5/3");
    }
}

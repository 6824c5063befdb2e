use alloc::vec::Vec;
use core::fmt;

use crate::arith::{primitive_factor, Field, Poly, Rat};
use crate::error::{Error, Result};
use crate::series::TruncSeries;

/// Linear ODE `P_k F^(k) + … + P_1 F' + P_0 F = 0` with polynomial
/// coefficients.
///
/// Stored normalized: the `P_i` share no common polynomial factor, their
/// coefficients are coprime integers (real and imaginary parts), and the
/// leading coefficient of `P_k` is positive.
///
/// The zero function is represented by a flagged value whose single
/// coefficient is `P_0 = 1` (the relation `F = 0`), so no stored leading
/// coefficient is ever zero.
#[derive(Clone, PartialEq, Eq)]
pub struct OdeAnnihilator<C = Rat> {
    coeffs: Vec<Poly<C>>,
    zero_function: bool,
}

/// Outcome of checking an ODE against a truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCheck {
    /// Number of leading coefficients of `L(s)` that were checked.
    pub window: usize,
    /// First exponent in the window where `L(s)` is nonzero.
    pub first_mismatch: Option<usize>,
}

impl SeriesCheck {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl<C: Field> OdeAnnihilator<C> {
    /// Normalizes `coeffs = [P_0, …, P_k]`. Trailing zero polynomials are
    /// dropped; an operator of order 0 only admits the zero function and
    /// yields [`OdeAnnihilator::zero_function`].
    pub fn new(mut coeffs: Vec<Poly<C>>) -> Result<Self> {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Err(Error::InvalidInput("all ODE coefficients are zero")),
            1 => Ok(OdeAnnihilator::zero_function()),
            _ => Ok(OdeAnnihilator {
                coeffs: normalize_polys(coeffs),
                zero_function: false,
            }),
        }
    }

    pub fn zero_function() -> Self {
        OdeAnnihilator {
            coeffs: alloc::vec![Poly::one()],
            zero_function: true,
        }
    }

    pub fn is_zero_function(&self) -> bool {
        self.zero_function
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[P_0, …, P_k]`.
    pub fn coeffs(&self) -> &[Poly<C>] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Poly<C> {
        self.coeffs.last().expect("nonempty")
    }

    /// Largest degree among the `P_i`.
    pub fn max_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> OdeAnnihilator<D> {
        if self.zero_function {
            return OdeAnnihilator::zero_function();
        }
        OdeAnnihilator::new(self.coeffs.iter().map(|p| p.map_coeffs(&f)).collect())
            .expect("embedding keeps the leading coefficient")
    }

    /// `Σ P_i·p^(i)` for a polynomial `p`.
    pub fn apply_poly(&self, p: &Poly<C>) -> Poly<C> {
        let mut acc = Poly::zero();
        let mut d = p.clone();
        for c in &self.coeffs {
            acc = &acc + &(c * &d);
            d = d.derivative();
        }
        acc
    }

    /// `Σ P_i·s^(i)`, exact to order `T − k`.
    pub fn apply_series(&self, s: &TruncSeries) -> TruncSeries {
        let k = self.order();
        let t = s.order().saturating_sub(k);
        let mut acc = TruncSeries::zero(t);
        let mut d = s.clone();
        for c in &self.coeffs {
            acc = acc.add(&d.truncate(t).mul_poly(c));
            d = d.derivative();
        }
        acc
    }

    /// Checks that `L(s)` vanishes on `z⁰ … z^(T−k−maxdeg−1)`.
    pub fn check_series(&self, s: &TruncSeries) -> Result<SeriesCheck> {
        let needed = self.order() + self.max_degree() + 1;
        if s.order() < needed {
            return Err(Error::TruncationTooShort {
                needed,
                got: s.order(),
            });
        }
        let window = s.order() - needed + 1;
        let residual = self.apply_series(s);
        let first_mismatch = residual.coeffs()[..window]
            .iter()
            .position(|c| !c.is_zero());
        Ok(SeriesCheck {
            window,
            first_mismatch,
        })
    }

    /// Boolean form of [`check_series`](Self::check_series).
    pub fn annihilates(&self, s: &TruncSeries) -> Result<bool> {
        self.check_series(s).map(|c| c.passed())
    }
}

/// Removes the common polynomial factor, scales `P_k` to have a positive
/// leading coefficient and makes all coefficients coprime integers.
pub(crate) fn normalize_polys<C: Field>(coeffs: Vec<Poly<C>>) -> Vec<Poly<C>> {
    let g = coeffs.iter().fold(Poly::zero(), |g, p| g.gcd(p));
    let coeffs: Vec<Poly<C>> = if g.is_one() {
        coeffs
    } else {
        coeffs
            .iter()
            .map(|p| p.exact_div(&g).expect("gcd divides"))
            .collect()
    };
    normalize_scalar(coeffs)
}

/// Scalar part of the normalization only; the polynomial content is kept.
pub(crate) fn normalize_scalar<C: Field>(coeffs: Vec<Poly<C>>) -> Vec<Poly<C>> {
    let lead = coeffs
        .iter()
        .rev()
        .find_map(|p| p.leading())
        .expect("some coefficient is nonzero")
        .inv()
        .expect("nonzero");
    let monic: Vec<Poly<C>> = coeffs.iter().map(|p| p.scale(&lead)).collect();
    let factor = primitive_factor(monic.iter().flat_map(|p| p.terms().iter().map(|(_, c)| c)));
    monic.iter().map(|p| p.scale_rat(&factor)).collect()
}

fn write_operator<C: Field>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[Poly<C>],
    term: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        write!(f, "({c})*{term}{i}")?;
    }
    Ok(())
}

impl<C: Field> fmt::Display for OdeAnnihilator<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero_function {
            return f.write_str("F = 0");
        }
        write_operator(f, &self.coeffs, "D^")?;
        f.write_str(" = 0")
    }
}

impl<C: Field> fmt::Debug for OdeAnnihilator<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OdeAnnihilator({self})")
    }
}

//! Truncated power series over ℚ(i).
//!
//! A [`TruncSeries`] of order `T` holds exactly the coefficients of
//! `z⁰ … z^(T−1)`. Binary operations on series of different orders
//! truncate to the smaller one; the result's order records that.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::arith::{rat, Field, GaussRat, Poly, Rat, RatFunc};
use crate::error::{Error, Result};
use crate::quad::QuadElem;

/// Default truncation order for verification.
pub const DEFAULT_ORDER: usize = 120;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<GaussRat>,
}

/// Which determination of `√(z²−1)` near 0 is substituted for `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `W` with `W(0) = i`.
    Plus,
    /// `−W`.
    Minus,
}

impl TruncSeries {
    pub fn new(coeffs: Vec<GaussRat>) -> Self {
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![GaussRat::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::from_poly(&Poly::<Rat>::one(), order)
    }

    pub fn from_poly<C: Field>(p: &Poly<C>, order: usize) -> Self {
        let mut coeffs = vec![GaussRat::zero(); order];
        for (e, c) in p.terms() {
            if *e < order {
                coeffs[*e] = c.to_gauss();
            }
        }
        TruncSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> GaussRat) -> Self {
        TruncSeries {
            coeffs: (0..order).map(f).collect(),
        }
    }

    /// Truncation order `T`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussRat> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&GaussRat> {
        self.coeffs.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussRat::is_real)
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries {
            coeffs: self.coeffs[..order.min(self.order())].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, Field::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, Field::sub)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&GaussRat, &GaussRat) -> GaussRat) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(Field::neg).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect(),
        }
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Self {
        let t = self.order().min(other.order());
        let nz = |s: &Self| -> Vec<(usize, GaussRat)> {
            s.coeffs[..t]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect()
        };
        let out = GaussRat::convolve(&nz(self), &nz(other), t);
        TruncSeries { coeffs: out }
    }

    pub fn mul_poly<C: Field>(&self, p: &Poly<C>) -> Self {
        let t = self.order();
        let nz: Vec<(usize, GaussRat)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let p: Vec<(usize, GaussRat)> = p.terms().iter().map(|(e, c)| (*e, c.to_gauss())).collect();
        let out = GaussRat::convolve(&p, &nz, t);
        TruncSeries { coeffs: out }
    }

    /// Term-wise derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, a)| a.scale(&Rat::from_integer(BigInt::from(n))))
                .collect(),
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let t = self.order();
        let a0_inv = self
            .coeffs
            .first()
            .and_then(Field::inv)
            .ok_or(Error::DivisionByZero)?;
        let mut out: Vec<GaussRat> = Vec::with_capacity(t);
        if t == 0 {
            return Ok(TruncSeries { coeffs: out });
        }
        out.push(a0_inv.clone());
        let neg_inv = a0_inv.neg();
        for n in 1..t {
            let mut acc = GaussRat::zero();
            for j in 1..=n {
                let a = &self.coeffs[j];
                if !a.is_zero() && !out[n - j].is_zero() {
                    acc.add_assign(&a.mul(&out[n - j]));
                }
            }
            out.push(acc.mul(&neg_inv));
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// `exp(s)` via `E' = s'·E`, i.e. `n·E_n = Σ_{j=1}^{n} j·s_j·E_{n−j}`.
    pub fn exp(&self) -> Result<Self> {
        let t = self.order();
        if let Some(c0) = self.coeffs.first() {
            if !c0.is_zero() {
                return Err(Error::NonZeroConstantTerm);
            }
        }
        if t == 0 {
            return Ok(self.clone());
        }
        let weighted: Vec<(usize, GaussRat)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, s)| !s.is_zero())
            .map(|(j, s)| (j, s.scale(&Rat::from_integer(BigInt::from(j)))))
            .collect();
        let mut out: Vec<GaussRat> = Vec::with_capacity(t);
        out.push(GaussRat::one());
        for n in 1..t {
            let mut acc = GaussRat::zero();
            for (j, js) in &weighted {
                if *j > n {
                    break;
                }
                if !out[n - j].is_zero() {
                    acc.add_assign(&js.mul(&out[n - j]));
                }
            }
            out.push(acc.scale(&rat(1, n as i64)));
        }
        Ok(TruncSeries { coeffs: out })
    }
}

/// The branch `W = i·√(1−z²)` of `√(z²−1)` with `W(0) = i`, to order `order`.
///
/// Uses the binomial series `√(1−u) = Σ c_m u^m` with `c_0 = 1` and
/// `c_m = c_{m−1}·(m − 3/2)/m`.
pub fn series_w(order: usize) -> TruncSeries {
    let mut coeffs = vec![GaussRat::zero(); order];
    let mut c = rat(1, 1);
    let mut m = 0usize;
    while 2 * m < order {
        coeffs[2 * m] = GaussRat::new(rat(0, 1), c.clone());
        m += 1;
        c *= Rat::new(BigInt::from(2 * m as i64 - 3), BigInt::from(2 * m as i64));
    }
    TruncSeries { coeffs }
}

/// Taylor expansion at 0 of a rational function.
pub fn series_of_ratfunc<C: Field>(f: &RatFunc<C>, order: usize) -> Result<TruncSeries> {
    let num = TruncSeries::from_poly(f.num(), order);
    if f.is_polynomial() {
        return Ok(num);
    }
    let den = TruncSeries::from_poly(f.den(), order);
    if den.coeffs.first().is_none_or(Field::is_zero) {
        return Err(Error::PoleAtOrigin);
    }
    num.div(&den)
}

/// Substitutes `±W` for `w` in `u = a + b·w` and expands.
pub fn series_of_quad(u: &QuadElem, branch: Branch, order: usize) -> Result<TruncSeries> {
    let a = series_of_ratfunc(u.a(), order)?;
    if u.b().is_zero() {
        return Ok(a);
    }
    let b = series_of_ratfunc(u.b(), order)?;
    let bw = b.mul(&series_w(order));
    Ok(match branch {
        Branch::Plus => a.add(&bw),
        Branch::Minus => a.sub(&bw),
    })
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(T={}; ", self.order())?;
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*z^{n}")?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: i64, d: i64) -> GaussRat {
        GaussRat::from(rat(n, d))
    }

    fn gi(n: i64, d: i64) -> GaussRat {
        GaussRat::new(rat(0, 1), rat(n, d))
    }

    fn real(order: usize, c: &[(i64, i64)]) -> TruncSeries {
        let mut v: Vec<GaussRat> = c.iter().map(|&(n, d)| g(n, d)).collect();
        v.resize(order, GaussRat::zero());
        TruncSeries::new(v)
    }

    fn z_series(order: usize) -> TruncSeries {
        TruncSeries::from_poly(&Poly::<Rat>::x(), order)
    }

    #[test]
    fn product_of_linear_factors() {
        let a = TruncSeries::from_poly(&Poly::<Rat>::from_ints(&[1, 1]), 4);
        let b = TruncSeries::from_poly(&Poly::<Rat>::from_ints(&[1, -1]), 4);
        assert_eq!(
            a.mul(&b),
            TruncSeries::from_poly(&Poly::<Rat>::from_ints(&[1, 0, -1]), 4)
        );
    }

    #[test]
    fn exp_examples() {
        assert_eq!(TruncSeries::zero(5).exp().unwrap(), TruncSeries::one(5));
        let e = z_series(5).exp().unwrap();
        assert_eq!(e, real(5, &[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)]));
        assert_eq!(e.add(&TruncSeries::zero(5)), e);
        // exp(z + z²) truncated at 4
        let s = TruncSeries::from_poly(&Poly::<Rat>::from_ints(&[0, 1, 1]), 4);
        assert_eq!(s.exp().unwrap(), real(4, &[(1, 1), (1, 1), (3, 2), (7, 6)]));
    }

    #[test]
    fn exp_squared_is_exp_of_double() {
        // Cauchy product oracle: coefficients 2^n/n!
        let e = z_series(6).exp().unwrap();
        let expected = real(6, &[(1, 1), (2, 1), (2, 1), (4, 3), (2, 3), (4, 15)]);
        assert_eq!(e.mul(&e), expected);
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert_eq!(TruncSeries::one(3).exp(), Err(Error::NonZeroConstantTerm));
    }

    #[test]
    fn w_branch() {
        let w = series_w(6);
        let expected = TruncSeries::new(vec![
            gi(1, 1),
            GaussRat::zero(),
            gi(-1, 2),
            GaussRat::zero(),
            gi(-1, 8),
            GaussRat::zero(),
        ]);
        assert_eq!(w, expected);
        assert_eq!(w.coeff(0), Some(&GaussRat::i()));
        assert_eq!(
            w.mul(&w),
            TruncSeries::from_poly(&Poly::<Rat>::from_ints(&[-1, 0, 1]), 6)
        );
    }

    #[test]
    fn w_squared_at_several_orders() {
        for t in [8, 32, 128] {
            let w = series_w(t);
            let d = TruncSeries::from_poly(&Poly::<Rat>::from_ints(&[-1, 0, 1]), t);
            assert!(w.mul(&w).sub(&d).is_zero(), "T = {t}");
        }
    }

    #[test]
    fn reciprocal_of_w() {
        let w = series_w(40);
        let inv = w.inv().unwrap();
        assert_eq!(inv.coeff(0), Some(&gi(-1, 1)));
        assert_eq!(inv.mul(&w), TruncSeries::one(40));
    }

    #[test]
    fn quad_series_examples() {
        assert_eq!(
            series_of_quad(&QuadElem::w(), Branch::Plus, 10).unwrap(),
            series_w(10)
        );
        let s = series_of_quad(&QuadElem::fundamental_unit(), Branch::Minus, 4).unwrap();
        let expected = TruncSeries::new(vec![gi(-1, 1), g(1, 1), gi(1, 2), GaussRat::zero()]);
        assert_eq!(s, expected);
        let u = QuadElem::fundamental_unit();
        let norm = u.mul(&u.conj()).unwrap();
        for b in [Branch::Plus, Branch::Minus] {
            assert_eq!(series_of_quad(&norm, b, 12).unwrap(), TruncSeries::one(12));
        }
    }

    #[test]
    fn pole_at_origin_rejected() {
        let f = RatFunc::new(Poly::<Rat>::one(), Poly::x()).unwrap();
        assert_eq!(series_of_ratfunc(&f, 5), Err(Error::PoleAtOrigin));
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = TruncSeries::one(7);
        let b = z_series(4);
        assert_eq!(a.add(&b).order(), 4);
        assert_eq!(a.mul(&b).order(), 4);
        assert_eq!(a.mul(&b), z_series(4));
    }

    fn arb_zero_const(order: usize) -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec((-4i64..4, 1i64..4), order - 1).prop_map(move |v| {
            let mut c = vec![GaussRat::zero()];
            c.extend(v.into_iter().map(|(n, d)| g(n, d)));
            TruncSeries::new(c)
        })
    }

    fn arb_small_quad() -> impl Strategy<Value = QuadElem> {
        (
            prop::collection::vec(-3i64..3, 0..3),
            prop::collection::vec(-3i64..3, 0..3),
            1i64..3,
        )
            .prop_map(|(a, b, s)| {
                let den = RatFunc::new(Poly::one(), Poly::from_ints(&[s, 1])).unwrap();
                QuadElem::from_polys(Poly::from_ints(&a), Poly::from_ints(&b)).scale(&den)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn exp_is_a_homomorphism(s in arb_zero_const(12), t in arb_zero_const(12)) {
            let lhs = s.add(&t).exp().unwrap();
            let rhs = s.exp().unwrap().mul(&t.exp().unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn quad_series_is_a_ring_morphism(u in arb_small_quad(), v in arb_small_quad()) {
            let uv = u.promote().mul(&v.promote()).unwrap();
            for b in [Branch::Plus, Branch::Minus] {
                let lhs = series_of_quad(&uv, b, 16).unwrap();
                let rhs = series_of_quad(&u, b, 16).unwrap().mul(&series_of_quad(&v, b, 16).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;

use super::{Field, GaussRat, Rat};
use crate::error::{Error, Result};

/// Multiplications with fewer term products than this always run on the
/// sparse path.
pub const DENSE_MIN_WORK: usize = 32;

/// The dense scratch buffer is used when the output exponent span is at
/// most `DENSE_SPAN_FACTOR` times the number of term products. Measured
/// on the Pell polynomials (dense, degree 10..400) against lacunary
/// inputs such as `1 + z^1000`: below a span/work ratio of about 4 the
/// dense buffer wins, above it the sorted-map accumulator does.
pub const DENSE_SPAN_FACTOR: usize = 4;

/// Univariate polynomial stored as a sorted exponent → coefficient list.
///
/// No stored coefficient is zero. The zero polynomial has no terms and
/// its degree is `None`, which orders below every `Some(d)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<C = Rat> {
    terms: Vec<(usize, C)>,
}

impl<C: Field> Default for Poly<C> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::monomial(c, 0)
    }

    pub fn monomial(c: C, exp: usize) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(exp, c)],
            }
        }
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Poly::monomial(C::one(), 1)
    }

    /// `x - c`.
    pub fn linear_root(c: &C) -> Self {
        Poly::from_terms([(0, c.neg()), (1, C::one())])
    }

    /// Builds from `(exponent, coefficient)` pairs in any order; repeated
    /// exponents are summed and zeros dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, C)>) -> Self {
        let mut acc: BTreeMap<usize, C> = BTreeMap::new();
        for (e, c) in terms {
            match acc.get_mut(&e) {
                Some(slot) => slot.add_assign(&c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Builds from a dense coefficient vector, lowest degree first.
    pub fn from_dense(coeffs: Vec<C>) -> Self {
        Poly {
            terms: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_dense(coeffs.iter().map(|&c| C::from_int(c)).collect())
    }

    pub fn to_dense(&self) -> Vec<C> {
        let len = self.degree().map_or(0, |d| d + 1);
        let mut out = vec![C::zero(); len];
        for (e, c) in &self.terms {
            out[*e] = c.clone();
        }
        out
    }

    pub fn terms(&self) -> &[(usize, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(usize, C)> {
        self.terms
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn leading(&self) -> Option<&C> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, exp: usize) -> C {
        self.coeff_ref(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, exp: usize) -> Option<&C> {
        self.terms
            .binary_search_by_key(&exp, |(e, _)| *e)
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|(e, _)| *e)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, a)| (*e, a.mul(c))).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        if <Rat as Field>::is_zero(r) {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, a)| (*e, a.scale(r))).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn to_gauss(&self) -> Poly<GaussRat> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.to_gauss())).collect(),
        }
    }

    /// Real and imaginary parts as rational polynomials.
    pub fn re_im(&self) -> (Poly<Rat>, Poly<Rat>) {
        let (re, im): (Vec<_>, Vec<_>) = self
            .terms
            .iter()
            .map(|(e, c)| {
                let (r, i) = c.re_im();
                ((*e, r), (*e, i))
            })
            .unzip();
        (Poly::from_terms(re), Poly::from_terms(im))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn derivative(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, c)| (e - 1, c.scale(&Rat::from_integer(BigInt::from(*e)))))
                .collect(),
        }
    }

    /// Horner evaluation, skipping over gaps with repeated squaring.
    pub fn eval(&self, point: &C) -> C {
        let mut acc = C::zero();
        let mut prev = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (e, c) in self.terms.iter().rev() {
            acc = acc.mul(&pow(point, prev - e)).add(c);
            prev = *e;
        }
        acc.mul(&pow(point, prev))
    }

    pub fn eval_gauss(&self, point: &GaussRat) -> GaussRat {
        self.to_gauss().eval(point)
    }

    /// `p(x + c)`.
    pub fn taylor_shift(&self, c: &C) -> Self {
        if c.is_zero() || self.is_zero() {
            return self.clone();
        }
        let dense = self.to_dense();
        let mut acc: Vec<C> = Vec::with_capacity(dense.len());
        for a in dense.iter().rev() {
            // acc <- acc * (x + c) + a
            let mut next = vec![C::zero(); acc.len() + 1];
            for (i, b) in acc.iter().enumerate() {
                next[i + 1].add_assign(b);
                next[i].add_assign(&b.mul(c));
            }
            next[0].add_assign(a);
            acc = next;
        }
        Poly::from_dense(acc)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let take_b = |c: &C| if negate_rhs { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            let (ea, ca) = &a[i];
            let (eb, cb) = &b[j];
            if ea < eb {
                out.push((*ea, ca.clone()));
                i += 1;
            } else if eb < ea {
                out.push((*eb, take_b(cb)));
                j += 1;
            } else {
                let s = if negate_rhs { ca.sub(cb) } else { ca.add(cb) };
                if !s.is_zero() {
                    out.push((*ea, s));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (*e, take_b(c))));
        Poly { terms: out }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        let (da, db) = match (self.degree(), rhs.degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Poly::zero(),
        };
        let work = self.terms.len() * rhs.terms.len();
        let span = da + db + 1;
        if work >= DENSE_MIN_WORK && span <= DENSE_SPAN_FACTOR * work {
            let acc = C::convolve(&self.terms, &rhs.terms, span);
            Poly::from_dense(acc)
        } else {
            Poly::from_terms(
                self.terms.iter().flat_map(|(ea, ca)| {
                    rhs.terms.iter().map(move |(eb, cb)| (ea + eb, ca.mul(cb)))
                }),
            )
        }
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.leading().and_then(C::inv).ok_or(Error::DivisionByZero)?;
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((Poly::zero(), self.clone())),
        };
        let mut rem = self.to_dense();
        let mut q = vec![C::zero(); n - dd + 1];
        for i in (0..q.len()).rev() {
            let c = rem[i + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (e, dc) in &d.terms {
                rem[i + e] = rem[i + e].sub(&c.mul(dc));
            }
            q[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_dense(q), Poly::from_dense(rem)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        match self.divrem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if (self.is_constant() && !self.is_zero()) || (other.is_constant() && !other.is_zero()) {
            return Poly::one();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("b is nonzero").1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

fn pow<C: Field>(x: &C, mut n: usize) -> C {
    let mut acc = C::one();
    let mut base = x.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

/// Rational factor `r` such that `r·c` has coprime integer real and
/// imaginary parts across every coefficient `c` yielded.
pub fn primitive_factor<'a, C: Field>(coeffs: impl Iterator<Item = &'a C>) -> Rat {
    let mut parts = Vec::new();
    for c in coeffs {
        let (re, im) = c.re_im();
        parts.push(re);
        parts.push(im);
    }
    let mut den_lcm = BigInt::from(1);
    for p in &parts {
        den_lcm = den_lcm.lcm(p.denom());
    }
    let mut num_gcd = BigInt::from(0);
    for p in &parts {
        let scaled = p.numer() * (&den_lcm / p.denom());
        num_gcd = num_gcd.gcd(&scaled);
    }
    if num_gcd == BigInt::from(0) {
        return <Rat as Field>::one();
    }
    Rat::new(den_lcm, num_gcd)
}

impl<C: Field> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.add_impl(rhs, false)
    }
}

impl<C: Field> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.add_impl(rhs, true)
    }
}

impl<C: Field> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.mul_impl(rhs)
    }
}

impl<C: Field> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Field> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Field> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

/// Writes a polynomial in the text form `c0 + c1*z + c5*z^5` using the
/// given variable name.
pub struct PolyDisplay<'a, C> {
    poly: &'a Poly<C>,
    var: &'a str,
}

impl<C: Field> Poly<C> {
    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, C> {
        PolyDisplay { poly: self, var }
    }
}

impl<C: Field> fmt::Display for PolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.poly.terms.iter().enumerate() {
            let (re, im) = c.re_im();
            let real_negative = <Rat as Field>::is_zero(&im) && !re.has_positive_sign();
            let mag = if real_negative { c.neg() } else { c.clone() };
            match (idx, real_negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let complex = !<Rat as Field>::is_zero(&re) && !<Rat as Field>::is_zero(&im);
            if *e == 0 {
                if complex {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            if !mag.is_one() {
                if complex {
                    write!(f, "({mag})*")?;
                } else {
                    write!(f, "{mag}*")?;
                }
            }
            if *e == 1 {
                f.write_str(self.var)?;
            } else {
                write!(f, "{}^{}", self.var, e)?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display("z"), f)
    }
}

impl<C: Field> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

//! Solutions of the polynomial Pell equation `X² − (z²−1)Y² = 1`.
//!
//! Polynomial solutions are `(ε·x_n, y_n)` with `x_n + w·y_n = (z+w)ⁿ`.
//! Entire solutions of finite order are `f + wg = ε(z+w)ⁿ·exp(wh)` with
//! `h` a polynomial; these are realized as truncated series on the branch
//! `W(0) = i` and certified holonomic through a rank-2 derivation module.

use alloc::vec;

use crate::arith::{Field, GaussRat, Poly, Rat, RatFunc};
use crate::error::{Error, Result};
use crate::holonomic::{DModule, OdeAnnihilator};
use crate::quad::{discriminant, QuadElem};
use crate::series::{series_of_quad, series_w, Branch, TruncSeries, DEFAULT_ORDER};

/// Smallest truncation order accepted for entire solutions.
pub const MIN_ORDER: usize = 8;

/// `(f, g) = (ε·x_n, y_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellWitness {
    pub epsilon: i8,
    pub n: i64,
    pub x: Poly,
    pub y: Poly,
}

/// Truncated entire solution `f + wg = ε(z+w)ⁿ·exp(wh)`.
///
/// When `h(0) = 0` the series `f` and `g` are the solution itself. Otherwise
/// `exp(Wh)` carries the constant `e^{iθ}` with `θ = h(0)`, and the solution
/// is `cos θ·f + sin θ·f_sin` (likewise for `g`); see [`Phase`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntirePellData {
    pub epsilon: i8,
    pub n: i64,
    pub h: Poly,
    pub order: usize,
    pub f: TruncSeries,
    pub g: TruncSeries,
    pub phase: Option<Phase>,
}

/// Sine components of an entire solution with `θ = h(0) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase {
    pub theta: Rat,
    pub f_sin: TruncSeries,
    pub g_sin: TruncSeries,
}

fn check_epsilon(epsilon: i8) -> Result<()> {
    if epsilon == 1 || epsilon == -1 {
        Ok(())
    } else {
        Err(Error::InvalidInput("epsilon must be 1 or -1"))
    }
}

/// Components of `(z+w)ⁿ`.
pub fn pell_generate(n: i64) -> PellWitness {
    let u = QuadElem::fundamental_unit()
        .pow(n)
        .expect("z + w is a unit");
    let (x, y) = u
        .as_polys()
        .expect("powers of a unit with norm 1 are polynomial");
    PellWitness {
        epsilon: 1,
        n,
        x: x.clone(),
        y: y.clone(),
    }
}

/// Exact test of `f² − (z²−1)g² = 1`.
pub fn pell_verify_poly(f: &Poly, g: &Poly) -> bool {
    (&(f * f) - &(&discriminant() * &(g * g))).is_one()
}

/// The unique `(ε, n)` with `(f, g) = (ε·x_n, y_n)`.
pub fn pell_classify(f: &Poly, g: &Poly) -> Result<(i8, i64)> {
    if !pell_verify_poly(f, g) {
        return Err(Error::NotASolution);
    }
    let degree = f.degree().expect("a solution has f ≠ 0");
    let at_one = g.eval(&Rat::from_integer(1.into()));
    let n: i64 = if degree == 0 {
        0
    } else {
        if !at_one.is_integer() {
            return Err(Error::NotASolution);
        }
        let n = i64::try_from(at_one.to_integer()).map_err(|_| Error::NotASolution)?;
        if n.unsigned_abs() != degree as u64 {
            return Err(Error::NotASolution);
        }
        n
    };
    let epsilon: i8 = if f.leading().expect("nonzero").has_positive_sign() {
        1
    } else {
        -1
    };
    let w = pell_generate(n);
    let fx = if epsilon == 1 { w.x.clone() } else { -&w.x };
    if &fx != f || &w.y != g {
        return Err(Error::NotASolution);
    }
    Ok((epsilon, n))
}

impl PellWitness {
    /// Witness with `f = ε·x_n`.
    pub fn with_epsilon(epsilon: i8, n: i64) -> Result<Self> {
        check_epsilon(epsilon)?;
        let mut w = pell_generate(n);
        if epsilon == -1 {
            w.x = -&w.x;
        }
        w.epsilon = epsilon;
        Ok(w)
    }
}

/// `ε(z±W)ⁿ·exp(±Wh ∓ i·h(0))` on both branches.
fn branch_series(
    epsilon: i8,
    n: i64,
    h: &Poly,
    order: usize,
) -> Result<(TruncSeries, TruncSeries)> {
    let unit = QuadElem::fundamental_unit().pow(n)?;
    let wh = QuadElem::from_polys(Poly::zero(), h.clone());
    let eps = GaussRat::from(Rat::from_integer(epsilon.into()));
    let mut out = vec![];
    for branch in [Branch::Plus, Branch::Minus] {
        let mut exponent = series_of_quad(&wh, branch, order)?.into_coeffs();
        if let Some(c0) = exponent.first_mut() {
            *c0 = GaussRat::zero();
        }
        let e = TruncSeries::new(exponent).exp()?;
        out.push(series_of_quad(&unit, branch, order)?.mul(&e).scale(&eps));
    }
    let minus = out.pop().expect("two branches");
    let plus = out.pop().expect("two branches");
    Ok((plus, minus))
}

/// `f² − (z²−1)·g²` to the common order.
fn pell_form(f: &TruncSeries, g: &TruncSeries) -> TruncSeries {
    f.mul(f).sub(&g.mul(g).mul_poly(&discriminant()))
}

fn pell_cross(f: &TruncSeries, f2: &TruncSeries, g: &TruncSeries, g2: &TruncSeries) -> TruncSeries {
    f.mul(f2).sub(&g.mul(g2).mul_poly(&discriminant()))
}

/// Truncated entire solution with the identity `f² − (z²−1)g² = 1`
/// checked to order `T` before returning.
pub fn pell_general_solution(
    epsilon: i8,
    n: i64,
    h: &Poly,
    order: usize,
) -> Result<EntirePellData> {
    check_epsilon(epsilon)?;
    if order < MIN_ORDER {
        return Err(Error::TruncationTooShort {
            needed: MIN_ORDER,
            got: order,
        });
    }
    let (s, sb) = branch_series(epsilon, n, h, order)?;
    let w = series_w(order);
    let half = GaussRat::from(Rat::new(1.into(), 2.into()));
    let i_half = GaussRat::new(Rat::from_integer(0.into()), Rat::new(1.into(), 2.into()));
    let sum = s.add(&sb);
    let diff = s.sub(&sb);
    let f = sum.scale(&half);
    let g = diff.div(&w)?.scale(&half);

    let one = TruncSeries::one(order);
    assert_eq!(
        pell_form(&f, &g),
        one,
        "entire Pell identity failed for n = {n}, h = {h}"
    );

    let theta = h.coeff(0);
    let phase = if theta.is_zero() {
        None
    } else {
        let f_sin = diff.scale(&i_half);
        let g_sin = sum.div(&w)?.scale(&i_half);
        assert_eq!(
            pell_form(&f_sin, &g_sin),
            one,
            "sine-part Pell identity failed"
        );
        assert!(
            pell_cross(&f, &f_sin, &g, &g_sin).is_zero(),
            "cross term of the Pell identity is nonzero"
        );
        Some(Phase {
            theta,
            f_sin,
            g_sin,
        })
    };
    Ok(EntirePellData {
        epsilon,
        n,
        h: h.clone(),
        order,
        f,
        g,
        phase,
    })
}

/// Derivation module on the basis `(E, wE)` for `E = ε(z+w)ⁿ·exp(wh)`.
///
/// `E' = φ·wE` with `φ = (n + z·h)/(z²−1) + h'`, and
/// `(wE)' = (z²−1)·φ·E + z/(z²−1)·wE`.
pub fn pell_module(n: i64, h: &Poly) -> DModule {
    let d = discriminant();
    let nz = &Poly::constant(Rat::from_integer(n.into())) + &(&Poly::x() * h);
    let phi = &RatFunc::new(nz, d.clone()).expect("nonzero") + &RatFunc::from(h.derivative());
    let logw = RatFunc::new(Poly::x(), d.clone()).expect("nonzero");
    let matrix = vec![
        vec![RatFunc::zero(), phi.clone()],
        vec![phi.mul_poly(&d), logw],
    ];
    DModule::new(matrix, vec![RatFunc::one(), RatFunc::zero()]).expect("rank two")
}

/// Annihilators of `f` and `g` for the entire solution `ε(z+w)ⁿ·exp(wh)`.
///
/// `f` is the element `E` and `g` is `E/w = wE/(z²−1)`; conjugation
/// `w ↦ −w` preserves the module, so each annihilator also kills the
/// conjugate realization and hence `f` and `g` themselves.
///
/// # Panics
///
/// If either annihilator fails its series check against
/// [`pell_general_solution`]; that is an internal error.
pub fn pell_holonomic_witness(
    epsilon: i8,
    n: i64,
    h: &Poly,
) -> Result<(OdeAnnihilator, OdeAnnihilator)> {
    check_epsilon(epsilon)?;
    let m = pell_module(n, h);
    let eps = RatFunc::constant(Rat::from_integer(epsilon.into()));
    let f_ann = m
        .with_element(vec![eps.clone(), RatFunc::zero()])?
        .annihilator();
    let g_coord = RatFunc::new(
        Poly::constant(Rat::from_integer(epsilon.into())),
        discriminant(),
    )?;
    let g_ann = m
        .with_element(vec![RatFunc::zero(), g_coord])?
        .annihilator();

    let needed = [&f_ann, &g_ann]
        .iter()
        .map(|a| a.order() + a.max_degree() + 1)
        .max()
        .unwrap_or(0);
    let order = DEFAULT_ORDER.max(needed + MIN_ORDER);
    let data = pell_general_solution(epsilon, n, h, order)?;
    let mut pairs = vec![(&f_ann, &data.f), (&g_ann, &data.g)];
    if let Some(p) = &data.phase {
        pairs.push((&f_ann, &p.f_sin));
        pairs.push((&g_ann, &p.g_sin));
    }
    for (ann, s) in pairs {
        let ok = ann
            .annihilates(s)
            .expect("order chosen above the check window");
        assert!(
            ok,
            "holonomic witness {ann} fails on the entire solution for n = {n}, h = {h}"
        );
    }
    Ok((f_ann, g_ann))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn generate_examples() {
        assert_eq!(
            pell_generate(0),
            PellWitness {
                epsilon: 1,
                n: 0,
                x: p(&[1]),
                y: Poly::zero()
            }
        );
        let w = pell_generate(2);
        assert_eq!((w.x, w.y), (p(&[-1, 0, 2]), p(&[0, 2])));
        let w = pell_generate(-1);
        assert_eq!((w.x, w.y), (p(&[0, 1]), p(&[-1])));
    }

    #[test]
    fn verify_examples() {
        assert!(pell_verify_poly(&p(&[0, 1]), &p(&[1])));
        assert!(pell_verify_poly(&p(&[0, -3, 0, 4]), &p(&[-1, 0, 4])));
        assert!(!pell_verify_poly(&p(&[0, 1]), &p(&[0, 1])));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(pell_classify(&p(&[-1, 0, 2]), &p(&[0, 2])), Ok((1, 2)));
        assert_eq!(pell_classify(&p(&[0, -1]), &p(&[1])), Ok((-1, 1)));
        assert_eq!(pell_classify(&p(&[1]), &Poly::zero()), Ok((1, 0)));
        assert_eq!(pell_classify(&p(&[-1]), &Poly::zero()), Ok((-1, 0)));
        assert_eq!(
            pell_classify(&p(&[0, 1]), &p(&[0, 1])),
            Err(Error::NotASolution)
        );
    }

    #[test]
    fn entire_polynomial_cases() {
        let d = pell_general_solution(1, 0, &Poly::zero(), 16).unwrap();
        assert_eq!(d.f, TruncSeries::one(16));
        assert!(d.g.is_zero());
        let d = pell_general_solution(1, 1, &Poly::zero(), 16).unwrap();
        assert_eq!(d.f, TruncSeries::from_poly(&p(&[0, 1]), 16));
        assert_eq!(d.g, TruncSeries::one(16));
        assert!(d.phase.is_none());
    }

    #[test]
    fn entire_transcendental_with_phase() {
        let d = pell_general_solution(1, 0, &p(&[1]), 32).unwrap();
        let phase = d.phase.as_ref().unwrap();
        assert_eq!(phase.theta, int(1));
        assert!(d.f.is_real() && d.g.is_real() && phase.f_sin.is_real() && phase.g_sin.is_real());
        // the phase is taken out of the exponent, so the cosine part starts at 1
        assert_eq!(d.f.coeff(0), Some(&GaussRat::one()));
    }

    #[test]
    fn short_truncation_rejected() {
        assert_eq!(
            pell_general_solution(1, 0, &Poly::zero(), 7),
            Err(Error::TruncationTooShort { needed: 8, got: 7 })
        );
        assert!(pell_general_solution(2, 0, &Poly::zero(), 16).is_err());
    }

    #[test]
    fn witness_for_linear_unit() {
        let (f, g) = pell_holonomic_witness(1, 1, &Poly::zero()).unwrap();
        assert!(f
            .annihilates(&TruncSeries::from_poly(&p(&[0, 1]), 40))
            .unwrap());
        assert!(g.annihilates(&TruncSeries::one(40)).unwrap());
    }

    #[test]
    fn witness_matches_chebyshev_equations() {
        // x_n: (z²−1)F'' + zF' − n²F = 0; y_n: (z²−1)F'' + 3zF' − (n²−1)F = 0
        let (f, g) = pell_holonomic_witness(1, 3, &Poly::zero()).unwrap();
        let cheb_x = OdeAnnihilator::new(vec![p(&[-9]), p(&[0, 1]), p(&[-1, 0, 1])]).unwrap();
        let cheb_y = OdeAnnihilator::new(vec![p(&[-8]), p(&[0, 3]), p(&[-1, 0, 1])]).unwrap();
        assert_eq!(f, cheb_x);
        assert_eq!(g, cheb_y);
    }

    #[test]
    fn witness_with_exponential() {
        let (f, g) = pell_holonomic_witness(1, 0, &p(&[0, 1])).unwrap();
        assert!(f.order() <= 2 && g.order() <= 2);
    }

    proptest! {
        #[test]
        fn group_law(a in -30i64..=30, b in -30i64..=30) {
            let (wa, wb) = (pell_generate(a), pell_generate(b));
            let prod = QuadElem::from_polys(wa.x, wa.y).mul(&QuadElem::from_polys(wb.x, wb.y)).unwrap();
            let wab = pell_generate(a + b);
            prop_assert_eq!(prod, QuadElem::from_polys(wab.x, wab.y));
        }

        #[test]
        fn negation_symmetry(n in 0i64..=60) {
            let (pos, neg) = (pell_generate(n), pell_generate(-n));
            prop_assert_eq!(&pos.x, &neg.x);
            prop_assert_eq!(pos.y, -&neg.y);
        }
    }
}

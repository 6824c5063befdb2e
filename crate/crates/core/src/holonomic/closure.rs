use alloc::vec;
use alloc::vec::Vec;

use super::dmodule::DModule;
use super::ode::OdeAnnihilator;
use crate::arith::{Field, Poly, RatFunc};

/// Companion module of `ode` on the basis `f, f', …, f^(k−1)`.
pub fn companion_matrix<C: Field>(ode: &OdeAnnihilator<C>) -> Vec<Vec<RatFunc<C>>> {
    let k = ode.order();
    let lead = ode.leading();
    let mut m = vec![vec![RatFunc::zero(); k]; k];
    for (i, row) in m.iter_mut().enumerate().take(k - 1) {
        row[i + 1] = RatFunc::one();
    }
    for (j, p) in ode.coeffs()[..k].iter().enumerate() {
        if !p.is_zero() {
            m[k - 1][j] =
                -&RatFunc::new(p.clone(), lead.clone()).expect("leading coefficient is nonzero");
        }
    }
    m
}

fn unit<C: Field>(len: usize, at: usize) -> Vec<RatFunc<C>> {
    let mut v = vec![RatFunc::zero(); len];
    v[at] = RatFunc::one();
    v
}

/// Annihilator of `f + g` for every `f`, `g` annihilated by the inputs;
/// order at most `order(f) + order(g)`.
pub fn annihilator_add<C: Field>(
    f: &OdeAnnihilator<C>,
    g: &OdeAnnihilator<C>,
) -> OdeAnnihilator<C> {
    if f.is_zero_function() {
        return g.clone();
    }
    if g.is_zero_function() {
        return f.clone();
    }
    let (mf, mg) = (companion_matrix(f), companion_matrix(g));
    let (k, l) = (mf.len(), mg.len());
    let mut m = vec![vec![RatFunc::zero(); k + l]; k + l];
    for i in 0..k {
        m[i][..k].clone_from_slice(&mf[i]);
    }
    for i in 0..l {
        m[k + i][k..].clone_from_slice(&mg[i]);
    }
    let mut element = unit(k + l, 0);
    element[k] = RatFunc::one();
    DModule::new(m, element)
        .expect("square matrix")
        .annihilator()
}

/// Annihilator of `f·g`; order at most `order(f)·order(g)`.
///
/// Works on the tensor basis `f^(i)·g^(j)`, whose derivative is
/// `f^(i+1)·g^(j) + f^(i)·g^(j+1)`.
pub fn annihilator_mul<C: Field>(
    f: &OdeAnnihilator<C>,
    g: &OdeAnnihilator<C>,
) -> OdeAnnihilator<C> {
    if f.is_zero_function() || g.is_zero_function() {
        return OdeAnnihilator::zero_function();
    }
    let (mf, mg) = (companion_matrix(f), companion_matrix(g));
    let (k, l) = (mf.len(), mg.len());
    let idx = |i: usize, j: usize| i * l + j;
    let mut m = vec![vec![RatFunc::zero(); k * l]; k * l];
    for i in 0..k {
        for j in 0..l {
            let row = &mut m[idx(i, j)];
            for a in 0..k {
                if !mf[i][a].is_zero() {
                    row[idx(a, j)] = &row[idx(a, j)] + &mf[i][a];
                }
            }
            for b in 0..l {
                if !mg[j][b].is_zero() {
                    row[idx(i, b)] = &row[idx(i, b)] + &mg[j][b];
                }
            }
        }
    }
    DModule::new(m, unit(k * l, 0))
        .expect("square matrix")
        .annihilator()
}

/// Annihilator of a polynomial `p`: `p·F' − p'·F`, or `F' = 0` for
/// constants and the zero-function convention for `p = 0`.
pub fn polynomial_annihilator<C: Field>(p: &Poly<C>) -> OdeAnnihilator<C> {
    if p.is_zero() {
        return OdeAnnihilator::zero_function();
    }
    let m = DModule::new(vec![vec![RatFunc::zero()]], vec![p.clone().into()]).expect("rank one");
    m.annihilator()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{GaussRat, Rat};
    use crate::series::TruncSeries;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn ode(c: &[&[i64]]) -> OdeAnnihilator {
        OdeAnnihilator::new(c.iter().map(|x| p(x)).collect()).unwrap()
    }

    fn exp_ode() -> OdeAnnihilator {
        ode(&[&[-1], &[1]])
    }

    fn geometric_ode() -> OdeAnnihilator {
        ode(&[&[-1], &[1, -1]])
    }

    fn exp_series(t: usize) -> TruncSeries {
        TruncSeries::from_poly(&Poly::<Rat>::x(), t).exp().unwrap()
    }

    fn geometric_series(t: usize) -> TruncSeries {
        TruncSeries::from_fn(t, |_| GaussRat::one())
    }

    #[test]
    fn add_exp_and_geometric() {
        let a = annihilator_add(&exp_ode(), &geometric_ode());
        assert!(a.order() <= 2);
        assert!(a
            .annihilates(&exp_series(100).add(&geometric_series(100)))
            .unwrap());
    }

    #[test]
    fn add_zero_is_identity() {
        assert_eq!(
            annihilator_add(&exp_ode(), &OdeAnnihilator::zero_function()),
            exp_ode()
        );
    }

    #[test]
    fn add_same_equation() {
        assert_eq!(annihilator_add(&exp_ode(), &exp_ode()), exp_ode());
    }

    #[test]
    fn mul_exp_squared() {
        assert_eq!(annihilator_mul(&exp_ode(), &exp_ode()), ode(&[&[-2], &[1]]));
    }

    #[test]
    fn mul_by_constant_is_identity() {
        let airy = ode(&[&[0, -1], &[], &[1]]);
        assert_eq!(annihilator_mul(&airy, &ode(&[&[], &[1]])), airy);
    }

    #[test]
    fn mul_exp_and_geometric() {
        let a = annihilator_mul(&exp_ode(), &geometric_ode());
        assert_eq!(a.order(), 1);
        assert!(a
            .annihilates(&exp_series(100).mul(&geometric_series(100)))
            .unwrap());
    }

    #[test]
    fn mul_by_zero() {
        assert!(annihilator_mul(&exp_ode(), &OdeAnnihilator::zero_function()).is_zero_function());
    }

    #[test]
    fn polynomial_annihilators() {
        assert_eq!(polynomial_annihilator(&p(&[5])), ode(&[&[], &[1]]));
        let cubic = p(&[1, 1, 1, 1]);
        let a = polynomial_annihilator(&cubic);
        assert!(a.annihilates(&TruncSeries::from_poly(&cubic, 40)).unwrap());
    }

    fn arb_small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-3i64..4, 1..4).prop_map(|c| p(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn polynomial_closure(a in arb_small_poly(), b in arb_small_poly()) {
            let (fa, fb) = (polynomial_annihilator(&a), polynomial_annihilator(&b));
            let sum = annihilator_add(&fa, &fb);
            let prod = annihilator_mul(&fa, &fb);
            prop_assert!(sum.order() <= fa.order() + fb.order());
            prop_assert!(prod.order() <= fa.order() * fb.order());
            let t = 40;
            prop_assert!(sum.annihilates(&TruncSeries::from_poly(&(&a + &b), t)).unwrap());
            prop_assert!(prod.annihilates(&TruncSeries::from_poly(&(&a * &b), t)).unwrap());
        }
    }
}

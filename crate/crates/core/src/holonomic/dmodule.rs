use alloc::vec::Vec;

use super::linalg::first_dependency;
use super::ode::OdeAnnihilator;
use crate::arith::{Field, Poly, Rat, RatFunc};
use crate::error::{Error, Result};

/// A finite-dimensional `K(z)`-vector space with a derivation.
///
/// Row `i` of `matrix` holds the coordinates of `b_i'` in the basis
/// `b_0 … b_{r−1}`; an element with coordinates `c` has derivative
/// `c'_j + Σ_i c_i·M[i][j]`.
#[derive(Clone, PartialEq, Eq)]
pub struct DModule<C = Rat> {
    matrix: Vec<Vec<RatFunc<C>>>,
    element: Vec<RatFunc<C>>,
}

impl<C: Field> DModule<C> {
    pub fn new(matrix: Vec<Vec<RatFunc<C>>>, element: Vec<RatFunc<C>>) -> Result<Self> {
        let r = matrix.len();
        if r == 0 {
            return Err(Error::InvalidInput("module rank must be at least 1"));
        }
        if matrix.iter().any(|row| row.len() != r) || element.len() != r {
            return Err(Error::InvalidInput(
                "derivation matrix and element must match the rank",
            ));
        }
        Ok(DModule { matrix, element })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<RatFunc<C>>] {
        &self.matrix
    }

    pub fn element(&self) -> &[RatFunc<C>] {
        &self.element
    }

    /// The same module with another element.
    pub fn with_element(&self, element: Vec<RatFunc<C>>) -> Result<Self> {
        DModule::new(self.matrix.clone(), element)
    }

    /// Coordinates of the derivative of `c`.
    pub fn derive(&self, c: &[RatFunc<C>]) -> Vec<RatFunc<C>> {
        let mut out: Vec<RatFunc<C>> = c.iter().map(RatFunc::derivative).collect();
        for (ci, row) in c.iter().zip(&self.matrix) {
            if ci.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(row) {
                if !m.is_zero() {
                    *o = &*o + &(ci * m);
                }
            }
        }
        out
    }

    /// Annihilator of the element: the first `K(z)`-dependence among the
    /// element and its successive derivatives, so its order is at most the
    /// rank. A zero element gets the zero-function annihilator.
    pub fn annihilator(&self) -> OdeAnnihilator<C> {
        let mut cols: Vec<Vec<Poly<C>>> = Vec::new();
        let mut dens: Vec<Poly<C>> = Vec::new();
        let mut current = self.element.clone();
        for _ in 0..=self.rank() {
            let (col, den) = clear_denominators(&current);
            cols.push(col);
            dens.push(den);
            if let Some(kernel) = first_dependency(&cols) {
                let coeffs = kernel.iter().zip(&dens).map(|(k, d)| k * d).collect();
                return OdeAnnihilator::new(coeffs).expect("last kernel entry is nonzero");
            }
            current = self.derive(&current);
        }
        unreachable!("rank + 1 vectors in a space of dimension rank are dependent")
    }
}

impl<C: Field> core::fmt::Debug for DModule<C> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("DModule")
            .field("matrix", &self.matrix)
            .field("element", &self.element)
            .finish()
    }
}

/// Polynomial vector `d·v` and the common denominator `d`.
fn clear_denominators<C: Field>(v: &[RatFunc<C>]) -> (Vec<Poly<C>>, Poly<C>) {
    let d = v.iter().fold(Poly::one(), |acc, f| {
        let g = acc.gcd(f.den());
        &acc * &f.den().exact_div(&g).expect("gcd divides")
    });
    let col = v
        .iter()
        .map(|f| f.num() * &d.exact_div(f.den()).expect("lcm is a multiple"))
        .collect();
    (col, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{discriminant, QuadElem};
    use crate::series::{series_of_quad, Branch, TruncSeries};
    use alloc::vec;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn ode(c: &[&[i64]]) -> OdeAnnihilator {
        OdeAnnihilator::new(c.iter().map(|x| p(x)).collect()).unwrap()
    }

    /// Basis `(1, w)` over `ℚ(z)` with `w' = z/(z²−1)·w`.
    fn quadratic_module(a: Poly, b: Poly) -> DModule {
        let logw = RatFunc::new(p(&[0, 1]), discriminant()).unwrap();
        let m = vec![
            vec![RatFunc::zero(), RatFunc::zero()],
            vec![RatFunc::zero(), logw],
        ];
        DModule::new(m, vec![a.into(), b.into()]).unwrap()
    }

    #[test]
    fn w_element() {
        let a = quadratic_module(Poly::zero(), Poly::one()).annihilator();
        assert_eq!(a, ode(&[&[0, -1], &[-1, 0, 1]]));
    }

    #[test]
    fn constant_element() {
        let a = quadratic_module(Poly::one(), Poly::zero()).annihilator();
        assert_eq!(a, ode(&[&[], &[1]]));
    }

    #[test]
    fn zero_element() {
        assert!(quadratic_module(Poly::zero(), Poly::zero())
            .annihilator()
            .is_zero_function());
    }

    #[test]
    fn z_plus_w() {
        let a = quadratic_module(p(&[0, 1]), Poly::one()).annihilator();
        assert!(a.order() <= 2);
        let s = series_of_quad(&QuadElem::fundamental_unit(), Branch::Plus, 80).unwrap();
        assert!(a.annihilates(&s).unwrap());
        let minus = series_of_quad(&QuadElem::fundamental_unit(), Branch::Minus, 80).unwrap();
        assert!(a.annihilates(&minus).unwrap());
    }

    #[test]
    fn polynomial_in_rank_one() {
        // p·F' − p'·F for p = 1 + z + z²
        let m = DModule::new(vec![vec![RatFunc::zero()]], vec![p(&[1, 1, 1]).into()]).unwrap();
        let a = m.annihilator();
        assert_eq!(a, ode(&[&[-1, -2], &[1, 1, 1]]));
        assert!(a
            .annihilates(&TruncSeries::from_poly(&p(&[1, 1, 1]), 30))
            .unwrap());
    }

    #[test]
    fn rejects_shape_mismatch() {
        assert!(DModule::<Rat>::new(vec![], vec![]).is_err());
        assert!(DModule::new(vec![vec![RatFunc::<Rat>::zero()]], vec![]).is_err());
    }
}

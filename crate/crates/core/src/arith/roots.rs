use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{primitive_factor, Poly, Rat};
use crate::error::{Error, Result};

/// All integer roots of `p`, ascending.
///
/// Works on the primitive integer form of `p`: after removing the power of
/// the variable dividing `p`, every integer root divides the constant term
/// and is bounded by the Cauchy bound, so only those divisors are tested.
pub fn integer_roots(p: &Poly<Rat>) -> Result<Vec<BigInt>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let factor = primitive_factor(p.terms().iter().map(|(_, c)| c));
    let v = p.valuation().expect("nonzero");
    let coeffs: Vec<(usize, BigInt)> = p
        .terms()
        .iter()
        .map(|(e, c)| {
            let scaled = c * &factor;
            debug_assert!(scaled.is_integer());
            (e - v, scaled.to_integer())
        })
        .collect();

    let mut roots = Vec::new();
    if v > 0 {
        roots.push(BigInt::zero());
    }
    if coeffs.len() > 1 {
        let constant = coeffs[0].1.abs();
        let lead = coeffs.last().expect("nonempty").1.abs();
        let max_ratio = coeffs[..coeffs.len() - 1]
            .iter()
            .map(|(_, c)| c.abs().div_ceil(&lead))
            .max()
            .unwrap_or_else(BigInt::zero);
        let bound = max_ratio + 1u32;

        let eval = |x: &BigInt| {
            // Horner over the sparse exponent list.
            let mut acc = BigInt::zero();
            let mut prev = coeffs.last().expect("nonempty").0;
            for (e, c) in coeffs.iter().rev() {
                acc = acc * x.pow((prev - e) as u32) + c;
                prev = *e;
            }
            acc * x.pow(prev as u32)
        };
        let mut consider = |d: BigInt| {
            if d <= bound {
                for cand in [d.clone(), -d] {
                    if eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        };
        let limit = constant.sqrt().min(bound.clone());
        let mut d = BigInt::one();
        while d <= limit {
            if constant.is_multiple_of(&d) {
                let co = &constant / &d;
                consider(d.clone());
                if co != d {
                    consider(co);
                }
            }
            d += 1u32;
        }
    }
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Field};
    use alloc::vec;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn linear() {
        assert_eq!(
            integer_roots(&Poly::from_ints(&[-3, 1])).unwrap(),
            ints(&[3])
        );
    }

    #[test]
    fn no_real_roots() {
        assert_eq!(
            integer_roots(&Poly::from_ints(&[1, 0, 1])).unwrap(),
            ints(&[])
        );
    }

    #[test]
    fn rational_root_excluded() {
        // (n-3)(2n-1) = 2n^2 - 7n + 3
        assert_eq!(
            integer_roots(&Poly::from_ints(&[3, -7, 2])).unwrap(),
            ints(&[3])
        );
    }

    #[test]
    fn zero_and_repeated_roots() {
        // n^2 (n+2)^2 (n-5)
        let p = &(&Poly::<Rat>::from_ints(&[0, 0, 1]) * &Poly::from_ints(&[2, 1]).pow(2))
            * &Poly::from_ints(&[-5, 1]);
        assert_eq!(integer_roots(&p).unwrap(), ints(&[-2, 0, 5]));
    }

    #[test]
    fn rational_coefficients() {
        let p = Poly::from_dense(vec![rat(-1, 2), rat(1, 4)]);
        assert_eq!(integer_roots(&p).unwrap(), ints(&[2]));
        assert_eq!(
            integer_roots(&Poly::constant(<Rat as Field>::one())).unwrap(),
            ints(&[])
        );
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(integer_roots(&Poly::zero()), Err(Error::ZeroPolynomial));
    }
}

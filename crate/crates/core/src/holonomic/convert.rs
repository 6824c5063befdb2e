use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::ode::OdeAnnihilator;
use super::recurrence::{BoundaryRelation, Recurrence};
use crate::arith::{Field, Poly};

/// Coefficient of `zⁿ` in `Σ P_i F^(i)`, rewritten as a recurrence.
///
/// The term `c·z^j·F^(i)` contributes `c·(m+s)(m+s−1)…(m+s−i+1)·a_{m+s}`
/// to the coefficient of `z^m`, with `s = i − j`. With `b` the smallest
/// offset (capped at `min(0, s_max − 1)` so the order is at least one) the
/// relation at `m = n − b` becomes the recurrence at `n`. The relations for
/// `0 ≤ m < −b` only hold under `a_{<0} = 0` and are kept as boundary
/// relations.
pub fn ode_to_recurrence<C: Field>(ode: &OdeAnnihilator<C>) -> Recurrence<C> {
    if ode.is_zero_function() {
        // a_n = 0 for all n, i.e. a_{n+1} = 0 together with a_0 = 0
        let boundary = vec![BoundaryRelation {
            at: 0,
            terms: vec![(0, C::one())],
        }];
        return Recurrence::with_boundary(vec![Poly::zero(), Poly::one()], boundary)
            .expect("order one");
    }
    let mut by_shift: Vec<(i64, Poly<C>)> = Vec::new();
    for (i, p) in ode.coeffs().iter().enumerate() {
        for (j, c) in p.terms() {
            let s = i as i64 - *j as i64;
            let term = falling_shifted(i, s).scale(c);
            match by_shift.iter_mut().find(|(t, _)| *t == s) {
                Some((_, acc)) => *acc = &*acc + &term,
                None => by_shift.push((s, term)),
            }
        }
    }
    by_shift.retain(|(_, q)| !q.is_zero());
    let s_min = by_shift.iter().map(|(s, _)| *s).min().unwrap_or(0);
    let s_max = by_shift.iter().map(|(s, _)| *s).max().unwrap_or(0);
    let b = s_min.min(s_max - 1).min(0);
    let k = (s_max - b) as usize;

    let mut coeffs = vec![Poly::zero(); k + 1];
    for (s, q) in &by_shift {
        coeffs[(s - b) as usize] = q.taylor_shift(&C::from_int(-b));
    }

    let mut boundary = Vec::new();
    for m in 0..-b {
        let terms: Vec<(usize, C)> = by_shift
            .iter()
            .filter(|(s, _)| m + s >= 0)
            .map(|(s, q)| ((m + s) as usize, q.eval(&C::from_int(m))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if !terms.is_empty() {
            boundary.push(BoundaryRelation { at: m, terms });
        }
    }
    Recurrence::with_boundary(coeffs, boundary).expect("leading coefficient is nonzero")
}

/// `(m+s)(m+s−1)…(m+s−i+1)` as a polynomial in `m`.
fn falling_shifted<C: Field>(i: usize, s: i64) -> Poly<C> {
    (0..i).fold(Poly::one(), |acc, t| {
        &acc * &Poly::linear_root(&C::from_int(t as i64 - s))
    })
}

/// ODE satisfied by every series whose coefficients obey `rec` for all
/// `n ≥ 0` with `a_{<0} = 0`.
///
/// Summing `p_j(n)·a_{n+j}·z^{n+k}` over `n ≥ 0` gives
/// `Σ_j z^{k−j}·p_j(θ−j) F` up to a polynomial whose exponents `e < k`
/// come from the missing initial terms; `Π (θ − e)` removes them.
pub fn recurrence_to_ode<C: Field>(rec: &Recurrence<C>) -> OdeAnnihilator<C> {
    let k = rec.order();
    let shifted: Vec<Poly<C>> = rec
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, p)| p.taylor_shift(&C::from_int(-(j as i64))))
        .collect();

    let mut op: Vec<Poly<C>> = vec![Poly::zero()];
    for (j, q) in shifted.iter().enumerate() {
        let term = theta_poly(q);
        op = op_add(&op, &op_shift_up(&term, k - j));
    }

    let exceptional: BTreeSet<usize> = (0..k)
        .filter(|&e| {
            (k - e..=k).any(|j| {
                let m = e + j - k;
                m < j && !shifted[j].eval(&C::from_int(m as i64)).is_zero()
            })
        })
        .collect();
    for e in exceptional {
        let theta = op_theta(&op);
        let scaled: Vec<Poly<C>> = op.iter().map(|p| p.scale(&C::from_int(e as i64))).collect();
        op = op_add(&theta, &op_neg(&scaled));
    }
    OdeAnnihilator::new(op).unwrap_or_else(|_| OdeAnnihilator::zero_function())
}

/// Operators are stored as `[c_0, c_1, …]` meaning `Σ c_i(z)·D^i`.
fn op_add<C: Field>(a: &[Poly<C>], b: &[Poly<C>]) -> Vec<Poly<C>> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn op_neg<C: Field>(a: &[Poly<C>]) -> Vec<Poly<C>> {
    a.iter().map(|p| -p).collect()
}

fn op_shift_up<C: Field>(a: &[Poly<C>], k: usize) -> Vec<Poly<C>> {
    a.iter().map(|p| p.shift_up(k)).collect()
}

/// `θ ∘ L` for `θ = z·D`: `θ(c·D^i) = z·c'·D^i + z·c·D^{i+1}`.
fn op_theta<C: Field>(a: &[Poly<C>]) -> Vec<Poly<C>> {
    let mut out = vec![Poly::zero(); a.len() + 1];
    for (i, c) in a.iter().enumerate() {
        out[i] = &out[i] + &c.derivative().shift_up(1);
        out[i + 1] = &out[i + 1] + &c.shift_up(1);
    }
    out
}

/// `q(θ)` as an operator in `D`.
fn theta_poly<C: Field>(q: &Poly<C>) -> Vec<Poly<C>> {
    let mut acc: Vec<Poly<C>> = vec![Poly::zero()];
    let mut power: Vec<Poly<C>> = vec![Poly::one()];
    let mut r = 0;
    for (e, c) in q.terms() {
        while r < *e {
            power = op_theta(&power);
            r += 1;
        }
        let term: Vec<Poly<C>> = power.iter().map(|p| p.scale(c)).collect();
        acc = op_add(&acc, &term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, GaussRat, Rat};
    use crate::holonomic::InitialData;
    use crate::series::{series_w, TruncSeries};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn ode(c: &[&[i64]]) -> OdeAnnihilator {
        OdeAnnihilator::new(c.iter().map(|x| p(x)).collect()).unwrap()
    }

    fn rec(c: &[&[i64]]) -> Recurrence {
        Recurrence::new(c.iter().map(|x| p(x)).collect()).unwrap()
    }

    #[test]
    fn exp_to_recurrence() {
        let r = ode_to_recurrence(&ode(&[&[-1], &[1]]));
        assert_eq!(r, rec(&[&[-1], &[1, 1]]));
        assert!(r.boundary().is_empty());
    }

    #[test]
    fn airy_to_recurrence() {
        let r = ode_to_recurrence(&ode(&[&[0, -1], &[], &[1]]));
        // (n+3)(n+2)a_{n+3} − a_n = 0
        assert_eq!(r.coeffs(), rec(&[&[-1], &[], &[], &[6, 5, 1]]).coeffs());
        assert_eq!(
            r.boundary(),
            &[BoundaryRelation {
                at: 0,
                terms: vec![(2, int(1))]
            }]
        );
    }

    #[test]
    fn constant_to_recurrence() {
        assert_eq!(ode_to_recurrence(&ode(&[&[], &[1]])), rec(&[&[], &[1, 1]]));
    }

    #[test]
    fn euler_type_keeps_order_one() {
        // zF' − 3F = 0 has the solution z³
        let r = ode_to_recurrence(&ode(&[&[-3], &[0, 1]]));
        assert_eq!(r.order(), 1);
        assert_eq!(r.coeffs(), rec(&[&[], &[-2, 1]]).coeffs());
        assert_eq!(
            r.boundary(),
            &[BoundaryRelation {
                at: 0,
                terms: vec![(0, int(1))]
            }]
        );
    }

    #[test]
    fn geometric_from_recurrence() {
        let o = recurrence_to_ode(&rec(&[&[-1], &[1]]));
        assert_eq!(o, ode(&[&[-1], &[1, -1]]));
        let geometric = TruncSeries::from_fn(50, |_| GaussRat::one());
        assert!(o.annihilates(&geometric).unwrap());
    }

    #[test]
    fn exp_from_recurrence() {
        assert_eq!(
            recurrence_to_ode(&rec(&[&[-1], &[1, 1]])),
            ode(&[&[-1], &[1]])
        );
    }

    #[test]
    fn vanishing_shift_gives_constants() {
        assert_eq!(recurrence_to_ode(&rec(&[&[], &[1]])), ode(&[&[], &[1]]));
    }

    #[test]
    fn airy_round_trip_on_unrolled_series() {
        let airy = ode(&[&[0, -1], &[], &[1]]);
        let r = ode_to_recurrence(&airy);
        let back = recurrence_to_ode(&r);
        for init in [[1, 0, 0], [0, 1, 0], [2, -3, 0]] {
            let values = r
                .unroll(&InitialData::new(init.map(int).to_vec()), 119)
                .unwrap();
            let s = TruncSeries::new(values.iter().map(|v| GaussRat::from(v.clone())).collect());
            assert!(airy.annihilates(&s).unwrap());
            assert!(back.annihilates(&s).unwrap());
        }
    }

    #[test]
    fn w_branch_round_trip() {
        let w = ode(&[&[0, -1], &[-1, 0, 1]]);
        let r = ode_to_recurrence(&w).map_coeffs(|c: &Rat| GaussRat::from(c.clone()));
        let s = series_w(120);
        let init = r.initial_from_sequence(s.coeffs()).unwrap();
        let values = r.unroll(&init, 119).unwrap();
        assert_eq!(values, s.coeffs());
        let back = recurrence_to_ode(&r);
        assert!(back.annihilates(&s).unwrap());
    }
}

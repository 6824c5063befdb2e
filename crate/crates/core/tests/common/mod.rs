//! Corpus of holonomic functions with series computed independently of the
//! conversion and closure code.

#![allow(dead_code)]

use holonomica::arith::{int, rat, Field, GaussRat, Poly, Rat};
use holonomica::holonomic::OdeAnnihilator;
use holonomica::series::TruncSeries;

pub const T: usize = 120;

pub struct Entry {
    pub name: &'static str,
    pub ode: OdeAnnihilator,
    pub series: TruncSeries,
}

pub fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

fn ode(coeffs: Vec<Poly>) -> OdeAnnihilator {
    OdeAnnihilator::new(coeffs).expect("nonzero leading coefficient")
}

fn real(coeffs: Vec<Rat>) -> TruncSeries {
    TruncSeries::new(coeffs.into_iter().map(GaussRat::from).collect())
}

pub fn exp_series(order: usize) -> TruncSeries {
    let mut c = Vec::with_capacity(order);
    let mut fact = int(1);
    for n in 0..order {
        if n > 0 {
            fact *= int(n as i64);
        }
        c.push(fact.recip());
    }
    real(c)
}

/// `F'' = z·F`, `F(0) = 1`, `F'(0) = 1`, by Picard iteration
/// `F = 1 + z + ∫∫ z·F`.
pub fn airy_series(order: usize) -> TruncSeries {
    let mut f = vec![int(0); order];
    let base = |f: &mut Vec<Rat>| {
        f[0] = int(1);
        if f.len() > 1 {
            f[1] = int(1);
        }
    };
    base(&mut f);
    for _ in 0..order / 3 + 1 {
        let mut next = vec![int(0); order];
        base(&mut next);
        for (j, c) in f.iter().enumerate() {
            let e = j + 3;
            if e < order {
                next[e] = c / int(((j + 2) * (j + 3)) as i64);
            }
        }
        f = next;
    }
    real(f)
}

/// `i·√(1−z²)` from the binomial series.
pub fn w_series(order: usize) -> TruncSeries {
    let half = rat(1, 2);
    let mut binom = int(1);
    let mut c = vec![GaussRat::zero(); order];
    for k in 0..order.div_ceil(2) {
        if k > 0 {
            binom = binom * (&half - int(k as i64 - 1)) / int(k as i64);
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        c[2 * k] = GaussRat::new(int(0), &binom * sign);
    }
    TruncSeries::new(c)
}

/// `x_n` and `y_n` for `n ≥ 1` from `T_{n+1} = 2zT_n − T_{n−1}` and
/// `y_n = U_{n−1}`.
pub fn chebyshev(n: usize) -> (Poly, Poly) {
    let two_z = p(&[0, 2]);
    let (mut t0, mut t1) = (p(&[1]), p(&[0, 1]));
    let (mut u0, mut u1) = (Poly::zero(), p(&[1]));
    for _ in 1..n {
        let t2 = &(&two_z * &t1) - &t0;
        let u2 = &(&two_z * &u1) - &u0;
        (t0, t1, u0, u1) = (t1, t2, u1, u2);
    }
    (t1, u1)
}

pub fn corpus() -> Vec<Entry> {
    let (x7, y7) = chebyshev(7);
    let one_minus_z2 = p(&[1, 0, -1]);
    vec![
        Entry {
            name: "exp",
            ode: ode(vec![p(&[-1]), p(&[1])]),
            series: exp_series(T),
        },
        Entry {
            name: "geometric",
            ode: ode(vec![p(&[-1]), p(&[1, -1])]),
            series: real(vec![int(1); T]),
        },
        Entry {
            name: "airy",
            ode: ode(vec![p(&[0, -1]), Poly::zero(), p(&[1])]),
            series: airy_series(T),
        },
        Entry {
            name: "constant",
            ode: ode(vec![Poly::zero(), p(&[1])]),
            series: TruncSeries::from_poly(&p(&[5]), T),
        },
        Entry {
            name: "x_7",
            ode: ode(vec![p(&[49]), p(&[0, -1]), one_minus_z2.clone()]),
            series: TruncSeries::from_poly(&x7, T),
        },
        Entry {
            name: "y_7",
            ode: ode(vec![p(&[48]), p(&[0, -3]), one_minus_z2]),
            series: TruncSeries::from_poly(&y7, T),
        },
        Entry {
            name: "w_branch",
            ode: ode(vec![p(&[0, -1]), p(&[-1, 0, 1])]),
            series: w_series(T),
        },
    ]
}

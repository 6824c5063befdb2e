//! Coefficient supports and their counting function
//! `N_f(x) = #{n ≤ x : a_n ≠ 0}`, plus polynomiality certificates for
//! P-recursive sequences.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{Field, Poly, Rat};
use crate::error::{Error, Result};
use crate::holonomic::{InitialData, Recurrence};

/// Default unrolling horizon for certificates.
pub const DEFAULT_HORIZON: usize = 500;

/// Sorted support of a coefficient sequence. `horizon = None` means the
/// support is complete (a polynomial); otherwise only exponents up to the
/// horizon are known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportProfile {
    exponents: Vec<u64>,
    horizon: Option<u64>,
}

impl SupportProfile {
    pub fn new(exponents: Vec<u64>, horizon: Option<u64>) -> Result<Self> {
        if exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "support exponents must be strictly increasing",
            ));
        }
        if let (Some(h), Some(&last)) = (horizon, exponents.last()) {
            if last > h {
                return Err(Error::InvalidInput("support exponent beyond the horizon"));
            }
        }
        Ok(SupportProfile { exponents, horizon })
    }

    pub fn of_poly<C: Field>(p: &Poly<C>) -> Self {
        SupportProfile {
            exponents: p.support().map(|e| e as u64).collect(),
            horizon: None,
        }
    }

    /// Indices of the nonzero entries of `seq`, known up to `seq.len() − 1`.
    pub fn of_sequence<C: Field>(seq: &[C]) -> Self {
        let exponents = seq
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i as u64)
            .collect();
        SupportProfile {
            exponents,
            horizon: Some(seq.len().saturating_sub(1) as u64),
        }
    }

    /// `{nⁿ : n ≥ 1} ∩ [0, horizon]`, the support of `Σ z^(nⁿ)/(nⁿ)!`.
    pub fn self_powers(horizon: u64) -> Self {
        let mut exponents = Vec::new();
        for n in 1u32.. {
            match u64::from(n).checked_pow(n) {
                Some(v) if v <= horizon => exponents.push(v),
                _ => break,
            }
        }
        SupportProfile {
            exponents,
            horizon: Some(horizon),
        }
    }

    /// `{0, 1, …, horizon}`.
    pub fn full(horizon: u64) -> Self {
        SupportProfile {
            exponents: (0..=horizon).collect(),
            horizon: Some(horizon),
        }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn horizon(&self) -> Option<u64> {
        self.horizon
    }

    /// `N(x)`.
    pub fn gap_count(&self, x: u64) -> Result<u64> {
        if let Some(h) = self.horizon {
            if x > h {
                return Err(Error::HorizonExceeded { x, horizon: h });
            }
        }
        Ok(self.exponents.partition_point(|&e| e <= x) as u64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Mul,
}

/// One sampled instance of the counting inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityCheck {
    pub x: u64,
    pub combined: u64,
    pub bound: u64,
}

/// `N_{f∘g}(x) ≤ N_f(x) ⊕ N_g(x)` checked at every exponent of the combined
/// support. The left side only grows there and the right side never
/// decreases, so these points cover every `x` up to the horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub op: CombineOp,
    pub checks: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.combined <= c.bound)
    }
}

fn bound(op: CombineOp, a: u64, b: u64) -> u64 {
    match op {
        CombineOp::Add => a + b,
        CombineOp::Mul => a * b,
    }
}

/// Upper bound for the support of `f + g` (union) or `f·g` (sumset),
/// restricted to the smaller horizon.
pub fn support_combine(
    p: &SupportProfile,
    q: &SupportProfile,
    op: CombineOp,
) -> (SupportProfile, InequalityReport) {
    let horizon = match (p.horizon, q.horizon) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let within = |e: &u64| horizon.is_none_or(|h| *e <= h);
    let set: BTreeSet<u64> = match op {
        CombineOp::Add => p
            .exponents
            .iter()
            .chain(&q.exponents)
            .copied()
            .filter(within)
            .collect(),
        CombineOp::Mul => p
            .exponents
            .iter()
            .flat_map(|a| q.exponents.iter().map(move |b| a + b))
            .filter(within)
            .collect(),
    };
    let combined = SupportProfile {
        exponents: set.into_iter().collect(),
        horizon,
    };
    let report = inequality_report(&combined, p, q, op);
    (combined, report)
}

/// Checks the counting inequality for an actual combination `r` of `p`
/// and `q` at every exponent of `r`.
pub fn inequality_report(
    r: &SupportProfile,
    p: &SupportProfile,
    q: &SupportProfile,
    op: CombineOp,
) -> InequalityReport {
    let count = |s: &SupportProfile, x: u64| s.exponents.partition_point(|&e| e <= x) as u64;
    let checks = r
        .exponents
        .iter()
        .map(|&x| InequalityCheck {
            x,
            combined: count(r, x),
            bound: bound(op, count(p, x), count(q, x)),
        })
        .collect();
    InequalityReport { op, checks }
}

/// One row of [`lacunarity_evidence`].
#[derive(Clone, Debug, PartialEq)]
pub struct EvidenceRow {
    pub x: u64,
    pub count: u64,
    /// `N(x) / x^ε` in floating point.
    pub ratio: f64,
    /// Whether `N(x) ≤ x^ε`, decided exactly.
    pub small: bool,
}

/// Finite-horizon evidence for `N(x) = O(x^ε)`; never a proof of
/// lacunarity.
#[derive(Clone, Debug, PartialEq)]
pub struct EvidenceReport {
    pub eps: Rat,
    pub rows: Vec<EvidenceRow>,
    pub monotone: bool,
}

impl EvidenceReport {
    pub const LABEL: &'static str = "finite-horizon evidence, not a proof";
}

const MAX_EPS_TERM: u32 = 1024;

/// `N(x)` and `N(x)/x^ε` on a grid.
pub fn lacunarity_evidence(p: &SupportProfile, eps: &Rat, grid: &[u64]) -> Result<EvidenceReport> {
    if !eps.is_positive() {
        return Err(Error::InvalidInput("eps must be positive"));
    }
    let num = eps.numer().to_biguint().expect("positive");
    let den = eps.denom().to_biguint().expect("positive");
    let (num_u32, den_u32) = match (num.to_u32(), den.to_u32()) {
        (Some(a), Some(b)) if a <= MAX_EPS_TERM && b <= MAX_EPS_TERM => (a, b),
        _ => {
            return Err(Error::InvalidInput(
                "eps numerator and denominator must be at most 1024",
            ))
        }
    };
    let eps_f = eps.to_f64().expect("finite");
    let mut rows = Vec::with_capacity(grid.len());
    for &x in grid {
        let count = p.gap_count(x)?;
        // N ≤ x^(a/b)  ⟺  N^b ≤ x^a
        let small = BigUint::from(count).pow(den_u32) <= BigUint::from(x).pow(num_u32);
        let ratio = count as f64 / libm::pow(x as f64, eps_f);
        rows.push(EvidenceRow {
            x,
            count,
            ratio,
            small,
        });
    }
    let mut sorted: Vec<&EvidenceRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.x);
    let monotone = sorted.windows(2).all(|w| w[0].count <= w[1].count);
    Ok(EvidenceReport {
        eps: eps.clone(),
        rows,
        monotone,
    })
}

/// Outcome of [`polynomiality_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Proven polynomial; `degree` is `None` for the zero sequence.
    Polynomial { degree: Option<usize> },
    /// No zero window found up to the horizon; not a disproof.
    NoCertificate { horizon: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialityCertificate {
    pub verdict: Verdict,
    /// Start of the zero window when polynomial.
    pub window_start: Option<usize>,
    /// First index from which `p_k(n) ≠ 0` is guaranteed with margin.
    pub bound: usize,
    pub horizon: usize,
}

impl fmt::Display for PolynomialityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Polynomial { degree: Some(d) } => write!(f, "POLYNOMIAL(degree {d})"),
            Verdict::Polynomial { degree: None } => f.write_str("POLYNOMIAL(zero)"),
            Verdict::NoCertificate { horizon } => write!(f, "NO_CERTIFICATE({horizon})"),
        }
    }
}

/// `B = 1 + max(k, 1 + r)` with `r` the largest nonnegative integer root
/// of `p_k`, or `1 + k` when there is none.
pub fn certificate_bound<C: Field>(rec: &Recurrence<C>) -> usize {
    let k = rec.order();
    match rec.singular_indices().last() {
        Some(&r) => 1 + k.max(1 + r),
        None => 1 + k,
    }
}

/// Unrolls to `horizon` and looks for `k` consecutive zero terms starting
/// at some `m ≥ B`. Past `B` every term is forced by the previous `k`, so
/// such a window makes all later terms zero.
pub fn polynomiality_certificate<C: Field>(
    rec: &Recurrence<C>,
    init: &InitialData<C>,
    horizon: usize,
) -> Result<PolynomialityCertificate> {
    let k = rec.order();
    let b = certificate_bound(rec);
    let a = rec.unroll(init, horizon)?;
    let mut run = 0usize;
    for (j, v) in a.iter().enumerate() {
        run = if v.is_zero() { run + 1 } else { 0 };
        if run >= k && j + 1 >= b + k {
            let m = j + 1 - k;
            let degree = a[..m].iter().rposition(|c| !c.is_zero());
            return Ok(PolynomialityCertificate {
                verdict: Verdict::Polynomial { degree },
                window_start: Some(m),
                bound: b,
                horizon,
            });
        }
    }
    Ok(PolynomialityCertificate {
        verdict: Verdict::NoCertificate { horizon },
        window_start: None,
        bound: b,
        horizon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::holonomic::{ode_to_recurrence, OdeAnnihilator};
    use crate::pell::pell_generate;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn counts() {
        let s = SupportProfile::of_poly(&p(&[1, 0, 0, 0, 0, 1]));
        assert_eq!(s.gap_count(10), Ok(2));
        let sp = SupportProfile::self_powers(10_000);
        assert_eq!(sp.exponents(), &[1, 4, 27, 256, 3125]);
        assert_eq!(sp.gap_count(100), Ok(3));
        assert_eq!(sp.gap_count(0), Ok(0));
        assert_eq!(SupportProfile::of_poly(&p(&[1])).gap_count(0), Ok(1));
        assert_eq!(
            sp.gap_count(10_001),
            Err(Error::HorizonExceeded {
                x: 10_001,
                horizon: 10_000
            })
        );
    }

    #[test]
    fn profile_validation() {
        assert!(SupportProfile::new(vec![1, 1], None).is_err());
        assert!(SupportProfile::new(vec![1, 5], Some(4)).is_err());
        assert!(SupportProfile::new(vec![1, 5], Some(5)).is_ok());
    }

    #[test]
    fn combine_examples() {
        let (f, g) = (p(&[1, 1]), p(&[1, -1]));
        let exact = SupportProfile::of_poly(&(&f + &g));
        let (sf, sg) = (SupportProfile::of_poly(&f), SupportProfile::of_poly(&g));
        assert_eq!(exact.gap_count(10), Ok(1));
        assert!(inequality_report(&exact, &sf, &sg, CombineOp::Add).holds());

        let sq = SupportProfile::of_poly(&(&f * &f));
        assert_eq!(sq.gap_count(10), Ok(3));
        let (bound_profile, report) = support_combine(&sf, &sf, CombineOp::Mul);
        assert_eq!(bound_profile.exponents(), &[0, 1, 2]);
        assert!(report.holds());

        let sp = SupportProfile::self_powers(100);
        let (union, report) = support_combine(&sp, &sp, CombineOp::Add);
        assert!(union.gap_count(100).unwrap() <= 6);
        assert!(report.holds());
    }

    #[test]
    fn evidence_examples() {
        let sp = SupportProfile::self_powers(1000);
        let r = lacunarity_evidence(&sp, &rat(1, 2), &[10, 100, 1000]).unwrap();
        let counts: Vec<u64> = r.rows.iter().map(|row| row.count).collect();
        assert_eq!(counts, vec![2, 3, 4]);
        assert!(r.monotone && r.rows.iter().all(|row| row.small));

        let full = lacunarity_evidence(&SupportProfile::full(100), &rat(1, 2), &[100]).unwrap();
        assert_eq!(full.rows[0].count, 101);
        assert!((full.rows[0].ratio - 10.1).abs() < 1e-12);
        assert!(!full.rows[0].small);

        let empty = SupportProfile::new(vec![], Some(50)).unwrap();
        let r = lacunarity_evidence(&empty, &rat(1, 3), &[0, 10, 50]).unwrap();
        assert!(r.rows.iter().all(|row| row.count == 0));
        assert!(lacunarity_evidence(&empty, &int(0), &[1]).is_err());
    }

    #[test]
    fn certificate_singular_fixture() {
        let rec = Recurrence::new(vec![p(&[3, -1]), p(&[-3, 1])]).unwrap();
        let init = InitialData::new(vec![int(1)]).with_supplied(4, int(0));
        let c = polynomiality_certificate(&rec, &init, 50).unwrap();
        assert_eq!(c.verdict, Verdict::Polynomial { degree: Some(3) });
        assert_eq!(c.bound, 5);
        assert_eq!(c.window_start, Some(5));
    }

    #[test]
    fn certificate_exp() {
        let rec = Recurrence::new(vec![p(&[-1]), p(&[1, 1])]).unwrap();
        let c = polynomiality_certificate(&rec, &InitialData::new(vec![int(1)]), 100).unwrap();
        assert_eq!(c.verdict, Verdict::NoCertificate { horizon: 100 });
        assert_eq!(c.to_string(), "NO_CERTIFICATE(100)");
    }

    #[test]
    fn certificate_chebyshev() {
        let x7 = pell_generate(7).x;
        let ode = OdeAnnihilator::new(vec![p(&[-49]), p(&[0, 1]), p(&[-1, 0, 1])]).unwrap();
        let rec = ode_to_recurrence(&ode);
        let init = rec.initial_from_sequence(&x7.to_dense()).unwrap();
        let c = polynomiality_certificate(&rec, &init, 60).unwrap();
        assert_eq!(c.verdict, Verdict::Polynomial { degree: Some(7) });
    }

    #[test]
    fn certificate_propagates_undetermined() {
        let rec = Recurrence::new(vec![p(&[3, -1]), p(&[-3, 1])]).unwrap();
        let r = polynomiality_certificate(&rec, &InitialData::new(vec![int(1)]), 50);
        assert_eq!(r, Err(Error::Undetermined { index: 4 }));
    }

    fn arb_sparse() -> impl Strategy<Value = Poly> {
        prop::collection::btree_map(0usize..200, -3i64..=3, 0..6)
            .prop_map(|m| Poly::from_terms(m.into_iter().map(|(e, c)| (e, int(c)))))
    }

    proptest! {
        #[test]
        fn counting_inequalities(f in arb_sparse(), g in arb_sparse()) {
            let (sf, sg) = (SupportProfile::of_poly(&f), SupportProfile::of_poly(&g));
            let sum = SupportProfile::of_poly(&(&f + &g));
            let prod = SupportProfile::of_poly(&(&f * &g));
            for x in [10, 100, 1000] {
                let (nf, ng) = (sf.gap_count(x).unwrap(), sg.gap_count(x).unwrap());
                prop_assert!(sum.gap_count(x).unwrap() <= nf + ng);
                prop_assert!(prod.gap_count(x).unwrap() <= nf * ng);
            }
            prop_assert!(inequality_report(&sum, &sf, &sg, CombineOp::Add).holds());
            prop_assert!(inequality_report(&prod, &sf, &sg, CombineOp::Mul).holds());
        }

        #[test]
        fn gap_count_monotone(f in arb_sparse(), x in 0u64..300) {
            let s = SupportProfile::of_poly(&f);
            prop_assert!(s.gap_count(x).unwrap() <= s.gap_count(x + 1).unwrap());
            prop_assert_eq!(s.gap_count(1000).unwrap(), s.exponents().len() as u64);
        }
    }
}

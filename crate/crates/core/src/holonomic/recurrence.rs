use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::ode::normalize_scalar;
use crate::arith::{integer_roots, Field, Poly, Rat};
use crate::error::{Error, Result};

/// Linear recurrence `p_k(n)·a_{n+k} + … + p_0(n)·a_n = 0`, valid for
/// every `n ≥ 0` under the convention `a_m = 0` for `m < 0`.
///
/// Only the constant content is normalized away: dividing by a common
/// polynomial factor of the `p_j` would drop the relations at its integer
/// roots.
#[derive(Clone, PartialEq, Eq)]
pub struct Recurrence<C = Rat> {
    coeffs: Vec<Poly<C>>,
    boundary: Vec<BoundaryRelation<C>>,
}

/// A relation `Σ c·a_j = 0` that came from a negative shifted index when
/// a differential equation was converted; `at` is that index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryRelation<C = Rat> {
    pub at: i64,
    pub terms: Vec<(usize, C)>,
}

/// Starting values for [`Recurrence::unroll`].
///
/// `values` holds `a_0, a_1, …` (at least `k` of them). `supplied` gives
/// further terms by index; they are required wherever the leading
/// coefficient `p_k(n)` vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialData<C = Rat> {
    pub values: Vec<C>,
    pub supplied: BTreeMap<usize, C>,
}

impl<C: Field> InitialData<C> {
    pub fn new(values: Vec<C>) -> Self {
        InitialData {
            values,
            supplied: BTreeMap::new(),
        }
    }

    pub fn with_supplied(mut self, index: usize, value: C) -> Self {
        self.supplied.insert(index, value);
        self
    }

    fn given(&self, index: usize) -> Option<&C> {
        self.values.get(index).or_else(|| self.supplied.get(&index))
    }
}

impl<C: Field> Recurrence<C> {
    /// `coeffs = [p_0, …, p_k]` as polynomials in `n`.
    pub fn new(coeffs: Vec<Poly<C>>) -> Result<Self> {
        Self::with_boundary(coeffs, Vec::new())
    }

    pub fn with_boundary(
        mut coeffs: Vec<Poly<C>>,
        boundary: Vec<BoundaryRelation<C>>,
    ) -> Result<Self> {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput(
                "recurrence needs order >= 1 and a nonzero leading coefficient",
            ));
        }
        let boundary = boundary
            .into_iter()
            .filter(|b| b.terms.iter().any(|(_, c)| !c.is_zero()))
            .map(BoundaryRelation::normalized)
            .collect();
        Ok(Recurrence {
            coeffs: normalize_scalar(coeffs),
            boundary,
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[p_0, …, p_k]`.
    pub fn coeffs(&self) -> &[Poly<C>] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Poly<C> {
        self.coeffs.last().expect("order >= 1")
    }

    pub fn boundary(&self) -> &[BoundaryRelation<C>] {
        &self.boundary
    }

    /// Nonnegative integer roots of `p_k`, ascending: the indices `n` at
    /// which `a_{n+k}` is not determined by the earlier terms.
    pub fn singular_indices(&self) -> Vec<usize> {
        let (re, im) = self.leading().re_im();
        let base = if re.is_zero() { &im } else { &re };
        let roots = integer_roots(base).expect("leading coefficient is nonzero");
        let lead = self.leading();
        roots
            .into_iter()
            .filter_map(|r| usize::try_from(r).ok())
            .filter(|&r| lead.eval(&C::from_int(r as i64)).is_zero())
            .collect()
    }

    /// Initial data taken from a known sequence: its first `k` terms plus
    /// the terms at every singular index.
    pub fn initial_from_sequence(&self, seq: &[C]) -> Result<InitialData<C>> {
        let k = self.order();
        if seq.len() < k {
            return Err(Error::InsufficientInitialData {
                needed: k,
                got: seq.len(),
            });
        }
        let mut init = InitialData::new(seq[..k].to_vec());
        for n in self.singular_indices() {
            let value = seq.get(n + k).cloned().unwrap_or_else(C::zero);
            init.supplied.insert(n + k, value);
        }
        Ok(init)
    }

    /// Forward solution `a_0 … a_N`.
    ///
    /// Where `p_k(n) = 0` the relation is checked on the known terms and
    /// `a_{n+k}` must be given. Given terms that disagree with the
    /// recurrence are reported as [`Error::Inconsistent`].
    pub fn unroll(&self, init: &InitialData<C>, last: usize) -> Result<Vec<C>> {
        let k = self.order();
        if init.values.len() < k {
            return Err(Error::InsufficientInitialData {
                needed: k,
                got: init.values.len(),
            });
        }
        if init.supplied.keys().any(|&i| i < init.values.len()) {
            return Err(Error::InvalidInput(
                "supplied term overlaps the initial values",
            ));
        }
        let mut out: Vec<C> = init.values.iter().take(k.min(last + 1)).cloned().collect();
        let mut n = 0usize;
        while n + k <= last {
            let idx = n + k;
            let at = C::from_int(n as i64);
            let mut rhs = C::zero();
            for (j, p) in self.coeffs[..k].iter().enumerate() {
                let a = &out[n + j];
                if !a.is_zero() && !p.is_zero() {
                    rhs.add_assign(&p.eval(&at).mul(a));
                }
            }
            let lead = self.coeffs[k].eval(&at);
            let given = init.given(idx);
            let value = if lead.is_zero() {
                if !rhs.is_zero() {
                    return Err(Error::Inconsistent { index: idx });
                }
                given.cloned().ok_or(Error::Undetermined { index: idx })?
            } else {
                let computed = rhs.neg().div(&lead).expect("nonzero");
                if given.is_some_and(|g| *g != computed) {
                    return Err(Error::Inconsistent { index: idx });
                }
                computed
            };
            out.push(value);
            n += 1;
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Recurrence<D> {
        let boundary = self
            .boundary
            .iter()
            .map(|b| BoundaryRelation {
                at: b.at,
                terms: b.terms.iter().map(|(j, c)| (*j, f(c))).collect(),
            })
            .collect();
        Recurrence::with_boundary(
            self.coeffs.iter().map(|p| p.map_coeffs(&f)).collect(),
            boundary,
        )
        .expect("embedding keeps the leading coefficient")
    }
}

impl<C: Field> BoundaryRelation<C> {
    fn normalized(self) -> Self {
        let mut terms: Vec<(usize, C)> = self
            .terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        terms.sort_by_key(|(j, _)| *j);
        let poly = Poly::from_terms(terms.iter().cloned());
        let normal = normalize_scalar(alloc::vec![poly])
            .pop()
            .expect("one polynomial");
        BoundaryRelation {
            at: self.at,
            terms: normal.into_terms(),
        }
    }
}

impl<C: Field> fmt::Display for Recurrence<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, p) in self.coeffs.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})*a[n+{j}]", p.display("n"))?;
        }
        f.write_str(" = 0")
    }
}

impl<C: Field> fmt::Debug for Recurrence<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Recurrence({self}; boundary {:?})", self.boundary)
    }
}

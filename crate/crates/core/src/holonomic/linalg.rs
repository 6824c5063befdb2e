//! Fraction-free elimination over `K[z]`.

use alloc::vec::Vec;

use crate::arith::{Field, Poly};

/// First linear dependence among the columns `v_0, v_1, …` over `K(z)`.
///
/// Returns `c_0 … c_m` with `Σ c_i·v_i = 0` and `c_m ≠ 0`, where `m` is the
/// smallest index at which the columns become dependent, or `None` when all
/// columns are independent. All columns must have the same length.
pub fn first_dependency<C: Field>(cols: &[Vec<Poly<C>>]) -> Option<Vec<Poly<C>>> {
    let rows = cols.first().map_or(0, Vec::len);
    let mut echelon = Echelon::new(rows);
    for col in cols {
        if let Some(kernel) = echelon.push(col) {
            return Some(kernel);
        }
    }
    None
}

/// Bareiss-reduced column echelon form, built one column at a time.
///
/// Each pushed column is reduced against the pivots found so far; a column
/// that gains no new pivot yields the kernel vector.
struct Echelon<C> {
    /// Columns in original row order, each reduced through every step so far.
    cols: Vec<Vec<Poly<C>>>,
    /// Pivot row per accepted column.
    pivot_rows: Vec<usize>,
    rows: usize,
}

impl<C: Field> Echelon<C> {
    fn new(rows: usize) -> Self {
        Echelon {
            cols: Vec::new(),
            pivot_rows: Vec::new(),
            rows,
        }
    }

    /// Reduces `col` by the existing pivots, with the Bareiss division by
    /// the previous pivot at every step.
    fn reduce(&self, col: &[Poly<C>]) -> Vec<Poly<C>> {
        let mut v: Vec<Poly<C>> = col.to_vec();
        let mut prev = Poly::one();
        for (step, &pr) in self.pivot_rows.iter().enumerate() {
            let pc = &self.cols[step];
            let pivot = &pc[pr];
            let vp = v[pr].clone();
            for r in 0..self.rows {
                if self.pivot_rows[..=step].contains(&r) {
                    continue;
                }
                let num = &(pivot * &v[r]) - &(&vp * &pc[r]);
                v[r] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            prev = pivot.clone();
        }
        v
    }

    fn push(&mut self, col: &[Poly<C>]) -> Option<Vec<Poly<C>>> {
        let v = self.reduce(col);
        let free = (0..self.rows).find(|r| !self.pivot_rows.contains(r) && !v[*r].is_zero());
        match free {
            Some(r) => {
                self.cols.push(v);
                self.pivot_rows.push(r);
                None
            }
            None => Some(self.kernel(&v)),
        }
    }

    /// Back substitution for a reduced column that lies in the span of the
    /// pivots; `c_m` is the last pivot so every `c_i` is a polynomial.
    fn kernel(&self, v: &[Poly<C>]) -> Vec<Poly<C>> {
        let m = self.pivot_rows.len();
        let c_m = match m {
            0 => Poly::one(),
            _ => self.cols[m - 1][self.pivot_rows[m - 1]].clone(),
        };
        let mut c: Vec<Poly<C>> = alloc::vec![Poly::zero(); m + 1];
        c[m] = c_m.clone();
        for i in (0..m).rev() {
            let r = self.pivot_rows[i];
            let mut rhs = -&(&c_m * &v[r]);
            for (j, cj) in c.iter().enumerate().take(m).skip(i + 1) {
                rhs = &rhs - &(cj * &self.cols[j][r]);
            }
            c[i] = rhs
                .exact_div(&self.cols[i][r])
                .expect("Cramer minors are polynomial");
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn combine(cols: &[Vec<Poly>], c: &[Poly]) -> Vec<Poly> {
        let rows = cols[0].len();
        (0..rows)
            .map(|r| {
                c.iter()
                    .zip(cols)
                    .fold(Poly::zero(), |acc, (ci, col)| &acc + &(ci * &col[r]))
            })
            .collect()
    }

    #[test]
    fn zero_column_is_dependent_at_once() {
        let dep =
            first_dependency(&[vec![Poly::<crate::arith::Rat>::zero(), Poly::zero()]]).unwrap();
        assert_eq!(dep, vec![Poly::one()]);
    }

    #[test]
    fn proportional_columns() {
        let cols = vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[0, 1]), p(&[0, 0, 1])]];
        let dep = first_dependency(&cols).unwrap();
        assert_eq!(dep.len(), 2);
        assert!(combine(&cols, &dep).iter().all(Poly::is_zero));
    }

    #[test]
    fn independent_columns() {
        let cols = vec![vec![p(&[1]), p(&[0])], vec![p(&[0]), p(&[1])]];
        assert!(first_dependency(&cols).is_none());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..4, 0..4).prop_map(|c| p(&c))
    }

    proptest! {
        #[test]
        fn kernel_is_sound(
            cols in prop::collection::vec(prop::collection::vec(arb_poly(), 3), 1..4),
            mix in prop::collection::vec(arb_poly(), 4),
        ) {
            // append a combination of the earlier columns so a dependence exists
            let mut all = cols.clone();
            all.push(combine(&cols, &mix[..cols.len()]));
            let dep = first_dependency(&all).unwrap();
            let used = &all[..dep.len()];
            prop_assert!(!dep.last().unwrap().is_zero());
            prop_assert!(combine(used, &dep).iter().all(Poly::is_zero));
            // the columns before the dependence are independent
            prop_assert!(first_dependency(&all[..dep.len() - 1]).is_none());
        }
    }
}

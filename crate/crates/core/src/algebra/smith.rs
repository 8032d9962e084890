use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Integer};
use crate::error::{Error, Result};

/// Result of [`smith_normal_form`]: `u * n * v == s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Integer> {
        (0..self.s.rows()).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smallest nonzero |entry| in the trailing block starting at `t`, first in
/// row-major order on ties.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let n = a.rows();
    let mut best: Option<(usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form of a square integer matrix.
///
/// Returns unimodular `u`, `v` and diagonal `s = u * n * v` whose diagonal is
/// nonnegative, forms a divisibility chain, and has its zeros last. The pivot
/// is always the smallest nonzero absolute value in the active block, so the
/// output is deterministic.
pub fn smith_normal_form(n: &IntMatrix) -> Result<SmithForm> {
    if !n.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            n.rows(),
            n.cols()
        )));
    }
    let size = n.rows();
    let mut a = n.clone();
    let mut u = IntMatrix::identity(size);
    let mut v = IntMatrix::identity(size);

    'outer: for t in 0..size {
        loop {
            let Some((pi, pj)) = find_pivot(&a, t) else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..size {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(t, i, &q);
                u.add_row_multiple(t, i, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..size {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(t, j, &q);
                v.add_col_multiple(t, j, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let pivot = a[(t, t)].clone();
            let offender = (t + 1..size)
                .find(|&i| (t + 1..size).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    a.add_row_multiple(i, t, &Integer::one());
                    u.add_row_multiple(i, t, &Integer::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    Ok(SmithForm { u, s: a, v })
}

//! Order and skew normal form of rational alternating matrices.
//!
//! An integer nondegenerate alternating matrix `N` of size `2d` is brought
//! to `R^t N R = [[0, B], [-B, 0]]`, `B = diag(h_1, ..., h_d)` with
//! `h_1 | h_2 | ... | h_d`, by unimodular congruence.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::algebra::{det_int, is_unimodular, lcm_of_denominators, scale_to_integer, IntMatrix, Integer};
use crate::error::{Error, Result};
use crate::lattice::SkewMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewNormalForm {
    /// Order `r` of the rational matrix that was scaled to `N`; 1 when `N`
    /// was supplied directly.
    pub order: Integer,
    /// Invariant factors `h_1 | ... | h_d`, all positive.
    pub h: Vec<Integer>,
    /// Unimodular `R` with `R^t N R` in block normal form.
    pub transform: IntMatrix,
}

impl SkewNormalForm {
    pub fn d(&self) -> usize {
        self.h.len()
    }

    /// `[[0, B], [-B, 0]]` for the stored invariant factors.
    pub fn target(&self) -> IntMatrix {
        block_form(&self.h)
    }
}

pub fn block_form(h: &[Integer]) -> IntMatrix {
    let d = h.len();
    let mut t = IntMatrix::zeros(2 * d, 2 * d);
    for (i, hi) in h.iter().enumerate() {
        t[(i, i + d)] = hi.clone();
        t[(i + d, i)] = -hi.clone();
    }
    t
}

/// Least positive `r` with `r * theta` integral.
pub fn order(theta: &SkewMatrix) -> Integer {
    lcm_of_denominators(theta.entries())
}

/// Order of `theta` together with the skew normal form of `r * theta`.
pub fn normal_form_of(theta: &SkewMatrix) -> Result<SkewNormalForm> {
    let r = order(theta);
    let scaled = scale_to_integer(theta.entries(), &r)?;
    let mut snf = skew_normal_form(&scaled)?;
    snf.order = r;
    Ok(snf)
}

/// Working matrix and accumulated transform; every operation is applied as
/// a congruence `A -> E^t A E`, `R -> R E`.
struct Congruence {
    a: IntMatrix,
    r: IntMatrix,
}

impl Congruence {
    fn swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            self.a.swap_cols(i, j);
            self.r.swap_cols(i, j);
        }
    }

    /// Basis change `b_dst += c * b_src`.
    fn add(&mut self, src: usize, dst: usize, c: &Integer) {
        if c.is_zero() {
            return;
        }
        self.a.add_col_multiple(src, dst, c);
        self.a.add_row_multiple(src, dst, c);
        self.r.add_col_multiple(src, dst, c);
    }

    fn negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.a.negate_col(i);
        self.r.negate_col(i);
    }

    /// Smallest nonzero |a_ij| with `s <= i < j`, first in row-major order on ties.
    fn pivot(&self, s: usize) -> Option<(usize, usize)> {
        let n = self.a.rows();
        let mut best: Option<(usize, usize)> = None;
        for i in s..n {
            for j in i + 1..n {
                let x = &self.a[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Reduces rows `s` and `s + 1` modulo the pivot `a[s][s+1]`. Returns
    /// true when both rows are zero outside the pivot block.
    fn reduce_pivot_rows(&mut self, s: usize) -> bool {
        let n = self.a.rows();
        let p = self.a[(s, s + 1)].clone();
        let mut clean = true;
        for k in s + 2..n {
            let c = -self.a[(s, k)].div_floor(&p);
            self.add(s + 1, k, &c);
            let c = self.a[(s + 1, k)].div_floor(&p);
            self.add(s, k, &c);
            clean &= self.a[(s, k)].is_zero() && self.a[(s + 1, k)].is_zero();
        }
        clean
    }

    fn trailing_non_multiple(&self, s: usize) -> Option<usize> {
        let n = self.a.rows();
        let p = &self.a[(s, s + 1)];
        (s + 2..n).find(|&i| (i + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(p)))
    }
}

/// Skew normal form of an integer nondegenerate alternating matrix.
///
/// The returned `order` is 1; see [`normal_form_of`] for rational input.
pub fn skew_normal_form(n: &IntMatrix) -> Result<SkewNormalForm> {
    if !n.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            n.rows(),
            n.cols()
        )));
    }
    if !n.is_skew_symmetric() {
        return Err(Error::NotSkew);
    }
    let size = n.rows();
    if !size.is_multiple_of(2) {
        return Err(Error::OddDimension(size));
    }
    if det_int(n)?.is_zero() {
        return Err(Error::Singular);
    }

    let mut work = Congruence {
        a: n.clone(),
        r: IntMatrix::identity(size),
    };

    for s in (0..size).step_by(2) {
        loop {
            let (i, j) = work.pivot(s).ok_or(Error::Singular)?;
            work.swap(s, i);
            work.swap(s + 1, j);
            if !work.reduce_pivot_rows(s) {
                continue;
            }
            match work.trailing_non_multiple(s) {
                Some(i) => work.add(i, s, &Integer::one()),
                None => break,
            }
        }
        if work.a[(s, s + 1)].is_negative() {
            work.negate(s + 1);
        }
    }

    // interleaved pairs (0,1), (2,3), ... -> block layout
    let d = size / 2;
    let perm: Vec<usize> = (0..d).map(|i| 2 * i).chain((0..d).map(|i| 2 * i + 1)).collect();
    let mut transform = IntMatrix::zeros(size, size);
    for (t, &src) in perm.iter().enumerate() {
        for row in 0..size {
            transform[(row, t)] = work.r[(row, src)].clone();
        }
    }
    let h = (0..d).map(|i| work.a[(2 * i, 2 * i + 1)].clone()).collect();

    Ok(SkewNormalForm {
        order: Integer::one(),
        h,
        transform,
    })
}

/// Checks `|det R| = 1`, positivity and divisibility of `h`, and the block
/// identity `R^t N R = [[0, B], [-B, 0]]` entry for entry.
pub fn verify_skew_normal_form(n: &IntMatrix, res: &SkewNormalForm) -> bool {
    let size = n.rows();
    if !n.is_square()
        || res.h.is_empty()
        || size != 2 * res.d()
        || res.transform.rows() != size
        || res.transform.cols() != size
    {
        return false;
    }
    if !res.h.iter().all(Integer::is_positive) {
        return false;
    }
    if !res.h.windows(2).all(|w| w[1].is_multiple_of(&w[0])) {
        return false;
    }
    if !is_unimodular(&res.transform) {
        return false;
    }
    &(&res.transform.transpose() * n) * &res.transform == res.target()
}

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Integer, RatMatrix, Rational};
use crate::error::{Error, Result};

fn require_square<T>(a: &super::Matrix<T>) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
///
/// Every division performed is exact, so intermediates stay integral and
/// bounded by minors of the input.
pub fn det_int(a: &IntMatrix) -> Result<Integer> {
    let n = require_square(a)?;
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = Integer::one();
    for k in 0..n.saturating_sub(1) {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Ok(Integer::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                debug_assert!(num.is_multiple_of(&prev));
                m[(i, j)] = num / &prev;
            }
            m[(i, k)] = Integer::zero();
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

/// Exact determinant of a rational matrix.
///
/// Each row is scaled by the lcm of its denominators, the resulting integer
/// matrix goes through [`det_int`], and the product of the row scales is
/// divided back out.
pub fn det(a: &RatMatrix) -> Result<Rational> {
    let n = require_square(a)?;
    let mut scales = Integer::one();
    let mut rows = Vec::with_capacity(n);
    for row in a.row_iter() {
        let l = row.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<_>>(),
        );
        scales *= l;
    }
    let cleared = IntMatrix::from_rows(rows)?;
    Ok(Rational::new(det_int(&cleared)?, scales))
}

/// True iff `det(r)` is `+1` or `-1`.
pub fn is_unimodular(r: &IntMatrix) -> bool {
    det_int(r).map(|d| d.abs().is_one()).unwrap_or(false)
}

/// Row-reduces `[a | b]` to `[I | a^{-1} b]`.
fn gauss_jordan(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    let n = require_square(a)?;
    if b.rows() != n {
        return Err(Error::Dimension(format!(
            "{}x{} system with {} right-hand rows",
            n,
            n,
            b.rows()
        )));
    }
    let mut lhs = a.clone();
    let mut rhs = b.clone();
    for k in 0..n {
        let p = (k..n).find(|&i| !lhs[(i, k)].is_zero()).ok_or(Error::Singular)?;
        lhs.swap_rows(k, p);
        rhs.swap_rows(k, p);
        let inv = lhs[(k, k)].recip();
        for j in 0..n {
            lhs[(k, j)] = &lhs[(k, j)] * &inv;
        }
        for j in 0..rhs.cols() {
            rhs[(k, j)] = &rhs[(k, j)] * &inv;
        }
        for i in (0..n).filter(|&i| i != k) {
            let f = lhs[(i, k)].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = &f * &lhs[(k, j)];
                lhs[(i, j)] -= v;
            }
            for j in 0..rhs.cols() {
                let v = &f * &rhs[(k, j)];
                rhs[(i, j)] -= v;
            }
        }
    }
    Ok(rhs)
}

pub fn inverse(a: &RatMatrix) -> Result<RatMatrix> {
    let n = require_square(a)?;
    gauss_jordan(a, &RatMatrix::identity(n))
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let col = RatMatrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect())?;
    Ok(gauss_jordan(a, &col)?.column(0))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn rm(rows: &[&[(i64, i64)]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Laplace expansion along the first row; independent of elimination.
    fn laplace(a: &RatMatrix) -> Rational {
        let n = a.rows();
        if n == 1 {
            return a[(0, 0)].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor = RatMatrix::from_rows(
                (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| a[(i, c)].clone()).collect())
                    .collect(),
            )
            .unwrap();
            let term = &a[(0, j)] * laplace(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(det(&RatMatrix::identity(4)).unwrap(), rat(1, 1));
        let d = RatMatrix::diagonal(&[rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 3)]);
        assert_eq!(det(&d).unwrap(), rat(1, 3));
        let s = rm(&[&[(0, 1), (1, 2)], &[(-1, 2), (0, 1)]]);
        assert_eq!(det(&s).unwrap(), rat(1, 4));
    }

    #[test]
    fn non_square_rejected() {
        let a = rm(&[&[(1, 1), (2, 1)]]);
        assert!(matches!(det(&a), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let a = rm(&[
            &[(0, 1), (1, 1), (2, 1)],
            &[(1, 1), (0, 1), (3, 1)],
            &[(4, 1), (-3, 1), (8, 1)],
        ]);
        assert_eq!(det(&a).unwrap(), laplace(&a));
        let singular = rm(&[&[(1, 2), (1, 3)], &[(3, 2), (1, 1)]]);
        assert_eq!(det(&singular).unwrap(), rat(0, 1));
    }

    #[test]
    fn agrees_with_laplace_on_fixed_rationals() {
        let a = rm(&[
            &[(1, 2), (-2, 3), (0, 1), (5, 1)],
            &[(3, 1), (1, 6), (-1, 4), (2, 5)],
            &[(0, 1), (7, 3), (1, 1), (-1, 2)],
            &[(2, 1), (0, 1), (3, 5), (1, 3)],
        ]);
        assert_eq!(det(&a).unwrap(), laplace(&a));
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&IntMatrix::identity(3)));
        assert!(!is_unimodular(&IntMatrix::diagonal(&[int(2), int(1)])));
        let mut t = IntMatrix::identity(3);
        t.add_row_multiple(0, 2, &int(1));
        assert!(is_unimodular(&t));
        assert!(is_unimodular(&IntMatrix::diagonal(&[int(-1), int(1)])));
    }

    #[test]
    fn inverse_and_solve() {
        let a = rm(&[&[(2, 1), (1, 1)], &[(1, 1), (1, 3)]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(&a * &inv, RatMatrix::identity(2));
        let x = solve(&a, &[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![rat(1, 1), rat(0, 1)]);
        let singular = rm(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        assert_eq!(inverse(&singular), Err(Error::Singular));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
            proptest::collection::vec((-9i64..=9, 1i64..=6), n * n).prop_map(move |v| {
                RatMatrix::from_rows(
                    v.chunks(n)
                        .map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect())
                        .collect(),
                )
                .unwrap()
            })
        }

        proptest! {
            #[test]
            fn det_is_multiplicative(
                (a, b) in (1usize..=4).prop_flat_map(|n| (small_rat_matrix(n), small_rat_matrix(n)))
            ) {
                prop_assert_eq!(det(&(&a * &b)).unwrap(), det(&a).unwrap() * det(&b).unwrap());
            }

            #[test]
            fn det_matches_laplace(a in (1usize..=4).prop_flat_map(small_rat_matrix)) {
                prop_assert_eq!(det(&a).unwrap(), laplace(&a));
            }
        }
    }
}

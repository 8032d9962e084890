//! Seeded random lattice families used by tests, benches, and the CLI.

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{int, rat, IntMatrix, RatMatrix};
use crate::lattice::Lattice;

/// Product of between one and `max_ops` random elementary integer
/// operations (transvection with coefficient in `[-coeff, coeff]`, row swap,
/// or sign flip). Always unimodular.
pub fn random_unimodular<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_ops: usize,
    coeff: i64,
) -> IntMatrix {
    let mut s = IntMatrix::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            s.negate_row(0);
        }
        return s;
    }
    let ops = rng.gen_range(1..=max_ops.max(1));
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..6) {
            0 => s.swap_rows(i, j),
            1 => s.negate_row(i),
            _ => {
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-coeff..=coeff);
                }
                s.add_row_multiple(i, j, &int(c));
            }
        }
    }
    s
}

/// Diagonal generator with entries `p/q`, `1 <= p, q <= max_den`.
pub fn random_diagonal<R: Rng + ?Sized>(rng: &mut R, d: usize, max_den: i64) -> RatMatrix {
    let diag: Vec<_> = (0..2 * d)
        .map(|_| rat(rng.gen_range(1..=max_den), rng.gen_range(1..=max_den)))
        .collect();
    RatMatrix::diagonal(&diag)
}

/// `diag * S` with a random small-denominator diagonal and a random
/// unimodular `S` built from at most `max_ops` elementary operations.
pub fn random_rational_lattice<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    max_den: i64,
    max_ops: usize,
) -> Lattice {
    let m = random_diagonal(rng, d, max_den);
    let s = random_unimodular(rng, 2 * d, max_ops, 3);
    Lattice::new(d, &m * &crate::algebra::to_rational(&s)).expect("diagonal times unimodular is invertible")
}

/// Dense generator with entries `p/q`, `|p| <= max_num`, `1 <= q <= max_den`,
/// resampled until invertible.
pub fn random_dense_lattice<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    max_den: i64,
    max_num: i64,
) -> Lattice {
    let n = 2 * d;
    loop {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rat(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den)))
                    .collect()
            })
            .collect();
        let m = RatMatrix::from_rows(rows).expect("non-empty");
        if let Ok(l) = Lattice::new(d, m) {
            debug_assert!(!l.generator_det().is_zero());
            return l;
        }
    }
}

/// The standard randomized corpus: `count` lattices with `d` cycling through
/// `1..=max_d`, denominators at most 6, and at most 12 elementary operations.
pub fn standard_corpus<R: Rng + ?Sized>(rng: &mut R, count: usize, max_d: usize) -> Vec<Lattice> {
    (0..count)
        .map(|i| random_rational_lattice(rng, 1 + i % max_d, 6, 12))
        .collect()
}

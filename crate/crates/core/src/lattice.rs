//! Lattices `M * Z^{2d}` in the time-frequency plane and their symplectic data.

use num_traits::{Signed, Zero};

use crate::algebra::{det, int, rat_from_int, to_rational, IntMatrix, RatMatrix, Rational};
use crate::error::{Error, Result};

/// A full-rank lattice `M * Z^{2d}` with an invertible rational generator `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    d: usize,
    generator: RatMatrix,
    det: Rational,
    declared_nonrational: bool,
}

impl Lattice {
    /// Validates the shape (`2d x 2d`, `d >= 1`) and invertibility of `generator`.
    pub fn new(d: usize, generator: RatMatrix) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        if generator.rows() != 2 * d || generator.cols() != 2 * d {
            return Err(Error::Shape(format!(
                "generator is {}x{}, expected {}x{} for d = {d}",
                generator.rows(),
                generator.cols(),
                2 * d,
                2 * d
            )));
        }
        let det = det(&generator)?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Lattice {
            d,
            generator,
            det,
            declared_nonrational: false,
        })
    }

    /// Marks the lattice as standing in for a non-rational one.
    ///
    /// Exact input is always rational; the flag makes the analysis take the
    /// non-rational branch (`n_Gamma` infinite) instead.
    pub fn declared_nonrational(mut self, flag: bool) -> Self {
        self.declared_nonrational = flag;
        self
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        2 * self.d
    }

    pub fn generator(&self) -> &RatMatrix {
        &self.generator
    }

    pub fn is_declared_nonrational(&self) -> bool {
        self.declared_nonrational
    }

    /// Signed `det M`.
    pub fn generator_det(&self) -> &Rational {
        &self.det
    }

    /// Volume of a fundamental domain, `|det M|`.
    pub fn covolume(&self) -> Rational {
        self.det.abs()
    }

    /// `theta = M^t J M`.
    pub fn associated_skew_matrix(&self) -> SkewMatrix {
        let j = to_rational(&standard_symplectic(self.d).expect("d >= 1"));
        let theta = &(&self.generator.transpose() * &j) * &self.generator;
        debug_assert!(theta.is_skew_symmetric());
        SkewMatrix(theta)
    }

    /// Lattice point `M * k` for integer coordinates `k`.
    pub fn point(&self, coords: &[crate::algebra::Integer]) -> Result<Vec<Rational>> {
        let k: Vec<Rational> = coords.iter().cloned().map(rat_from_int).collect();
        self.generator.mul_vec(&k)
    }

    /// The same lattice represented by `M * s` for unimodular `s`.
    pub fn rebased(&self, s: &IntMatrix) -> Result<Self> {
        let generator = self.generator.checked_mul(&to_rational(s))?;
        Ok(Lattice::new(self.d, generator)?.declared_nonrational(self.declared_nonrational))
    }
}

/// Rational skew-symmetric matrix of even size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix(RatMatrix);

impl SkewMatrix {
    pub fn new(entries: RatMatrix) -> Result<Self> {
        if !entries.is_skew_symmetric() {
            return Err(Error::NotSkew);
        }
        if !entries.rows().is_multiple_of(2) {
            return Err(Error::OddDimension(entries.rows()));
        }
        Ok(SkewMatrix(entries))
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.0
    }

    pub fn into_inner(self) -> RatMatrix {
        self.0
    }
}

/// The standard symplectic matrix `J = [[0, I_d], [-I_d, 0]]`.
pub fn standard_symplectic(d: usize) -> Result<IntMatrix> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut j = IntMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        j[(i, i + d)] = int(1);
        j[(i + d, i)] = int(-1);
    }
    Ok(j)
}

/// `Omega(z, w) = <z, J w>`, i.e. `<x, w'> - <x', w>` in time/frequency halves.
pub fn symplectic_pairing(z: &[Rational], w: &[Rational]) -> Result<Rational> {
    if z.len() != w.len() || !z.len().is_multiple_of(2) || z.is_empty() {
        return Err(Error::Dimension(format!(
            "pairing needs two vectors of equal even length, got {} and {}",
            z.len(),
            w.len()
        )));
    }
    let d = z.len() / 2;
    let mut acc = Rational::zero();
    for i in 0..d {
        acc += &z[i] * &w[i + d];
        acc -= &z[i + d] * &w[i];
    }
    Ok(acc)
}

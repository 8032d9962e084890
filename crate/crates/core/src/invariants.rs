//! Lattice invariants derived from the skew normal form: the orders `r_i`,
//! the non-integrality index `n_Gamma`, and the subgroup `Gamma_Omega` of
//! lattice vectors pairing integrally with the whole lattice.

use std::fmt;

use num_integer::Integer as _;
use num_traits::Zero;

use crate::algebra::{
    format_rational, scale_to_integer, to_rational, IntMatrix, Integer, RatMatrix,
    Rational,
};
use crate::error::{Error, Result};
use crate::lattice::{symplectic_pairing, Lattice};
use crate::skew::{normal_form_of, verify_skew_normal_form, SkewNormalForm};

/// `n_Gamma`: finite for rational lattices, infinite otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NGamma {
    Finite(Integer),
    Infinite,
}

impl fmt::Display for NGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NGamma::Finite(n) => write!(f, "{n}"),
            NGamma::Infinite => f.write_str("infinite"),
        }
    }
}

/// Arithmetic invariants, present only for rational lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInvariants {
    pub order: Integer,
    pub h: Vec<Integer>,
    /// `r_i = r / gcd(h_i, r)`.
    pub r_i: Vec<Integer>,
    /// `r_1 * ... * r_d`.
    pub n_gamma: Integer,
    /// `[Gamma : Gamma_Omega] = n_gamma^2`.
    pub index: Integer,
    /// `h_1 * ... * h_d / r^d`.
    pub covol_from_factors: Rational,
    /// Columns generate `Gamma_Omega`.
    pub omega_subgroup_generator: RatMatrix,
    pub normal_form: SkewNormalForm,
}

impl RationalInvariants {
    /// Orders of the cyclic factors of `Gamma / Gamma_Omega`: each `r_i` twice.
    pub fn quotient(&self) -> Vec<Integer> {
        self.r_i.iter().flat_map(|r| [r.clone(), r.clone()]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvariants {
    pub d: usize,
    pub covol: Rational,
    /// `None` for a declared non-rational lattice.
    pub arithmetic: Option<RationalInvariants>,
}

impl LatticeInvariants {
    pub fn is_rational(&self) -> bool {
        self.arithmetic.is_some()
    }

    pub fn n_gamma(&self) -> NGamma {
        match &self.arithmetic {
            Some(a) => NGamma::Finite(a.n_gamma.clone()),
            None => NGamma::Infinite,
        }
    }

    /// Dimension of every irreducible representation of the associated
    /// noncommutative torus; equal to `n_Gamma`.
    pub fn homogeneity_degree(&self) -> NGamma {
        self.n_gamma()
    }

    /// `(d - 1) / n_Gamma`, read as 0 when `n_Gamma` is infinite.
    pub fn rc_upper_bound(&self) -> Rational {
        match &self.arithmetic {
            Some(a) => Rational::new(Integer::from(self.d - 1), a.n_gamma.clone()),
            None => Rational::zero(),
        }
    }
}

/// Computes every invariant of `lattice` and self-checks the normal form and
/// the covolume identity `|det M| = h_1 ... h_d / r^d`.
pub fn compute_invariants(lattice: &Lattice) -> Result<LatticeInvariants> {
    let d = lattice.d();
    let covol = lattice.covolume();
    if lattice.is_declared_nonrational() {
        return Ok(LatticeInvariants {
            d,
            covol,
            arithmetic: None,
        });
    }

    let theta = lattice.associated_skew_matrix();
    let normal_form = normal_form_of(&theta)?;
    let scaled = scale_to_integer(theta.entries(), &normal_form.order)?;
    if !verify_skew_normal_form(&scaled, &normal_form) {
        return Err(Error::Invariant("skew normal form failed verification".into()));
    }

    let r = &normal_form.order;
    let r_i: Vec<Integer> = normal_form.h.iter().map(|h| r / h.gcd(r)).collect();
    let n_gamma: Integer = r_i.iter().product();
    let index = &n_gamma * &n_gamma;
    let h_prod: Integer = normal_form.h.iter().product();
    let covol_from_factors = Rational::new(h_prod, num_traits::pow(r.clone(), d));
    if covol_from_factors != covol {
        return Err(Error::Invariant(format!(
            "covolume {} differs from h_1...h_d / r^d = {}",
            format_rational(&covol),
            format_rational(&covol_from_factors)
        )));
    }

    let omega_subgroup_generator = subgroup_generator(lattice, &normal_form.transform, &r_i);

    Ok(LatticeInvariants {
        d,
        covol,
        arithmetic: Some(RationalInvariants {
            order: r.clone(),
            h: normal_form.h.clone(),
            r_i,
            n_gamma,
            index,
            covol_from_factors,
            omega_subgroup_generator,
            normal_form,
        }),
    })
}

/// `G = M R D` with `D = diag(r_1, ..., r_d, r_1, ..., r_d)`.
fn subgroup_generator(lattice: &Lattice, transform: &IntMatrix, r_i: &[Integer]) -> RatMatrix {
    let scales: Vec<Integer> = r_i.iter().chain(r_i).cloned().collect();
    let rd = transform * &IntMatrix::diagonal(&scales);
    lattice.generator() * &to_rational(&rd)
}

/// Generator matrix whose columns span `Gamma_Omega`.
pub fn omega_subgroup_basis(lattice: &Lattice) -> Result<RatMatrix> {
    if lattice.is_declared_nonrational() {
        return Err(Error::NotApplicable("omega subgroup basis"));
    }
    let inv = compute_invariants(lattice)?;
    Ok(inv
        .arithmetic
        .expect("rational lattice has arithmetic invariants")
        .omega_subgroup_generator)
}

fn integral_coords(coords: &[Rational]) -> Result<Vec<Integer>> {
    coords
        .iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::NonIntegral(format_rational(x)))
            }
        })
        .collect()
}

/// Whether `M k` lies in `Gamma_Omega`, tested by pairing it against every
/// basis vector `M e_j`.
pub fn subgroup_membership(lattice: &Lattice, coords: &[Rational]) -> Result<bool> {
    if lattice.is_declared_nonrational() {
        return Err(Error::NotApplicable("subgroup membership"));
    }
    if coords.len() != lattice.dim() {
        return Err(Error::Dimension(format!(
            "expected {} coordinates, got {}",
            lattice.dim(),
            coords.len()
        )));
    }
    let k = integral_coords(coords)?;
    let gamma = lattice.point(&k)?;
    for j in 0..lattice.dim() {
        let basis = lattice.generator().column(j);
        if !symplectic_pairing(&gamma, &basis)?.is_integer() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership test for many coordinate vectors against one lattice:
/// `k` is in `Gamma_Omega` iff `r` divides every entry of `(r theta)^t k`.
#[derive(Clone, Debug)]
pub struct MembershipTest {
    order: Integer,
    scaled_transpose: IntMatrix,
}

impl MembershipTest {
    pub fn new(lattice: &Lattice) -> Result<Self> {
        if lattice.is_declared_nonrational() {
            return Err(Error::NotApplicable("subgroup membership"));
        }
        let theta = lattice.associated_skew_matrix();
        let order = crate::skew::order(&theta);
        let scaled = scale_to_integer(theta.entries(), &order)?;
        Ok(MembershipTest {
            order,
            scaled_transpose: scaled.transpose(),
        })
    }

    pub fn contains(&self, k: &[Integer]) -> bool {
        self.scaled_transpose
            .row_iter()
            .all(|row| {
                row.iter()
                    .zip(k)
                    .fold(Integer::zero(), |acc, (a, b)| acc + a * b)
                    .is_multiple_of(&self.order)
            })
    }
}

/// `|det(M^{-1} G)|` as an integer; equals `[Gamma : Gamma_Omega]`.
pub fn subgroup_index_from_basis(lattice: &Lattice, g: &RatMatrix) -> Result<Rational> {
    let m_inv = crate::algebra::inverse(lattice.generator())?;
    let coords = &m_inv * g;
    Ok(crate::algebra::abs(&crate::algebra::det(&coords)?))
}

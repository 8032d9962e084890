//! Independent cross-checks of the computed invariants: Smith normal form
//! of `r theta` and an exhaustive scan of the subgroup over a coordinate box.

use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{
    det, inverse, lcm_of_denominators, rat_from_int, scale_to_integer, smith_normal_form, Integer,
};
use crate::error::{Error, Result};
use crate::invariants::{LatticeInvariants, MembershipTest};
use crate::lattice::Lattice;
use crate::par::{self, Execution};

/// Largest coordinate box `r^{2d}` the CLI oracle will scan.
pub const SCAN_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    /// Points in `[0, r)^{2d}`.
    pub points: u64,
    /// Points passing the pairing test.
    pub members: u64,
    /// Points where the pairing test and the span of the basis disagree.
    pub mismatches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Smith diagonal of `r theta` equals `(h_1, h_1, ..., h_d, h_d)`.
    pub smith_matches: bool,
    /// `|det(M^{-1} G)| = n_Gamma^2`.
    pub index_matches: bool,
    pub scan: ScanReport,
}

impl OracleReport {
    pub fn verified(&self) -> bool {
        self.smith_matches
            && self.index_matches
            && self.scan.mismatches == 0
            && self.scan.points > 0
    }
}

/// `r^{2d}` if it fits in a `u64`.
pub fn box_size(order: &Integer, d: usize) -> Option<u64> {
    num_traits::pow(order.clone(), 2 * d).to_u64()
}

/// Compares the pairing definition of `Gamma_Omega` with the lattice spanned
/// by `M^{-1} G` on every point of `[0, r)^{2d}`.
pub fn scan_subgroup(
    lattice: &Lattice,
    inv: &LatticeInvariants,
    limit: u64,
    exec: Execution,
) -> Result<ScanReport> {
    let a = inv
        .arithmetic
        .as_ref()
        .ok_or(Error::NotApplicable("subgroup scan"))?;
    let n = lattice.dim();
    let points = box_size(&a.order, inv.d)
        .filter(|&p| p <= limit)
        .ok_or_else(|| {
            Error::OracleRefused(format!(
                "coordinate box r^(2d) = {}^{} exceeds {limit} points",
                a.order,
                n
            ))
        })?;
    let radix = a.order.to_u64().expect("order fits when the box does");

    let test = MembershipTest::new(lattice)?;

    // x = (M^{-1} G)^{-1} k is integral iff k is in the span; scale the
    // inverse to integers and test divisibility by the common denominator.
    let coords = &inverse(lattice.generator())? * &a.omega_subgroup_generator;
    let span_inv = inverse(&coords)?;
    let denom = lcm_of_denominators(&span_inv);
    let span_inv = scale_to_integer(&span_inv, &denom)?;

    let mismatch_and_member = |idx: u64| -> (bool, bool) {
        let mut rest = idx;
        let k: Vec<Integer> = (0..n)
            .map(|_| {
                let digit = rest % radix;
                rest /= radix;
                Integer::from(digit)
            })
            .collect();
        let member = test.contains(&k);
        let in_span = span_inv.row_iter().all(|row| {
            row.iter()
                .zip(&k)
                .fold(Integer::zero(), |acc, (x, y)| acc + x * y)
                .is_multiple_of(&denom)
        });
        (member != in_span, member)
    };

    let (mismatches, members) = par::reduce_range(
        points,
        exec,
        |i| {
            let (bad, member) = mismatch_and_member(i);
            (u64::from(bad), u64::from(member))
        },
        || (0, 0),
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(ScanReport {
        points,
        members,
        mismatches,
    })
}

/// Runs every cross-check; refuses when the scan box exceeds `limit`.
pub fn run_oracle(
    lattice: &Lattice,
    inv: &LatticeInvariants,
    limit: u64,
    exec: Execution,
) -> Result<OracleReport> {
    let a = inv
        .arithmetic
        .as_ref()
        .ok_or(Error::NotApplicable("oracle"))?;
    let scaled = scale_to_integer(lattice.associated_skew_matrix().entries(), &a.order)?;
    let expected: Vec<Integer> = a.h.iter().flat_map(|h| [h.clone(), h.clone()]).collect();
    let smith_matches = smith_normal_form(&scaled)?.diagonal() == expected;

    let coords = &inverse(lattice.generator())? * &a.omega_subgroup_generator;
    let index_matches = det(&coords)?.abs() == rat_from_int(a.index.clone());

    let scan = scan_subgroup(lattice, inv, limit, exec)?;
    Ok(OracleReport {
        smith_matches,
        index_matches,
        scan,
    })
}

//! Sufficient criterion for a Schwartz-window Gabor frame over a lattice,
//! the multi-window bound, and the covolume-one impossibility branch.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed};

use crate::algebra::{floor, rat_from_int, Integer, Rational};
use crate::error::{Error, Result};
use crate::invariants::LatticeInvariants;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameStatus {
    /// `covol < 1 - (d - 1) / n_Gamma`: a Schwartz Gabor frame exists.
    Guaranteed,
    /// `covol >= 1`: no Schwartz Gabor frame exists.
    Impossible,
    /// Neither holds; the criterion is silent.
    Undecided,
}

impl FrameStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameStatus::Guaranteed => "GUARANTEED",
            FrameStatus::Impossible => "IMPOSSIBLE",
            FrameStatus::Undecided => "UNDECIDED",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "GUARANTEED" => Some(FrameStatus::Guaranteed),
            "IMPOSSIBLE" => Some(FrameStatus::Impossible),
            "UNDECIDED" => Some(FrameStatus::Undecided),
            _ => None,
        }
    }
}

impl fmt::Display for FrameStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameDecision {
    pub status: FrameStatus,
    /// `1 - (d - 1) / n_Gamma`.
    pub threshold: Rational,
    /// `threshold - covol`; positive exactly when the criterion holds.
    pub margin: Rational,
    /// Windows sufficient for a multi-window Schwartz frame.
    pub window_bound_k: Integer,
    /// `floor(covol) + d`, independent of `n_Gamma`.
    pub window_bound_coarse: Integer,
}

pub fn schwartz_frame_criterion(inv: &LatticeInvariants) -> FrameDecision {
    let threshold = Rational::one() - inv.rc_upper_bound();
    let margin = &threshold - &inv.covol;
    let status = if inv.covol >= Rational::one() {
        FrameStatus::Impossible
    } else if margin.is_positive() {
        FrameStatus::Guaranteed
    } else {
        FrameStatus::Undecided
    };
    FrameDecision {
        status,
        threshold,
        margin,
        window_bound_k: multiwindow_bound(inv),
        window_bound_coarse: coarse_window_bound(inv),
    }
}

/// `k = floor(covol + (d - 1) / n_Gamma) + 1`.
pub fn multiwindow_bound(inv: &LatticeInvariants) -> Integer {
    floor(&(&inv.covol + inv.rc_upper_bound())) + Integer::one()
}

/// `floor(covol) + d`.
pub fn coarse_window_bound(inv: &LatticeInvariants) -> Integer {
    floor(&inv.covol) + Integer::from(inv.d)
}

/// `h_1 ... h_d < r^d - (d - 1) gcd(r, h_1) ... gcd(r, h_d)` in integers.
pub fn invariant_factor_criterion(inv: &LatticeInvariants) -> Result<bool> {
    let a = inv
        .arithmetic
        .as_ref()
        .ok_or(Error::NotApplicable("invariant factor criterion"))?;
    let r = &a.order;
    let lhs: Integer = a.h.iter().product();
    let gcds: Integer = a.h.iter().map(|h| r.gcd(h)).product();
    let rhs = num_traits::pow(r.clone(), inv.d) - Integer::from(inv.d - 1) * gcds;
    Ok(lhs < rhs)
}

/// `covol < 1 / d`.
pub fn small_covolume_guarantee(inv: &LatticeInvariants) -> bool {
    inv.covol < Rational::new(Integer::one(), Integer::from(inv.d))
}

/// `covol >= 1 / n_Gamma`, which holds for every rational lattice; `None`
/// when `n_Gamma` is infinite.
pub fn covolume_at_least_inverse_index(inv: &LatticeInvariants) -> Option<bool> {
    let a = inv.arithmetic.as_ref()?;
    Some(&inv.covol * rat_from_int(a.n_gamma.clone()) >= Rational::one())
}

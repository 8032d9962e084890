//! Exact invariants of rational lattices in the time-frequency plane
//! `R^{2d}` and a sufficient criterion for the existence of a Gabor frame
//! with a Schwartz-class window.
//!
//! Everything is computed in arbitrary-precision rationals: the associated
//! skew matrix `theta = M^t J M`, its order and skew normal form, the index
//! `n_Gamma` of the subgroup pairing integrally with the lattice, and the
//! resulting frame decision and multi-window bound.
//!
//! ```
//! use gabor_lattice::{analyze, parse_lattice, FrameStatus};
//!
//! let lattice = parse_lattice("1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1/3").unwrap();
//! let report = analyze(&lattice).unwrap();
//! assert_eq!(report.decision.status, FrameStatus::Guaranteed);
//! ```

pub mod algebra;
pub mod corpus;
pub mod decision;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod oracle;
pub mod par;
pub mod report;
pub mod skew;

pub use decision::{schwartz_frame_criterion, FrameDecision, FrameStatus};
pub use error::{Error, Result};
pub use invariants::{compute_invariants, LatticeInvariants, NGamma};
pub use lattice::Lattice;
pub use par::Execution;
pub use report::{analyze, analyze_with, parse_lattice, run_batch, AnalysisReport, AnalyzeOptions};

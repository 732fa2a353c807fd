//! Central-cut ellipsoid method for systems of linear inequalities.
//!
//! Given constraints `aᵢᵀx ≥ bᵢ` and a radius `R` such that any feasible point
//! of interest lies in the ball `‖x‖ ≤ R`, [`solve`] either returns a point
//! satisfying every constraint or reports that the localizing ellipsoid has
//! shrunk below a volume threshold `ε`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, traces on disk,
//! SVG output and the command-line driver live in the `ellipsoid-cli` crate.
//!
//! ```
//! use ellipsoid_core::{solve, Constraint, LinearSystem, SolveOutcome, SolverConfig, Vector};
//!
//! let sys = LinearSystem::new(
//!     2,
//!     2.0,
//!     vec![
//!         Constraint::at_least(Vector::from_slice(&[1.0, 0.0]).unwrap(), 0.5).unwrap(),
//!         Constraint::at_least(Vector::from_slice(&[0.0, 1.0]).unwrap(), 0.5).unwrap(),
//!     ],
//! )
//! .unwrap();
//! let cfg = SolverConfig::new(1e-6).unwrap();
//! match solve(&sys, &cfg).unwrap() {
//!     SolveOutcome::Feasible { point, .. } => assert!(point[0] >= 0.5 && point[1] >= 0.5),
//!     other => panic!("unexpected outcome {other:?}"),
//! }
//! ```

#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

mod error;

pub mod engine;
pub mod linalg;
pub mod oracle;
pub mod solver;

pub use engine::{log_unit_ball_volume, step_log_ratio, Cut, CutSource, EllipsoidState};
pub use error::{Error, SolveError};
pub use linalg::{Cholesky, SymmetricMatrix, Vector};
pub use oracle::{grid_feasibility_scan, vertex_enumeration_check, OracleVerdict};
pub use solver::{
    certify, iteration_cap, solve, solve_traced, CertDetail, CertReport, Constraint,
    LinearSystem, SolveOutcome, SolverConfig, TraceRecord, TraceSink,
};

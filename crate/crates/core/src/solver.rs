//! The feasibility loop.
//!
//! Starting from the ball of radius `R` about the origin, the solver checks
//! the current center against the constraints in order. The first violated
//! row `aᵀx ≥ b` becomes the central cut `aᵀx ≥ aᵀc`. The loop ends when a
//! center satisfies every row, when the ellipsoid's volume drops below `ε`, or
//! at the iteration cap.
//!
//! In one dimension the cut update is undefined (`n² − 1 = 0`); the loop
//! instead halves the current interval toward the violated side.

use alloc::vec::Vec;

use crate::engine::{log_unit_ball_volume, Cut, CutSource, EllipsoidState};
use crate::error::{Error, SolveError};
use crate::linalg::{SymmetricMatrix, Vector};

/// Default per-row violation tolerance factor; row `i` tolerates `tol·(1 + |bᵢ|)`.
pub const DEFAULT_VIOLATION_TOLERANCE: f64 = 1e-9;

/// Default volume threshold relative to the initial ball's volume.
pub const DEFAULT_RELATIVE_EPSILON: f64 = 1e-8;

/// A row `aᵀx ≥ b`. Rows given as `aᵀx ≤ b` are stored negated.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    normal: Vector,
    bound: f64,
}

impl Constraint {
    /// `normalᵀx ≥ bound`.
    pub fn at_least(normal: Vector, bound: f64) -> Result<Self, Error> {
        if !bound.is_finite() {
            return Err(Error::NonFinite);
        }
        if normal.iter().all(|x| *x == 0.0) {
            return Err(Error::ZeroNormal { index: None });
        }
        Ok(Constraint { normal, bound })
    }

    /// `normalᵀx ≤ bound`, stored as `(−normal)ᵀx ≥ −bound`.
    pub fn at_most(normal: Vector, bound: f64) -> Result<Self, Error> {
        Self::at_least(normal.scaled(-1.0), -bound)
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// `aᵀx − b`; non-negative when satisfied.
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.normal.dot(x) - self.bound
    }

    /// Absolute tolerance for this row given a relative factor.
    pub fn tolerance(&self, factor: f64) -> f64 {
        factor * (1.0 + self.bound.abs())
    }
}

/// `m` rows `aᵢᵀx ≥ bᵢ` in dimension `n`, with a bounding radius `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    dim: usize,
    constraints: Vec<Constraint>,
    radius: f64,
}

impl LinearSystem {
    pub fn new(dim: usize, radius: f64, constraints: Vec<Constraint>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter { name: "radius", value: radius });
        }
        for c in &constraints {
            if c.normal.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.normal.len() });
            }
        }
        Ok(LinearSystem { dim, constraints, radius })
    }

    /// Uses `R = U·√n` for a per-coordinate magnitude bound `U`.
    pub fn with_magnitude_bound(
        dim: usize,
        magnitude: f64,
        constraints: Vec<Constraint>,
    ) -> Result<Self, Error> {
        Self::new(dim, magnitude * libm::sqrt(dim as f64), constraints)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// `ln` of the initial ball's volume.
    pub fn initial_log_volume(&self) -> f64 {
        log_unit_ball_volume(self.dim) + self.dim as f64 * libm::log(self.radius)
    }

    /// Lowest-index row with `aᵀx < b − tol·(1 + |b|)`.
    pub fn find_violated(&self, x: &[f64], tol: f64) -> Result<Option<(usize, &Constraint)>, Error> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(self.constraints.iter().enumerate().find(|(_, c)| c.slack(x) < -c.tolerance(tol)))
    }
}

/// Volume threshold, iteration cap and tolerance for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    epsilon: f64,
    max_iterations: Option<usize>,
    violation_tolerance: f64,
}

impl SolverConfig {
    /// Absolute volume threshold `ε`.
    pub fn new(epsilon: f64) -> Result<Self, Error> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter { name: "epsilon", value: epsilon });
        }
        Ok(SolverConfig {
            epsilon,
            max_iterations: None,
            violation_tolerance: DEFAULT_VIOLATION_TOLERANCE,
        })
    }

    /// `ε = 1e-8 ×` the volume of the system's initial ball.
    pub fn for_system(sys: &LinearSystem) -> Self {
        let epsilon = DEFAULT_RELATIVE_EPSILON * libm::exp(sys.initial_log_volume());
        Self::new(epsilon).unwrap_or(SolverConfig {
            epsilon: f64::MIN_POSITIVE,
            max_iterations: None,
            violation_tolerance: DEFAULT_VIOLATION_TOLERANCE,
        })
    }

    pub fn with_max_iterations(mut self, cap: usize) -> Self {
        self.max_iterations = Some(cap);
        self
    }

    pub fn with_violation_tolerance(mut self, tol: f64) -> Result<Self, Error> {
        if !(tol >= 0.0) || !tol.is_finite() {
            return Err(Error::InvalidParameter { name: "violation tolerance", value: tol });
        }
        self.violation_tolerance = tol;
        Ok(self)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn max_iterations(&self) -> Option<usize> {
        self.max_iterations
    }

    pub fn violation_tolerance(&self) -> f64 {
        self.violation_tolerance
    }
}

/// Result of a solve run.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    /// A center satisfying every row.
    Feasible { point: Vector, iterations: usize },
    /// The ellipsoid's log-volume dropped below `ln ε` before a feasible center was seen.
    VolumeExhausted { final_log_volume: f64, iterations: usize },
    /// The configured iteration cap was hit first.
    IterationCapReached { iterations: usize },
}

impl SolveOutcome {
    pub fn iterations(&self) -> usize {
        match self {
            SolveOutcome::Feasible { iterations, .. }
            | SolveOutcome::VolumeExhausted { iterations, .. }
            | SolveOutcome::IterationCapReached { iterations } => *iterations,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible { .. })
    }
}

/// One visited ellipsoid.
///
/// `violated_index` and `cut_quadratic_form` are `None` on the final record
/// of a feasible run and on a record where the loop stopped before cutting.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    pub violated_index: Option<usize>,
    pub center: Vector,
    pub log_volume: f64,
    /// `aᵀKa` for the violated row's normal `a`.
    pub cut_quadratic_form: Option<f64>,
}

/// Receives one record per visited ellipsoid, in order, from the solving thread.
pub trait TraceSink {
    fn record(&mut self, record: TraceRecord, state: &EllipsoidState);
}

impl TraceSink for Vec<TraceRecord> {
    fn record(&mut self, record: TraceRecord, _state: &EllipsoidState) {
        self.push(record);
    }
}

struct Discard;

impl TraceSink for Discard {
    fn record(&mut self, _record: TraceRecord, _state: &EllipsoidState) {}
}

/// `⌈2(n+1)·(log_V0 − ln ε)⌉`, at least 1.
pub fn iteration_cap(n: usize, log_v0: f64, epsilon: f64) -> usize {
    let k = 2.0 * (n as f64 + 1.0) * (log_v0 - libm::log(epsilon));
    let k = libm::ceil(k);
    if !(k >= 1.0) {
        1
    } else if k >= usize::MAX as f64 {
        usize::MAX
    } else {
        k as usize
    }
}

/// Runs the ellipsoid method on `sys`.
pub fn solve(sys: &LinearSystem, cfg: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    solve_traced(sys, cfg, &mut Discard)
}

/// [`solve`], reporting every visited ellipsoid to `sink`.
pub fn solve_traced(
    sys: &LinearSystem,
    cfg: &SolverConfig,
    sink: &mut dyn TraceSink,
) -> Result<SolveOutcome, SolveError> {
    let n = sys.dim;
    let mut state = EllipsoidState::ball(n, sys.radius, Vector::zeros(n))?;
    let log_eps = libm::log(cfg.epsilon);
    let cap = cfg
        .max_iterations
        .unwrap_or_else(|| iteration_cap(n, state.log_volume(), cfg.epsilon));

    let mut iteration = 0;
    loop {
        let violated = sys.find_violated(state.center(), cfg.violation_tolerance)?;
        let Some((index, row)) = violated else {
            sink.record(trace_record(iteration, None, &state), &state);
            return Ok(SolveOutcome::Feasible { point: state.center().clone(), iterations: iteration });
        };
        if state.log_volume() < log_eps {
            sink.record(trace_record(iteration, None, &state), &state);
            return Ok(SolveOutcome::VolumeExhausted {
                final_log_volume: state.log_volume(),
                iterations: iteration,
            });
        }
        if iteration >= cap {
            sink.record(trace_record(iteration, None, &state), &state);
            return Ok(SolveOutcome::IterationCapReached { iterations: iteration });
        }

        let mut record = trace_record(iteration, Some(index), &state);
        record.cut_quadratic_form = state.shape().quadratic_form(row.normal()).ok();
        sink.record(record, &state);

        let cut = Cut::new(row.normal().clone(), CutSource::Constraint(index))
            .map_err(|cause| SolveError::NumericalBreakdown { iteration, cause })?;
        state = if n == 1 {
            halve_interval(&state, &cut)
        } else {
            state
                .central_cut_update(&cut)
                .map_err(|cause| SolveError::NumericalBreakdown { iteration, cause })?
        };
        iteration += 1;
    }
}

fn trace_record(iteration: usize, violated_index: Option<usize>, state: &EllipsoidState) -> TraceRecord {
    TraceRecord {
        iteration,
        violated_index,
        center: state.center().clone(),
        log_volume: state.log_volume(),
        cut_quadratic_form: None,
    }
}

// Interval [c − r, c + r] → the half on the side of `a`.
fn halve_interval(state: &EllipsoidState, cut: &Cut) -> EllipsoidState {
    let r = libm::sqrt(state.shape().get(0, 0));
    let dir = if cut.normal()[0] > 0.0 { 1.0 } else { -1.0 };
    let center = state.center().add_scaled(dir * 0.5 * r, &Vector::unit(1, 0));
    EllipsoidState::with_parts_unchecked(
        center,
        SymmetricMatrix::scaled_identity(1, 0.25 * r * r),
        state.log_volume() - core::f64::consts::LN_2,
    )
}

/// What [`certify`] checked.
#[derive(Debug, Clone, PartialEq)]
pub enum CertDetail {
    /// Smallest `aᵀx − b` over all rows (`+∞` with no rows) and the row attaining it.
    Feasible { min_slack: f64, worst_index: Option<usize> },
    /// `margin = ln ε − final_log_volume`; positive when the threshold was crossed.
    VolumeExhausted { final_log_volume: f64, log_epsilon: f64, margin: f64 },
    IterationCapReached { iterations: usize },
}

/// Independent re-check of a [`SolveOutcome`].
#[derive(Debug, Clone, PartialEq)]
pub struct CertReport {
    pub passed: bool,
    pub detail: CertDetail,
}

/// Re-checks a feasible point against every row, or a volume certificate
/// against `ln ε`.
pub fn certify(outcome: &SolveOutcome, sys: &LinearSystem, cfg: &SolverConfig) -> CertReport {
    match outcome {
        SolveOutcome::Feasible { point, .. } => {
            if point.len() != sys.dim {
                return CertReport {
                    passed: false,
                    detail: CertDetail::Feasible { min_slack: f64::NEG_INFINITY, worst_index: None },
                };
            }
            let mut min_slack = f64::INFINITY;
            let mut worst_index = None;
            let mut passed = true;
            for (i, c) in sys.constraints.iter().enumerate() {
                let s = c.slack(point);
                if !(s >= -c.tolerance(cfg.violation_tolerance)) {
                    passed = false;
                }
                if s < min_slack {
                    min_slack = s;
                    worst_index = Some(i);
                }
            }
            CertReport { passed, detail: CertDetail::Feasible { min_slack, worst_index } }
        }
        SolveOutcome::VolumeExhausted { final_log_volume, .. } => {
            let log_epsilon = libm::log(cfg.epsilon);
            let margin = log_epsilon - final_log_volume;
            CertReport {
                passed: margin > 0.0,
                detail: CertDetail::VolumeExhausted {
                    final_log_volume: *final_log_volume,
                    log_epsilon,
                    margin,
                },
            }
        }
        SolveOutcome::IterationCapReached { iterations } => CertReport {
            passed: true,
            detail: CertDetail::IterationCapReached { iterations: *iterations },
        },
    }
}

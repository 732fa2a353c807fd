//! Ellipsoid state and the central-cut update.
//!
//! An ellipsoid is stored as a center `c` and a positive-definite shape
//! matrix `K`, describing `{x : (x−c)ᵀK⁻¹(x−c) ≤ 1}`. The update works on `K`
//! directly; `K⁻¹` is never formed.
//!
//! Cuts keep the half `{x : aᵀx ≥ aᵀc}`, so the center moves along `+Ka`.

use crate::error::Error;
use crate::linalg::{SymmetricMatrix, Vector};

/// Smallest `aᵀKa` accepted before taking its square root.
pub const QF_FLOOR: f64 = 1e-300;

/// Slack added to the right-hand side of the membership test.
pub const CONTAINMENT_SLACK: f64 = 1e-9;

/// Smallest accepted cut-normal norm.
pub const MIN_NORMAL_NORM: f64 = 1e-300;

/// `ln` of the volume of the unit ball in `n` dimensions.
///
/// Uses `V₀ = 1`, `V₁ = 2`, `Vₙ = Vₙ₋₂ · 2π/n`.
pub fn log_unit_ball_volume(n: usize) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    let (mut k, mut acc) = if n % 2 == 0 { (2, 0.0) } else { (3, core::f64::consts::LN_2) };
    while k <= n {
        acc += libm::log(two_pi / k as f64);
        k += 2;
    }
    acc
}

/// Exact per-cut change in log-volume for dimension `n ≥ 2`:
/// `½·[n·ln(n²/(n²−1)) + ln((n−1)/(n+1))]`, always `≤ −1/(2(n+1))`.
pub fn step_log_ratio(n: usize) -> Result<f64, Error> {
    if n < 2 {
        return Err(Error::UnsupportedDimension { dim: n, min: 2, max: usize::MAX });
    }
    let nf = n as f64;
    let stretch = -nf * libm::log1p(-1.0 / (nf * nf));
    let squeeze = libm::log1p(-2.0 / (nf + 1.0));
    Ok(0.5 * (stretch + squeeze))
}

/// Where a cut came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSource {
    Constraint(usize),
    Synthetic,
}

/// A central cut `aᵀx ≥ aᵀc` through the current center.
#[derive(Debug, Clone, PartialEq)]
pub struct Cut {
    normal: Vector,
    source: CutSource,
}

impl Cut {
    pub fn new(normal: Vector, source: CutSource) -> Result<Self, Error> {
        if !(normal.norm() > MIN_NORMAL_NORM) {
            let index = match source {
                CutSource::Constraint(i) => Some(i),
                CutSource::Synthetic => None,
            };
            return Err(Error::ZeroNormal { index });
        }
        Ok(Cut { normal, source })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn source(&self) -> CutSource {
        self.source
    }
}

/// Center, shape matrix and running log-volume of an ellipsoid.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipsoidState {
    center: Vector,
    shape: SymmetricMatrix,
    log_volume: f64,
}

impl EllipsoidState {
    /// The unit ball about the origin.
    pub fn unit_ball(n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(EllipsoidState {
            center: Vector::zeros(n),
            shape: SymmetricMatrix::identity(n),
            log_volume: log_unit_ball_volume(n),
        })
    }

    /// The ball of the given radius about `center`, with `K = radius²·I`.
    pub fn ball(n: usize, radius: f64, center: Vector) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter { name: "radius", value: radius });
        }
        if center.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: center.len() });
        }
        Ok(EllipsoidState {
            center,
            shape: SymmetricMatrix::scaled_identity(n, radius * radius),
            log_volume: log_unit_ball_volume(n) + n as f64 * libm::log(radius),
        })
    }

    /// Assembles a state from parts, certifying `shape` and deriving the
    /// log-volume from its determinant.
    pub fn from_parts(center: Vector, shape: SymmetricMatrix) -> Result<Self, Error> {
        let n = shape.dim();
        if center.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: center.len() });
        }
        let log_volume = log_unit_ball_volume(n) + 0.5 * shape.log_det_pd()?;
        Ok(EllipsoidState { center, shape, log_volume })
    }

    pub(crate) fn with_parts_unchecked(
        center: Vector,
        shape: SymmetricMatrix,
        log_volume: f64,
    ) -> Self {
        EllipsoidState { center, shape, log_volume }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn shape(&self) -> &SymmetricMatrix {
        &self.shape
    }

    /// The incrementally maintained log-volume.
    pub fn log_volume(&self) -> f64 {
        self.log_volume
    }

    /// Log-volume recomputed from `ln det K`.
    pub fn audited_log_volume(&self) -> Result<f64, Error> {
        Ok(log_unit_ball_volume(self.dim()) + 0.5 * self.shape.log_det_pd()?)
    }

    /// `(x−c)ᵀK⁻¹(x−c)`, via a Cholesky solve.
    pub fn membership_value(&self, x: &[f64]) -> Result<f64, Error> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        let d: alloc::vec::Vec<f64> = x.iter().zip(self.center.iter()).map(|(a, b)| a - b).collect();
        let y = self.shape.solve_pd(&d)?;
        Ok(y.dot(&d))
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool, Error> {
        Ok(self.membership_value(x)? <= 1.0 + CONTAINMENT_SLACK)
    }

    /// Smallest ellipsoid containing `{x ∈ E : aᵀx ≥ aᵀc}`.
    ///
    /// ```text
    /// c' = c + Ka / ((n+1)·√(aᵀKa))
    /// K' = n²/(n²−1) · (K − 2/(n+1) · KaaᵀK / (aᵀKa))
    /// ```
    ///
    /// The normal is scaled to unit length first, which leaves both formulas
    /// unchanged and keeps the result independent of the normal's magnitude.
    pub fn central_cut_update(&self, cut: &Cut) -> Result<EllipsoidState, Error> {
        let n = self.dim();
        if n < 2 {
            return Err(Error::UnsupportedDimension { dim: n, min: 2, max: usize::MAX });
        }
        let a = cut.normal();
        if a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.len() });
        }
        let norm = a.norm();
        let a_hat = a.scaled(1.0 / norm);
        let ka = self.shape.mat_vec(&a_hat)?;
        let q_hat = ka.dot(&a_hat);
        let q = q_hat * norm * norm;
        if !(q > QF_FLOOR) || !(q_hat > 0.0) {
            return Err(Error::DegenerateCut { quadratic_form: q });
        }
        let w = ka.scaled(1.0 / libm::sqrt(q_hat));

        let nf = n as f64;
        let center = self.center.add_scaled(1.0 / (nf + 1.0), &w);
        let shape = self
            .shape
            .rank1_downdate(&w, 2.0 / (nf + 1.0))?
            .scaled(nf * nf / (nf * nf - 1.0));
        if shape.as_slice().iter().any(|x| !x.is_finite()) {
            return Err(Error::PositiveDefinitenessLost);
        }
        shape.cholesky().map_err(|_| Error::PositiveDefinitenessLost)?;

        Ok(EllipsoidState { center, shape, log_volume: self.log_volume + step_log_ratio(n)? })
    }
}

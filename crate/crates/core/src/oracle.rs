//! Brute-force feasibility oracle for small systems.
//!
//! Shares nothing with the ellipsoid loop beyond the input types. The vertex
//! pass enumerates, for every subset `S` of at most `n` rows, the point of
//! smallest norm on `{x : aᵢᵀx = bᵢ, i ∈ S}`. The empty subset gives the
//! origin and `|S| = n` gives the vertices. The minimum-norm point of the
//! feasible polyhedron is one of these candidates, so when no candidate lies
//! in the bounding ball and satisfies every row, the system has no feasible
//! point in the ball. A grid scan over `[−R, R]ⁿ` (`n ≤ 3`) must also come up
//! empty before the oracle answers [`OracleVerdict::Infeasible`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::{dot, solve_general, Vector};
use crate::solver::{Constraint, LinearSystem};

pub const MAX_ORACLE_DIM: usize = 4;
pub const MAX_ORACLE_CONSTRAINTS: usize = 20;
pub const MAX_GRID_DIM: usize = 3;

/// Grid resolution used by [`vertex_enumeration_check`]: step `R/200`.
pub const CONFIRMATION_GRID_STEPS: usize = 401;

/// Interior nudge applied to candidates, relative to `R`.
const INTERIOR_NUDGE: f64 = 1e-7;

/// Witness acceptance tolerance, scale-adjusted per row.
const WITNESS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleVerdict {
    FeasibleWitness(Vector),
    Infeasible,
    Inconclusive(&'static str),
}

impl OracleVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, OracleVerdict::FeasibleWitness(_))
    }
}

fn row_tolerance(c: &Constraint, radius: f64) -> f64 {
    WITNESS_TOLERANCE * (1.0 + c.bound().abs() + c.normal().norm() * radius)
}

/// Whether `x` satisfies every row (scale-adjusted tolerance).
pub fn satisfies_all(sys: &LinearSystem, x: &[f64]) -> bool {
    sys.constraints().iter().all(|c| c.slack(x) >= -row_tolerance(c, sys.radius()))
}

fn in_ball(sys: &LinearSystem, x: &[f64]) -> bool {
    libm::sqrt(dot(x, x)) <= sys.radius() * (1.0 + WITNESS_TOLERANCE)
}

/// Vertex and face enumeration, confirmed by a grid scan for `n ≤ 3`.
pub fn vertex_enumeration_check(sys: &LinearSystem) -> Result<OracleVerdict, Error> {
    let n = sys.dim();
    let m = sys.constraints().len();
    if n > MAX_ORACLE_DIM || m > MAX_ORACLE_CONSTRAINTS {
        return Err(Error::OracleLimits { dim: n, constraints: m });
    }

    let mut subset: Vec<usize> = Vec::with_capacity(n);
    for size in 0..=n.min(m) {
        subset.clear();
        subset.extend(0..size);
        loop {
            if let Some(x) = min_norm_point(sys, &subset) {
                if let Some(w) = accept_candidate(sys, &subset, x) {
                    return Ok(OracleVerdict::FeasibleWitness(w));
                }
            }
            if !next_combination(&mut subset, m) {
                break;
            }
        }
    }

    if n > MAX_GRID_DIM {
        return Ok(OracleVerdict::Inconclusive("no vertex witness; grid pass unavailable for n > 3"));
    }
    match grid_feasibility_scan(sys, CONFIRMATION_GRID_STEPS)? {
        OracleVerdict::FeasibleWitness(_) => {
            Ok(OracleVerdict::Inconclusive("grid found a point outside the bounding ball"))
        }
        _ => Ok(OracleVerdict::Infeasible),
    }
}

// Advances `idx` to the next k-subset of 0..m in lexicographic order.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// x = Aₛᵀ (AₛAₛᵀ)⁻¹ bₛ, or None when the selected normals are dependent.
fn min_norm_point(sys: &LinearSystem, subset: &[usize]) -> Option<Vec<f64>> {
    let n = sys.dim();
    let rows: Vec<&Constraint> = subset.iter().map(|&i| &sys.constraints()[i]).collect();
    let k = rows.len();
    if k == 0 {
        return Some(vec![0.0; n]);
    }
    let mut gram = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            gram[i * k + j] = rows[i].normal().dot(rows[j].normal());
        }
    }
    let rhs: Vec<f64> = rows.iter().map(|c| c.bound()).collect();
    let lambda = solve_general(k, gram, rhs)?;
    let mut x = vec![0.0; n];
    for (l, c) in lambda.iter().zip(&rows) {
        for (xi, ai) in x.iter_mut().zip(c.normal().iter()) {
            *xi += l * ai;
        }
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn accept_candidate(sys: &LinearSystem, subset: &[usize], x: Vec<f64>) -> Option<Vector> {
    let n = sys.dim();
    let mut inward = vec![0.0; n];
    for &i in subset {
        let a = sys.constraints()[i].normal();
        let norm = a.norm();
        for (d, ai) in inward.iter_mut().zip(a.iter()) {
            *d += ai / norm;
        }
    }
    let mut len = libm::sqrt(dot(&inward, &inward));
    if !(len > 0.0) {
        // no active rows: nudge toward the origin instead
        inward = x.iter().map(|v| -v).collect();
        len = libm::sqrt(dot(&inward, &inward));
    }
    if len > 0.0 {
        let step = INTERIOR_NUDGE * sys.radius() / len;
        let nudged: Vec<f64> = x.iter().zip(&inward).map(|(v, d)| v + step * d).collect();
        if in_ball(sys, &nudged) && satisfies_all(sys, &nudged) {
            return Vector::new(nudged).ok();
        }
    }
    if in_ball(sys, &x) && satisfies_all(sys, &x) {
        return Vector::new(x).ok();
    }
    None
}

/// Scans the grid `−R + j·2R/(steps−1)` on each axis of `[−R, R]ⁿ`, last
/// axis fastest, and returns the first point satisfying every row.
///
/// For each setting of the leading coordinates the rows reduce to an interval
/// on the last coordinate, so only grid points near that interval are tested.
pub fn grid_feasibility_scan(sys: &LinearSystem, steps_per_axis: usize) -> Result<OracleVerdict, Error> {
    let n = sys.dim();
    if n > MAX_GRID_DIM {
        return Err(Error::UnsupportedDimension { dim: n, min: 1, max: MAX_GRID_DIM });
    }
    if steps_per_axis < 2 {
        return Err(Error::InvalidParameter { name: "steps per axis", value: steps_per_axis as f64 });
    }
    let r = sys.radius();
    let h = 2.0 * r / (steps_per_axis - 1) as f64;
    let coord = |j: usize| if j + 1 == steps_per_axis { r } else { -r + j as f64 * h };

    let lead = n - 1;
    let mut prefix = vec![0usize; lead];
    let mut x = vec![0.0; n];
    loop {
        for (xi, &j) in x.iter_mut().zip(&prefix) {
            *xi = coord(j);
        }
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let mut line_possible = true;
        for c in sys.constraints() {
            let a = c.normal();
            let partial = dot(&a[..lead], &x[..lead]);
            let rest = c.bound() - partial;
            let al = a[lead];
            let tol = row_tolerance(c, r);
            if al > 0.0 {
                lo = lo.max((rest - tol) / al);
            } else if al < 0.0 {
                hi = hi.min((rest - tol) / al);
            } else if rest > tol {
                line_possible = false;
                break;
            }
        }
        if line_possible && lo <= hi + h {
            let start = if lo.is_finite() {
                libm::floor((lo + r) / h).max(0.0) as usize
            } else {
                0
            };
            let mut j = start.saturating_sub(1);
            while j < steps_per_axis {
                let t = coord(j);
                if t > hi + h {
                    break;
                }
                x[lead] = t;
                if satisfies_all(sys, &x) {
                    return Ok(OracleVerdict::FeasibleWitness(Vector::new(x)?));
                }
                j += 1;
            }
        }
        if !advance(&mut prefix, steps_per_axis) {
            break;
        }
    }
    Ok(OracleVerdict::Inconclusive("no grid witness"))
}

fn advance(counter: &mut [usize], base: usize) -> bool {
    for d in counter.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

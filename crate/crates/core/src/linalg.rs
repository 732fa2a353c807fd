//! Dense real vectors and symmetric matrices.
//!
//! Everything is stored densely, row-major, with no packed or triangular
//! layout. Symmetric matrices keep `entry(i, j) == entry(j, i)` bit-for-bit:
//! constructors reject or repair asymmetry and every update writes both
//! mirrored entries from a single computed value.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::Error;

/// Relative pivot tolerance for Cholesky, scaled by the pivot row's diagonal entry.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Dense real n-vector with finite entries and `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Vector(entries))
    }

    pub fn from_slice(entries: &[f64]) -> Result<Self, Error> {
        Self::new(entries.to_vec())
    }

    /// The zero vector. Panics if `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "vector dimension must be at least 1");
        Vector(vec![0.0; n])
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = 1.0;
        v
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Inner product. Panics on length mismatch.
    pub fn dot(&self, other: &[f64]) -> f64 {
        assert_eq!(self.0.len(), other.len(), "vector length mismatch");
        dot(&self.0, other)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(dot(&self.0, &self.0))
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| f64::max(m, x.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|x| x * factor).collect())
    }

    /// `self - other`. Panics on length mismatch.
    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `self + factor * other`. Panics on length mismatch.
    pub fn add_scaled(&self, factor: f64, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + factor * b).collect())
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_dim(expected: usize, found: usize) -> Result<(), Error> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Dense symmetric `n × n` matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn identity(n: usize) -> Self {
        Self::scaled_identity(n, 1.0)
    }

    /// `s·I`. Panics if `n == 0`.
    pub fn scaled_identity(n: usize, s: f64) -> Self {
        assert!(n > 0, "matrix dimension must be at least 1");
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = s;
        }
        SymmetricMatrix { dim: n, data }
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self, Error> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if diag.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut data = vec![0.0; n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = *d;
        }
        Ok(SymmetricMatrix { dim: n, data })
    }

    /// Builds from `n*n` row-major entries, which must already be exactly symmetric.
    pub fn from_rows(n: usize, rows: &[f64]) -> Result<Self, Error> {
        let m = Self::from_rows_unchecked(n, rows)?;
        for i in 0..n {
            for j in (i + 1)..n {
                if m.data[i * n + j] != m.data[j * n + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    /// Builds from `n*n` row-major entries, averaging mirrored pairs.
    pub fn from_rows_symmetrized(n: usize, rows: &[f64]) -> Result<Self, Error> {
        let mut m = Self::from_rows_unchecked(n, rows)?;
        m.symmetrize();
        Ok(m)
    }

    fn from_rows_unchecked(n: usize, rows: &[f64]) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        check_dim(n * n, rows.len())?;
        if rows.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(SymmetricMatrix { dim: n, data: rows.to_vec() })
    }

    fn symmetrize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                self.data[i * n + j] = avg;
                self.data[j * n + i] = avg;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// `factor · M`; mirrored entries stay bitwise equal.
    pub fn scaled(&self, factor: f64) -> SymmetricMatrix {
        SymmetricMatrix { dim: self.dim, data: self.data.iter().map(|x| x * factor).collect() }
    }

    /// `Mv`.
    pub fn mat_vec(&self, v: &[f64]) -> Result<Vector, Error> {
        check_dim(self.dim, v.len())?;
        Ok(Vector(self.mat_vec_raw(v)))
    }

    pub(crate) fn mat_vec_raw(&self, v: &[f64]) -> Vec<f64> {
        self.data.chunks_exact(self.dim).map(|row| dot(row, v)).collect()
    }

    /// `vᵀMv`.
    pub fn quadratic_form(&self, v: &[f64]) -> Result<f64, Error> {
        check_dim(self.dim, v.len())?;
        Ok(dot(&self.mat_vec_raw(v), v))
    }

    /// `M − β·wwᵀ`, written so that mirrored entries are bitwise equal.
    pub fn rank1_downdate(&self, w: &[f64], beta: f64) -> Result<SymmetricMatrix, Error> {
        check_dim(self.dim, w.len())?;
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParameter { name: "downdate weight", value: beta });
        }
        let n = self.dim;
        let mut data = self.data.clone();
        for i in 0..n {
            let bw = beta * w[i];
            for j in i..n {
                let upper = self.data[i * n + j] - bw * w[j];
                let lower = self.data[j * n + i] - bw * w[j];
                let value = 0.5 * (upper + lower);
                data[i * n + j] = value;
                data[j * n + i] = value;
            }
        }
        Ok(SymmetricMatrix { dim: n, data })
    }

    /// Cholesky factorization `M = LLᵀ`.
    ///
    /// Pivot `j` must exceed `1e-12 · Mⱼⱼ`, otherwise the result is
    /// [`Error::NotPositiveDefinite`]. Comparing against the row's own diagonal
    /// makes the test invariant under diagonal rescaling `DMD`, so strongly
    /// anisotropic but well-separated matrices still factor.
    pub fn cholesky(&self) -> Result<Cholesky, Error> {
        let n = self.dim;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let row_j = &l[j * n..j * n + j];
            let djj = self.get(j, j);
            let pivot = djj - dot(row_j, row_j);
            if !(djj > 0.0) || !(pivot > PIVOT_TOLERANCE * djj) {
                return Err(Error::NotPositiveDefinite { pivot: j });
            }
            let ljj = libm::sqrt(pivot);
            l[j * n + j] = ljj;
            for i in (j + 1)..n {
                let s = self.get(i, j) - dot(&l[i * n..i * n + j], &l[j * n..j * n + j]);
                l[i * n + j] = s / ljj;
            }
        }
        Ok(Cholesky { dim: n, lower: l })
    }

    /// `ln det M` from the Cholesky factor.
    pub fn log_det_pd(&self) -> Result<f64, Error> {
        Ok(self.cholesky()?.log_det())
    }

    /// Solves `My = rhs` through the Cholesky factor.
    pub fn solve_pd(&self, rhs: &[f64]) -> Result<Vector, Error> {
        check_dim(self.dim, rhs.len())?;
        Ok(Vector(self.cholesky()?.solve_raw(rhs)))
    }
}

/// Lower-triangular Cholesky factor `L` with `LLᵀ = M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky {
    dim: usize,
    lower: Vec<f64>,
}

impl Cholesky {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `L[i][j]`; zero above the diagonal.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.lower[i * self.dim + j]
    }

    /// `2 Σ ln Lᵢᵢ`.
    pub fn log_det(&self) -> f64 {
        2.0 * (0..self.dim).map(|i| libm::log(self.get(i, i))).sum::<f64>()
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vector, Error> {
        check_dim(self.dim, rhs.len())?;
        Ok(Vector(self.solve_raw(rhs)))
    }

    fn solve_raw(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut y = rhs.to_vec();
        // L z = rhs
        for i in 0..n {
            let s = dot(&self.lower[i * n..i * n + i], &y[..i]);
            y[i] = (y[i] - s) / self.get(i, i);
        }
        // Lᵀ y = z
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= self.get(k, i) * y[k];
            }
            y[i] = s / self.get(i, i);
        }
        y
    }

    /// `Lv`, mapping the unit ball onto the ellipsoid `{x : xᵀM⁻¹x ≤ 1}`.
    pub fn lower_mul(&self, v: &[f64]) -> Result<Vector, Error> {
        check_dim(self.dim, v.len())?;
        let n = self.dim;
        Ok(Vector((0..n).map(|i| dot(&self.lower[i * n..i * n + i + 1], &v[..=i])).collect()))
    }

    /// `LLᵀ`.
    pub fn reconstruct(&self) -> SymmetricMatrix {
        let n = self.dim;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let k = j + 1;
                let v = dot(&self.lower[i * n..i * n + k], &self.lower[j * n..j * n + k]);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymmetricMatrix { dim: n, data }
    }
}

/// Solves a general square system `Ax = b` (row-major `a`) by Gaussian
/// elimination with partial pivoting. Returns `None` when a pivot falls
/// below `1e-12` times the largest absolute entry.
pub(crate) fn solve_general(n: usize, mut a: Vec<f64>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    let scale = a.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    if !(scale > 0.0) {
        return None;
    }
    let tol = 1e-12 * scale;
    for col in 0..n {
        let (piv, piv_abs) = (col..n)
            .map(|r| (r, a[r * n + col].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if !(piv_abs > tol) {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        let p = a[col * n + col];
        for r in (col + 1)..n {
            let f = a[r * n + col] / p;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[r * n + k] -= f * a[col * n + k];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s = dot(&a[i * n + i + 1..(i + 1) * n], &x[i + 1..]);
        x[i] = (b[i] - s) / a[i * n + i];
    }
    Some(x)
}

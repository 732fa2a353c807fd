//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use ellipsoid_core::{Constraint, Cut, CutSource, EllipsoidState, LinearSystem, SymmetricMatrix, Vector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn gaussian_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

pub fn unit_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let g = gaussian_vec(rng, n);
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return g.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Uniform point in the unit ball.
pub fn in_unit_ball<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let r = rng.gen::<f64>().powf(1.0 / n as f64);
    unit_vec(rng, n).into_iter().map(|x| r * x).collect()
}

/// `GGᵀ + δI` with Gaussian `G`.
pub fn random_pd<R: Rng>(rng: &mut R, n: usize, delta: f64) -> SymmetricMatrix {
    let g = gaussian_vec(rng, n * n);
    let mut k = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            k[i * n + j] = (0..n).map(|t| g[i * n + t] * g[j * n + t]).sum();
        }
        k[i * n + i] += delta;
    }
    SymmetricMatrix::from_rows(n, &k).unwrap()
}

/// A random ellipsoid with a random nonzero cut normal.
pub fn random_state_and_cut<R: Rng>(rng: &mut R, n: usize) -> (EllipsoidState, Cut) {
    let shape = random_pd(rng, n, 0.1);
    let center = Vector::new(gaussian_vec(rng, n)).unwrap();
    let state = EllipsoidState::from_parts(center, shape).unwrap();
    let cut = Cut::new(Vector::new(unit_vec(rng, n)).unwrap(), CutSource::Synthetic).unwrap();
    (state, cut)
}

/// A system whose feasible set contains the ball of radius `rho` about a
/// hidden point, itself inside the bounding ball.
pub fn feasible_instance<R: Rng>(rng: &mut R, n: usize, m: usize, rho: f64) -> (LinearSystem, Vec<f64>) {
    let radius = rng.gen_range(1.0..3.0);
    let p: Vec<f64> = in_unit_ball(rng, n).into_iter().map(|x| x * (radius - rho) * 0.999).collect();
    let rows = (0..m)
        .map(|i| {
            let a = unit_vec(rng, n);
            let ap: f64 = a.iter().zip(&p).map(|(x, y)| x * y).sum();
            // every third row is tight against the hidden ball
            let loose = if i % 3 == 0 { 0.0 } else { rng.gen_range(0.0..0.5) };
            let scale = rng.gen_range(0.5..4.0);
            let a: Vec<f64> = a.into_iter().map(|x| x * scale).collect();
            let b = scale * (ap - rho - loose);
            if rng.gen_bool(0.5) {
                Constraint::at_least(Vector::new(a).unwrap(), b).unwrap()
            } else {
                let neg: Vec<f64> = a.iter().map(|x| -x).collect();
                Constraint::at_most(Vector::new(neg).unwrap(), -b).unwrap()
            }
        })
        .collect();
    (LinearSystem::new(n, radius, rows).unwrap(), p)
}

/// A Farkas-infeasible system: `n + 1` rows with `Σ λᵢaᵢ = 0`, `λ > 0`, and
/// `Σ λᵢbᵢ > 0`, padded with random rows up to `m` and shuffled.
pub fn infeasible_instance<R: Rng>(rng: &mut R, n: usize, m: usize) -> LinearSystem {
    assert!(m >= n + 1);
    let mut rows = Vec::with_capacity(m);
    let mut sum_a = vec![0.0; n];
    let mut sum_b = 0.0;
    for _ in 0..n {
        let a = unit_vec(rng, n);
        let lambda = rng.gen_range(0.3..1.0);
        let b = rng.gen_range(-0.5..0.5);
        for (s, x) in sum_a.iter_mut().zip(&a) {
            *s += lambda * x;
        }
        sum_b += lambda * b;
        rows.push(Constraint::at_least(Vector::new(a).unwrap(), b).unwrap());
    }
    let gap = rng.gen_range(0.2..1.0);
    let closing: Vec<f64> = sum_a.iter().map(|x| -x).collect();
    rows.push(Constraint::at_least(Vector::new(closing).unwrap(), -sum_b + gap).unwrap());
    while rows.len() < m {
        let a = unit_vec(rng, n);
        rows.push(Constraint::at_least(Vector::new(a).unwrap(), rng.gen_range(-2.0..0.0)).unwrap());
    }
    for i in (1..rows.len()).rev() {
        rows.swap(i, rng.gen_range(0..=i));
    }
    LinearSystem::new(n, rng.gen_range(1.0..3.0), rows).unwrap()
}

//! Time scan of the resonant Jaynes-Cummings thermal operation.
//!
//! Coupling a qubit to one bosonic mode with `g(σ₊a + σ₋a†)` rotates the
//! `n`-th energy block by the angle `g t √n`. The realized mixing weight at
//! coupling time `t` is
//!
//! ```text
//! λ(t) = (1 - e^{-βω}) Σ_{n≥1} sin²(g t √n) e^{-βω(n-1)}
//! ```
//!
//! and its maximum over a time grid is a lower bound on the largest weight a
//! Jaynes-Cummings coupling can reach.

use rayon::prelude::*;
use serde::Serialize;

use super::argmax_first;
use crate::error::{EngineError, Result};
use crate::thermal::check_beta_omega;

/// Neglected bath weight must fall below this.
const TRUNCATION_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JcScan {
    /// Largest `λ` on the grid.
    pub lambda: f64,
    /// Dimensionless coupling time `g t` where it was found.
    pub gt: f64,
}

/// `10⁵` evenly spaced `g t` values over `[0, 200]`.
pub fn default_jc_grid() -> Vec<f64> {
    let n = 100_000;
    (0..n).map(|k| 200.0 * k as f64 / (n - 1) as f64).collect()
}

fn check_truncation(beta_omega: f64, truncation: usize) -> Result<()> {
    check_beta_omega(beta_omega)?;
    if (-beta_omega * truncation as f64).exp() >= TRUNCATION_TAIL {
        let required = if beta_omega > 0.0 {
            format!("{}", (-(TRUNCATION_TAIL.ln()) / beta_omega).floor() as u64 + 1)
        } else {
            "unbounded (beta*omega = 0)".to_string()
        };
        return Err(EngineError::Resource(format!(
            "truncation {truncation} too small at beta*omega = {beta_omega}; need at least {required}"
        )));
    }
    Ok(())
}

struct Terms {
    freqs: Vec<f64>,
    weights: Vec<f64>,
}

impl Terms {
    fn new(beta_omega: f64, truncation: usize) -> Self {
        let x = (-beta_omega).exp();
        let (freqs, weights) = (1..=truncation)
            .map(|n| ((n as f64).sqrt(), (1.0 - x) * x.powi(n as i32 - 1)))
            .take_while(|&(_, w)| w > 0.0)
            .unzip();
        Self { freqs, weights }
    }

    fn lambda(&self, gt: f64) -> f64 {
        self.freqs
            .iter()
            .zip(&self.weights)
            .map(|(f, w)| w * (gt * f).sin().powi(2))
            .sum()
    }
}

/// Mixing weight realized at one coupling time.
pub fn jc_lambda_at(beta_omega: f64, gt: f64, truncation: usize) -> Result<f64> {
    check_truncation(beta_omega, truncation)?;
    Ok(Terms::new(beta_omega, truncation).lambda(gt))
}

/// Maximum realized mixing weight over a grid of coupling times.
///
/// Ties resolve to the earliest grid point, independent of thread scheduling.
pub fn jc_time_scan(beta_omega: f64, gt_grid: &[f64], truncation: usize) -> Result<JcScan> {
    check_truncation(beta_omega, truncation)?;
    if gt_grid.is_empty() || gt_grid.iter().any(|t| !t.is_finite()) {
        return Err(crate::error::invalid("coupling-time grid must be nonempty and finite"));
    }
    let terms = Terms::new(beta_omega, truncation);
    let values: Vec<f64> = gt_grid.par_iter().map(|&t| terms.lambda(t)).collect();
    let (i, lambda) = argmax_first(values).expect("grid is nonempty");
    Ok(JcScan { lambda, gt: gt_grid[i] })
}

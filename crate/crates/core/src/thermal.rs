//! Qubit thermal processes.
//!
//! On an energy-incoherent qubit every thermal operation at inverse
//! temperature β acts on populations as a mixture of the identity and the
//! extremal Gibbs-stochastic matrix
//!
//! ```text
//! [ 1 - e^{-βω}   1 ]
//! [   e^{-βω}     0 ]
//! ```
//!
//! so the set reachable from `p` is the segment from `p` to the extremal
//! image, parametrized by a mixing weight `λ`. Restricted baths shrink the
//! segment to `λ ∈ [0, λ_max]`.

use crate::error::{invalid, EngineError, Result};
use crate::populations::{PopulationVector, PROB_TOL};

pub(crate) fn check_beta_omega(beta_omega: f64) -> Result<()> {
    if !beta_omega.is_finite() || beta_omega < 0.0 {
        return Err(invalid(format!("beta*omega = {beta_omega} must be finite and >= 0")));
    }
    Ok(())
}

pub(crate) fn check_qubit(p: &PopulationVector) -> Result<()> {
    if p.len() != 2 {
        return Err(invalid(format!("expected a qubit, got dimension {}", p.len())));
    }
    Ok(())
}

/// A column-stochastic 2×2 matrix that fixes the qubit Gibbs vector at `beta_omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalProcess {
    matrix: [[f64; 2]; 2],
    beta_omega: f64,
}

impl ThermalProcess {
    pub fn identity(beta_omega: f64) -> Result<Self> {
        check_beta_omega(beta_omega)?;
        Ok(Self {
            matrix: [[1.0, 0.0], [0.0, 1.0]],
            beta_omega,
        })
    }

    /// `λ · extremal + (1 - λ) · identity`.
    pub fn mixture(weight: MixingWeight, beta_omega: f64) -> Result<Self> {
        let e = extremal_process(beta_omega)?;
        let l = weight.lambda();
        let mut matrix = e.matrix;
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, m) in row.iter_mut().enumerate() {
                let id = if i == j { 1.0 } else { 0.0 };
                *m = l * *m + (1.0 - l) * id;
            }
        }
        Ok(Self { matrix, beta_omega })
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.matrix
    }

    pub fn beta_omega(&self) -> f64 {
        self.beta_omega
    }

    pub fn apply(&self, p: &PopulationVector) -> Result<PopulationVector> {
        check_qubit(p)?;
        let [a, b] = [p.entries()[0], p.entries()[1]];
        let m = &self.matrix;
        PopulationVector::from_arithmetic(vec![m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b])
    }

    /// Columns sum to one and all entries lie in `[0, 1]`.
    pub fn is_stochastic(&self) -> bool {
        let m = &self.matrix;
        (0..2).all(|j| (m[0][j] + m[1][j] - 1.0).abs() <= PROB_TOL)
            && m.iter().flatten().all(|v| (-PROB_TOL..=1.0 + PROB_TOL).contains(v))
    }

    /// Residual of `T γ - γ` in the max norm.
    pub fn gibbs_residual(&self) -> f64 {
        let x = (-self.beta_omega).exp();
        let g = [1.0 / (1.0 + x), x / (1.0 + x)];
        let m = &self.matrix;
        (0..2)
            .map(|i| (m[i][0] * g[0] + m[i][1] * g[1] - g[i]).abs())
            .fold(0.0, f64::max)
    }
}

pub fn extremal_process(beta_omega: f64) -> Result<ThermalProcess> {
    check_beta_omega(beta_omega)?;
    let x = (-beta_omega).exp();
    Ok(ThermalProcess {
        matrix: [[1.0 - x, 1.0], [x, 0.0]],
        beta_omega,
    })
}

/// Mixing weight `λ` constrained to `[0, λ_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingWeight {
    lambda: f64,
    lambda_max: f64,
}

impl MixingWeight {
    /// Strict validation: out-of-range weights are errors, never clamped.
    pub fn new(lambda: f64, lambda_max: f64) -> Result<Self> {
        if !(lambda_max.is_finite() && (0.0..=1.0).contains(&lambda_max)) {
            return Err(EngineError::OutOfRange {
                name: "lambda_max",
                value: lambda_max,
                max: 1.0,
            });
        }
        if !(lambda.is_finite() && (0.0..=lambda_max).contains(&lambda)) {
            return Err(EngineError::OutOfRange {
                name: "lambda",
                value: lambda,
                max: lambda_max,
            });
        }
        Ok(Self { lambda, lambda_max })
    }

    /// Weight with the full unrestricted range.
    pub fn unrestricted(lambda: f64) -> Result<Self> {
        Self::new(lambda, 1.0)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }
}

/// `λ · (extremal image of p) + (1 - λ) · p`.
pub fn apply_mixture(weight: MixingWeight, beta_omega: f64, p: &PopulationVector) -> Result<PopulationVector> {
    check_beta_omega(beta_omega)?;
    check_qubit(p)?;
    let x = (-beta_omega).exp();
    let l = weight.lambda();
    let (p0, p1) = (p.entries()[0], p.entries()[1]);
    PopulationVector::from_arithmetic(vec![l * (1.0 - p0 * x) + (1.0 - l) * p0, l * p0 * x + (1.0 - l) * p1])
}

/// The two ends of the restricted thermal segment reachable from `p`.
pub fn polytope_extremes(
    p: &PopulationVector,
    beta_omega: f64,
    lambda_max: f64,
) -> Result<(PopulationVector, PopulationVector)> {
    let far = apply_mixture(MixingWeight::new(lambda_max, lambda_max)?, beta_omega, p)?;
    Ok((p.clone(), far))
}

//! Finite-bath thermal operations simulated in the block basis.
//!
//! With `H_S = ω|1⟩⟨1|` and a resonant bath `H_E = ω Σ_{n=0}^{d} n|n⟩⟨n|`,
//! an energy-conserving unitary decomposes into a 1×1 block on `|0,0⟩`,
//! a 2×2 block `V_j` on `{|0,j⟩, |1,j-1⟩}` for each `j = 1..d`, and a 1×1
//! block on `|1,d⟩`. The joint state is stored in the same blocks.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{invalid, EngineError, Result};
use crate::populations::PopulationVector;
use crate::thermal::{check_beta_omega, check_qubit};

/// Largest bath dimension parameter accepted by the simulator.
pub const MAX_BATH_D: usize = 10_000;

/// Largest number of grid points an exhaustive angle scan may visit.
const MAX_SCAN_POINTS: f64 = 5e7;

type Block = [[Complex64; 2]; 2];

/// Angles of the 2×2 special-unitary blocks
/// `[[e^{iφ}cosθ, e^{iα}sinθ], [-e^{-iα}sinθ, e^{-iφ}cosθ]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockUnitarySpec {
    thetas: Vec<f64>,
    phis: Vec<f64>,
    alphas: Vec<f64>,
}

impl BlockUnitarySpec {
    pub fn new(thetas: Vec<f64>, phis: Vec<f64>, alphas: Vec<f64>) -> Result<Self> {
        if thetas.len() != phis.len() || thetas.len() != alphas.len() {
            return Err(invalid("theta, phi and alpha lists must have equal length"));
        }
        if thetas.iter().chain(&phis).chain(&alphas).any(|a| !a.is_finite()) {
            return Err(invalid("non-finite rotation angle"));
        }
        Ok(Self { thetas, phis, alphas })
    }

    /// Real rotations, all phases zero.
    pub fn from_thetas(thetas: Vec<f64>) -> Self {
        let d = thetas.len();
        Self {
            thetas,
            phis: vec![0.0; d],
            alphas: vec![0.0; d],
        }
    }

    pub fn uniform(d: usize, theta: f64) -> Self {
        Self::from_thetas(vec![theta; d])
    }

    pub fn random<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let tau = std::f64::consts::TAU;
        let mut draw = || (0..d).map(|_| rng.gen_range(0.0..tau)).collect::<Vec<_>>();
        let thetas = draw();
        let phis = draw();
        let alphas = draw();
        Self { thetas, phis, alphas }
    }

    /// Same rotation angles, new phases.
    pub fn with_phases(&self, phis: Vec<f64>, alphas: Vec<f64>) -> Result<Self> {
        Self::new(self.thetas.clone(), phis, alphas)
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    fn block(&self, j: usize) -> Block {
        let (s, c) = self.thetas[j].sin_cos();
        let phi = Complex64::from_polar(1.0, self.phis[j]);
        let alpha = Complex64::from_polar(1.0, self.alphas[j]);
        [[phi * c, alpha * s], [-alpha.conj() * s, phi.conj() * c]]
    }
}

/// Joint system ⊗ bath state restricted to the energy-conserving blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    ground: f64,
    blocks: Vec<Block>,
    top: f64,
}

fn check_bath_d(d: usize) -> Result<()> {
    if d < 1 {
        return Err(invalid("bath needs d >= 1"));
    }
    if d > MAX_BATH_D {
        return Err(EngineError::Resource(format!(
            "bath dimension d = {d} exceeds {MAX_BATH_D}"
        )));
    }
    Ok(())
}

impl JointState {
    /// `ρ_S ⊗ γ_E` for a diagonal qubit state and a `(d + 1)`-level thermal bath.
    pub fn product(p: &PopulationVector, beta_omega: f64, d: usize) -> Result<Self> {
        check_qubit(p)?;
        check_beta_omega(beta_omega)?;
        check_bath_d(d)?;
        let x = (-beta_omega).exp();
        let weights: Vec<f64> = (0..=d).map(|n| x.powi(n as i32)).collect();
        let z: f64 = weights.iter().sum();
        let (p0, p1) = (p.entries()[0], p.entries()[1]);
        let zero = Complex64::new(0.0, 0.0);
        let blocks = (1..=d)
            .map(|j| {
                [
                    [Complex64::new(p0 * weights[j] / z, 0.0), zero],
                    [zero, Complex64::new(p1 * weights[j - 1] / z, 0.0)],
                ]
            })
            .collect();
        Ok(Self {
            ground: p0 / z,
            blocks,
            top: p1 * weights[d] / z,
        })
    }

    pub fn bath_d(&self) -> usize {
        self.blocks.len()
    }

    pub fn trace(&self) -> f64 {
        self.ground + self.top + self.blocks.iter().map(|b| b[0][0].re + b[1][1].re).sum::<f64>()
    }

    /// Every block is Hermitian positive semidefinite within `tol`.
    pub fn is_positive(&self, tol: f64) -> bool {
        self.ground >= -tol
            && self.top >= -tol
            && self.blocks.iter().all(|b| {
                let (a, d) = (b[0][0], b[1][1]);
                let herm = (b[0][1] - b[1][0].conj()).norm() <= tol && a.im.abs() <= tol && d.im.abs() <= tol;
                herm && a.re >= -tol && d.re >= -tol && a.re * d.re - b[0][1].norm_sqr() >= -tol
            })
    }

    /// `U ρ U†` for the block-diagonal unitary described by `spec`.
    pub fn conjugate(&self, spec: &BlockUnitarySpec) -> Result<Self> {
        if spec.len() != self.blocks.len() {
            return Err(invalid(format!(
                "unitary has {} blocks but the bath needs {}",
                spec.len(),
                self.blocks.len()
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(j, rho)| {
                let v = spec.block(j);
                mul(&mul(&v, rho), &adjoint(&v))
            })
            .collect();
        Ok(Self {
            ground: self.ground,
            blocks,
            top: self.top,
        })
    }

    /// Populations of the system after tracing out the bath.
    pub fn system_populations(&self) -> Result<PopulationVector> {
        let ground = self.ground + self.blocks.iter().map(|b| b[0][0].re).sum::<f64>();
        let excited = self.top + self.blocks.iter().map(|b| b[1][1].re).sum::<f64>();
        PopulationVector::from_arithmetic(vec![ground, excited])
    }
}

fn mul(a: &Block, b: &Block) -> Block {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn adjoint(a: &Block) -> Block {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

/// Applies the finite-bath thermal operation to a diagonal qubit state.
pub fn simulate_finite_bath_map(
    p: &PopulationVector,
    beta_omega: f64,
    d: usize,
    spec: &BlockUnitarySpec,
) -> Result<PopulationVector> {
    JointState::product(p, beta_omega, d)?
        .conjugate(spec)?
        .system_populations()
}

/// `λ = (1/Z) Σ_j sin²θ_j e^{-βω(j-1)}`, the mixing weight realized by `spec`.
pub fn achieved_lambda(spec: &BlockUnitarySpec, beta_omega: f64, d: usize) -> Result<f64> {
    check_beta_omega(beta_omega)?;
    check_bath_d(d)?;
    if spec.len() != d {
        return Err(invalid(format!("unitary has {} blocks, expected {d}", spec.len())));
    }
    let x = (-beta_omega).exp();
    let z: f64 = (0..=d).map(|n| x.powi(n as i32)).sum();
    let s: f64 = spec
        .thetas()
        .iter()
        .enumerate()
        .map(|(j, t)| t.sin().powi(2) * x.powi(j as i32))
        .sum();
    Ok(s / z)
}

/// Mixing weight read off a simulation: starting from the excited state the
/// mixture's ground population is exactly `λ`.
fn simulated_lambda(beta_omega: f64, d: usize, thetas: &[f64]) -> Result<f64> {
    let excited = PopulationVector::qubit(0.0)?;
    let spec = BlockUnitarySpec::from_thetas(thetas.to_vec());
    Ok(simulate_finite_bath_map(&excited, beta_omega, d, &spec)?.ground())
}

fn angle_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// Largest mixing weight found by searching over the block rotation angles.
///
/// For `d <= 4` every tuple on a `grid`-point mesh of `[0, π]` is simulated,
/// followed by one local refinement mesh around the best tuple. Larger baths
/// use coordinate ascent (grid search plus golden-section refinement per
/// angle). Phases are irrelevant for diagonal inputs and kept at zero.
pub fn scan_lambda_max(beta_omega: f64, d: usize, grid: usize) -> Result<f64> {
    check_beta_omega(beta_omega)?;
    check_bath_d(d)?;
    if grid < 3 {
        return Err(invalid("angle scans need at least 3 grid points"));
    }
    if d <= 4 {
        exhaustive_scan(beta_omega, d, grid)
    } else {
        coordinate_ascent(beta_omega, d, grid)
    }
}

fn exhaustive_scan(beta_omega: f64, d: usize, grid: usize) -> Result<f64> {
    if (grid as f64).powi(d as i32) > MAX_SCAN_POINTS {
        return Err(EngineError::Resource(format!(
            "{grid}^{d} angle tuples exceed the exhaustive scan limit"
        )));
    }
    let pi = std::f64::consts::PI;
    let (coarse, best_angles) = mesh_max(beta_omega, d, &vec![angle_grid(0.0, pi, grid); d])?;
    let step = pi / (grid - 1) as f64;
    let local: Vec<Vec<f64>> = best_angles
        .iter()
        .map(|&t| angle_grid((t - step).max(0.0), (t + step).min(pi), grid))
        .collect();
    let (refined, _) = mesh_max(beta_omega, d, &local)?;
    Ok(coarse.max(refined))
}

/// Maximum over the Cartesian product of per-angle meshes.
fn mesh_max(beta_omega: f64, d: usize, axes: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    let mut idx = vec![0usize; d];
    let mut best = f64::NEG_INFINITY;
    let mut best_angles = Vec::new();
    let mut angles: Vec<f64> = axes.iter().map(|a| a[0]).collect();
    loop {
        let v = simulated_lambda(beta_omega, d, &angles)?;
        if v > best {
            best = v;
            best_angles = angles.clone();
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == d {
                return Ok((best, best_angles));
            }
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                angles[k] = axes[k][idx[k]];
                break;
            }
            idx[k] = 0;
            angles[k] = axes[k][0];
            k += 1;
        }
    }
}

fn coordinate_ascent(beta_omega: f64, d: usize, grid: usize) -> Result<f64> {
    let pi = std::f64::consts::PI;
    let mesh = angle_grid(0.0, pi, grid);
    let step = pi / (grid - 1) as f64;
    let mut angles = vec![0.0; d];
    let mut current = simulated_lambda(beta_omega, d, &angles)?;
    for _sweep in 0..50 {
        let start = current;
        for j in 0..d {
            let eval = |t: f64| -> Result<f64> {
                let mut trial = angles.clone();
                trial[j] = t;
                simulated_lambda(beta_omega, d, &trial)
            };
            let mut best_t = angles[j];
            let mut best_v = current;
            for &t in &mesh {
                let v = eval(t)?;
                if v > best_v {
                    best_v = v;
                    best_t = t;
                }
            }
            // Golden-section refinement inside the bracketing mesh cell pair.
            let (mut a, mut b) = ((best_t - step).max(0.0), (best_t + step).min(pi));
            let g = (5f64.sqrt() - 1.0) / 2.0;
            let mut c = b - g * (b - a);
            let mut e = a + g * (b - a);
            let (mut fc, mut fe) = (eval(c)?, eval(e)?);
            for _ in 0..80 {
                if fc > fe {
                    b = e;
                    e = c;
                    fe = fc;
                    c = b - g * (b - a);
                    fc = eval(c)?;
                } else {
                    a = c;
                    c = e;
                    fc = fe;
                    e = a + g * (b - a);
                    fe = eval(e)?;
                }
            }
            for (t, v) in [(c, fc), (e, fe)] {
                if v > best_v {
                    best_v = v;
                    best_t = t;
                }
            }
            angles[j] = best_t;
            current = best_v;
        }
        if current - start <= 1e-15 {
            break;
        }
    }
    Ok(current)
}

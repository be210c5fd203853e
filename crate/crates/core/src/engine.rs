//! The three-stroke qubit engine.
//!
//! A cycle is heat stroke (thermal operation with the hot bath), work
//! stroke (population permutation), cold stroke (thermal operation with the
//! cold bath), and it closes when the cold stroke returns the working body to
//! its initial populations. Energies, heats and work are in units of `ω`;
//! temperatures appear only as `β_H ω` and `β_C ω`.
//!
//! Two independent routes are provided: stroke-by-stroke simulation
//! ([`run_cycle`], [`cyclic_state`]) and the closed-form optimum
//! ([`optimal_performance`]). Tests and the verification suite check them
//! against each other.

use serde::Serialize;

use crate::ergotropy::WorkPermutation;
use crate::error::{EngineError, Result};
use crate::populations::PopulationVector;
use crate::thermal::{apply_mixture, check_beta_omega, check_qubit, MixingWeight};

/// Closure tolerance for a simulated cycle.
pub const CLOSURE_TOL: f64 = 1e-10;

/// Tolerance of the first-law identity `W = Q_H + Q_C`.
pub const FIRST_LAW_TOL: f64 = 1e-12;

/// Slack allowed above the Carnot bound.
pub const CARNOT_TOL: f64 = 1e-12;

/// `|Q_H|` at or below this is treated as zero heat intake.
pub const ZERO_HEAT: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EngineParams {
    beta_h_omega: f64,
    beta_c_omega: f64,
    lambda_h_max: f64,
    lambda_c_max: f64,
}

impl EngineParams {
    pub fn new(beta_h_omega: f64, beta_c_omega: f64, lambda_h_max: f64, lambda_c_max: f64) -> Result<Self> {
        check_beta_omega(beta_h_omega)?;
        check_beta_omega(beta_c_omega)?;
        for (name, v) in [("lambda_h_max", lambda_h_max), ("lambda_c_max", lambda_c_max)] {
            if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
                return Err(EngineError::OutOfRange {
                    name,
                    value: v,
                    max: 1.0,
                });
            }
        }
        Ok(Self {
            beta_h_omega,
            beta_c_omega,
            lambda_h_max,
            lambda_c_max,
        })
    }

    /// Both strokes may use any thermal operation (`λ_max = 1` on each side).
    pub fn unrestricted(beta_h_omega: f64, beta_c_omega: f64) -> Result<Self> {
        Self::new(beta_h_omega, beta_c_omega, 1.0, 1.0)
    }

    pub fn beta_h_omega(&self) -> f64 {
        self.beta_h_omega
    }

    pub fn beta_c_omega(&self) -> f64 {
        self.beta_c_omega
    }

    pub fn lambda_h_max(&self) -> f64 {
        self.lambda_h_max
    }

    pub fn lambda_c_max(&self) -> f64 {
        self.lambda_c_max
    }

    /// Set when the "cold" bath is not colder than the hot one.
    pub fn cold_hotter(&self) -> bool {
        self.beta_c_omega <= self.beta_h_omega
    }

    pub fn is_unrestricted(&self) -> bool {
        self.lambda_h_max == 1.0 && self.lambda_c_max == 1.0
    }

    /// `1 - β_H / β_C`; undefined when `β_C = 0`.
    pub fn carnot(&self) -> Option<f64> {
        (self.beta_c_omega > 0.0).then(|| 1.0 - self.beta_h_omega / self.beta_c_omega)
    }

    fn x_h(&self) -> f64 {
        (-self.beta_h_omega).exp()
    }

    fn x_c(&self) -> f64 {
        (-self.beta_c_omega).exp()
    }
}

/// Energy of a qubit population vector in units of `ω`.
fn energy(p: &PopulationVector) -> f64 {
    p.entries()[1]
}

fn efficiency(work: f64, q_hot: f64) -> Option<f64> {
    (q_hot.abs() > ZERO_HEAT).then(|| work / q_hot)
}

/// Heat stroke: returns the new populations and `Q_H = E(out) - E(in)`.
pub fn heat_stroke(p: &PopulationVector, lambda: f64, params: &EngineParams) -> Result<(PopulationVector, f64)> {
    check_qubit(p)?;
    let w = MixingWeight::new(lambda, params.lambda_h_max)?;
    let out = apply_mixture(w, params.beta_h_omega, p)?;
    let q_hot = energy(&out) - energy(p);
    Ok((out, q_hot))
}

/// Work stroke: returns the permuted populations and `W = E(before) - E(after)`.
pub fn work_stroke(p: &PopulationVector, perm: &WorkPermutation) -> Result<(PopulationVector, f64)> {
    check_qubit(p)?;
    let out = perm.apply(p)?;
    let work = energy(p) - energy(&out);
    Ok((out, work))
}

/// Cold stroke: returns the new populations and the energy change `E(out) - E(in)`.
pub fn cold_stroke(p: &PopulationVector, lambda: f64, params: &EngineParams) -> Result<(PopulationVector, f64)> {
    check_qubit(p)?;
    let w = MixingWeight::new(lambda, params.lambda_c_max)?;
    let out = apply_mixture(w, params.beta_c_omega, p)?;
    let delta = energy(&out) - energy(p);
    Ok((out, delta))
}

/// Bookkeeping for one pass through the three strokes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleReport {
    pub q_hot: f64,
    pub work: f64,
    /// Heat released to the cold side, `E(p0) - E(after work)` when the
    /// cycle closes, otherwise the cold stroke's energy change.
    pub q_cold: f64,
    pub efficiency: Option<f64>,
    pub closes: bool,
    /// Max-norm distance between the final and initial populations.
    pub closure_error: f64,
    /// Populations after the heat, work and cold strokes.
    pub populations: [PopulationVector; 3],
    pub cold_hotter: bool,
}

pub fn run_cycle(
    p0: &PopulationVector,
    lambda_h: f64,
    lambda_c: f64,
    perm: &WorkPermutation,
    params: &EngineParams,
) -> Result<CycleReport> {
    let (after_heat, q_hot) = heat_stroke(p0, lambda_h, params)?;
    let (after_work, work) = work_stroke(&after_heat, perm)?;
    let (after_cold, cold_delta) = cold_stroke(&after_work, lambda_c, params)?;
    let closure_error = after_cold.max_abs_diff(p0);
    let closes = closure_error <= CLOSURE_TOL;
    let q_cold = if closes {
        energy(p0) - energy(&after_work)
    } else {
        cold_delta
    };
    Ok(CycleReport {
        q_hot,
        work,
        q_cold,
        efficiency: efficiency(work, q_hot),
        closes,
        closure_error,
        populations: [after_heat, after_work, after_cold],
        cold_hotter: params.cold_hotter(),
    })
}

/// Ground population of the state that the cycle `cold ∘ perm ∘ heat` returns to.
///
/// Each stroke is affine in `p`, so the fixed point solves a single linear
/// equation. `swap` selects the bit flip `X`, otherwise the identity.
pub fn cyclic_state_with(lambda_h: f64, lambda_c: f64, swap: bool, params: &EngineParams) -> Result<f64> {
    for (name, v) in [("lambda_h", lambda_h), ("lambda_c", lambda_c)] {
        if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
            return Err(EngineError::OutOfRange {
                name,
                value: v,
                max: 1.0,
            });
        }
    }
    // heat: p -> slope_h p + lambda_h
    let slope_h = 1.0 - lambda_h * (1.0 + params.x_h());
    let (slope_w, offset_w) = if swap {
        (-slope_h, 1.0 - lambda_h)
    } else {
        (slope_h, lambda_h)
    };
    // cold: z -> lambda_c + slope_c z
    let slope_c = 1.0 - lambda_c * (1.0 + params.x_c());
    let denom = 1.0 - slope_c * slope_w;
    if denom.abs() < 1e-14 {
        return Err(EngineError::SingularCycle);
    }
    let p = (lambda_c + slope_c * offset_w) / denom;
    Ok(p.clamp(0.0, 1.0))
}

/// Cyclic ground population for the optimal work stroke `X`.
pub fn cyclic_state(lambda_h: f64, lambda_c: f64, params: &EngineParams) -> Result<f64> {
    cyclic_state_with(lambda_h, lambda_c, true, params)
}

/// `β_C^v ω = ln(p / (1 - p))`, the virtual cold temperature of the state `(p, 1 - p)`.
///
/// Only states in β-order with respect to the hot bath can take in
/// heat; anything else is an [`EngineError::OrderViolation`].
pub fn virtual_temperature(p: f64, params: &EngineParams) -> Result<f64> {
    let violation = EngineError::OrderViolation {
        p,
        beta_h_omega: params.beta_h_omega,
    };
    if !(p > 0.5 && p <= 1.0) {
        return Err(violation);
    }
    if (1.0 - p) / p > params.x_h() * (1.0 + 1e-12) {
        return Err(violation);
    }
    Ok((p / (1.0 - p)).ln())
}

/// `W*(p) / ω` for the extremal heat stroke followed by `X`.
pub fn work_at_p(p: f64, lambda_h_max: f64, params: &EngineParams) -> f64 {
    let l = lambda_h_max;
    1.0 - 2.0 * l + 2.0 * p * (l * params.x_h() + l - 1.0)
}

/// `η*(p)` for the extremal heat stroke followed by `X`.
pub fn eta_at_p(p: f64, lambda_h_max: f64, params: &EngineParams) -> Result<f64> {
    let l = lambda_h_max;
    let s = p * params.x_h() + p - 1.0;
    let denom = l * s;
    if denom.abs() <= ZERO_HEAT {
        return Err(EngineError::UndefinedEfficiency);
    }
    Ok(1.0 - (2.0 * p - 1.0 - l * s) / denom)
}

/// Optimum of the engine at one parameter setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerformancePoint {
    pub p_opt: f64,
    /// Maximal work per cycle in units of `ω`.
    pub w_max: f64,
    pub eta_max: Option<f64>,
    /// `w_max > 0`.
    pub operational: bool,
    pub eta_carnot: Option<f64>,
    pub cold_hotter: bool,
}

/// Closed-form optimal cyclic state, work and efficiency.
///
/// The efficiency is reported as computed even when the engine is not
/// operational (it can exceed one in that regime); it is `None` only when
/// its denominator vanishes.
pub fn optimal_performance(params: &EngineParams) -> PerformancePoint {
    let (lh, lc) = (params.lambda_h_max, params.lambda_c_max);
    let (xh, xc) = (params.x_h(), params.x_c());
    let numer = 1.0 - lh * (1.0 - lc) - lc * (1.0 - lh) * xc;
    let denom = 2.0 - lc * (1.0 - lh) - lh - lc * (1.0 - lh) * xc - lh * (1.0 - lc) * xh + lh * lc * xh * xc;
    let p_opt = numer / denom;
    let w_max = 1.0 - 2.0 * lh + 2.0 * (lh * xh - (1.0 - lh)) * numer / denom;
    let eta_den = lh * (xh - (1.0 - lc) - lc * xh * xc);
    let eta_max = (eta_den.abs() > ZERO_HEAT).then(|| 1.0 - lc * (1.0 - lh * xh - (1.0 - lh) * xc) / eta_den);
    PerformancePoint {
        p_opt,
        w_max,
        eta_max,
        operational: w_max > 0.0,
        eta_carnot: params.carnot(),
        cold_hotter: params.cold_hotter(),
    }
}

/// `2 > e^{β_H ω} + e^{-β_C ω}`, valid only without restrictions.
pub fn positive_work_condition(params: &EngineParams) -> Result<bool> {
    if !params.is_unrestricted() {
        return Err(EngineError::UnsupportedRestriction(format!(
            "positive-work condition needs lambda_max = (1, 1), got ({}, {})",
            params.lambda_h_max, params.lambda_c_max
        )));
    }
    Ok(2.0 > params.beta_h_omega.exp() + (-params.beta_c_omega).exp())
}

/// Unrestricted optimum `(p, W/ω, η)` in its simplified form.
pub fn unrestricted_optimum(beta_h_omega: f64, beta_c_omega: f64) -> (f64, f64, f64) {
    let xh = (-beta_h_omega).exp();
    let xhc = (-(beta_h_omega + beta_c_omega)).exp();
    let p = 1.0 / (1.0 + xhc);
    let w = 2.0 * xh / (1.0 + xhc) - 1.0;
    let eta = 1.0 - (1.0 - xh) / (xh - xhc);
    (p, w, eta)
}

/// Open-cycle optimum `(W/ω, η)`: full rethermalization at the cold temperature.
pub fn open_cycle_optimum(beta_h_omega: f64, beta_c_omega: f64) -> (f64, f64) {
    let xh = (-beta_h_omega).exp();
    let xc = (-beta_c_omega).exp();
    (2.0 * xh / (1.0 + xc) - 1.0, 1.0 - (1.0 - xh) / (xh - xc))
}

/// Cold-side mixing weight that makes the cold stroke a full rethermalization.
pub fn open_cycle_lambda_c(beta_c_omega: f64) -> f64 {
    1.0 / (1.0 + (-beta_c_omega).exp())
}

/// The engine whose cold stroke fully rethermalizes the working body.
pub fn open_cycle_performance(beta_h_omega: f64, beta_c_omega: f64) -> Result<PerformancePoint> {
    let params = EngineParams::new(beta_h_omega, beta_c_omega, 1.0, open_cycle_lambda_c(beta_c_omega))?;
    Ok(optimal_performance(&params))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum LawViolation {
    NotClosed {
        closure_error: f64,
    },
    FirstLaw {
        residual: f64,
    },
    /// Positive work without positive heat intake.
    HeatIntake {
        work: f64,
        q_hot: f64,
    },
    NonPositiveEfficiency {
        efficiency: Option<f64>,
    },
    Carnot {
        efficiency: f64,
        bound: f64,
    },
}

impl std::fmt::Display for LawViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NotClosed { closure_error } => write!(f, "cycle does not close (error {closure_error:e})"),
            Self::FirstLaw { residual } => write!(f, "first law W = Q_H + Q_C violated by {residual:e}"),
            Self::HeatIntake { work, q_hot } => write!(f, "W = {work} > 0 but Q_H = {q_hot} <= 0"),
            Self::NonPositiveEfficiency { efficiency } => {
                write!(f, "W > 0 but efficiency {efficiency:?} is not positive")
            }
            Self::Carnot { efficiency, bound } => write!(f, "efficiency {efficiency} exceeds Carnot bound {bound}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawDiagnostics {
    pub first_law_residual: f64,
    pub violations: Vec<LawViolation>,
}

impl LawDiagnostics {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the first law and, for positive work, heat intake and the Carnot bound.
///
/// The Carnot check needs `β_C > β_H`; reports flagged `cold_hotter` skip it.
pub fn check_laws(report: &CycleReport, params: &EngineParams) -> LawDiagnostics {
    let mut violations = Vec::new();
    let residual = (report.work - report.q_hot - report.q_cold).abs();
    if !report.closes {
        violations.push(LawViolation::NotClosed {
            closure_error: report.closure_error,
        });
    } else if residual > FIRST_LAW_TOL {
        violations.push(LawViolation::FirstLaw { residual });
    }
    if report.work > 0.0 && !params.cold_hotter() {
        if report.q_hot <= 0.0 {
            violations.push(LawViolation::HeatIntake {
                work: report.work,
                q_hot: report.q_hot,
            });
        }
        match (report.efficiency, params.carnot()) {
            (Some(eta), Some(bound)) if eta > 0.0 => {
                if eta > bound + CARNOT_TOL {
                    violations.push(LawViolation::Carnot { efficiency: eta, bound });
                }
            }
            (efficiency, _) => violations.push(LawViolation::NonPositiveEfficiency { efficiency }),
        }
    }
    LawDiagnostics {
        first_law_residual: residual,
        violations,
    }
}

/// Runs the cycle starting from its own cyclic state.
pub fn run_closed_cycle(lambda_h: f64, lambda_c: f64, swap: bool, params: &EngineParams) -> Result<CycleReport> {
    let p = cyclic_state_with(lambda_h, lambda_c, swap, params)?;
    let p0 = PopulationVector::qubit(p)?;
    let perm = if swap {
        WorkPermutation::swap()
    } else {
        WorkPermutation::identity(2)
    };
    run_cycle(&p0, lambda_h, lambda_c, &perm, params)
}

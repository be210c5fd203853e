//! Models for the largest mixing weight a bath can realize.
//!
//! A finite bath (truncated oscillator with `d + 1` levels) and a resonant
//! Jaynes-Cummings coupling both cap the thermal segment at some
//! `λ_max < 1`. Substituting the capped weights into the closed-form optimum
//! gives the restricted engine performance.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::engine::{EngineParams, ZERO_HEAT};
use crate::error::{invalid, EngineError, Result};
use crate::thermal::check_beta_omega;

/// How `λ_max` is determined for one side of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RestrictionModel {
    Unrestricted,
    /// Bath of dimension `d + 1`.
    FiniteBath(usize),
    JaynesCummings,
    Explicit(f64),
}

impl RestrictionModel {
    pub fn finite_bath(d: usize) -> Result<Self> {
        if d < 1 {
            return Err(invalid("finite bath needs d >= 1"));
        }
        Ok(Self::FiniteBath(d))
    }

    pub fn explicit(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && (0.0..=1.0).contains(&lambda)) {
            return Err(EngineError::OutOfRange {
                name: "lambda",
                value: lambda,
                max: 1.0,
            });
        }
        Ok(Self::Explicit(lambda))
    }

    pub fn lambda_max(&self, beta_omega: f64) -> Result<ResolvedLambda> {
        check_beta_omega(beta_omega)?;
        Ok(match *self {
            Self::Unrestricted => ResolvedLambda::exact(1.0),
            Self::FiniteBath(d) => ResolvedLambda::exact(lambda_max_finite_bath(beta_omega, d)?),
            Self::JaynesCummings => {
                let jc = lambda_max_jc(beta_omega)?;
                ResolvedLambda {
                    value: jc.value,
                    clamped: jc.clamped,
                }
            }
            Self::Explicit(l) => ResolvedLambda::exact(Self::explicit(l).map(|_| l)?),
        })
    }
}

impl fmt::Display for RestrictionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unrestricted => write!(f, "unrestricted"),
            Self::FiniteBath(d) => write!(f, "fb:{d}"),
            Self::JaynesCummings => write!(f, "jc"),
            Self::Explicit(l) => write!(f, "lam:{l}"),
        }
    }
}

impl FromStr for RestrictionModel {
    type Err = EngineError;

    /// Parses `unrestricted`, `fb:D`, `jc` or `lam:X`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "unrestricted" | "full" => return Ok(Self::Unrestricted),
            "jc" => return Ok(Self::JaynesCummings),
            _ => {}
        }
        if let Some(d) = s.strip_prefix("fb:") {
            let d: usize = d.parse().map_err(|_| invalid(format!("bad bath dimension in {s:?}")))?;
            return Self::finite_bath(d);
        }
        if let Some(l) = s.strip_prefix("lam:") {
            let l: f64 = l.parse().map_err(|_| invalid(format!("bad mixing weight in {s:?}")))?;
            return Self::explicit(l);
        }
        Err(invalid(format!(
            "unknown restriction {s:?}; expected unrestricted, fb:D, jc or lam:X"
        )))
    }
}

/// A resolved `λ_max`, flagged when a formula had to be clamped into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolvedLambda {
    pub value: f64,
    pub clamped: bool,
}

impl ResolvedLambda {
    fn exact(value: f64) -> Self {
        Self { value, clamped: false }
    }
}

/// `(1 - e^{-βωd}) / (1 - e^{-βω(d+1)})`, with the `βω → 0` limit `d / (d + 1)`.
pub fn lambda_max_finite_bath(beta_omega: f64, d: usize) -> Result<f64> {
    check_beta_omega(beta_omega)?;
    if d < 1 {
        return Err(invalid("finite bath needs d >= 1"));
    }
    if beta_omega == 0.0 {
        return Ok(d as f64 / (d as f64 + 1.0));
    }
    let d = d as f64;
    Ok((-beta_omega * d).exp_m1() / (-beta_omega * (d + 1.0)).exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum JcBranch {
    /// `0 <= βω <= ln(4) / 3`
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JcLambda {
    /// Clamped into `[0, 1]`.
    pub value: f64,
    /// The piecewise formula as written, before clamping.
    pub raw: f64,
    pub clamped: bool,
    pub branch: JcBranch,
}

/// Branch point of the Jaynes-Cummings formula, `ln(4) / 3`.
pub fn jc_branch_point() -> f64 {
    4f64.ln() / 3.0
}

/// Largest mixing weight reachable with a resonant Jaynes-Cummings coupling.
///
/// The low-temperature-gap branch carries an `e^{+3βω}` term and exceeds one
/// on part of its domain; the result is clamped and the clamp is reported.
pub fn lambda_max_jc(beta_omega: f64) -> Result<JcLambda> {
    check_beta_omega(beta_omega)?;
    let y = beta_omega;
    let (raw, branch) = if y <= jc_branch_point() {
        (
            (8.0 * (-y).exp() - (-2.0 * y).exp() + (3.0 * y).exp() + 8.0) / 16.0,
            JcBranch::Low,
        )
    } else {
        ((-4.0 * y).exp() - (-3.0 * y).exp() + 1.0, JcBranch::High)
    };
    let value = raw.clamp(0.0, 1.0);
    Ok(JcLambda {
        value,
        raw,
        clamped: value != raw,
        branch,
    })
}

/// Resolves both sides' `λ_max` and builds the engine parameters.
pub fn engine_params_from(
    hot: RestrictionModel,
    cold: RestrictionModel,
    beta_h_omega: f64,
    beta_c_omega: f64,
) -> Result<EngineParams> {
    resolve_params(hot, cold, beta_h_omega, beta_c_omega).map(|r| r.params)
}

/// Engine parameters plus the per-side clamp flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolvedParams {
    pub params: EngineParams,
    pub hot: ResolvedLambda,
    pub cold: ResolvedLambda,
}

pub fn resolve_params(
    hot: RestrictionModel,
    cold: RestrictionModel,
    beta_h_omega: f64,
    beta_c_omega: f64,
) -> Result<ResolvedParams> {
    let h = hot.lambda_max(beta_h_omega)?;
    let c = cold.lambda_max(beta_c_omega)?;
    Ok(ResolvedParams {
        params: EngineParams::new(beta_h_omega, beta_c_omega, h.value, c.value)?,
        hot: h,
        cold: c,
    })
}

/// Efficiency of the engine with finite baths of dimension `d + 1` on both sides,
/// in its fully simplified form.
pub fn eta_finite_bath(beta_h_omega: f64, beta_c_omega: f64, d: usize) -> Result<f64> {
    check_beta_omega(beta_h_omega)?;
    check_beta_omega(beta_c_omega)?;
    if d < 1 {
        return Err(invalid("finite bath needs d >= 1"));
    }
    let (bh, bc, d) = (beta_h_omega, beta_c_omega, d as f64);
    let e = |v: f64| (-v).exp();
    let numer = (1.0 - e(d * bc)) * (1.0 - e(bh)) * (1.0 - e(bc + d * bh));
    let denom = (1.0 - e(bc)) * (e(bh) - e(d * bc)) * (1.0 - e(d * bh));
    if denom.abs() <= ZERO_HEAT {
        return Err(EngineError::UndefinedEfficiency);
    }
    Ok(1.0 - numer / denom)
}

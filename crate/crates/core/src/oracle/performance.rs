//! Grid-search oracle for the optimal engine.
//!
//! Every candidate `(λ_h, λ_c, permutation)` is evaluated by solving its
//! cyclic state and simulating the three strokes from it, so the result is
//! independent of the closed-form optimum it is compared against.

use rayon::prelude::*;
use serde::Serialize;

use super::argmax_first;
use crate::engine::{run_closed_cycle, EngineParams, PerformancePoint};
use crate::error::{invalid, EngineError, Result};

/// Points per axis of the local refinement mesh.
const REFINE_POINTS: usize = 21;

/// One simulated, closing cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Candidate {
    pub lambda_h: f64,
    pub lambda_c: f64,
    /// Work stroke is the bit flip `X` (otherwise the identity).
    pub swap: bool,
    pub p: f64,
    pub work: f64,
    pub q_hot: f64,
    pub efficiency: Option<f64>,
}

impl Candidate {
    /// Positive work with positive heat intake.
    pub fn is_engine(&self) -> bool {
        self.work > 0.0 && self.q_hot > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BruteForceReport {
    /// Best work and best efficiency found, in the closed-form result's shape.
    pub point: PerformancePoint,
    pub best_work: Candidate,
    /// Most efficient candidate among those acting as an engine.
    pub best_efficiency: Option<Candidate>,
    pub evaluated: usize,
}

impl BruteForceReport {
    /// Whether the best-work candidate uses both maximal weights and `X`.
    pub fn work_argmax_at_corner(&self, params: &EngineParams) -> bool {
        let c = &self.best_work;
        c.swap && c.lambda_h == params.lambda_h_max() && c.lambda_c == params.lambda_c_max()
    }

    pub fn efficiency_argmax_at_corner(&self, params: &EngineParams) -> bool {
        self.best_efficiency
            .is_some_and(|c| c.swap && c.lambda_h == params.lambda_h_max() && c.lambda_c == params.lambda_c_max())
    }
}

fn evaluate(lambda_h: f64, lambda_c: f64, swap: bool, params: &EngineParams) -> Result<Option<Candidate>> {
    let report = match run_closed_cycle(lambda_h, lambda_c, swap, params) {
        Ok(r) => r,
        Err(EngineError::SingularCycle) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !report.closes {
        return Ok(None);
    }
    let p0 = &report.populations[2];
    Ok(Some(Candidate {
        lambda_h,
        lambda_c,
        swap,
        p: p0.ground(),
        work: report.work,
        q_hot: report.q_hot,
        efficiency: report.efficiency,
    }))
}

fn mesh(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if hi <= lo {
        return vec![lo];
    }
    // Endpoints are exact so the corner itself is always visited.
    (0..n)
        .map(|k| {
            if k + 1 == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Evaluates all candidates on the product mesh in a fixed order.
fn sweep(hot: &[f64], cold: &[f64], swaps: &[bool], params: &EngineParams) -> Result<Vec<Candidate>> {
    let rows: Vec<Result<Vec<Candidate>>> = hot
        .par_iter()
        .map(|&lh| {
            let mut row = Vec::with_capacity(cold.len() * swaps.len());
            for &lc in cold {
                for &s in swaps {
                    if let Some(c) = evaluate(lh, lc, s, params)? {
                        row.push(c);
                    }
                }
            }
            Ok(row)
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

fn best_work(cands: &[Candidate]) -> Option<Candidate> {
    argmax_first(cands.iter().map(|c| c.work)).map(|(i, _)| cands[i])
}

fn best_efficiency(cands: &[Candidate]) -> Option<Candidate> {
    argmax_first(cands.iter().map(|c| {
        if c.is_engine() {
            c.efficiency.unwrap_or(f64::NAN)
        } else {
            f64::NAN
        }
    }))
    .map(|(i, _)| cands[i])
}

fn refine_around(c: &Candidate, step_h: f64, step_c: f64, params: &EngineParams) -> Result<Vec<Candidate>> {
    let hot = mesh(
        (c.lambda_h - step_h).max(0.0),
        (c.lambda_h + step_h).min(params.lambda_h_max()),
        REFINE_POINTS,
    );
    let cold = mesh(
        (c.lambda_c - step_c).max(0.0),
        (c.lambda_c + step_c).min(params.lambda_c_max()),
        REFINE_POINTS,
    );
    sweep(&hot, &cold, &[c.swap], params)
}

/// Grid search over `λ_h ∈ [0, λ_H^max]`, `λ_c ∈ [0, λ_C^max]` and both work
/// permutations, with `grid + 1` points per axis and one local refinement
/// pass around each maximizer.
pub fn brute_force_performance(params: &EngineParams, grid: usize) -> Result<BruteForceReport> {
    if grid < 2 {
        return Err(invalid("brute-force grid needs at least 2 intervals"));
    }
    let hot = mesh(0.0, params.lambda_h_max(), grid + 1);
    let cold = mesh(0.0, params.lambda_c_max(), grid + 1);
    let coarse = sweep(&hot, &cold, &[false, true], params)?;
    let mut evaluated = coarse.len();

    let mut work = best_work(&coarse).ok_or(EngineError::SingularCycle)?;
    let mut eff = best_efficiency(&coarse);

    let step_h = params.lambda_h_max() / grid as f64;
    let step_c = params.lambda_c_max() / grid as f64;
    let local = refine_around(&work, step_h, step_c, params)?;
    evaluated += local.len();
    if let Some(c) = best_work(&local) {
        if c.work > work.work {
            work = c;
        }
    }
    if let Some(e) = eff {
        let local = refine_around(&e, step_h, step_c, params)?;
        evaluated += local.len();
        if let Some(c) = best_efficiency(&local) {
            if c.efficiency > e.efficiency {
                eff = Some(c);
            }
        }
    }

    let point = PerformancePoint {
        p_opt: work.p,
        w_max: work.work,
        eta_max: eff.and_then(|c| c.efficiency),
        operational: work.work > 0.0,
        eta_carnot: params.carnot(),
        cold_hotter: params.cold_hotter(),
    };
    Ok(BruteForceReport {
        point,
        best_work: work,
        best_efficiency: eff,
        evaluated,
    })
}

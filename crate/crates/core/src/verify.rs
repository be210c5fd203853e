//! Self-checks of the closed forms against the brute-force and simulation oracles.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::{
    check_laws, open_cycle_optimum, open_cycle_performance, optimal_performance, positive_work_condition,
    run_closed_cycle, unrestricted_optimum, EngineParams,
};
use crate::error::{invalid, Result};
use crate::majorization::thermomajorizes;
use crate::oracle::{brute_force_performance, default_jc_grid, jc_time_scan, scan_lambda_max};
use crate::populations::{gibbs_vector, EnergySpectrum, GibbsVector, PopulationVector};
use crate::restrictions::{
    engine_params_from, eta_finite_bath, lambda_max_finite_bath, lambda_max_jc, RestrictionModel,
};
use crate::sweep::linspace;

/// Names accepted by [`VerifyOptions::only`], in run order.
pub const CHECKS: [&str; 8] = [
    "lambda-scan",
    "optimum",
    "eta-d",
    "jc",
    "carnot",
    "reductions",
    "d1",
    "thermo",
];

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Intervals per axis for the brute-force performance search.
    pub grid: usize,
    /// Points per angle for the finite-bath scans.
    pub angle_grid: usize,
    /// Random tuples compared against the brute-force search.
    pub samples: usize,
    pub only: Option<Vec<String>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            grid: 200,
            angle_grid: 21,
            samples: 100,
            only: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Warn => "WARN",
            Self::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    /// Largest deviation seen, in the check's own units.
    pub max_deviation: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    /// No check failed; warnings are allowed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<4} {:<10} max_dev={:.3e}  {}",
                c.status, c.name, c.max_deviation, c.detail
            )?;
        }
        Ok(())
    }
}

fn result(name: &'static str, ok: bool, max_deviation: f64, detail: String) -> CheckResult {
    CheckResult {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        max_deviation,
        detail,
    }
}

pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    if let Some(only) = &opts.only {
        if let Some(bad) = only.iter().find(|n| !CHECKS.contains(&n.as_str())) {
            return Err(invalid(format!("unknown check {bad:?}; known: {}", CHECKS.join(", "))));
        }
    }
    let wanted = |name: &str| opts.only.as_ref().is_none_or(|o| o.iter().any(|n| n == name));
    let mut checks = Vec::new();
    for (k, name) in CHECKS.iter().enumerate() {
        if !wanted(name) {
            continue;
        }
        // Each check draws from its own stream so subsets reproduce the full run.
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(k as u64);
        checks.push(match *name {
            "lambda-scan" => check_lambda_scan(opts.angle_grid)?,
            "optimum" => check_brute_force(&mut rng, opts.samples, opts.grid)?,
            "eta-d" => check_eta_d()?,
            "jc" => check_jc()?,
            "carnot" => check_cycle_laws(&mut rng, 10_000)?,
            "reductions" => check_reductions()?,
            "d1" => check_two_level_bath()?,
            "thermo" => check_thermomajorization(&mut rng, 10_000, 1_000)?,
            _ => unreachable!(),
        });
    }
    Ok(VerifyReport { checks })
}

pub const SCAN_BETAS: [f64; 5] = [0.1, 0.2, 0.5, 1.0, 2.0];

/// Finite-bath `λ_max` against angle scans of the simulated unitary.
pub fn check_lambda_scan(angle_grid: usize) -> Result<CheckResult> {
    let mut worst_exh: f64 = 0.0;
    let mut worst_asc: f64 = 0.0;
    for &b in &SCAN_BETAS {
        for d in [1usize, 2, 3, 4, 5, 10, 15] {
            let dev = (scan_lambda_max(b, d, angle_grid)? - lambda_max_finite_bath(b, d)?).abs();
            if d <= 4 {
                worst_exh = worst_exh.max(dev);
            } else {
                worst_asc = worst_asc.max(dev);
            }
        }
    }
    Ok(result(
        "lambda-scan",
        worst_exh <= 1e-6 && worst_asc <= 1e-4,
        worst_exh.max(worst_asc),
        format!("exhaustive d<=4 dev {worst_exh:.2e} (tol 1e-6), ascent d=5,10,15 dev {worst_asc:.2e} (tol 1e-4)"),
    ))
}

/// A random tuple `(β_H ω, β_C ω, λ_H^max, λ_C^max)` with `β_H < β_C`.
pub fn random_tuple<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64, f64, f64) {
    let bh = rng.gen_range(0.01..3.0);
    let bc = bh * rng.gen_range(1.05..10.0);
    (bh, bc, rng.gen_range(0.05..=1.0), rng.gen_range(0.05..=1.0))
}

/// Closed-form optimum against a grid search over all strokes.
///
/// Tuples are drawn until `samples` operational ones are compared. The first
/// [`IDLE_CHECKS`] non-operational tuples met on the way are searched too and
/// must have no positive-work cycle.
pub const IDLE_CHECKS: usize = 20;

pub fn check_brute_force<R: Rng + ?Sized>(rng: &mut R, samples: usize, grid: usize) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    let mut idle = 0;
    let mut failures = Vec::new();
    while compared < samples {
        let (bh, bc, lh, lc) = random_tuple(rng);
        let params = EngineParams::new(bh, bc, lh, lc)?;
        let cf = optimal_performance(&params);
        if !cf.operational {
            idle += 1;
            if idle > IDLE_CHECKS {
                continue;
            }
            let bf = brute_force_performance(&params, grid)?;
            if bf.point.w_max > 0.0 {
                failures.push(format!(
                    "({bh:.4}, {bc:.4}, {lh:.4}, {lc:.4}) found W = {:.3e}",
                    bf.point.w_max
                ));
            }
            continue;
        }
        compared += 1;
        let bf = brute_force_performance(&params, grid)?;
        let dw = (cf.w_max - bf.point.w_max).abs();
        let de = match (cf.eta_max, bf.point.eta_max) {
            (Some(a), Some(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        };
        worst = worst.max(dw).max(de);
        if dw > 1e-6 || de > 1e-6 {
            failures.push(format!(
                "({bh:.4}, {bc:.4}, {lh:.4}, {lc:.4}) dW {dw:.2e} deta {de:.2e}"
            ));
        }
    }
    let mut detail = format!(
        "{compared} operational tuples, {} of {idle} idle tuples searched, grid {grid}",
        idle.min(IDLE_CHECKS)
    );
    if let Some(first) = failures.first() {
        detail += &format!("; {} failures, first {first}", failures.len());
    }
    Ok(result("optimum", failures.is_empty(), worst, detail))
}

/// Simplified finite-bath efficiency against the general optimum with `λ_max` substituted.
pub fn check_eta_d() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut at = (0.0, 0);
    for ratio in linspace(1.05, 10.0, 100) {
        let (bh, bc) = (0.2, 0.2 * ratio);
        for d in [5usize, 10, 15] {
            let m = RestrictionModel::FiniteBath(d);
            let general = optimal_performance(&engine_params_from(m, m, bh, bc)?);
            if !general.operational {
                continue;
            }
            let dev = (eta_finite_bath(bh, bc, d)? - general.eta_max.unwrap_or(f64::NAN)).abs();
            if dev.is_nan() || dev > worst {
                worst = dev;
                at = (ratio, d);
            }
        }
    }
    Ok(result(
        "eta-d",
        worst <= 1e-9,
        worst,
        format!("worst at ratio {:.4}, d = {} (tol 1e-9)", at.0, at.1),
    ))
}

/// Truncation used by the Jaynes-Cummings scans.
pub const JC_TRUNCATION: usize = 200;

/// Jaynes-Cummings `λ_max` against a coupling-time scan; clamping of the
/// closed form is reported as a warning.
pub fn check_jc() -> Result<CheckResult> {
    let grid = default_jc_grid();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let mut parts = Vec::new();
    for b in [0.5, 1.0, 2.0] {
        let closed = lambda_max_jc(b)?.value;
        let scan = jc_time_scan(b, &grid, JC_TRUNCATION)?.lambda;
        let dev = scan - closed;
        worst = worst.max(dev.abs());
        ok &= (-5e-2..=1e-2).contains(&dev);
        parts.push(format!("bw={b}: scan {scan:.5} vs {closed:.5}"));
    }
    let clamped: Vec<f64> = linspace(1e-3, 10.0, 10_000)
        .into_iter()
        .filter(|&b| lambda_max_jc(b).map(|l| l.clamped).unwrap_or(false))
        .collect();
    let mut status = if ok { Status::Pass } else { Status::Fail };
    if let (Some(lo), Some(hi)) = (clamped.first(), clamped.last()) {
        if status == Status::Pass {
            status = Status::Warn;
        }
        parts.push(format!(
            "closed form exceeds 1 and is clamped on bw in [{lo:.4}, {hi:.4}]"
        ));
    }
    Ok(CheckResult {
        name: "jc",
        status,
        max_deviation: worst,
        detail: parts.join("; "),
    })
}

/// First law, heat intake and the Carnot bound on random closed cycles.
pub fn check_cycle_laws<R: Rng + ?Sized>(rng: &mut R, cycles: usize) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut engines = 0;
    let mut failures = Vec::new();
    let mut done = 0;
    while done < cycles {
        let bh = rng.gen_range(0.01..5.0);
        let bc = bh * rng.gen_range(1.0..20.0);
        let params = EngineParams::new(bh, bc, 1.0, 1.0)?;
        // Half the draws sit near the optimal corner so that engines are common.
        let weight = |r: &mut R| {
            if r.gen_bool(0.5) {
                1.0 - 0.2 * r.gen::<f64>()
            } else {
                r.gen::<f64>()
            }
        };
        let (lh, lc, swap) = (weight(rng), weight(rng), rng.gen::<bool>());
        let report = match run_closed_cycle(lh, lc, swap, &params) {
            Ok(r) => r,
            Err(crate::EngineError::SingularCycle) => continue,
            Err(e) => return Err(e),
        };
        done += 1;
        let diag = check_laws(&report, &params);
        worst = worst.max(diag.first_law_residual);
        if report.work > 0.0 {
            engines += 1;
        }
        if !diag.passed() && failures.len() < 3 {
            failures.push(format!(
                "({bh:.4}, {bc:.4}, {lh:.4}, {lc:.4}, swap={swap}): {:?}",
                diag.violations
            ));
        }
    }
    let mut detail = format!("{cycles} closed cycles, {engines} with W > 0");
    if !failures.is_empty() {
        detail += &format!("; e.g. {}", failures.join(" | "));
    }
    Ok(result("carnot", failures.is_empty(), worst, detail))
}

/// The `(β_H ω, β_C ω)` pairs used for the reduction checks.
pub fn reduction_grid() -> Vec<(f64, f64)> {
    (0..50)
        .map(|k| {
            let bh = 0.05 + 0.04 * k as f64;
            (bh, bh * (1.0 + 0.2 * (k % 10) as f64) + 0.01)
        })
        .collect()
}

/// `|a - b|`, scaled down by `|b|` once it exceeds one.
fn scaled_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// The general optimum against its unrestricted and open-cycle special cases.
///
/// Efficiencies far from the engine regime grow large as `β_C → β_H`, so
/// they are compared relative to their magnitude.
pub fn check_reductions() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut condition_mismatch = 0;
    for (bh, bc) in reduction_grid() {
        let params = EngineParams::unrestricted(bh, bc)?;
        let general = optimal_performance(&params);
        let (p, w, eta) = unrestricted_optimum(bh, bc);
        worst = worst.max((general.p_opt - p).abs()).max((general.w_max - w).abs());
        if let Some(e) = general.eta_max {
            worst = worst.max(scaled_dev(e, eta));
        }
        let open = open_cycle_performance(bh, bc)?;
        let (ow, oeta) = open_cycle_optimum(bh, bc);
        worst = worst.max((open.w_max - ow).abs());
        if let Some(e) = open.eta_max {
            worst = worst.max(scaled_dev(e, oeta));
        }
        if positive_work_condition(&params)? != (general.w_max > 0.0) {
            condition_mismatch += 1;
        }
    }
    Ok(result(
        "reductions",
        worst <= 1e-12 && condition_mismatch == 0,
        worst,
        format!("50 points, {condition_mismatch} positive-work condition mismatches (tol 1e-12)"),
    ))
}

/// Baths with a single excited level on both sides never give positive work.
pub fn check_two_level_bath() -> Result<CheckResult> {
    let fb1 = RestrictionModel::FiniteBath(1);
    let mut worst = f64::NEG_INFINITY;
    for bh in linspace(0.01, 5.0, 500) {
        for ratio in [1.05, 1.5, 2.0, 5.0, 10.0, 50.0] {
            let p = optimal_performance(&engine_params_from(fb1, fb1, bh, bh * ratio)?);
            worst = worst.max(p.w_max);
        }
    }
    Ok(result(
        "d1",
        worst <= 0.0,
        worst.max(0.0),
        format!("largest W/omega over 3000 points: {worst:.3e}"),
    ))
}

/// Classical majorization: sorted partial sums of `p` dominate those of `q`.
pub fn majorizes(p: &[f64], q: &[f64], tol: f64) -> bool {
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    };
    let (sp, sq) = (sorted(p), sorted(q));
    let (mut cp, mut cq) = (0.0, 0.0);
    sp.iter().zip(&sq).all(|(a, b)| {
        cp += a;
        cq += b;
        cp + tol >= cq
    })
}

/// Random point of the probability simplex, occasionally with zero entries.
pub fn random_population<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PopulationVector {
    let mut w: Vec<f64> = (0..n).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
    if n > 1 && rng.gen_bool(0.1) {
        w[rng.gen_range(0..n)] = 0.0;
    }
    let s: f64 = w.iter().sum();
    PopulationVector::from_arithmetic(w.into_iter().map(|v| v / s).collect()).expect("normalized")
}

/// Random spectrum with `n` levels, ground at zero.
pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize) -> EnergySpectrum {
    let mut levels = vec![0.0];
    for _ in 1..n {
        let last = *levels.last().expect("nonempty");
        levels.push(last + rng.gen_range(0.0..2.0));
    }
    EnergySpectrum::new(levels).expect("nondecreasing")
}

/// Applies a random Gibbs-preserving stochastic map: a chain of partial
/// swaps between level pairs followed by partial thermalization.
pub fn random_thermal_map<R: Rng + ?Sized>(rng: &mut R, p: &PopulationVector, gamma: &GibbsVector) -> PopulationVector {
    let g = gamma.entries();
    let n = g.len();
    let mut v = p.entries().to_vec();
    if n > 1 {
        for _ in 0..rng.gen_range(1..=4 * n) {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let (hi, lo) = if g[i] >= g[j] { (i, j) } else { (j, i) };
            let lam = rng.gen::<f64>();
            // Move `lam * ratio` of `hi` to `lo` and `lam` of `lo` to `hi`; the
            // Gibbs flows `g[hi] * lam * ratio` and `g[lo] * lam` balance.
            let out_hi = lam * g[lo] / g[hi] * v[hi];
            let out_lo = lam * v[lo];
            v[hi] += out_lo - out_hi;
            v[lo] += out_hi - out_lo;
        }
    }
    let mu = rng.gen::<f64>() * 0.5;
    let mixed: Vec<f64> = v.iter().zip(g).map(|(a, b)| (1.0 - mu) * a + mu * b).collect();
    PopulationVector::from_arithmetic(mixed).expect("stochastic map keeps normalization")
}

/// Randomized checks of the thermomajorization test.
pub fn check_thermomajorization<R: Rng + ?Sized>(rng: &mut R, qubits: usize, larger: usize) -> Result<CheckResult> {
    let mut violations = Vec::new();
    let mut cases = 0;
    let dims = std::iter::repeat_n(2usize, qubits).chain((0..larger).map(|k| 3 + k % 3));
    for n in dims {
        cases += 1;
        let spectrum = random_spectrum(rng, n);
        let beta = rng.gen_range(0.0..3.0);
        let gamma = gibbs_vector(beta, &spectrum)?;
        let p = random_population(rng, n);
        let q = random_population(rng, n);
        let tp = random_thermal_map(rng, &p, &gamma);
        let uniform = gibbs_vector(0.0, &spectrum)?;
        let mut bad = |what: &str| {
            if violations.len() < 3 {
                violations.push(format!("{what} at n={n}, p={:?}", p.entries()));
            }
        };
        if !thermomajorizes(&p, &p, &gamma)? {
            bad("reflexivity");
        }
        if !thermomajorizes(&p, &gamma.to_population(), &gamma)? {
            bad("gibbs minimality");
        }
        if !thermomajorizes(&p, &tp, &gamma)? {
            bad("thermal map");
        }
        if thermomajorizes(&p, &q, &uniform)? != majorizes(p.entries(), q.entries(), 1e-12) {
            bad("infinite-temperature reduction");
        }
    }
    let total = violations.len();
    let mut detail = format!("{cases} random instances");
    if total > 0 {
        detail += &format!("; {}", violations.join(" | "));
    }
    Ok(result("thermo", total == 0, total as f64, detail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_checks_pass() {
        let opts = VerifyOptions {
            only: Some(vec!["eta-d".into(), "reductions".into(), "d1".into()]),
            ..VerifyOptions::default()
        };
        let report = run(&opts).unwrap();
        assert_eq!(report.checks.len(), 3);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn unknown_check_rejected() {
        let opts = VerifyOptions {
            only: Some(vec!["nope".into()]),
            ..VerifyOptions::default()
        };
        assert!(run(&opts).is_err());
    }

    #[test]
    fn random_thermal_map_preserves_gibbs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = EnergySpectrum::new(vec![0.0, 0.4, 1.3, 2.0]).unwrap();
        let g = gibbs_vector(0.8, &s).unwrap();
        for _ in 0..50 {
            let out = random_thermal_map(&mut rng, &g.to_population(), &g);
            assert!(out.approx_eq(&g.to_population(), 1e-14));
        }
    }

    #[test]
    fn classical_majorization_examples() {
        assert!(majorizes(&[1.0, 0.0, 0.0], &[0.3, 0.3, 0.4], 0.0));
        assert!(!majorizes(&[0.3, 0.3, 0.4], &[0.6, 0.2, 0.2], 0.0));
    }
}

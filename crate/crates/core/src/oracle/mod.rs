//! Brute-force oracles that check the closed forms from first principles.
//!
//! - [`bath`]: explicit system ⊗ bath simulation of a finite-bath thermal
//!   operation in the energy-conserving block basis, and scans over its
//!   rotation angles.
//! - [`performance`]: grid search over both strokes' mixing weights and both
//!   work permutations, evaluating each candidate by simulating its cycle.
//! - [`jc`]: time scan of the resonant Jaynes-Cummings mixing weight.

pub mod bath;
pub mod jc;
pub mod performance;

pub use bath::{achieved_lambda, scan_lambda_max, simulate_finite_bath_map, BlockUnitarySpec, JointState};
pub use jc::{default_jc_grid, jc_lambda_at, jc_time_scan, JcScan};
pub use performance::{brute_force_performance, BruteForceReport, Candidate};

use std::cmp::Ordering;

/// Index of the maximum, preferring the smallest index among ties and
/// ignoring NaN entries.
pub(crate) fn argmax_first(values: impl IntoIterator<Item = f64>) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if v.partial_cmp(&b) != Some(Ordering::Greater) => {}
            _ => best = Some((i, v)),
        }
    }
    best
}

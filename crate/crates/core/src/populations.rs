//! Population vectors, energy spectra and Gibbs weights.
//!
//! Every state handled by this crate is energy-incoherent, so it is fully
//! described by its populations in the energy eigenbasis. Energies are
//! always measured in units of the qubit gap, and temperatures enter only
//! through the dimensionless product `beta * omega`.

use serde::Serialize;

use crate::error::{invalid, Result};

/// Tolerance used for normalization and range checks on probabilities.
pub const PROB_TOL: f64 = 1e-12;

/// Drift beyond which arithmetic output is rejected instead of renormalized.
const MAX_DRIFT: f64 = 1e-6;

/// A probability vector over energy levels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopulationVector {
    entries: Vec<f64>,
    #[serde(skip)]
    renormalized: bool,
}

impl PopulationVector {
    /// Validates entries: each in `[0, 1]` and summing to one, both within [`PROB_TOL`].
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("population vector must be nonempty"));
        }
        if let Some(bad) = entries.iter().find(|v| !v.is_finite()) {
            return Err(invalid(format!("non-finite population {bad}")));
        }
        if let Some(bad) = entries.iter().find(|&&v| !(-PROB_TOL..=1.0 + PROB_TOL).contains(&v)) {
            return Err(invalid(format!("population {bad} outside [0, 1]")));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(invalid(format!("populations sum to {sum}, not 1")));
        }
        Ok(Self {
            entries,
            renormalized: false,
        })
    }

    /// Qubit populations `(p, 1 - p)`.
    pub fn qubit(p: f64) -> Result<Self> {
        Self::new(vec![p, 1.0 - p])
    }

    /// Builds a vector from the output of floating-point arithmetic.
    ///
    /// Small negative entries are clipped and the vector is renormalized when
    /// its sum drifts beyond [`PROB_TOL`]; such vectors report
    /// [`was_renormalized`](Self::was_renormalized). Drift larger than `1e-6`
    /// is treated as a caller bug.
    pub fn from_arithmetic(mut entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(|v| !v.is_finite()) {
            return Err(invalid("arithmetic produced an empty or non-finite vector"));
        }
        let mut touched = false;
        for v in entries.iter_mut() {
            if *v < 0.0 {
                if *v < -MAX_DRIFT {
                    return Err(invalid(format!("population {v} is negative")));
                }
                if *v < -PROB_TOL {
                    touched = true;
                }
                *v = 0.0;
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > MAX_DRIFT {
            return Err(invalid(format!("populations sum to {sum}, not 1")));
        }
        if (sum - 1.0).abs() > PROB_TOL {
            touched = true;
            entries.iter_mut().for_each(|v| *v /= sum);
        }
        Ok(Self {
            entries,
            renormalized: touched,
        })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Ground-state population; for a qubit this is the `p` of `(p, 1 - p)`.
    pub fn ground(&self) -> f64 {
        self.entries[0]
    }

    /// Diagnostic flag: set when construction had to renormalize.
    pub fn was_renormalized(&self) -> bool {
        self.renormalized
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.len() == other.len() && self.max_abs_diff(other) <= tol
    }
}

/// Energy levels of a system, ground level at zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergySpectrum {
    levels: Vec<f64>,
}

impl EnergySpectrum {
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if levels.is_empty() {
            return Err(invalid("spectrum must be nonempty"));
        }
        if levels.iter().any(|e| !e.is_finite()) {
            return Err(invalid("non-finite energy level"));
        }
        if levels[0] != 0.0 {
            return Err(invalid(format!("ground level is {}, expected 0", levels[0])));
        }
        if levels.windows(2).any(|w| w[1] < w[0]) {
            return Err(invalid("energy levels must be nondecreasing"));
        }
        Ok(Self { levels })
    }

    /// The working-body spectrum `(0, omega)`.
    pub fn qubit(omega: f64) -> Result<Self> {
        if omega.is_nan() || omega < 0.0 {
            return Err(invalid(format!("qubit gap {omega} must be nonnegative")));
        }
        Self::new(vec![0.0, omega])
    }

    /// Truncated harmonic oscillator with `d + 1` equally spaced levels.
    pub fn harmonic(omega: f64, d: usize) -> Result<Self> {
        Self::new((0..=d).map(|n| n as f64 * omega).collect())
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// Thermal populations `exp(-beta E_i) / Z` together with the partition function `Z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GibbsVector {
    entries: Vec<f64>,
    partition: f64,
}

impl GibbsVector {
    /// Wraps raw positive weights; they are normalized and the partition
    /// function is taken to be their sum.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(invalid("Gibbs weights must be finite and strictly positive"));
        }
        let partition: f64 = weights.iter().sum();
        let entries = weights.into_iter().map(|w| w / partition).collect();
        Ok(Self { entries, partition })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn partition(&self) -> f64 {
        self.partition
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_population(&self) -> PopulationVector {
        PopulationVector {
            entries: self.entries.clone(),
            renormalized: false,
        }
    }
}

pub fn gibbs_vector(beta: f64, spectrum: &EnergySpectrum) -> Result<GibbsVector> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(invalid(format!("inverse temperature {beta} must be finite and >= 0")));
    }
    // Ground level is zero, so the largest weight is exactly 1. Weights that
    // underflow are floored so entries stay strictly positive.
    let weights = spectrum
        .levels()
        .iter()
        .map(|e| (-beta * e).exp().max(f64::MIN_POSITIVE))
        .collect();
    GibbsVector::from_weights(weights)
}

/// Qubit Gibbs populations at a given `beta * omega`.
pub fn qubit_gibbs(beta_omega: f64) -> Result<GibbsVector> {
    gibbs_vector(beta_omega, &EnergySpectrum::qubit(1.0)?)
}

pub fn average_energy(p: &PopulationVector, spectrum: &EnergySpectrum) -> Result<f64> {
    if p.len() != spectrum.len() {
        return Err(invalid(format!(
            "population dimension {} does not match spectrum dimension {}",
            p.len(),
            spectrum.len()
        )));
    }
    Ok(p.entries().iter().zip(spectrum.levels()).map(|(p, e)| p * e).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_temperature_is_uniform() {
        let g = gibbs_vector(0.0, &EnergySpectrum::qubit(1.0).unwrap()).unwrap();
        assert_eq!(g.entries(), &[0.5, 0.5]);
        assert_eq!(g.partition(), 2.0);
    }

    #[test]
    fn ln2_gives_two_thirds() {
        let g = qubit_gibbs(std::f64::consts::LN_2).unwrap();
        assert!((g.entries()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((g.entries()[1] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cold_limit_concentrates_on_ground() {
        let g = qubit_gibbs(60.0).unwrap();
        assert!(g.entries()[0] >= 1.0 - 1e-15);
        assert!(g.entries()[1] > 0.0);
    }

    #[test]
    fn rejects_bad_beta() {
        let s = EnergySpectrum::qubit(1.0).unwrap();
        assert!(gibbs_vector(f64::NAN, &s).is_err());
        assert!(gibbs_vector(-1.0, &s).is_err());
        assert!(gibbs_vector(f64::INFINITY, &s).is_err());
    }

    #[test]
    fn average_energy_examples() {
        let s = EnergySpectrum::qubit(1.0).unwrap();
        let e = |p: f64| average_energy(&PopulationVector::qubit(p).unwrap(), &s).unwrap();
        assert_eq!(e(1.0), 0.0);
        assert_eq!(e(0.0), 1.0);
        assert!((e(0.3) - 0.7).abs() < 1e-15);
        let three = PopulationVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert!(average_energy(&three, &s).is_err());
    }

    #[test]
    fn gibbs_strictly_decreasing() {
        let s = EnergySpectrum::new(vec![0.0, 0.3, 1.1, 2.0]).unwrap();
        let g = gibbs_vector(0.7, &s).unwrap();
        assert!(g.entries().windows(2).all(|w| w[0] > w[1]));
        assert!((g.entries().iter().sum::<f64>() - 1.0).abs() < PROB_TOL);
    }

    #[test]
    fn spectrum_validation() {
        assert!(EnergySpectrum::new(vec![0.1, 1.0]).is_err());
        assert!(EnergySpectrum::new(vec![0.0, 1.0, 0.5]).is_err());
        assert!(EnergySpectrum::new(vec![]).is_err());
        assert_eq!(
            EnergySpectrum::harmonic(0.5, 3).unwrap().levels(),
            &[0.0, 0.5, 1.0, 1.5]
        );
    }

    #[test]
    fn population_validation_and_drift() {
        assert!(PopulationVector::new(vec![0.5, 0.6]).is_err());
        assert!(PopulationVector::new(vec![-0.1, 1.1]).is_err());
        let v = PopulationVector::from_arithmetic(vec![0.5 + 1e-9, 0.5]).unwrap();
        assert!(v.was_renormalized());
        assert!((v.entries().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let clean = PopulationVector::from_arithmetic(vec![0.25, 0.75]).unwrap();
        assert!(!clean.was_renormalized());
        assert!(PopulationVector::from_arithmetic(vec![0.6, 0.6]).is_err());
    }
}

//! Passive states and ergotropy of energy-incoherent states.
//!
//! For a diagonal state the optimal cyclic unitary only reorders
//! populations: the largest population goes to the lowest level, and so on.
//! Work extraction is therefore modelled as a permutation of populations.

use std::cmp::Ordering;

use crate::error::{invalid, Result};
use crate::populations::{average_energy, EnergySpectrum, PopulationVector};

/// Population rearrangement performed by the work stroke.
///
/// `mapping[i]` is the level that receives the population of level `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WorkPermutation {
    mapping: Vec<usize>,
}

impl WorkPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if m >= mapping.len() || seen[m] {
                return Err(invalid(format!("{mapping:?} is not a permutation")));
            }
            seen[m] = true;
        }
        Ok(Self { mapping })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            mapping: (0..d).collect(),
        }
    }

    /// The qubit bit flip `X`.
    pub fn swap() -> Self {
        Self { mapping: vec![1, 0] }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn apply(&self, p: &PopulationVector) -> Result<PopulationVector> {
        if p.len() != self.len() {
            return Err(invalid(format!(
                "permutation of length {} applied to dimension {}",
                self.len(),
                p.len()
            )));
        }
        let mut out = vec![0.0; p.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            out[m] = p.entries()[i];
        }
        PopulationVector::new(out)
    }
}

/// Sorts populations nonincreasingly against the (nondecreasing) energies.
///
/// Ties in population keep the lower original index first. Populations that
/// already sit inside a degenerate energy level block stay where they are.
pub fn passive_rearrangement(
    p: &PopulationVector,
    spectrum: &EnergySpectrum,
) -> Result<(PopulationVector, WorkPermutation)> {
    if p.len() != spectrum.len() {
        return Err(invalid(format!(
            "population dimension {} does not match spectrum dimension {}",
            p.len(),
            spectrum.len()
        )));
    }
    let d = p.len();
    let pops = p.entries();
    let mut by_population: Vec<usize> = (0..d).collect();
    by_population.sort_by(|&a, &b| pops[b].partial_cmp(&pops[a]).unwrap_or(Ordering::Equal));

    let levels = spectrum.levels();
    let mut mapping = vec![usize::MAX; d];
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && levels[end] == levels[start] {
            end += 1;
        }
        // Sources assigned to this energy block; those already inside it stay put.
        let sources = &by_population[start..end];
        let mut free: Vec<usize> = (start..end).filter(|t| !sources.contains(t)).collect();
        free.reverse();
        for &s in sources {
            mapping[s] = if (start..end).contains(&s) {
                s
            } else {
                free.pop().expect("block has a slot for every source")
            };
        }
        start = end;
    }
    let perm = WorkPermutation::new(mapping)?;
    let passive = perm.apply(p)?;
    Ok((passive, perm))
}

/// Maximal average energy extractable by a cyclic unitary; always `>= 0`.
pub fn ergotropy(p: &PopulationVector, spectrum: &EnergySpectrum) -> Result<f64> {
    let (passive, _) = passive_rearrangement(p, spectrum)?;
    let r = average_energy(p, spectrum)? - average_energy(&passive, spectrum)?;
    Ok(r.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[f64]) -> PopulationVector {
        PopulationVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn passive_state_is_fixed() {
        let s = EnergySpectrum::new(vec![0.0, 1.0, 2.5]).unwrap();
        let (out, perm) = passive_rearrangement(&pv(&[0.5, 0.3, 0.2]), &s).unwrap();
        assert!(perm.is_identity());
        assert_eq!(out, pv(&[0.5, 0.3, 0.2]));
        assert_eq!(ergotropy(&pv(&[0.5, 0.3, 0.2]), &s).unwrap(), 0.0);
    }

    #[test]
    fn inverted_qubit_swaps() {
        let s = EnergySpectrum::qubit(1.0).unwrap();
        let (out, perm) = passive_rearrangement(&pv(&[0.2, 0.8]), &s).unwrap();
        assert_eq!(perm, WorkPermutation::swap());
        assert_eq!(out, pv(&[0.8, 0.2]));
        assert!((ergotropy(&pv(&[0.2, 0.8]), &s).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn degenerate_levels_keep_identity() {
        let s = EnergySpectrum::new(vec![0.0, 0.0]).unwrap();
        let (_, perm) = passive_rearrangement(&pv(&[0.2, 0.8]), &s).unwrap();
        assert!(perm.is_identity());
        assert_eq!(ergotropy(&pv(&[0.2, 0.8]), &s).unwrap(), 0.0);
    }

    #[test]
    fn equal_populations_tie_rule() {
        let s = EnergySpectrum::new(vec![0.0, 1.0, 2.0]).unwrap();
        let (_, perm) = passive_rearrangement(&pv(&[0.25, 0.25, 0.5]), &s).unwrap();
        // 0.5 goes to the ground level, then the tied entries in index order.
        assert_eq!(perm.mapping(), &[1, 2, 0]);
    }

    #[test]
    fn three_level_matches_all_permutations() {
        let s = EnergySpectrum::new(vec![0.0, 0.7, 1.9]).unwrap();
        let p = pv(&[0.1, 0.6, 0.3]);
        let e0 = average_energy(&p, &s).unwrap();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let best = perms
            .iter()
            .map(|m| {
                let q = WorkPermutation::new(m.to_vec()).unwrap().apply(&p).unwrap();
                e0 - average_energy(&q, &s).unwrap()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((ergotropy(&p, &s).unwrap() - best).abs() < 1e-14);
    }

    #[test]
    fn invalid_permutations() {
        assert!(WorkPermutation::new(vec![0, 0]).is_err());
        assert!(WorkPermutation::new(vec![0, 2]).is_err());
        assert!(WorkPermutation::swap().apply(&pv(&[0.2, 0.3, 0.5])).is_err());
    }
}

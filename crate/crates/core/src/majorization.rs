//! β-ordering and thermomajorization of population vectors.
//!
//! `p` thermomajorizes `q` (relative to a Gibbs vector `γ`) when the
//! piecewise-linear curve built from `p` lies nowhere below the one built
//! from `q`. For energy-incoherent states this is exactly the condition for
//! a Gibbs-preserving stochastic map taking `p` to `q` to exist.

use std::cmp::Ordering;

use crate::error::{invalid, Result};
use crate::populations::{GibbsVector, PopulationVector, PROB_TOL};

/// Permutation of level indices sorting `p_i / γ_i` nonincreasingly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaOrder {
    permutation: Vec<usize>,
}

impl BetaOrder {
    /// Level indices, largest ratio first (zero-based).
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Concave piecewise-linear curve through `(Z Σγ_π(i), Σp_π(i))`, starting at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermomajorizationCurve {
    vertices: Vec<(f64, f64)>,
}

impl ThermomajorizationCurve {
    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    /// Evaluates the curve at `x`, clamping outside its domain.
    pub fn eval(&self, x: f64) -> f64 {
        let first = self.vertices[0];
        let last = *self.vertices.last().unwrap();
        if x <= first.0 {
            return first.1;
        }
        if x >= last.0 {
            return last.1;
        }
        // First vertex whose abscissa is >= x; at least index 1 here.
        let k = self.vertices.partition_point(|v| v.0 < x);
        let (x0, y0) = self.vertices[k - 1];
        let (x1, y1) = self.vertices[k];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Segment slopes, which are the β-ordered ratios `p_i / (Z γ_i)`.
    pub fn slopes(&self) -> Vec<f64> {
        self.vertices
            .windows(2)
            .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
            .collect()
    }
}

fn check_dims(p: &PopulationVector, gamma: &GibbsVector) -> Result<()> {
    if p.len() != gamma.len() {
        return Err(invalid(format!(
            "population dimension {} does not match Gibbs dimension {}",
            p.len(),
            gamma.len()
        )));
    }
    if gamma.entries().iter().any(|g| g.is_nan() || *g <= 0.0) {
        return Err(invalid("Gibbs vector has a zero entry"));
    }
    Ok(())
}

pub fn beta_order(p: &PopulationVector, gamma: &GibbsVector) -> Result<BetaOrder> {
    check_dims(p, gamma)?;
    let ratios: Vec<f64> = p.entries().iter().zip(gamma.entries()).map(|(p, g)| p / g).collect();
    let mut permutation: Vec<usize> = (0..ratios.len()).collect();
    // Stable sort keeps lower indices first among equal ratios.
    permutation.sort_by(|&a, &b| ratios[b].partial_cmp(&ratios[a]).unwrap_or(Ordering::Equal));
    Ok(BetaOrder { permutation })
}

pub fn thermomajorization_curve(
    p: &PopulationVector,
    gamma: &GibbsVector,
    partition: f64,
) -> Result<ThermomajorizationCurve> {
    if !(partition.is_finite() && partition > 0.0) {
        return Err(invalid(format!("partition function {partition} must be positive")));
    }
    let order = beta_order(p, gamma)?;
    let mut vertices = Vec::with_capacity(p.len() + 1);
    vertices.push((0.0, 0.0));
    let (mut x, mut y) = (0.0, 0.0);
    for &i in order.permutation() {
        x += gamma.entries()[i];
        y += p.entries()[i];
        vertices.push((partition * x, y));
    }
    Ok(ThermomajorizationCurve { vertices })
}

/// Whether `p` thermomajorizes `q`, with a `1e-12` tolerance on the curve heights.
pub fn thermomajorizes(p: &PopulationVector, q: &PopulationVector, gamma: &GibbsVector) -> Result<bool> {
    if p.len() != q.len() {
        return Err(invalid("populations have different dimensions"));
    }
    let lp = thermomajorization_curve(p, gamma, gamma.partition())?;
    let lq = thermomajorization_curve(q, gamma, gamma.partition())?;
    // Both curves are piecewise linear, so checking every breakpoint is exact.
    let ok = lp
        .vertices()
        .iter()
        .chain(lq.vertices())
        .all(|&(x, _)| lp.eval(x) >= lq.eval(x) - PROB_TOL);
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::populations::qubit_gibbs;

    fn pv(v: &[f64]) -> PopulationVector {
        PopulationVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn gibbs_input_has_identity_order() {
        let g = GibbsVector::from_weights(vec![1.0, 0.5, 0.25]).unwrap();
        let order = beta_order(&g.to_population(), &g).unwrap();
        assert!(order.is_identity());
    }

    #[test]
    fn qubit_order_by_ratio() {
        // ratios 0.6/(2/3) = 0.9 and 0.4/(1/3) = 1.2
        let g = qubit_gibbs(std::f64::consts::LN_2).unwrap();
        let order = beta_order(&pv(&[0.6, 0.4]), &g).unwrap();
        assert_eq!(order.permutation(), &[1, 0]);
    }

    #[test]
    fn uniform_gibbs_is_plain_sort() {
        let g = GibbsVector::from_weights(vec![1.0; 4]).unwrap();
        assert!(beta_order(&pv(&[0.4, 0.3, 0.2, 0.1]), &g).unwrap().is_identity());
        assert_eq!(
            beta_order(&pv(&[0.1, 0.4, 0.2, 0.3]), &g).unwrap().permutation(),
            &[1, 3, 2, 0]
        );
    }

    #[test]
    fn qubit_curve_vertices() {
        // e^{-βω} = 0.5: γ = (2/3, 1/3), Z = 1.5, order (1, 0).
        let g = qubit_gibbs(std::f64::consts::LN_2).unwrap();
        let c = thermomajorization_curve(&pv(&[0.6, 0.4]), &g, g.partition()).unwrap();
        let v = c.vertices();
        assert_eq!(v.len(), 3);
        assert!((v[1].0 - 0.5).abs() < 1e-15 && (v[1].1 - 0.4).abs() < 1e-15);
        assert!((v[2].0 - 1.5).abs() < 1e-15 && (v[2].1 - 1.0).abs() < 1e-15);
        let s = c.slopes();
        assert!(s[0] >= s[1]);
    }

    #[test]
    fn sharp_state_reaches_one_immediately() {
        let g = GibbsVector::from_weights(vec![1.0, 0.6, 0.2]).unwrap();
        let c = thermomajorization_curve(&pv(&[0.0, 0.0, 1.0]), &g, g.partition()).unwrap();
        assert_eq!(c.vertices()[1].1, 1.0);
    }

    #[test]
    fn thermal_curve_is_diagonal() {
        let g = GibbsVector::from_weights(vec![1.0, 0.6, 0.2]).unwrap();
        let c = thermomajorization_curve(&g.to_population(), &g, g.partition()).unwrap();
        for &(x, y) in c.vertices() {
            assert!((y - x / g.partition()).abs() < 1e-15);
        }
    }

    #[test]
    fn reflexive_and_gibbs_minimal() {
        let g = GibbsVector::from_weights(vec![1.0, 0.6, 0.2]).unwrap();
        let p = pv(&[0.1, 0.2, 0.7]);
        assert!(thermomajorizes(&p, &p, &g).unwrap());
        assert!(thermomajorizes(&p, &g.to_population(), &g).unwrap());
        assert!(!thermomajorizes(&g.to_population(), &p, &g).unwrap());
    }

    #[test]
    fn zero_gibbs_entry_rejected() {
        assert!(GibbsVector::from_weights(vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn eval_interpolates() {
        let g = GibbsVector::from_weights(vec![1.0, 1.0]).unwrap();
        let c = thermomajorization_curve(&pv(&[0.8, 0.2]), &g, 2.0).unwrap();
        assert!((c.eval(0.5) - 0.4).abs() < 1e-15);
        assert!((c.eval(1.5) - 0.9).abs() < 1e-15);
        assert_eq!(c.eval(5.0), 1.0);
    }
}

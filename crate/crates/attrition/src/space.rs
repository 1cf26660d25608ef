//! Ordered finite type spaces and beliefs over them.
//!
//! A [`TypeSpace`] is a strictly increasing grid of real type values. A
//! [`Belief`] is a probability vector over a type space; reputations, priors
//! and posteriors are all `Belief` values. Beliefs are compared by
//! first-order stochastic dominance ([`fosd_compare`]), the partial order
//! under which payoff monotonicity is stated.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Absolute tolerance for simplex and CDF equality checks.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// A strictly increasing, finite grid of type values.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeSpace {
    values: Vec<f64>,
}

impl TypeSpace {
    /// Builds a type space from `values`, which must contain at least two
    /// finite entries in strictly increasing order.
    pub fn new(values: Vec<f64>) -> Result<Arc<Self>> {
        if values.len() < 2 {
            return Err(Error::InvalidTypeSpace(format!(
                "need at least 2 type values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTypeSpace("non-finite type value".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidTypeSpace(
                "type values must be strictly increasing".into(),
            ));
        }
        Ok(Arc::new(TypeSpace { values }))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, index: usize) -> f64 {
        self.values[index]
    }

    /// Lowest type value in the space.
    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    /// Highest type value in the space.
    pub fn max_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Index of `theta` in the grid, if it is a grid value (exact match
    /// within `SIMPLEX_TOL`).
    pub fn position_of(&self, theta: f64) -> Option<usize> {
        self.values
            .iter()
            .position(|&v| (v - theta).abs() <= SIMPLEX_TOL)
    }
}

/// Outcome of a first-order stochastic dominance comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FosdOrder {
    /// Left belief dominates: its CDF is pointwise below, strictly somewhere.
    Dominates,
    /// Left belief is dominated by the right one.
    Dominated,
    /// CDFs coincide within `SIMPLEX_TOL`.
    Equal,
    /// CDFs cross; the beliefs are not ranked.
    Incomparable,
}

/// A probability vector over a [`TypeSpace`].
#[derive(Debug, Clone)]
pub struct Belief {
    space: Arc<TypeSpace>,
    weights: Vec<f64>,
}

impl Belief {
    /// Builds a belief from nonnegative weights summing to one (within
    /// `SIMPLEX_TOL`), one entry per type.
    pub fn new(space: &Arc<TypeSpace>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::InvalidBelief(format!(
                "expected {} weights, got {}",
                space.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidBelief(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidBelief(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Belief {
            space: Arc::clone(space),
            weights,
        })
    }

    /// The Dirac belief placing all mass on the type at `index`.
    pub fn dirac(space: &Arc<TypeSpace>, index: usize) -> Result<Self> {
        if index >= space.len() {
            return Err(Error::InvalidBelief(format!(
                "dirac index {index} out of range for {} types",
                space.len()
            )));
        }
        let mut weights = vec![0.0; space.len()];
        weights[index] = 1.0;
        Belief::new(space, weights)
    }

    /// The uniform belief over the space.
    pub fn uniform(space: &Arc<TypeSpace>) -> Self {
        let n = space.len();
        Belief::new(space, vec![1.0 / n as f64; n]).expect("uniform weights are a simplex point")
    }

    pub fn space(&self) -> &Arc<TypeSpace> {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> f64 {
        self.weights[index]
    }

    /// Indices of types with strictly positive weight.
    pub fn support(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the lowest supported type.
    pub fn min_support(&self) -> usize {
        self.weights
            .iter()
            .position(|w| *w > 0.0)
            .expect("a belief always has support")
    }

    /// True if all mass sits on the type at `index`.
    pub fn is_dirac_at(&self, index: usize) -> bool {
        self.weights
            .iter()
            .enumerate()
            .all(|(i, w)| if i == index { *w > 0.0 } else { *w == 0.0 })
    }

    /// Cumulative distribution over the type grid.
    pub fn cdf(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.weights
            .iter()
            .map(|w| {
                acc += w;
                acc
            })
            .collect()
    }

    /// Whether two beliefs are indexed by the same type space.
    pub fn same_space(&self, other: &Belief) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }
}

/// Expected type under belief `p`.
pub fn expected_type(p: &Belief) -> f64 {
    p.weights()
        .iter()
        .zip(p.space().values())
        .map(|(w, t)| w * t)
        .sum()
}

/// Compares two beliefs over the same type space by first-order stochastic
/// dominance. `Dominates` means the left CDF lies pointwise at or below the
/// right one, strictly somewhere.
pub fn fosd_compare(p: &Belief, q: &Belief) -> Result<FosdOrder> {
    if !p.same_space(q) {
        return Err(Error::SpaceMismatch);
    }
    let mut below = false; // cdf(p) < cdf(q) somewhere
    let mut above = false; // cdf(p) > cdf(q) somewhere
    let mut acc_p = 0.0;
    let mut acc_q = 0.0;
    for (wp, wq) in p.weights().iter().zip(q.weights()) {
        acc_p += wp;
        acc_q += wq;
        let diff = acc_p - acc_q;
        if diff < -SIMPLEX_TOL {
            below = true;
        } else if diff > SIMPLEX_TOL {
            above = true;
        }
    }
    Ok(match (below, above) {
        (false, false) => FosdOrder::Equal,
        (true, false) => FosdOrder::Dominates,
        (false, true) => FosdOrder::Dominated,
        (true, true) => FosdOrder::Incomparable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space123() -> Arc<TypeSpace> {
        TypeSpace::new(vec![1.0, 2.0, 3.0]).unwrap()
    }

    #[test]
    fn type_space_rejects_bad_grids() {
        assert!(TypeSpace::new(vec![1.0]).is_err());
        assert!(TypeSpace::new(vec![1.0, 1.0]).is_err());
        assert!(TypeSpace::new(vec![2.0, 1.0]).is_err());
        assert!(TypeSpace::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn belief_rejects_off_simplex() {
        let s = space123();
        assert!(Belief::new(&s, vec![0.5, 0.5]).is_err());
        assert!(Belief::new(&s, vec![0.5, 0.6, 0.1]).is_err());
        assert!(Belief::new(&s, vec![-0.1, 0.6, 0.5]).is_err());
        assert!(Belief::new(&s, vec![0.2, 0.3, 0.5]).is_ok());
    }

    #[test]
    fn fosd_point_mass_at_higher_type_dominates() {
        let s = space123();
        let p = Belief::dirac(&s, 2).unwrap();
        let q = Belief::dirac(&s, 0).unwrap();
        assert_eq!(fosd_compare(&p, &q).unwrap(), FosdOrder::Dominates);
        assert_eq!(fosd_compare(&q, &p).unwrap(), FosdOrder::Dominated);
    }

    #[test]
    fn fosd_identity_is_equal() {
        let s = space123();
        let p = Belief::uniform(&s);
        assert_eq!(fosd_compare(&p, &p).unwrap(), FosdOrder::Equal);
    }

    #[test]
    fn fosd_pointwise_cdf_comparison() {
        // CDFs (0.2, 0.5, 1) vs (0.3, 0.6, 1)
        let s = space123();
        let p = Belief::new(&s, vec![0.2, 0.3, 0.5]).unwrap();
        let q = Belief::new(&s, vec![0.3, 0.3, 0.4]).unwrap();
        assert_eq!(fosd_compare(&p, &q).unwrap(), FosdOrder::Dominates);
    }

    #[test]
    fn fosd_crossing_cdfs_are_incomparable() {
        let s = space123();
        let p = Belief::new(&s, vec![0.5, 0.0, 0.5]).unwrap();
        let q = Belief::new(&s, vec![0.2, 0.7, 0.1]).unwrap();
        assert_eq!(fosd_compare(&p, &q).unwrap(), FosdOrder::Incomparable);
    }

    #[test]
    fn fosd_requires_matching_spaces() {
        let s1 = space123();
        let s2 = TypeSpace::new(vec![1.0, 2.0]).unwrap();
        let p = Belief::uniform(&s1);
        let q = Belief::uniform(&s2);
        assert!(matches!(fosd_compare(&p, &q), Err(Error::SpaceMismatch)));
    }

    #[test]
    fn expected_type_examples() {
        let s = space123();
        assert_eq!(expected_type(&Belief::dirac(&s, 0).unwrap()), 1.0);
        let p = Belief::new(&s, vec![0.01, 0.495, 0.495]).unwrap();
        assert!((expected_type(&p) - 2.485).abs() < 1e-12);
        let q = Belief::new(&s, vec![0.63, 0.185, 0.185]).unwrap();
        assert!((expected_type(&q) - 1.555).abs() < 1e-12);
    }

    #[test]
    fn support_and_min_support() {
        let s = space123();
        let p = Belief::new(&s, vec![0.0, 0.5, 0.5]).unwrap();
        assert_eq!(p.support(), vec![1, 2]);
        assert_eq!(p.min_support(), 1);
        assert!(Belief::dirac(&s, 1).unwrap().is_dirac_at(1));
    }
}

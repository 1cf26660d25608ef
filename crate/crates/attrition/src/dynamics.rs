//! Reputation dynamics along the pooling path.
//!
//! During attrition only the lowest supported type separates: with per-period
//! probability `sigma * dt` it reveals itself, and with the complement it
//! pools with everybody else. Observing the pooling action therefore scales
//! the odds of the lowest type against every other supported type by exactly
//! `1 - sigma * dt`. [`unravel_beliefs`] inverts this update in closed form,
//! recovering the earlier path from a chosen terminal belief. Off the
//! equilibrium path beliefs collapse pessimistically onto the lowest
//! supported type ([`off_path_belief`]).

use crate::error::{Error, Result};
use crate::space::{fosd_compare, Belief, FosdOrder};

/// Separation intensity, either constant or specified per period.
///
/// Entry `k` of a per-period path governs the transition from path entry `k`
/// to entry `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum SigmaPath {
    Constant(f64),
    PerPeriod(Vec<f64>),
}

impl SigmaPath {
    /// Expands to one intensity per transition, validating ranges.
    pub fn resolve(&self, steps: usize, dt: f64) -> Result<Vec<f64>> {
        let out = match self {
            SigmaPath::Constant(s) => vec![*s; steps],
            SigmaPath::PerPeriod(v) => {
                if v.len() != steps {
                    return Err(Error::Parameter(format!(
                        "sigma path has {} entries, expected {steps}",
                        v.len()
                    )));
                }
                v.clone()
            }
        };
        for (k, s) in out.iter().enumerate() {
            validate_sigma_dt(*s, dt)
                .map_err(|e| Error::Parameter(format!("sigma path entry {k}: {e}")))?;
        }
        Ok(out)
    }
}

fn validate_sigma_dt(sigma: f64, dt: f64) -> Result<()> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::Parameter(format!(
            "separation intensity must be finite and nonnegative, got {sigma}"
        )));
    }
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::Parameter(format!("dt must be positive, got {dt}")));
    }
    if sigma * dt >= 1.0 {
        return Err(Error::Parameter(format!(
            "sigma * dt = {} must lie in [0, 1)",
            sigma * dt
        )));
    }
    Ok(())
}

/// Posterior after one period in which the lowest supported type pools with
/// probability `1 - sigma * dt` and all other types pool for sure.
///
/// Writing `m` for the lowest supported index: `q_m = p_m (1 - sigma dt) / D`
/// and `q_j = p_j / D` for `j != m`, with `D = 1 - p_m sigma dt`.
pub fn bayes_pool_update(p: &Belief, sigma: f64, dt: f64) -> Result<Belief> {
    validate_sigma_dt(sigma, dt)?;
    let m = p.min_support();
    let keep = 1.0 - sigma * dt;
    // Normalizing by the computed kept mass (analytically 1 - p_m sigma dt)
    // keeps long update chains on the simplex to machine precision.
    let mut weights: Vec<f64> = p.weights().to_vec();
    weights[m] *= keep;
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Belief::new(p.space(), weights)
}

/// Dirac belief on the lowest supported type of `p` (pessimistic off-path
/// belief).
pub fn off_path_belief(p: &Belief) -> Belief {
    Belief::dirac(p.space(), p.min_support()).expect("support index is in range")
}

/// A belief path along the pooling schedule, one entry per period, together
/// with the separation intensities that connect consecutive entries.
#[derive(Debug, Clone)]
pub struct BeliefPath {
    dt: f64,
    entries: Vec<Belief>,
    sigma: Vec<f64>,
}

impl BeliefPath {
    /// Builds a path from entries and per-transition intensities, checking
    /// the path invariants: valid beliefs over one space, non-increasing
    /// support, and non-increasing lowest-type weight wherever sigma > 0.
    pub fn new(dt: f64, entries: Vec<Belief>, sigma: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Parameter("belief path must be nonempty".into()));
        }
        if sigma.len() + 1 != entries.len() {
            return Err(Error::Parameter(format!(
                "belief path with {} entries needs {} intensities, got {}",
                entries.len(),
                entries.len() - 1,
                sigma.len()
            )));
        }
        for s in &sigma {
            validate_sigma_dt(*s, dt)?;
        }
        let lowest = entries[0].min_support();
        for w in entries.windows(2) {
            if !w[0].same_space(&w[1]) {
                return Err(Error::SpaceMismatch);
            }
            let sup_prev = w[0].support();
            let sup_next = w[1].support();
            if !sup_next.iter().all(|i| sup_prev.contains(i)) {
                return Err(Error::InvalidBelief(
                    "belief support grows along the path".into(),
                ));
            }
            if w[1].weight(lowest) > w[0].weight(lowest) + 1e-12 {
                return Err(Error::InvalidBelief(
                    "lowest-type weight increases along the path".into(),
                ));
            }
        }
        Ok(BeliefPath { dt, entries, sigma })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn entries(&self) -> &[Belief] {
        &self.entries
    }

    pub fn entry(&self, k: usize) -> &Belief {
        &self.entries[k]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn last(&self) -> &Belief {
        self.entries.last().expect("path is nonempty")
    }
}

/// Reconstructs the pooling-path beliefs that end at `p_terminal` after
/// `steps` attrition updates, in closed form via odds.
///
/// The lowest type of the space must carry positive terminal weight. The
/// returned path has `steps + 1` entries; applying [`bayes_pool_update`] to
/// each entry with the matching intensity yields the next.
pub fn unravel_beliefs(
    p_terminal: &Belief,
    sigma: &SigmaPath,
    dt: f64,
    steps: usize,
) -> Result<BeliefPath> {
    let sig = sigma.resolve(steps, dt)?;
    if p_terminal.weight(0) <= 0.0 {
        return Err(Error::Parameter(
            "degenerate attrition: terminal belief puts no mass on the lowest type".into(),
        ));
    }
    // Walk backward: earlier beliefs put more odds on the lowest type.
    let mut reversed = vec![p_terminal.clone()];
    for k in (0..steps).rev() {
        let next = reversed.last().expect("nonempty");
        let keep = 1.0 - sig[k] * dt;
        let mut weights: Vec<f64> = next.weights().to_vec();
        weights[0] /= keep;
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        reversed.push(Belief::new(p_terminal.space(), weights)?);
    }
    reversed.reverse();
    BeliefPath::new(dt, reversed, sig)
}

/// Convenience check used by tests and the verifier: forward-iterates a path
/// entry and reports whether the next stored entry matches within `tol`.
pub fn path_is_bayes_consistent(path: &BeliefPath, tol: f64) -> Result<bool> {
    for k in 0..path.len() - 1 {
        let fwd = bayes_pool_update(path.entry(k), path.sigma()[k], path.dt())?;
        let next = path.entry(k + 1);
        let gap = fwd
            .weights()
            .iter()
            .zip(next.weights())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if gap > tol {
            return Ok(false);
        }
        // The update never shrinks support, and pooling improves reputation.
        if fosd_compare(&fwd, path.entry(k))? == FosdOrder::Dominated {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{expected_type, TypeSpace};
    use std::sync::Arc;

    fn space123() -> Arc<TypeSpace> {
        TypeSpace::new(vec![1.0, 2.0, 3.0]).unwrap()
    }

    #[test]
    fn zero_intensity_is_the_identity() {
        let s = space123();
        let p = Belief::new(&s, vec![0.2, 0.3, 0.5]).unwrap();
        let q = bayes_pool_update(&p, 0.0, 0.1).unwrap();
        assert_eq!(p.weights(), q.weights());
    }

    #[test]
    fn degenerate_belief_is_absorbing() {
        let s = space123();
        let p = Belief::dirac(&s, 0).unwrap();
        let q = bayes_pool_update(&p, 0.9, 0.5).unwrap();
        assert_eq!(q.weights(), p.weights());
    }

    #[test]
    fn update_matches_closed_form() {
        let s = space123();
        let p = Belief::new(&s, vec![0.63, 0.185, 0.185]).unwrap();
        let q = bayes_pool_update(&p, 0.5, 0.1).unwrap();
        // 0.63 * 0.95 / (1 - 0.63 * 0.05), frozen from the hand evaluation
        assert!((q.weight(0) - 0.617_965_926_690_759).abs() < 1e-12);
        assert!((q.weight(1) - q.weight(2)).abs() < 1e-15);
    }

    #[test]
    fn update_rejects_bad_intensity() {
        let s = space123();
        let p = Belief::uniform(&s);
        assert!(matches!(
            bayes_pool_update(&p, 10.0, 0.1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            bayes_pool_update(&p, -0.5, 0.1),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn update_preserves_support_and_odds() {
        let s = space123();
        let p = Belief::new(&s, vec![0.0, 0.4, 0.6]).unwrap();
        let q = bayes_pool_update(&p, 0.5, 0.1).unwrap();
        assert_eq!(q.support(), vec![1, 2]);
        // odds of the lowest supported type against type 3 scale by 0.95
        let before = p.weight(1) / p.weight(2);
        let after = q.weight(1) / q.weight(2);
        assert!((after / before - 0.95).abs() < 1e-14);
    }

    #[test]
    fn off_path_examples() {
        let s = space123();
        let p = Belief::new(&s, vec![0.63, 0.185, 0.185]).unwrap();
        assert!(off_path_belief(&p).is_dirac_at(0));
        let q = Belief::new(&s, vec![0.0, 0.5, 0.5]).unwrap();
        assert!(off_path_belief(&q).is_dirac_at(1));
        let d = Belief::dirac(&s, 2).unwrap();
        assert!(off_path_belief(&d).is_dirac_at(2));
    }

    #[test]
    fn unravel_zero_steps_is_terminal_only() {
        let s = space123();
        let p = Belief::new(&s, vec![0.01, 0.495, 0.495]).unwrap();
        let path = unravel_beliefs(&p, &SigmaPath::Constant(0.5), 0.1, 0).unwrap();
        assert_eq!(path.len(), 1);
        assert_eq!(path.entry(0).weights(), p.weights());
    }

    #[test]
    fn unravel_recovers_the_initial_belief() {
        let s = space123();
        let p_term = Belief::new(&s, vec![0.01, 0.495, 0.495]).unwrap();
        let path = unravel_beliefs(&p_term, &SigmaPath::Constant(0.5), 0.1, 100).unwrap();
        assert_eq!(path.len(), 101);
        // frozen from the closed-form odds computation
        assert!((path.entry(0).weight(0) - 0.630_464_395_362_648).abs() < 1e-12);
        assert!((expected_type(path.entry(0)) - 1.554_303_406_956_028).abs() < 1e-12);
        assert!(path_is_bayes_consistent(&path, 1e-9).unwrap());
    }

    #[test]
    fn unravel_then_forward_iteration_round_trips() {
        let s = space123();
        let p_term = Belief::new(&s, vec![0.01, 0.495, 0.495]).unwrap();
        let path = unravel_beliefs(&p_term, &SigmaPath::Constant(0.5), 0.1, 100).unwrap();
        let mut p = path.entry(0).clone();
        for _ in 0..100 {
            p = bayes_pool_update(&p, 0.5, 0.1).unwrap();
        }
        for (a, b) in p.weights().iter().zip(p_term.weights()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn long_round_trip_stays_tight() {
        let s = space123();
        let p_term = Belief::new(&s, vec![0.3, 0.3, 0.4]).unwrap();
        let path = unravel_beliefs(&p_term, &SigmaPath::Constant(0.2), 0.01, 10_000).unwrap();
        let mut p = path.entry(0).clone();
        for _ in 0..10_000 {
            p = bayes_pool_update(&p, 0.2, 0.01).unwrap();
        }
        for (a, b) in p.weights().iter().zip(p_term.weights()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn unravel_rejects_zero_mass_on_lowest_type() {
        let s = space123();
        let p = Belief::new(&s, vec![0.0, 0.5, 0.5]).unwrap();
        assert!(matches!(
            unravel_beliefs(&p, &SigmaPath::Constant(0.5), 0.1, 10),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn per_period_sigma_must_match_steps() {
        let s = space123();
        let p = Belief::new(&s, vec![0.1, 0.4, 0.5]).unwrap();
        let sigma = SigmaPath::PerPeriod(vec![0.5, 0.4]);
        assert!(unravel_beliefs(&p, &sigma, 0.1, 3).is_err());
        assert!(unravel_beliefs(&p, &sigma, 0.1, 2).is_ok());
    }
}

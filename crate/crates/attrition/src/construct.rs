//! Attrition-candidate construction.
//!
//! A candidate fixes a separating action (the lowest type's bliss action
//! against the revealing belief), a terminal belief, and a separation
//! intensity path. Beliefs are unraveled backward from the terminal belief;
//! each period's pooling action is then pinned down by the lowest type's
//! flow indifference between pooling and separating. From the attrition end
//! time onward the belief and pooling action freeze, so the lowest type's
//! continuation value equals its deviation value and per-period flow
//! indifference is equivalent to value indifference everywhere.
//!
//! Construction guarantees the indifference residual at every period; it
//! does not guarantee that higher types prefer pooling. That is the
//! verifier's job, and its failure is an informative outcome, not a bug.

use std::sync::Arc;

use crate::assumptions::StrategyPath;
use crate::dynamics::{unravel_beliefs, BeliefPath, SigmaPath};
use crate::error::{Error, Result};
use crate::model::{RootSide, SeparableModel};
use crate::space::{fosd_compare, Belief, FosdOrder};

/// Residual bound enforced on the flow indifference at every period.
pub const INDIFFERENCE_TOL: f64 = 1e-10;
/// Residual target of the bisection fallback.
pub const BISECTION_TOL: f64 = 1e-12;

/// The separating action: the lowest type's myopically optimal action when
/// revealed, `bliss(delta_min, theta_min)`.
pub fn separating_action(m: &SeparableModel) -> Result<f64> {
    let dirac = Belief::dirac(m.space(), 0)?;
    m.bliss_action(&dirac, m.space().min_value())
}

/// Solves the lowest type's flow indifference
/// `u(a, q, theta_min) = u(a_sep, delta_min, theta_min)` for the pooling
/// action at posterior `q`.
///
/// At a degenerate `q = delta_min` the root collapses onto the separating
/// action exactly. Otherwise the registered closed form is used when
/// present; else bisection on `bracket` (defaulting to the interval between
/// the domain edge on the model's costly side and the lowest type's current
/// bliss action) drives the residual below [`BISECTION_TOL`]. A root that
/// coincides with the current bliss action cannot support signaling and is
/// reported as `NoSolution`.
pub fn pooling_action(
    m: &SeparableModel,
    q: &Belief,
    a_sep: f64,
    bracket: Option<(f64, f64)>,
) -> Result<f64> {
    let theta_min = m.space().min_value();
    let dirac = Belief::dirac(m.space(), 0)?;
    if fosd_compare(q, &dirac)? == FosdOrder::Equal {
        return Ok(a_sep);
    }

    let root = if let Some(closed) = m.closed_pooling() {
        closed(q, a_sep)?
    } else {
        let target = m.flow_utility(a_sep, &dirac, theta_min)?;
        let bliss_q = m.bliss_action(q, theta_min)?;
        let (mut lo, mut hi) = match bracket {
            Some((a, b)) => (a.min(b), a.max(b)),
            None => match m.costly_side() {
                RootSide::BelowBliss => (m.domain().lo(), bliss_q),
                RootSide::AboveBliss => (bliss_q, m.domain().hi()),
            },
        };
        let residual = |a: f64| -> Result<f64> { Ok(m.flow_utility(a, q, theta_min)? - target) };
        let mut f_lo = residual(lo)?;
        let f_hi = residual(hi)?;
        if f_lo == 0.0 {
            lo
        } else if f_hi == 0.0 {
            hi
        } else if f_lo * f_hi > 0.0 {
            return Err(Error::NoSolution(format!(
                "indifference residual does not change sign on [{lo}, {hi}] \
                 (no pooling action exists for this belief)"
            )));
        } else {
            let mut mid = 0.5 * (lo + hi);
            for _ in 0..200 {
                mid = 0.5 * (lo + hi);
                let f_mid = residual(mid)?;
                if f_mid.abs() < BISECTION_TOL {
                    break;
                }
                if f_mid * f_lo > 0.0 {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            if residual(mid)?.abs() >= BISECTION_TOL {
                return Err(Error::NoSolution(
                    "bisection failed to reach the indifference tolerance".into(),
                ));
            }
            mid
        }
    };

    // The pooling action must differ from the lowest type's current myopic
    // optimum; a coincidence means reputation carries no cost and the
    // candidate degenerates.
    let bliss_q = m.bliss_action(q, theta_min)?;
    if (root - bliss_q).abs() <= 1e-9 {
        return Err(Error::NoSolution(
            "pooling action coincides with the lowest type's bliss action".into(),
        ));
    }
    Ok(root)
}

/// A fully assembled attrition candidate.
///
/// `belief_path` holds the post-pooling-action posteriors `q_t` for
/// `t = 0..=t_bar`; `pooling_actions` aligns with it. The tail freezes the
/// terminal belief and pooling action forever.
#[derive(Debug, Clone)]
pub struct AttritionCandidate {
    model: Arc<SeparableModel>,
    dt: f64,
    r: f64,
    t_bar: f64,
    belief_path: BeliefPath,
    pooling_actions: Vec<f64>,
    separating_action: f64,
}

impl AttritionCandidate {
    pub fn model(&self) -> &Arc<SeparableModel> {
        &self.model
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn discount_rate(&self) -> f64 {
        self.r
    }

    pub fn t_bar(&self) -> f64 {
        self.t_bar
    }

    /// Number of path periods, `t_bar / dt + 1`.
    pub fn periods(&self) -> usize {
        self.belief_path.len()
    }

    pub fn belief_path(&self) -> &BeliefPath {
        &self.belief_path
    }

    pub fn pooling_actions(&self) -> &[f64] {
        &self.pooling_actions
    }

    pub fn separating_action(&self) -> f64 {
        self.separating_action
    }

    /// Frozen belief and pooling action from the attrition end time onward.
    pub fn tail(&self) -> (&Belief, f64) {
        (
            self.belief_path.last(),
            *self.pooling_actions.last().expect("nonempty"),
        )
    }

    /// Flow-indifference residual of the lowest type at period `k`.
    pub fn indifference_residual(&self, k: usize) -> Result<f64> {
        let theta_min = self.model.space().min_value();
        let dirac = Belief::dirac(self.model.space(), 0)?;
        let pool = self.model.flow_utility(
            self.pooling_actions[k],
            self.belief_path.entry(k),
            theta_min,
        )?;
        let sep = self
            .model
            .flow_utility(self.separating_action, &dirac, theta_min)?;
        Ok(pool - sep)
    }

    /// The equilibrium-relevant strategy family: pool until period `s`,
    /// then separate, for `s = 0..=horizon`.
    pub fn strategy_family(&self, horizon: usize) -> Result<Vec<StrategyPath>> {
        let len = horizon.min(self.periods());
        crate::assumptions::pool_then_separate_family(
            &self.model,
            &self.pooling_actions[..len],
            &self.belief_path.entries()[..len],
            self.separating_action,
        )
    }
}

/// Builds an attrition candidate.
///
/// `t_bar / dt` must be integral; each period's `sigma * dt` must lie in
/// `[0, 1)`; the terminal belief must put positive weight on the lowest
/// type. Any period's pooling-action failure aborts with that period index.
pub fn build_attrition(
    model: Arc<SeparableModel>,
    p_terminal: &Belief,
    sigma: &SigmaPath,
    dt: f64,
    r: f64,
    t_bar: f64,
) -> Result<AttritionCandidate> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::Parameter(format!("dt must be positive, got {dt}")));
    }
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::Parameter(format!(
            "discount rate must be positive, got {r}"
        )));
    }
    if !t_bar.is_finite() || t_bar < 0.0 {
        return Err(Error::Parameter(format!(
            "attrition end time must be nonnegative, got {t_bar}"
        )));
    }
    let steps_f = t_bar / dt;
    let steps = steps_f.round();
    if (steps_f - steps).abs() > 1e-9 * steps_f.max(1.0) {
        return Err(Error::Parameter(format!(
            "t_bar = {t_bar} is not an integer number of periods of dt = {dt}"
        )));
    }
    let steps = steps as usize;
    if !Arc::ptr_eq(p_terminal.space(), model.space()) && **p_terminal.space() != **model.space() {
        return Err(Error::SpaceMismatch);
    }

    let belief_path = unravel_beliefs(p_terminal, sigma, dt, steps)?;
    let a_sep = separating_action(&model)?;

    let mut pooling_actions = Vec::with_capacity(belief_path.len());
    for k in 0..belief_path.len() {
        let action = pooling_action(&model, belief_path.entry(k), a_sep, None).map_err(|e| {
            Error::Construction {
                period: k,
                source: Box::new(e),
            }
        })?;
        pooling_actions.push(action);
    }

    let candidate = AttritionCandidate {
        model,
        dt,
        r,
        t_bar,
        belief_path,
        pooling_actions,
        separating_action: a_sep,
    };

    for k in 0..candidate.periods() {
        let res = candidate.indifference_residual(k)?;
        if res.abs() >= INDIFFERENCE_TOL {
            return Err(Error::Construction {
                period: k,
                source: Box::new(Error::Evaluation(format!(
                    "constructed pooling action misses flow indifference by {res:e}"
                ))),
            });
        }
    }
    Ok(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apps::{make_price_model, LaborParams, PriceSignalingParams};
    use crate::space::{expected_type, TypeSpace};

    fn baseline_model() -> Arc<SeparableModel> {
        Arc::new(make_price_model(&PriceSignalingParams::baseline()).unwrap())
    }

    fn baseline_candidate() -> AttritionCandidate {
        let m = baseline_model();
        let p_term = Belief::new(m.space(), vec![0.01, 0.495, 0.495]).unwrap();
        build_attrition(m, &p_term, &SigmaPath::Constant(0.5), 0.1, 0.1, 10.0).unwrap()
    }

    #[test]
    fn separating_action_examples() {
        let m = baseline_model();
        assert!((separating_action(&m).unwrap() - 0.383_333_333_333_333).abs() < 1e-12);

        let space = TypeSpace::new(vec![1.0, 2.0, 3.0]).unwrap();
        let free = make_price_model(&PriceSignalingParams::new(0.0, 1.0, space)).unwrap();
        assert!((separating_action(&free).unwrap() - 0.5).abs() < 1e-12);

        let labor = crate::apps::make_labor_model(&LaborParams::baseline()).unwrap();
        assert_eq!(separating_action(&labor).unwrap(), -1.0);
    }

    #[test]
    fn pooling_collapses_to_separating_at_the_degenerate_belief() {
        let m = baseline_model();
        let a_sep = separating_action(&m).unwrap();
        let dirac = Belief::dirac(m.space(), 0).unwrap();
        let pooled = pooling_action(&m, &dirac, a_sep, None).unwrap();
        assert_eq!(pooled, a_sep);
    }

    #[test]
    fn pooling_examples_frozen_from_the_closed_form() {
        let m = baseline_model();
        let a_sep = separating_action(&m).unwrap();
        let q_term = Belief::new(m.space(), vec![0.01, 0.495, 0.495]).unwrap();
        let a = pooling_action(&m, &q_term, a_sep, None).unwrap();
        assert!((a - 0.198_082_643_679_036).abs() < 1e-12, "got {a}");

        let q0 = Belief::new(m.space(), vec![0.63, 0.185, 0.185]).unwrap();
        let a0 = pooling_action(&m, &q0, a_sep, None).unwrap();
        assert!((a0 - 0.254_869_986_045_339).abs() < 1e-12, "got {a0}");
    }

    #[test]
    fn bisection_cross_checks_the_closed_form() {
        // Same model without the registered closed form: bisection on the
        // below-bliss bracket must land on the same root.
        let closed = baseline_model();
        let space = closed.space().clone();
        let open = SeparableModel::new(
            "price-no-closed-forms",
            Arc::clone(&space),
            Arc::new(|a, p| {
                let gamma = 1.0 - expected_type(p) / 3.0;
                a - 0.35 * a * gamma
            }),
            Arc::new(|a, _p| -(a * a)),
            Arc::new(|t| t),
            closed.domain(),
        );
        // Use the exact separating action for both routes; the closed form
        // assumes a_sep is the exact bliss against the revealing belief.
        let a_sep = separating_action(&closed).unwrap();
        for weights in [vec![0.01, 0.495, 0.495], vec![0.63, 0.185, 0.185]] {
            let q = Belief::new(&space, weights).unwrap();
            let via_closed = pooling_action(&closed, &q, a_sep, None).unwrap();
            let via_bisection = pooling_action(&open, &q, a_sep, None).unwrap();
            assert!(
                (via_closed - via_bisection).abs() < 1e-10,
                "{via_closed} vs {via_bisection}"
            );
        }
    }

    #[test]
    fn baseline_candidate_matches_frozen_endpoints() {
        let c = baseline_candidate();
        assert_eq!(c.periods(), 101);
        let q0 = c.belief_path().entry(0);
        assert!((q0.weight(0) - 0.630_464_395_362_648).abs() < 1e-12);
        assert!((c.pooling_actions()[0] - 0.254_934_406_199_516).abs() < 1e-12);
        assert!((c.pooling_actions()[100] - 0.198_082_643_679_036).abs() < 1e-12);
        assert!((c.separating_action() - 0.383_333_333_333_333).abs() < 1e-12);
        let (tail_belief, tail_action) = c.tail();
        assert_eq!(tail_belief.weights(), &[0.01, 0.495, 0.495]);
        assert_eq!(tail_action, c.pooling_actions()[100]);
    }

    #[test]
    fn residuals_hold_at_every_period() {
        let c = baseline_candidate();
        for k in 0..c.periods() {
            assert!(c.indifference_residual(k).unwrap().abs() < INDIFFERENCE_TOL);
        }
    }

    #[test]
    fn pooling_actions_strictly_decrease_during_attrition() {
        let c = baseline_candidate();
        for w in c.pooling_actions().windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn z_factor_stays_above_the_revealing_level() {
        let c = baseline_candidate();
        let z0 = crate::apps::z_factor(&Belief::dirac(c.model().space(), 0).unwrap(), 0.35, 1.0);
        for q in c.belief_path().entries() {
            assert!(crate::apps::z_factor(q, 0.35, 1.0) >= z0);
        }
    }

    #[test]
    fn zero_intensity_gives_a_pure_pooling_path() {
        let m = baseline_model();
        let p_term = Belief::new(m.space(), vec![0.2, 0.3, 0.5]).unwrap();
        let c = build_attrition(m, &p_term, &SigmaPath::Constant(0.0), 0.1, 0.1, 1.0).unwrap();
        for q in c.belief_path().entries() {
            assert_eq!(q.weights(), p_term.weights());
        }
        let first = c.pooling_actions()[0];
        assert!(c.pooling_actions().iter().all(|a| *a == first));
    }

    #[test]
    fn zero_window_candidate_is_tail_only() {
        let m = baseline_model();
        let p_term = Belief::new(m.space(), vec![0.2, 0.3, 0.5]).unwrap();
        let c = build_attrition(m, &p_term, &SigmaPath::Constant(0.5), 0.1, 0.1, 0.0).unwrap();
        assert_eq!(c.periods(), 1);
    }

    #[test]
    fn zero_fine_aborts_with_the_failing_period() {
        let space = TypeSpace::new(vec![1.0, 2.0, 3.0]).unwrap();
        let m = Arc::new(make_price_model(&PriceSignalingParams::new(0.35, 0.0, space)).unwrap());
        let p_term = Belief::new(m.space(), vec![0.01, 0.495, 0.495]).unwrap();
        let err =
            build_attrition(m, &p_term, &SigmaPath::Constant(0.5), 0.1, 0.1, 10.0).unwrap_err();
        match err {
            Error::Construction { period, source } => {
                assert_eq!(period, 0);
                assert!(matches!(*source, Error::NoSolution(_)));
            }
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn fractional_period_counts_are_rejected() {
        let m = baseline_model();
        let p_term = Belief::new(m.space(), vec![0.01, 0.495, 0.495]).unwrap();
        assert!(matches!(
            build_attrition(m, &p_term, &SigmaPath::Constant(0.5), 0.3, 0.1, 1.0),
            Err(Error::Parameter(_))
        ));
    }
}

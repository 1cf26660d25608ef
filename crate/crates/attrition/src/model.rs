//! Separable flow payoffs and myopically optimal (bliss) actions.
//!
//! A [`SeparableModel`] bundles the payoff triple `phi0(a, p) + phi1(a, p) *
//! psi(theta)` with a closed real action interval. Applications may register
//! closed forms for the bliss action and for the pooling-indifference root;
//! otherwise the generic grid/golden-section search and bisection are used.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{Belief, TypeSpace};

/// Default resolution of the numeric bliss-action search.
pub const ACTION_SEARCH_RESOLUTION: f64 = 1e-6;

/// A closed interval of admissible actions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionDomain {
    lo: f64,
    hi: f64,
}

impl ActionDomain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::Parameter(format!(
                "action domain [{lo}, {hi}] must be a finite closed interval"
            )));
        }
        Ok(ActionDomain { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, a: f64) -> bool {
        a.is_finite() && a >= self.lo && a <= self.hi
    }

    pub fn clamp(&self, a: f64) -> f64 {
        a.max(self.lo).min(self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Which side of the lowest type's bliss action carries the pooling root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSide {
    /// The pooling action lies below the bliss action (price-style models).
    BelowBliss,
    /// The pooling action lies above the bliss action.
    AboveBliss,
}

type BeliefPayoff = Arc<dyn Fn(f64, &Belief) -> f64 + Send + Sync>;
type TypePayoff = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type ClosedBliss = Arc<dyn Fn(&Belief, f64) -> f64 + Send + Sync>;
type ClosedPooling = Arc<dyn Fn(&Belief, f64) -> Result<f64> + Send + Sync>;

/// Separable reduced-form flow payoff `phi0(a, p) + phi1(a, p) * psi(theta)`.
///
/// Evaluation is deterministic and immutable; a model is safe to share across
/// threads.
#[derive(Clone)]
pub struct SeparableModel {
    label: String,
    space: Arc<TypeSpace>,
    phi0: BeliefPayoff,
    phi1: BeliefPayoff,
    psi: TypePayoff,
    domain: ActionDomain,
    closed_bliss: Option<ClosedBliss>,
    closed_pooling: Option<ClosedPooling>,
    costly_side: RootSide,
}

impl std::fmt::Debug for SeparableModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeparableModel")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("types", &self.space.values())
            .finish()
    }
}

impl SeparableModel {
    pub fn new(
        label: impl Into<String>,
        space: Arc<TypeSpace>,
        phi0: BeliefPayoff,
        phi1: BeliefPayoff,
        psi: TypePayoff,
        domain: ActionDomain,
    ) -> Self {
        SeparableModel {
            label: label.into(),
            space,
            phi0,
            phi1,
            psi,
            domain,
            closed_bliss: None,
            closed_pooling: None,
            costly_side: RootSide::BelowBliss,
        }
    }

    /// Registers a closed-form bliss action `(p, theta) -> action`.
    pub fn with_closed_bliss(
        mut self,
        f: impl Fn(&Belief, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.closed_bliss = Some(Arc::new(f));
        self
    }

    /// Registers a closed-form pooling-indifference root `(q, a_sep) -> action`.
    pub fn with_closed_pooling(
        mut self,
        f: impl Fn(&Belief, f64) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        self.closed_pooling = Some(Arc::new(f));
        self
    }

    /// Declares on which side of the bliss action the pooling root lives.
    pub fn with_costly_side(mut self, side: RootSide) -> Self {
        self.costly_side = side;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn space(&self) -> &Arc<TypeSpace> {
        &self.space
    }

    pub fn domain(&self) -> ActionDomain {
        self.domain
    }

    pub fn costly_side(&self) -> RootSide {
        self.costly_side
    }

    pub fn closed_pooling(&self) -> Option<&ClosedPooling> {
        self.closed_pooling.as_ref()
    }

    pub fn phi0(&self, a: f64, p: &Belief) -> f64 {
        (self.phi0)(a, p)
    }

    pub fn phi1(&self, a: f64, p: &Belief) -> f64 {
        (self.phi1)(a, p)
    }

    pub fn psi(&self, theta: f64) -> f64 {
        (self.psi)(theta)
    }

    /// Flow payoff `phi0(a, p) + phi1(a, p) * psi(theta)`.
    ///
    /// `a` must lie in the action domain; `p` must be indexed by this model's
    /// type space.
    pub fn flow_utility(&self, a: f64, p: &Belief, theta: f64) -> Result<f64> {
        if !self.domain.contains(a) {
            return Err(Error::ActionOutOfDomain {
                action: a,
                lo: self.domain.lo,
                hi: self.domain.hi,
            });
        }
        if !Arc::ptr_eq(p.space(), &self.space) && **p.space() != *self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.phi0(a, p) + self.phi1(a, p) * self.psi(theta))
    }

    /// An action maximizing the flow payoff at `(p, theta)` over the action
    /// domain. Uses the registered closed form when present, otherwise a
    /// grid scan refined by golden-section search at the default resolution,
    /// breaking ties toward the smallest maximizer.
    pub fn bliss_action(&self, p: &Belief, theta: f64) -> Result<f64> {
        if let Some(f) = &self.closed_bliss {
            return Ok(self.domain.clamp(f(p, theta)));
        }
        self.bliss_action_grid(p, theta, ACTION_SEARCH_RESOLUTION)
    }

    /// Numeric bliss-action search at an explicit resolution, bypassing any
    /// registered closed form.
    pub fn bliss_action_grid(&self, p: &Belief, theta: f64, resolution: f64) -> Result<f64> {
        let lo = self.domain.lo;
        let hi = self.domain.hi;
        if lo == hi {
            return Ok(lo);
        }
        let eval = |a: f64| -> Result<f64> {
            let u = self.flow_utility(a, p, theta)?;
            if !u.is_finite() {
                return Err(Error::Evaluation(format!(
                    "non-finite flow utility at action {a}"
                )));
            }
            Ok(u)
        };

        // Coarse scan: first (lowest) maximizer wins ties.
        const CELLS: usize = 4096;
        let step = (hi - lo) / CELLS as f64;
        let mut best_a = lo;
        let mut best_u = eval(lo)?;
        for i in 1..=CELLS {
            let a = if i == CELLS { hi } else { lo + step * i as f64 };
            let u = eval(a)?;
            if u > best_u {
                best_u = u;
                best_a = a;
            }
        }

        // Golden-section refinement inside the bracketing cells.
        let mut a = (best_a - step).max(lo);
        let mut b = (best_a + step).min(hi);
        let inv_phi = 0.618_033_988_749_894_9_f64;
        let mut x1 = b - inv_phi * (b - a);
        let mut x2 = a + inv_phi * (b - a);
        let mut f1 = eval(x1)?;
        let mut f2 = eval(x2)?;
        while b - a > resolution {
            if f1 >= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = eval(x1)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = eval(x2)?;
            }
        }

        // Pick the lowest point of the final bracket that attains the max.
        let fa = eval(a)?;
        let fb = eval(b)?;
        let mut out = a;
        let mut out_u = fa;
        for (x, u) in [(x1, f1), (x2, f2), (b, fb)] {
            if u > out_u {
                out_u = u;
                out = x;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Belief;

    fn quadratic_model() -> SeparableModel {
        // u = a*z - theta*a^2 with z = 0.8, no belief channel
        let space = TypeSpace::new(vec![1.0, 2.0, 3.0]).unwrap();
        SeparableModel::new(
            "quadratic",
            Arc::clone(&space),
            Arc::new(|a, _p| 0.8 * a),
            Arc::new(|a, _p| -(a * a)),
            Arc::new(|t| t),
            ActionDomain::new(0.0, 1.0).unwrap(),
        )
    }

    #[test]
    fn flow_utility_rejects_out_of_domain_actions() {
        let m = quadratic_model();
        let p = Belief::uniform(m.space());
        assert!(matches!(
            m.flow_utility(1.5, &p, 1.0),
            Err(Error::ActionOutOfDomain { .. })
        ));
        assert!(m.flow_utility(0.5, &p, 1.0).is_ok());
    }

    #[test]
    fn grid_search_finds_quadratic_maximum() {
        // argmax of 0.8a - theta a^2 is 0.4/theta
        let m = quadratic_model();
        let p = Belief::uniform(m.space());
        for theta in [1.0, 2.0, 3.0] {
            let a = m.bliss_action_grid(&p, theta, 1e-6).unwrap();
            assert!(
                (a - 0.4 / theta).abs() < 1e-6,
                "theta={theta}: got {a}, expected {}",
                0.4 / theta
            );
        }
    }

    #[test]
    fn grid_search_ties_break_low() {
        // Flat payoff: every action is a maximizer; the lowest one wins.
        let space = TypeSpace::new(vec![1.0, 2.0]).unwrap();
        let m = SeparableModel::new(
            "flat",
            Arc::clone(&space),
            Arc::new(|_a, _p| 1.0),
            Arc::new(|_a, _p| 0.0),
            Arc::new(|_t| 0.0),
            ActionDomain::new(0.25, 0.75).unwrap(),
        );
        let p = Belief::uniform(&space);
        let a = m.bliss_action(&p, 1.0).unwrap();
        assert!((a - 0.25).abs() < 1e-6, "got {a}");
    }

    #[test]
    fn non_finite_utility_is_an_evaluation_error() {
        let space = TypeSpace::new(vec![1.0, 2.0]).unwrap();
        let m = SeparableModel::new(
            "bad",
            Arc::clone(&space),
            Arc::new(|a, _p| if a > 0.5 { f64::NAN } else { a }),
            Arc::new(|_a, _p| 0.0),
            Arc::new(|_t| 0.0),
            ActionDomain::new(0.0, 1.0).unwrap(),
        );
        let p = Belief::uniform(&space);
        assert!(matches!(m.bliss_action(&p, 1.0), Err(Error::Evaluation(_))));
    }

    #[test]
    fn refinement_below_default_resolution_is_stable() {
        let m = quadratic_model();
        let p = Belief::uniform(m.space());
        let coarse = m.bliss_action_grid(&p, 2.0, 1e-6).unwrap();
        let fine = m.bliss_action_grid(&p, 2.0, 1e-8).unwrap();
        assert!((coarse - fine).abs() < 1e-6);
    }
}

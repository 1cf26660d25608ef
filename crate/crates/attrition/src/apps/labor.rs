//! Labor-market signaling application (adapter and assumption checks only).
//!
//! A candidate of ability `theta` either accepts the market wage — worth the
//! lumpsum equivalent `E[theta|p] / r` — or keeps studying at effort `e` with
//! flow cost `l(e) * m(theta)`, `l` increasing with `l(0) = 0` and `m`
//! strictly decreasing in ability. The composite action `(accept, effort)`
//! is embedded in one closed interval: `a < 0` means accept, `a >= 0` means
//! studying at effort `a`. The separable pieces are `phi0 = accept *
//! E[theta|p] / r`, `phi1 = -(1 - accept) * l(e)`, `psi = m(theta)`.
//!
//! No attrition construction is wired for this model; it ships for flow
//! evaluation and the monotonicity / single-crossing suite.

use std::sync::Arc;

use crate::assumptions::StrategyPath;
use crate::error::{Error, Result};
use crate::model::{ActionDomain, SeparableModel};
use crate::space::{expected_type, Belief, TypeSpace};

type Curve = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Parameters of the labor-market model.
#[derive(Clone)]
pub struct LaborParams {
    /// Education cost curve `l`, increasing with `l(0) = 0`.
    pub education_cost: Curve,
    /// Ability cost multiplier `m`, strictly decreasing across the grid.
    pub ability_cost: Curve,
    /// Discount rate used for the wage lumpsum equivalent.
    pub discount_rate: f64,
    pub theta_space: Arc<TypeSpace>,
    /// Upper bound of the effort interval.
    pub max_effort: f64,
}

impl std::fmt::Debug for LaborParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LaborParams")
            .field("discount_rate", &self.discount_rate)
            .field("types", &self.theta_space.values())
            .field("max_effort", &self.max_effort)
            .finish()
    }
}

impl LaborParams {
    /// Bundled defaults: `l(e) = e^2`, `m(theta) = 1.2 - 0.3 theta`,
    /// `r = 0.1`, abilities {1, 2, 3}, effort in [0, 1].
    pub fn baseline() -> Self {
        LaborParams {
            education_cost: Arc::new(|e| e * e),
            ability_cost: Arc::new(|t| 1.2 - 0.3 * t),
            discount_rate: 0.1,
            theta_space: TypeSpace::new(vec![1.0, 2.0, 3.0]).expect("valid grid"),
            max_effort: 1.0,
        }
    }
}

/// Decodes the scalar action: `a < 0` is "accept the offer", otherwise the
/// candidate studies at effort `a`.
pub fn decode_labor_action(a: f64) -> (bool, f64) {
    if a < 0.0 {
        (true, 0.0)
    } else {
        (false, a)
    }
}

/// Builds the labor-market [`SeparableModel`] over the action interval
/// `[-1, max_effort]`.
pub fn make_labor_model(params: &LaborParams) -> Result<SeparableModel> {
    let space = &params.theta_space;
    if params.discount_rate <= 0.0 || !params.discount_rate.is_finite() {
        return Err(Error::Parameter("discount rate must be positive".into()));
    }
    if params.max_effort <= 0.0 {
        return Err(Error::Parameter("max effort must be positive".into()));
    }
    if space.min_value() <= 0.0 {
        return Err(Error::Parameter(
            "abilities must be positive so wages are positive".into(),
        ));
    }
    let l0 = (params.education_cost)(0.0);
    if l0.abs() > 1e-12 {
        return Err(Error::Parameter(format!(
            "education cost at zero effort must vanish, got {l0}"
        )));
    }
    for k in 0..32 {
        let a = params.max_effort * k as f64 / 32.0;
        let b = params.max_effort * (k + 1) as f64 / 32.0;
        if (params.education_cost)(b) < (params.education_cost)(a) {
            return Err(Error::Parameter(
                "education cost must be increasing in effort".into(),
            ));
        }
    }
    let m_vals: Vec<f64> = space
        .values()
        .iter()
        .map(|&t| (params.ability_cost)(t))
        .collect();
    if m_vals.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Parameter(
            "ability cost multiplier must be strictly decreasing".into(),
        ));
    }
    if m_vals.iter().any(|v| *v < 0.0) {
        return Err(Error::Parameter(
            "ability cost multiplier must be nonnegative on the grid".into(),
        ));
    }

    let r = params.discount_rate;
    let l = Arc::clone(&params.education_cost);
    let m = Arc::clone(&params.ability_cost);
    Ok(SeparableModel::new(
        "labor-market",
        Arc::clone(space),
        Arc::new(move |a: f64, p: &Belief| {
            let (accept, _) = decode_labor_action(a);
            if accept {
                expected_type(p) / r
            } else {
                0.0
            }
        }),
        Arc::new(move |a: f64, _p: &Belief| {
            let (accept, effort) = decode_labor_action(a);
            if accept {
                0.0
            } else {
                -l(effort)
            }
        }),
        Arc::new(move |theta: f64| m(theta)),
        ActionDomain::new(-1.0, params.max_effort)?,
    )
    // Accepting the standing offer dominates any education flow, so the
    // myopic optimum is the lowest accept action.
    .with_closed_bliss(|_p, _theta| -1.0))
}

/// Demonstration strategy family for the direct single-crossing check:
/// study at a fixed effort for `s` periods along an improving reputation
/// path, then accept.
pub fn labor_sc_paths(m: &SeparableModel, periods: usize) -> Result<Vec<StrategyPath>> {
    let space = m.space();
    let mut beliefs = vec![Belief::uniform(space)];
    for _ in 1..periods {
        let last = beliefs.last().expect("nonempty");
        beliefs.push(crate::dynamics::bayes_pool_update(last, 0.5, 0.1)?);
    }
    let mut family = Vec::new();
    for split in 0..=periods {
        let mut actions = Vec::with_capacity(periods);
        let mut path_beliefs = Vec::with_capacity(periods);
        for t in 0..periods {
            if t < split {
                actions.push(0.5);
                path_beliefs.push(beliefs[t].clone());
            } else {
                actions.push(-1.0);
                // acceptance freezes the last reputation reached
                path_beliefs.push(beliefs[split.saturating_sub(1).min(periods - 1)].clone());
            }
        }
        family.push(StrategyPath::new(actions, path_beliefs)?);
    }
    Ok(family)
}

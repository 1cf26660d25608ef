//! Price-signaling application.
//!
//! A firm sets a price `a` each period against residual demand `1 - theta a`,
//! where `theta` is the competitive-pressure state. Complaints arrive at rate
//! `lambda * a` and trigger a fine `F` with probability `gamma(p) = 1 -
//! E[theta|p] / 3`. The flow payoff
//!
//! ```text
//! u(a, p, theta) = a (1 - theta a) - lambda a gamma(p) F
//!                = a z(p) - theta a^2,    z(p) = 1 - lambda F (1 - E[theta|p]/3)
//! ```
//!
//! is separable with `phi0 = a - lambda a gamma(p) F`, `phi1 = -a^2`,
//! `psi = theta`. Closed forms are registered for the bliss price
//! `z(p) / (2 theta)` and for the pooling-indifference root
//! `(z(q) - sqrt(z(q)^2 - z0^2)) / (2 theta_min)`, the root below the bliss
//! price.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{ActionDomain, RootSide, SeparableModel};
use crate::space::{expected_type, fosd_compare, Belief, FosdOrder, TypeSpace};

/// Parameters of the price-signaling model.
#[derive(Debug, Clone)]
pub struct PriceSignalingParams {
    /// Complaint-rate slope, per unit price per unit time.
    pub lambda: f64,
    /// Fine size.
    pub fine: f64,
    /// Competitive-pressure states; the default grid is {1, 2, 3}.
    pub theta_space: Arc<TypeSpace>,
}

impl PriceSignalingParams {
    pub fn new(lambda: f64, fine: f64, theta_space: Arc<TypeSpace>) -> Self {
        PriceSignalingParams {
            lambda,
            fine,
            theta_space,
        }
    }

    /// The baseline parameter set: lambda = 0.35, F = 1, theta in {1, 2, 3}.
    pub fn baseline() -> Self {
        PriceSignalingParams::new(
            0.35,
            1.0,
            TypeSpace::new(vec![1.0, 2.0, 3.0]).expect("valid grid"),
        )
    }
}

/// Effective marginal revenue net of expected fine exposure:
/// `z(p) = 1 - lambda F (1 - E[theta|p] / 3)`.
pub fn z_factor(p: &Belief, lambda: f64, fine: f64) -> f64 {
    1.0 - lambda * fine * (1.0 - expected_type(p) / 3.0)
}

/// Builds the price-signaling [`SeparableModel`].
///
/// Rejected when the fine pressure is strong enough to push the lowest
/// type's bliss price negative (`z(delta_min) < 0`; for the {1,2,3} grid
/// this is `lambda * F > 3/2`).
pub fn make_price_model(params: &PriceSignalingParams) -> Result<SeparableModel> {
    let space = &params.theta_space;
    if params.lambda < 0.0 || params.fine < 0.0 {
        return Err(Error::Parameter(
            "lambda and fine must be nonnegative".into(),
        ));
    }
    if space.min_value() <= 0.0 || space.max_value() > 3.0 {
        return Err(Error::Parameter(
            "price model types must lie in (0, 3] so the fine probability stays in [0, 1]".into(),
        ));
    }
    let delta_min = Belief::dirac(space, 0)?;
    let z0 = z_factor(&delta_min, params.lambda, params.fine);
    if z0 < 0.0 {
        return Err(Error::Parameter(format!(
            "lambda * fine = {} implies a negative bliss price for the lowest type",
            params.lambda * params.fine
        )));
    }
    let theta_min = space.min_value();
    let (lambda, fine) = (params.lambda, params.fine);

    let phi0 = move |a: f64, p: &Belief| {
        let gamma = 1.0 - expected_type(p) / 3.0;
        a - lambda * a * gamma * fine
    };
    let closed_bliss = move |p: &Belief, theta: f64| z_factor(p, lambda, fine) / (2.0 * theta);
    let closed_pooling = move |q: &Belief, a_sep: f64| -> Result<f64> {
        let zq = z_factor(q, lambda, fine);
        let z_low = 2.0 * theta_min * a_sep;
        let disc = zq * zq - z_low * z_low;
        if disc < 0.0 {
            return Err(Error::NoSolution(format!(
                "negative discriminant: z(q)^2 = {} below z(delta_min)^2 = {}",
                zq * zq,
                z_low * z_low
            )));
        }
        // A vanishing discriminant collapses the root onto the bliss price,
        // which cannot support signaling at a non-degenerate belief.
        if disc <= 4e-18 {
            return Err(Error::NoSolution(
                "pooling root coincides with the lowest type's bliss price (no signaling value)"
                    .into(),
            ));
        }
        Ok((zq - disc.sqrt()) / (2.0 * theta_min))
    };

    Ok(SeparableModel::new(
        format!(
            "price-signaling(lambda={}, fine={})",
            params.lambda, params.fine
        ),
        Arc::clone(space),
        Arc::new(phi0),
        Arc::new(|a, _p| -(a * a)),
        Arc::new(|theta| theta),
        ActionDomain::new(0.0, 1.0)?,
    )
    .with_closed_bliss(closed_bliss)
    .with_closed_pooling(closed_pooling)
    .with_costly_side(RootSide::BelowBliss))
}

/// Default candidate-strategy family for the direct single-crossing check:
/// pool along a reputation path for `s` periods, then separate forever.
pub fn price_sc_paths(
    m: &SeparableModel,
    pooling_actions: &[f64],
    beliefs: &[Belief],
    separating_action: f64,
) -> Result<Vec<crate::assumptions::StrategyPath>> {
    crate::assumptions::pool_then_separate_family(m, pooling_actions, beliefs, separating_action)
}

/// True when `q` weakly dominates the Dirac belief on the lowest type, the
/// precondition of the pooling-root computation.
pub fn dominates_lowest(q: &Belief) -> Result<bool> {
    let dirac = Belief::dirac(q.space(), 0)?;
    Ok(matches!(
        fosd_compare(q, &dirac)?,
        FosdOrder::Dominates | FosdOrder::Equal
    ))
}

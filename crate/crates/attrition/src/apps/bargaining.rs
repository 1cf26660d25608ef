//! Bargaining application (adapter and assumption checks only).
//!
//! A seller who privately knows the quality `theta` of an indivisible good
//! faces a buyer whose Markov strategy depends on the current belief only
//! through its expectation: an offer schedule `y_B` and an acceptance
//! threshold, both tabulated on expected-type knots and required to be
//! monotone. With probability `chi` the buyer proposes and the seller picks
//! `accept in {0, 1}`; otherwise the seller's own offer `y_S` is answered by
//! the buyer's threshold rule. Expected seller flow:
//!
//! ```text
//! phi0((y_S, accept), p) = chi * accept * y_B(p) + (1 - chi) * z_B(y_S, p) * y_S
//! phi1((y_S, accept), p) = -chi * accept - (1 - chi) * z_B(y_S, p)
//! psi(theta)             = c(theta)
//! ```
//!
//! When the seller valuation `c` is constant the type channel disappears:
//! the model is built with `psi` identically zero and the valuation folded
//! into `phi0`.
//!
//! The composite action `(y_S, accept)` is embedded in the closed interval
//! `[-1 - max_offer, max_offer]`: see [`decode_bargaining_action`].

use std::sync::Arc;

use crate::assumptions::StrategyPath;
use crate::error::{Error, Result};
use crate::model::{ActionDomain, SeparableModel};
use crate::space::{expected_type, Belief, TypeSpace};

type Valuation = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Buyer Markov strategy tabulated on expected-type knots, interpolated
/// linearly and clamped at the ends.
#[derive(Debug, Clone)]
pub struct BuyerStrategy {
    knots: Vec<f64>,
    offers: Vec<f64>,
    accept_thresholds: Vec<f64>,
}

impl BuyerStrategy {
    /// Validates that knots are strictly increasing and both tables are
    /// weakly increasing (monotone in reputation).
    pub fn new(knots: Vec<f64>, offers: Vec<f64>, accept_thresholds: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 || offers.len() != knots.len() || accept_thresholds.len() != knots.len()
        {
            return Err(Error::Parameter(
                "buyer strategy needs >= 2 knots with matching offer and threshold tables".into(),
            ));
        }
        if knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Parameter(
                "buyer strategy knots must be strictly increasing".into(),
            ));
        }
        if offers.windows(2).any(|w| w[1] < w[0])
            || accept_thresholds.windows(2).any(|w| w[1] < w[0])
        {
            return Err(Error::Parameter(
                "buyer strategy violates monotonicity: offers and thresholds must be weakly \
                 increasing in reputation"
                    .into(),
            ));
        }
        Ok(BuyerStrategy {
            knots,
            offers,
            accept_thresholds,
        })
    }

    fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
        if x <= xs[0] {
            return ys[0];
        }
        if x >= xs[xs.len() - 1] {
            return ys[ys.len() - 1];
        }
        let k = xs.partition_point(|v| *v <= x) - 1;
        let t = (x - xs[k]) / (xs[k + 1] - xs[k]);
        ys[k] + t * (ys[k + 1] - ys[k])
    }

    /// Buyer's offer at expected type `e`.
    pub fn offer_at(&self, e: f64) -> f64 {
        Self::interp(&self.knots, &self.offers, e)
    }

    /// Whether the buyer accepts a seller offer `y` at expected type `e`.
    pub fn accepts(&self, y: f64, e: f64) -> bool {
        y <= Self::interp(&self.knots, &self.accept_thresholds, e)
    }
}

/// Parameters of the bargaining model.
#[derive(Clone)]
pub struct BargainingParams {
    /// Seller valuation `c`, constant or strictly increasing in quality.
    pub seller_valuation: Valuation,
    /// Buyer valuation `v` (environment description; does not enter the
    /// seller's reduced-form flow).
    pub buyer_valuation: Valuation,
    /// Probability that the buyer proposes in a period, treated as an
    /// exogenous per-period parameter.
    pub buyer_proposal_prob: f64,
    pub buyer_strategy: BuyerStrategy,
    pub theta_space: Arc<TypeSpace>,
    /// Upper bound of the seller's offer interval.
    pub max_offer: f64,
}

impl std::fmt::Debug for BargainingParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BargainingParams")
            .field("buyer_proposal_prob", &self.buyer_proposal_prob)
            .field("types", &self.theta_space.values())
            .field("max_offer", &self.max_offer)
            .finish()
    }
}

impl BargainingParams {
    /// Bundled defaults: qualities {1, 2, 3}, `c = 0.2 + 0.1 theta`,
    /// `v = theta`, buyer always proposes, offer schedule `0.8 E` and
    /// acceptance threshold `0.2 E` tabulated on `E in {1, 3}`.
    pub fn baseline() -> Self {
        BargainingParams {
            seller_valuation: Arc::new(|t| 0.2 + 0.1 * t),
            buyer_valuation: Arc::new(|t| t),
            buyer_proposal_prob: 1.0,
            buyer_strategy: BuyerStrategy::new(vec![1.0, 3.0], vec![0.8, 2.4], vec![0.2, 0.6])
                .expect("baseline buyer strategy is monotone"),
            theta_space: TypeSpace::new(vec![1.0, 2.0, 3.0]).expect("valid grid"),
            max_offer: 3.0,
        }
    }
}

/// Decodes the scalar action into `(seller_offer, accept)`.
///
/// `a >= 0` proposes `y_S = a` and rejects the buyer's offer; `a <= -1`
/// accepts the buyer's offer while carrying proposal `y_S = -(a + 1)`;
/// values in `(-1, 0)` accept with a zero proposal. The map is reversible on
/// the canonical ranges `[0, max_offer]` and `[-1 - max_offer, -1]`.
pub fn decode_bargaining_action(a: f64) -> (f64, bool) {
    if a >= 0.0 {
        (a, false)
    } else if a > -1.0 {
        (0.0, true)
    } else {
        (-(a + 1.0), true)
    }
}

/// Builds the bargaining [`SeparableModel`] over the action interval
/// `[-1 - max_offer, max_offer]`.
pub fn make_bargaining_model(params: &BargainingParams) -> Result<SeparableModel> {
    let space = &params.theta_space;
    let chi = params.buyer_proposal_prob;
    if !(0.0..=1.0).contains(&chi) {
        return Err(Error::Parameter(format!(
            "buyer proposal probability must lie in [0, 1], got {chi}"
        )));
    }
    if params.max_offer <= 0.0 {
        return Err(Error::Parameter("max offer must be positive".into()));
    }
    let c_vals: Vec<f64> = space
        .values()
        .iter()
        .map(|&t| (params.seller_valuation)(t))
        .collect();
    let increasing = c_vals.windows(2).all(|w| w[1] > w[0]);
    let constant = c_vals.windows(2).all(|w| (w[1] - w[0]).abs() <= 1e-12);
    if !increasing && !constant {
        return Err(Error::Parameter(
            "seller valuation must be constant or strictly increasing in quality".into(),
        ));
    }

    let buyer = params.buyer_strategy.clone();
    let c = Arc::clone(&params.seller_valuation);
    let label = format!("bargaining(chi={chi})");
    let domain = ActionDomain::new(-1.0 - params.max_offer, params.max_offer)?;

    if constant {
        // No type channel: fold the constant valuation into phi0 and use a
        // zero psi, keeping the flow u = phi0 alone.
        let c0 = c_vals[0];
        let phi0 = move |a: f64, p: &Belief| {
            let (y_s, accept) = decode_bargaining_action(a);
            let e = expected_type(p);
            let acc = if accept { 1.0 } else { 0.0 };
            let buyer_accepts = if buyer.accepts(y_s, e) { 1.0 } else { 0.0 };
            chi * acc * (buyer.offer_at(e) - c0) + (1.0 - chi) * buyer_accepts * (y_s - c0)
        };
        return Ok(SeparableModel::new(
            label,
            Arc::clone(space),
            Arc::new(phi0),
            Arc::new(|_a, _p| 0.0),
            Arc::new(|_t| 0.0),
            domain,
        ));
    }

    let buyer1 = params.buyer_strategy.clone();
    let phi0 = move |a: f64, p: &Belief| {
        let (y_s, accept) = decode_bargaining_action(a);
        let e = expected_type(p);
        let acc = if accept { 1.0 } else { 0.0 };
        let buyer_accepts = if buyer.accepts(y_s, e) { 1.0 } else { 0.0 };
        chi * acc * buyer.offer_at(e) + (1.0 - chi) * buyer_accepts * y_s
    };
    let phi1 = move |a: f64, p: &Belief| {
        let (y_s, accept) = decode_bargaining_action(a);
        let e = expected_type(p);
        let acc = if accept { 1.0 } else { 0.0 };
        let buyer_accepts = if buyer1.accepts(y_s, e) { 1.0 } else { 0.0 };
        -chi * acc - (1.0 - chi) * buyer_accepts
    };
    Ok(SeparableModel::new(
        label,
        Arc::clone(space),
        Arc::new(phi0),
        Arc::new(phi1),
        Arc::new(move |theta| c(theta)),
        domain,
    ))
}

/// Demonstration strategy family for the direct single-crossing check:
/// hold out with a high own offer for `s` periods along an improving
/// reputation path, then accept the buyer's offer.
pub fn bargaining_sc_paths(m: &SeparableModel, periods: usize) -> Result<Vec<StrategyPath>> {
    let space = m.space();
    let mut beliefs = vec![Belief::uniform(space)];
    for _ in 1..periods {
        let last = beliefs.last().expect("nonempty");
        beliefs.push(crate::dynamics::bayes_pool_update(last, 0.4, 0.1)?);
    }
    let hold_out = m.domain().hi();
    let mut family = Vec::new();
    for split in 0..=periods {
        let mut actions = Vec::with_capacity(periods);
        let mut path_beliefs = Vec::with_capacity(periods);
        for t in 0..periods {
            if t < split {
                actions.push(hold_out);
                path_beliefs.push(beliefs[t].clone());
            } else {
                actions.push(-1.0);
                path_beliefs.push(beliefs[split.saturating_sub(1).min(periods - 1)].clone());
            }
        }
        family.push(StrategyPath::new(actions, path_beliefs)?);
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepting_the_buyer_offer_pays_offer_minus_valuation() {
        let m = make_bargaining_model(&BargainingParams::baseline()).unwrap();
        let p = Belief::uniform(m.space());
        // E = 2, buyer offers 1.6; c(1) = 0.3
        let u = m.flow_utility(-1.0, &p, 1.0).unwrap();
        assert!((u - (1.6 - 0.3)).abs() < 1e-12);
        let u3 = m.flow_utility(-1.0, &p, 3.0).unwrap();
        assert!((u3 - (1.6 - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn own_offers_are_ignored_when_the_buyer_always_proposes() {
        let m = make_bargaining_model(&BargainingParams::baseline()).unwrap();
        let p = Belief::uniform(m.space());
        assert_eq!(m.flow_utility(1.0, &p, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn constant_valuation_uses_the_type_free_form() {
        let mut params = BargainingParams::baseline();
        params.seller_valuation = Arc::new(|_t| 0.4);
        let m = make_bargaining_model(&params).unwrap();
        assert_eq!(m.psi(1.0), 0.0);
        assert_eq!(m.psi(3.0), 0.0);
        let p = Belief::uniform(m.space());
        let u = m.flow_utility(-1.0, &p, 1.0).unwrap();
        assert!((u - (1.6 - 0.4)).abs() < 1e-12);
        assert_eq!(u, m.flow_utility(-1.0, &p, 3.0).unwrap());
    }

    #[test]
    fn payoff_gaps_are_affine_in_the_seller_valuation() {
        let m = make_bargaining_model(&BargainingParams::baseline()).unwrap();
        let paths = bargaining_sc_paths(&m, 5).unwrap();
        let psi: Vec<f64> = m.space().values().iter().map(|&t| m.psi(t)).collect();
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                let gaps =
                    crate::assumptions::discounted_gap_by_type(&m, &paths[i], &paths[j], 0.1, 0.1)
                        .unwrap();
                let slope = (gaps[1] - gaps[0]) / (psi[1] - psi[0]);
                let intercept = gaps[0] - slope * psi[0];
                let predicted = intercept + slope * psi[2];
                assert!(
                    (predicted - gaps[2]).abs() < 1e-10,
                    "paths ({i}, {j}): affine fit residual {:e}",
                    (predicted - gaps[2]).abs()
                );
            }
        }
    }

    #[test]
    fn non_monotone_buyer_strategy_is_rejected() {
        assert!(BuyerStrategy::new(vec![1.0, 3.0], vec![2.4, 0.8], vec![0.2, 0.6]).is_err());
    }

    #[test]
    fn decode_round_trips_on_canonical_ranges() {
        let (y, acc) = decode_bargaining_action(1.25);
        assert!(!acc);
        assert_eq!(y, 1.25);
        let (y, acc) = decode_bargaining_action(-3.5);
        assert!(acc);
        assert_eq!(y, 2.5);
        let (y, acc) = decode_bargaining_action(-0.5);
        assert!(acc);
        assert_eq!(y, 0.0);
    }

    #[test]
    fn non_monotone_seller_valuation_is_rejected() {
        let mut params = BargainingParams::baseline();
        params.seller_valuation = Arc::new(|t| -t);
        assert!(make_bargaining_model(&params).is_err());
    }
}

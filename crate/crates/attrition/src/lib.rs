//! Attrition-form informative equilibria in finite-type dynamic signaling
//! games: construction, verification, and reproducible scenario runs.
//!
//! A long-lived sender with a persistent private type acts every short
//! period; an uninformed receiver updates a reputation (a belief over the
//! finite type grid) from the observed actions, and the sender's reduced-form
//! flow payoff `phi0(a, p) + phi1(a, p) psi(theta)` is increasing in that
//! reputation. Informative behavior then has a single shape: every supported
//! type pools on one action while the lowest type mixes between pooling and
//! a revealing action that is myopically optimal for it. This crate builds
//! such candidates and checks them:
//!
//! - [`space`]: type grids, beliefs, first-order stochastic dominance.
//! - [`model`]: separable flow payoffs, bliss (myopically optimal) actions.
//! - [`assumptions`]: monotonicity and single-crossing checks, by sufficient
//!   conditions and by direct grid evaluation, with self-verifying
//!   counterexample witnesses.
//! - [`dynamics`]: Bayesian reputation updates under attrition, closed-form
//!   backward unraveling, pessimistic off-path beliefs.
//! - [`construct`]: separating action, pooling action from the lowest
//!   type's flow indifference, candidate assembly over a finite attrition
//!   window with an infinite frozen tail.
//! - [`verify`]: discounted value recursion, deviation values, incentive
//!   margins per type and period, and an exhaustive-enumeration oracle for
//!   small games.
//! - [`apps`]: bundled price-signaling, labor-market and bargaining models.
//! - [`scenario`]: config files, CSV time series, certificates, parameter
//!   sweeps.
//!
//! # Examples
//!
//! One runnable example per capability lives in `examples/`:
//!
//! ```bash
//! cargo run --example build_and_verify   # construct + certify a candidate
//! cargo run --example unravel            # belief unraveling round trip
//! cargo run --example assumptions        # MON/SC suite on bundled models
//! cargo run --example figures            # emit the four CSV series
//! cargo run --example sweep              # sigma x dt verification sweep
//! cargo run --example oracle_game        # enumeration oracle vs recursion
//! ```
//!
//! The thin CLI drives the same machinery from a config file:
//!
//! ```bash
//! cargo run --bin attrition -- run configs/price.conf --out out
//! ```
//!
//! # Quick start
//!
//! ```
//! use attrition::apps::{make_price_model, PriceSignalingParams};
//! use attrition::construct::build_attrition;
//! use attrition::dynamics::SigmaPath;
//! use attrition::space::Belief;
//! use attrition::verify::verify_candidate;
//! use std::sync::Arc;
//!
//! let model = Arc::new(make_price_model(&PriceSignalingParams::baseline()).unwrap());
//! let p_terminal = Belief::new(model.space(), vec![0.01, 0.495, 0.495]).unwrap();
//! let candidate = build_attrition(
//!     model,
//!     &p_terminal,
//!     &SigmaPath::Constant(0.5),
//!     0.1,  // dt
//!     0.1,  // discount rate
//!     10.0, // attrition end time
//! )
//! .unwrap();
//! let certificate = verify_candidate(&candidate, 1e-6).unwrap();
//! assert!(certificate.verdict.is_verified());
//! ```

pub mod apps;
pub mod assumptions;
pub mod construct;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod scenario;
pub mod space;
pub mod verify;

pub use crate::error::{Error, Result};
pub use crate::space::{expected_type, fosd_compare, Belief, FosdOrder, TypeSpace};

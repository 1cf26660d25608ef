//! Independent verification of attrition candidates.
//!
//! [`schedule_value`] evaluates the discounted value of following the
//! pooling schedule from any period, with a closed-form geometric tail for
//! the frozen post-attrition phase. [`deviation_value`] prices the best
//! deviation: any off-schedule action collapses the belief onto the lowest
//! type forever, after which the deviator plays its bliss action against
//! that belief. [`verify_candidate`] assembles a [`Certificate`] recording
//! the lowest type's indifference residuals and every higher type's
//! incentive margin.
//!
//! [`SmallGame`] and [`brute_force_value`] provide an exhaustive-enumeration
//! oracle for the value recursion on games small enough to enumerate.

use std::sync::Arc;

use crate::construct::AttritionCandidate;
use crate::error::{Error, Result};
use crate::model::SeparableModel;
use crate::space::Belief;

/// Default relative verification tolerance.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-6;

/// Per-period discount factor `e^{-r dt}`.
fn discount(r: f64, dt: f64) -> f64 {
    (-r * dt).exp()
}

/// Present value of a unit flow received each period forever: `dt / (1 - e^{-r dt})`.
fn annuity(r: f64, dt: f64) -> f64 {
    dt / (1.0 - discount(r, dt))
}

/// Value of following the pooling schedule from period `t` (index into the
/// belief path) for a sender of type `theta`:
///
/// ```text
/// V(theta, t) = sum_{s=t}^{K-1} e^{-r (s-t) dt} u(a_s, q_s, theta) dt
///             + e^{-r (K-t) dt} u(a_K, q_K, theta) dt / (1 - e^{-r dt})
/// ```
///
/// computed by backward recursion with the closed-form geometric tail.
pub fn schedule_value(c: &AttritionCandidate, theta: f64, t: usize) -> f64 {
    let k_last = c.periods() - 1;
    assert!(t <= k_last, "period {t} beyond the attrition window");
    let m = c.model();
    let flow = |k: usize| -> f64 {
        m.flow_utility(c.pooling_actions()[k], c.belief_path().entry(k), theta)
            .expect("candidate actions and beliefs are validated at construction")
    };
    let disc = discount(c.discount_rate(), c.dt());
    let mut value = flow(k_last) * annuity(c.discount_rate(), c.dt());
    for k in (t..k_last).rev() {
        value = flow(k) * c.dt() + disc * value;
    }
    value
}

/// Value of the best deviation for type `theta`: the belief jumps to the
/// Dirac on the lowest type and stays there, and the deviator plays its
/// bliss action against it forever. Time-independent.
pub fn deviation_value(c: &AttritionCandidate, theta: f64) -> Result<f64> {
    let m = c.model();
    let dirac = Belief::dirac(m.space(), 0)?;
    let bliss = m.bliss_action(&dirac, theta)?;
    let flow = m.flow_utility(bliss, &dirac, theta)?;
    Ok(flow * annuity(c.discount_rate(), c.dt()))
}

/// Verification verdict with failing indices.
#[derive(Debug, Clone, PartialEq)]
pub enum VerifyVerdict {
    Verified,
    /// The lowest type's value is not flat at its deviation value.
    IndifferenceFail {
        periods: Vec<usize>,
    },
    /// Some higher type strictly prefers deviating at some period;
    /// `(type index, period)` pairs.
    IcFail {
        failures: Vec<(usize, usize)>,
    },
}

impl VerifyVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, VerifyVerdict::Verified)
    }
}

/// Verifier output: values, residuals, margins and the verdict.
#[derive(Debug, Clone)]
pub struct Certificate {
    /// Discounted pooling values, `[type index][period]`.
    pub pool_values: Vec<Vec<f64>>,
    /// Deviation values per type (time-independent).
    pub dev_values: Vec<f64>,
    /// Absolute indifference residuals of the lowest type, per period.
    pub residuals: Vec<f64>,
    /// `V_pool - V_dev` per higher type, `[type index - 1][period]`.
    pub ic_margins: Vec<Vec<f64>>,
    /// Relative tolerance the verdict was computed at.
    pub tol: f64,
    pub verdict: VerifyVerdict,
    /// Type grid values, for rendering.
    pub theta_values: Vec<f64>,
    pub dt: f64,
    pub r: f64,
    pub t_bar: f64,
}

impl Certificate {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_ic_margin(&self) -> f64 {
        self.ic_margins
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Structured text report, deterministic for identical inputs.
    pub fn render(&self) -> String {
        use std::fmt::Write;
        let fmt = crate::scenario::fmt_significant;
        let mut out = String::new();
        let verdict = match &self.verdict {
            VerifyVerdict::Verified => "Verified".to_string(),
            VerifyVerdict::IndifferenceFail { periods } => {
                format!("IndifferenceFail at periods {periods:?}")
            }
            VerifyVerdict::IcFail { failures } => {
                format!("ICFail at (type index, period) pairs {failures:?}")
            }
        };
        let _ = writeln!(out, "verdict: {verdict}");
        let _ = writeln!(
            out,
            "parameters: dt = {}, r = {}, t_bar = {}, tol = {}",
            fmt(self.dt),
            fmt(self.r),
            fmt(self.t_bar),
            fmt(self.tol)
        );
        let _ = writeln!(out, "periods: {}", self.residuals.len());
        let _ = writeln!(
            out,
            "max indifference residual: {}",
            fmt(self.max_residual())
        );
        let min_margin = self.min_ic_margin();
        let _ = writeln!(
            out,
            "min incentive margin: {}",
            if min_margin.is_finite() {
                fmt(min_margin)
            } else {
                "n/a (two supported types collapse to the lowest)".to_string()
            }
        );
        let _ = writeln!(out, "deviation values by type:");
        for (i, (theta, v)) in self.theta_values.iter().zip(&self.dev_values).enumerate() {
            let _ = writeln!(
                out,
                "  theta_{} = {}: V_dev = {}",
                i + 1,
                fmt(*theta),
                fmt(*v)
            );
        }
        let _ = writeln!(out, "pooling values at the window endpoints:");
        for (i, row) in self.pool_values.iter().enumerate() {
            let _ = writeln!(
                out,
                "  theta_{}: V_pool(0) = {}, V_pool(t_bar) = {}",
                i + 1,
                fmt(row[0]),
                fmt(*row.last().expect("nonempty"))
            );
        }
        out
    }
}

/// Computes all values and margins for `c` and decides the verdict at
/// relative tolerance `tol`.
///
/// Verified means: the lowest type's pooling value equals its deviation
/// value at every period within `tol * max(1, |V_dev|)`, and every higher
/// type's margin `V_pool - V_dev` is at least `-tol` at every period.
/// Failure is a verdict, not an error.
pub fn verify_candidate(c: &AttritionCandidate, tol: f64) -> Result<Certificate> {
    let thetas = c.model().space().values().to_vec();
    let periods = c.periods();

    let mut pool_values = Vec::with_capacity(thetas.len());
    let mut dev_values = Vec::with_capacity(thetas.len());
    for &theta in &thetas {
        let row: Vec<f64> = (0..periods).map(|t| schedule_value(c, theta, t)).collect();
        pool_values.push(row);
        dev_values.push(deviation_value(c, theta)?);
    }

    let scale = dev_values[0].abs().max(1.0);
    let residuals: Vec<f64> = pool_values[0]
        .iter()
        .map(|v| (v - dev_values[0]).abs())
        .collect();
    let indifference_failures: Vec<usize> = residuals
        .iter()
        .enumerate()
        .filter(|(_, res)| **res > tol * scale)
        .map(|(t, _)| t)
        .collect();

    let mut ic_margins = Vec::new();
    let mut ic_failures = Vec::new();
    for ti in 1..thetas.len() {
        let margins: Vec<f64> = pool_values[ti].iter().map(|v| v - dev_values[ti]).collect();
        for (t, margin) in margins.iter().enumerate() {
            if *margin < -tol {
                ic_failures.push((ti, t));
            }
        }
        ic_margins.push(margins);
    }

    let verdict = if !indifference_failures.is_empty() {
        VerifyVerdict::IndifferenceFail {
            periods: indifference_failures,
        }
    } else if !ic_failures.is_empty() {
        VerifyVerdict::IcFail {
            failures: ic_failures,
        }
    } else {
        VerifyVerdict::Verified
    };

    Ok(Certificate {
        pool_values,
        dev_values,
        residuals,
        ic_margins,
        tol,
        verdict,
        theta_values: thetas,
        dt: c.dt(),
        r: c.discount_rate(),
        t_bar: c.t_bar(),
    })
}

/// One admissible move in a [`SmallGame`]: a concrete action, the
/// post-action belief it induces, and the successor state.
#[derive(Debug, Clone, Copy)]
pub struct GameMove {
    pub action: f64,
    pub belief: usize,
    pub next_state: usize,
}

type TerminalValue = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

/// A finite game small enough to enumerate exhaustively: per period and
/// state a menu of moves, flow payoffs from a [`SeparableModel`], and a
/// terminal lump value at the horizon.
///
/// Enumeration bounds: at most 8 periods and 6 moves per state.
#[derive(Clone)]
pub struct SmallGame {
    model: Arc<SeparableModel>,
    dt: f64,
    r: f64,
    horizon: usize,
    beliefs: Vec<Belief>,
    menus: Vec<Vec<Vec<GameMove>>>,
    terminal: TerminalValue,
    initial_state: usize,
}

impl SmallGame {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        model: Arc<SeparableModel>,
        dt: f64,
        r: f64,
        horizon: usize,
        beliefs: Vec<Belief>,
        menus: Vec<Vec<Vec<GameMove>>>,
        terminal: TerminalValue,
        initial_state: usize,
    ) -> Result<Self> {
        if horizon > 8 {
            return Err(Error::Parameter(format!(
                "enumeration bound exceeded: horizon {horizon} > 8"
            )));
        }
        if menus.len() != horizon {
            return Err(Error::Parameter(format!(
                "need one menu layer per period: {} layers for horizon {horizon}",
                menus.len()
            )));
        }
        for layer in &menus {
            for menu in layer {
                if menu.is_empty() || menu.len() > 6 {
                    return Err(Error::Parameter(format!(
                        "enumeration bound exceeded: {} moves in a state menu (max 6)",
                        menu.len()
                    )));
                }
                for mv in menu {
                    if !mv.action.is_finite() || mv.belief >= beliefs.len() {
                        return Err(Error::Parameter(
                            "game move references a missing belief or non-finite action".into(),
                        ));
                    }
                }
            }
        }
        Ok(SmallGame {
            model,
            dt,
            r,
            horizon,
            beliefs,
            menus,
            terminal,
            initial_state,
        })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn initial_state(&self) -> usize {
        self.initial_state
    }

    /// Encodes an attrition candidate as a two-state game restricted to the
    /// actions `{pooling, separating}`: state 0 follows the schedule, state
    /// 1 is absorbed at the revealing belief. The terminal lump carries the
    /// frozen tail (best frozen action for the absorbed state).
    pub fn encode_candidate(c: &AttritionCandidate) -> Result<SmallGame> {
        let k_last = c.periods() - 1;
        if k_last > 8 {
            return Err(Error::Parameter(format!(
                "candidate has {k_last} attrition periods; the enumeration bound is 8"
            )));
        }
        let m = Arc::clone(c.model());
        let dirac = Belief::dirac(m.space(), 0)?;
        let mut beliefs: Vec<Belief> = c.belief_path().entries().to_vec();
        let dirac_index = beliefs.len();
        beliefs.push(dirac.clone());

        let a_sep = c.separating_action();
        let mut menus = Vec::with_capacity(k_last);
        for k in 0..k_last {
            let pool = GameMove {
                action: c.pooling_actions()[k],
                belief: k,
                next_state: 0,
            };
            let separate = GameMove {
                action: a_sep,
                belief: dirac_index,
                next_state: 1,
            };
            let absorbed_pool = GameMove {
                action: c.pooling_actions()[k],
                belief: dirac_index,
                next_state: 1,
            };
            let absorbed_separate = separate;
            menus.push(vec![
                vec![pool, separate],
                vec![absorbed_pool, absorbed_separate],
            ]);
        }

        let tail_action = *c.pooling_actions().last().expect("nonempty");
        let tail_belief = c.belief_path().last().clone();
        let ann = annuity(c.discount_rate(), c.dt());
        let model = Arc::clone(&m);
        let terminal = move |state: usize, theta: f64| -> f64 {
            if state == 0 {
                model
                    .flow_utility(tail_action, &tail_belief, theta)
                    .expect("validated candidate")
                    * ann
            } else {
                let pool_flow = model
                    .flow_utility(tail_action, &dirac, theta)
                    .expect("validated candidate");
                let sep_flow = model
                    .flow_utility(a_sep, &dirac, theta)
                    .expect("validated candidate");
                pool_flow.max(sep_flow) * ann
            }
        };

        SmallGame::new(
            m,
            c.dt(),
            c.discount_rate(),
            k_last,
            beliefs,
            menus,
            Arc::new(terminal),
            0,
        )
    }
}

/// Exhaustively enumerates every action sequence of the game from period
/// `t` and state `state`, summing discounted flows forward plus the
/// discounted terminal lump, and returns the maximum.
pub fn brute_force_value(g: &SmallGame, theta: f64, t: usize, state: usize) -> Result<f64> {
    if t > g.horizon {
        return Err(Error::Parameter(format!(
            "start period {t} beyond horizon {}",
            g.horizon
        )));
    }
    fn walk(
        g: &SmallGame,
        theta: f64,
        start: usize,
        k: usize,
        state: usize,
        acc: f64,
        best: &mut f64,
    ) -> Result<()> {
        if k == g.horizon {
            let total = acc + (-g.r * (k - start) as f64 * g.dt).exp() * (g.terminal)(state, theta);
            if total > *best {
                *best = total;
            }
            return Ok(());
        }
        let weight = (-g.r * (k - start) as f64 * g.dt).exp();
        for mv in &g.menus[k][state] {
            let flow = g
                .model
                .flow_utility(mv.action, &g.beliefs[mv.belief], theta)?;
            if !flow.is_finite() {
                return Err(Error::Evaluation(format!(
                    "non-finite flow in game table at period {k}"
                )));
            }
            walk(
                g,
                theta,
                start,
                k + 1,
                mv.next_state,
                acc + weight * flow * g.dt,
                best,
            )?;
        }
        Ok(())
    }
    let mut best = f64::NEG_INFINITY;
    walk(g, theta, t, t, state, 0.0, &mut best)?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apps::{make_price_model, PriceSignalingParams};
    use crate::dynamics::SigmaPath;
    use crate::model::{ActionDomain, SeparableModel};
    use crate::space::TypeSpace;

    fn baseline_candidate() -> AttritionCandidate {
        let m = Arc::new(make_price_model(&PriceSignalingParams::baseline()).unwrap());
        let p_term = Belief::new(m.space(), vec![0.01, 0.495, 0.495]).unwrap();
        crate::construct::build_attrition(m, &p_term, &SigmaPath::Constant(0.5), 0.1, 0.1, 10.0)
            .unwrap()
    }

    #[test]
    fn constant_flow_value_is_the_annuity() {
        // A zero-intensity candidate has constant flows, so the schedule
        // value is flow * dt / (1 - e^{-r dt}) at every period.
        let m = Arc::new(make_price_model(&PriceSignalingParams::baseline()).unwrap());
        let p_term = Belief::new(m.space(), vec![0.2, 0.3, 0.5]).unwrap();
        let c = crate::construct::build_attrition(
            Arc::clone(&m),
            &p_term,
            &SigmaPath::Constant(0.0),
            0.1,
            0.1,
            2.0,
        )
        .unwrap();
        for &theta in m.space().values() {
            let flow = m
                .flow_utility(c.pooling_actions()[0], c.belief_path().entry(0), theta)
                .unwrap();
            let expected = flow * 0.1 / (1.0 - (-0.01_f64).exp());
            for t in [0, 10, 20] {
                assert!((schedule_value(&c, theta, t) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deviation_values_match_the_closed_forms() {
        // z0^2 / (4 theta) * dt / (1 - e^{-r dt}), frozen from the oracle
        let c = baseline_candidate();
        let expected = [
            1.476_803_912_016_636,
            0.738_401_956_008_318,
            0.492_267_970_672_212,
        ];
        for (i, &theta) in [1.0, 2.0, 3.0].iter().enumerate() {
            let v = deviation_value(&c, theta).unwrap();
            assert!((v - expected[i]).abs() < 1e-12, "theta {theta}: {v}");
        }
        // the continuous-time approximations quoted at display precision
        assert!((expected[0] - 1.46945).abs() < 0.01);
        assert!((expected[1] - 0.73472).abs() < 0.01);
        assert!((expected[2] - 0.48982).abs() < 0.01);
    }

    #[test]
    fn lowest_type_value_is_flat_at_the_deviation_value() {
        let c = baseline_candidate();
        let dev = deviation_value(&c, 1.0).unwrap();
        for t in 0..c.periods() {
            let v = schedule_value(&c, 1.0, t);
            assert!((v - dev).abs() / dev < 1e-12, "t={t}: {v} vs {dev}");
        }
    }

    #[test]
    fn forward_summation_reproduces_the_recursion() {
        // Independent route: explicit discounted forward sum.
        let c = baseline_candidate();
        let m = c.model();
        let k_last = c.periods() - 1;
        for &theta in [1.0, 2.0, 3.0].iter() {
            for t in [0usize, 37, 100] {
                let mut total = 0.0;
                for s in t..k_last {
                    let u = m
                        .flow_utility(c.pooling_actions()[s], c.belief_path().entry(s), theta)
                        .unwrap();
                    total += (-0.1 * (s - t) as f64 * 0.1).exp() * u * 0.1;
                }
                let u_tail = m
                    .flow_utility(
                        c.pooling_actions()[k_last],
                        c.belief_path().entry(k_last),
                        theta,
                    )
                    .unwrap();
                total += (-0.1 * (k_last - t) as f64 * 0.1).exp() * u_tail * 0.1
                    / (1.0 - (-0.01_f64).exp());
                assert!((schedule_value(&c, theta, t) - total).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tail_value_for_the_middle_type_matches_the_hand_evaluation() {
        let c = baseline_candidate();
        let v = schedule_value(&c, 2.0, 100);
        // frozen from the oracle; the display-precision value is ~1.0771
        assert!((v - 1.082_471_468_339_171).abs() < 1e-12);
        assert!((v - 1.0771).abs() < 1e-2);
    }

    #[test]
    fn baseline_candidate_verifies() {
        let c = baseline_candidate();
        let cert = verify_candidate(&c, DEFAULT_VERIFY_TOL).unwrap();
        assert!(cert.verdict.is_verified(), "verdict {:?}", cert.verdict);
        assert!(cert.max_residual() / cert.dev_values[0] < 1e-12);
        // margins at the attrition end, frozen from the oracle
        let m2 = cert.ic_margins[0].last().copied().unwrap();
        let m3 = cert.ic_margins[1].last().copied().unwrap();
        assert!((m2 - 0.344_069_512_330_853).abs() < 1e-12);
        assert!((m3 - 0.195_871_053_989_494).abs() < 1e-12);
        // deviation values strictly decrease in the type
        assert!(cert.dev_values.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn no_higher_type_gains_from_a_one_shot_switch_to_separating() {
        // Action-level restatement of the incentive margins: switching to
        // the separating action reveals the lowest type forever, so its
        // value is the revealing flow for one period plus the discounted
        // best continuation against the degenerate belief.
        let c = baseline_candidate();
        let m = c.model();
        let dirac = Belief::dirac(m.space(), 0).unwrap();
        let disc = (-c.discount_rate() * c.dt()).exp();
        for &theta in &[2.0, 3.0] {
            let sep_flow = m
                .flow_utility(c.separating_action(), &dirac, theta)
                .unwrap();
            let one_shot = sep_flow * c.dt() + disc * deviation_value(&c, theta).unwrap();
            for t in 0..c.periods() {
                assert!(
                    schedule_value(&c, theta, t) >= one_shot,
                    "theta {theta}, period {t}: one-shot deviation profitable"
                );
            }
        }
    }

    #[test]
    fn extreme_impatience_still_yields_a_consistent_certificate() {
        // No ground truth is asserted for r = 10; the certificate must be
        // internally consistent with its own stored values.
        let m = Arc::new(make_price_model(&PriceSignalingParams::baseline()).unwrap());
        let p_term = Belief::new(m.space(), vec![0.01, 0.495, 0.495]).unwrap();
        let c = crate::construct::build_attrition(
            m,
            &p_term,
            &SigmaPath::Constant(0.5),
            0.1,
            10.0,
            10.0,
        )
        .unwrap();
        let cert = verify_candidate(&c, 1e-6).unwrap();
        let scale = cert.dev_values[0].abs().max(1.0);
        let max_res = cert.max_residual();
        let min_margin = cert.min_ic_margin();
        match &cert.verdict {
            VerifyVerdict::Verified => {
                assert!(max_res <= 1e-6 * scale && min_margin >= -1e-6);
            }
            VerifyVerdict::IndifferenceFail { periods } => {
                assert!(!periods.is_empty() && max_res > 1e-6 * scale);
            }
            VerifyVerdict::IcFail { failures } => {
                assert!(!failures.is_empty() && min_margin < -1e-6);
            }
        }
    }

    #[test]
    fn empty_game_value_is_zero() {
        let m = Arc::new(make_price_model(&PriceSignalingParams::baseline()).unwrap());
        let p = Belief::uniform(m.space());
        let g = SmallGame::new(m, 0.1, 0.1, 0, vec![p], vec![], Arc::new(|_s, _t| 0.0), 0).unwrap();
        assert_eq!(brute_force_value(&g, 1.0, 0, 0).unwrap(), 0.0);
    }

    #[test]
    fn single_period_game_picks_the_larger_flow() {
        // Two actions with flows 0.1 and 0.3: the optimum is 0.3 * dt.
        let space = TypeSpace::new(vec![1.0, 2.0]).unwrap();
        let model = Arc::new(SeparableModel::new(
            "flow-table",
            Arc::clone(&space),
            Arc::new(|a, _p| if a < 0.5 { 0.1 } else { 0.3 }),
            Arc::new(|_a, _p| 0.0),
            Arc::new(|_t| 0.0),
            ActionDomain::new(0.0, 1.0).unwrap(),
        ));
        let p = Belief::uniform(&space);
        let mv = |action: f64| GameMove {
            action,
            belief: 0,
            next_state: 0,
        };
        let g = SmallGame::new(
            model,
            0.1,
            0.1,
            1,
            vec![p],
            vec![vec![vec![mv(0.0), mv(1.0)]]],
            Arc::new(|_s, _t| 0.0),
            0,
        )
        .unwrap();
        let v = brute_force_value(&g, 1.0, 0, 0).unwrap();
        assert!((v - 0.03).abs() < 1e-15);
    }

    #[test]
    fn encoded_candidate_matches_schedule_value_for_both_types() {
        // 2 types, 3 attrition periods.
        let space = TypeSpace::new(vec![1.0, 2.5]).unwrap();
        let m = Arc::new(make_price_model(&PriceSignalingParams::new(0.4, 1.0, space)).unwrap());
        let p_term = Belief::new(m.space(), vec![0.05, 0.95]).unwrap();
        let c = crate::construct::build_attrition(
            m,
            &p_term,
            &SigmaPath::Constant(0.5),
            0.2,
            0.15,
            0.6,
        )
        .unwrap();
        let cert = verify_candidate(&c, 1e-9).unwrap();
        assert!(cert.verdict.is_verified());
        let g = SmallGame::encode_candidate(&c).unwrap();
        for &theta in [1.0, 2.5].iter() {
            let brute = brute_force_value(&g, theta, 0, 0).unwrap();
            let sched = schedule_value(&c, theta, 0);
            assert!(
                (brute - sched).abs() <= 1e-12,
                "theta {theta}: {brute} vs {sched}"
            );
        }
    }

    #[test]
    fn oversized_games_are_rejected() {
        let m = Arc::new(make_price_model(&PriceSignalingParams::baseline()).unwrap());
        let p_term = Belief::new(m.space(), vec![0.01, 0.495, 0.495]).unwrap();
        let c = crate::construct::build_attrition(
            m,
            &p_term,
            &SigmaPath::Constant(0.5),
            0.1,
            0.1,
            10.0,
        )
        .unwrap();
        assert!(matches!(
            SmallGame::encode_candidate(&c),
            Err(Error::Parameter(_))
        ));
    }
}

//! Run the monotonicity / single-crossing suite on the three bundled
//! models, plus a constructed violation to show a failing report.
//!
//! ```bash
//! cargo run --example assumptions
//! ```

use std::sync::Arc;

use attrition::apps::{
    bargaining_sc_paths, labor_sc_paths, make_bargaining_model, make_labor_model, make_price_model,
    BargainingParams, LaborParams, PriceSignalingParams,
};
use attrition::assumptions::{run_assumption_suite, CheckGrid, Verdict};
use attrition::construct::build_attrition;
use attrition::dynamics::SigmaPath;
use attrition::model::{ActionDomain, SeparableModel};
use attrition::space::{expected_type, Belief, TypeSpace};

fn show(label: &str, reports: &[attrition::assumptions::AssumptionReport]) {
    println!("{label}:");
    for rep in reports {
        let verdict = match rep.verdict {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Inconclusive => "Inconclusive",
        };
        println!(
            "  {} {:?}: {} ({} violations)",
            rep.assumption, rep.method, verdict, rep.violation_count
        );
    }
}

fn main() -> attrition::Result<()> {
    let grid = CheckGrid::default();

    let price = Arc::new(make_price_model(&PriceSignalingParams::baseline())?);
    let p_terminal = Belief::new(price.space(), vec![0.01, 0.495, 0.495])?;
    let candidate = build_attrition(
        Arc::clone(&price),
        &p_terminal,
        &SigmaPath::Constant(0.5),
        0.1,
        0.1,
        10.0,
    )?;
    let price_paths = candidate.strategy_family(12)?;
    show(
        "price signaling",
        &run_assumption_suite(&price, &grid, &price_paths, 12, 0.1, 0.1)?,
    );

    let labor = make_labor_model(&LaborParams::baseline())?;
    show(
        "labor market",
        &run_assumption_suite(&labor, &grid, &labor_sc_paths(&labor, 6)?, 8, 0.1, 0.1)?,
    );

    let bargaining = make_bargaining_model(&BargainingParams::baseline())?;
    show(
        "bargaining",
        &run_assumption_suite(
            &bargaining,
            &grid,
            &bargaining_sc_paths(&bargaining, 6)?,
            8,
            0.1,
            0.1,
        )?,
    );

    // A deliberately broken model: the type-weighted payoff component
    // decreases in reputation.
    let space = TypeSpace::new(vec![1.0, 2.0, 3.0])?;
    let broken = SeparableModel::new(
        "decreasing-phi1",
        Arc::clone(&space),
        Arc::new(|_a, _p| 0.0),
        Arc::new(|a, p| -expected_type(p) * a),
        Arc::new(|t| t),
        ActionDomain::new(0.0, 1.0)?,
    );
    let uniform = Belief::uniform(&space);
    let paths = vec![
        attrition::assumptions::StrategyPath::new(vec![0.2], vec![uniform.clone()])?,
        attrition::assumptions::StrategyPath::new(vec![0.8], vec![uniform])?,
    ];
    show(
        "constructed violation",
        &run_assumption_suite(&broken, &grid, &paths, 4, 0.1, 0.1)?,
    );
    Ok(())
}

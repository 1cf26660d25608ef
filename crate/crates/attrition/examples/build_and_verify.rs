//! Construct the baseline price-signaling attrition candidate and verify
//! incentive compatibility for every type.
//!
//! ```bash
//! cargo run --example build_and_verify
//! ```

use std::sync::Arc;

use attrition::apps::{make_price_model, PriceSignalingParams};
use attrition::construct::build_attrition;
use attrition::dynamics::SigmaPath;
use attrition::space::Belief;
use attrition::verify::verify_candidate;

fn main() -> attrition::Result<()> {
    let model = Arc::new(make_price_model(&PriceSignalingParams::baseline())?);
    let p_terminal = Belief::new(model.space(), vec![0.01, 0.495, 0.495])?;

    // Separation at intensity 0.5 over t in [0, 10], period length 0.1.
    let candidate = build_attrition(
        Arc::clone(&model),
        &p_terminal,
        &SigmaPath::Constant(0.5),
        0.1,
        0.1,
        10.0,
    )?;

    println!(
        "separating price a_sep = {:.6}",
        candidate.separating_action()
    );
    println!(
        "pooling price: {:.6} at t = 0, {:.6} at t_bar",
        candidate.pooling_actions()[0],
        candidate.pooling_actions().last().unwrap()
    );
    println!(
        "lowest-type weight: {:.4} at t = 0, {:.4} at t_bar",
        candidate.belief_path().entry(0).weight(0),
        candidate.belief_path().last().weight(0)
    );

    let certificate = verify_candidate(&candidate, 1e-6)?;
    println!();
    print!("{}", certificate.render());
    Ok(())
}

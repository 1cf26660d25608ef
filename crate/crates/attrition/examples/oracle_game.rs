//! Cross-check the discounted value recursion against exhaustive
//! enumeration on a small candidate restricted to {pool, separate}.
//!
//! ```bash
//! cargo run --example oracle_game
//! ```

use std::sync::Arc;

use attrition::apps::{make_price_model, PriceSignalingParams};
use attrition::construct::build_attrition;
use attrition::dynamics::SigmaPath;
use attrition::space::{Belief, TypeSpace};
use attrition::verify::{brute_force_value, schedule_value, verify_candidate, SmallGame};

fn main() -> attrition::Result<()> {
    let space = TypeSpace::new(vec![1.0, 2.0, 3.0])?;
    let model = Arc::new(make_price_model(&PriceSignalingParams::new(
        0.35, 1.0, space,
    ))?);
    let p_terminal = Belief::new(model.space(), vec![0.05, 0.475, 0.475])?;

    // 7 attrition periods: 2^7 pool/separate sequences per type.
    let candidate = build_attrition(
        Arc::clone(&model),
        &p_terminal,
        &SigmaPath::Constant(0.5),
        0.25,
        0.1,
        1.75,
    )?;
    let cert = verify_candidate(&candidate, 1e-9)?;
    println!("candidate verdict: {:?}", cert.verdict);

    let game = SmallGame::encode_candidate(&candidate)?;
    println!("enumerating {} periods, 2 moves per state:", game.horizon());
    for &theta in model.space().values() {
        let brute = brute_force_value(&game, theta, 0, game.initial_state())?;
        let recursion = schedule_value(&candidate, theta, 0);
        println!(
            "  theta = {theta}: enumeration {brute:.12}, recursion {recursion:.12}, gap {:.2e}",
            (brute - recursion).abs()
        );
    }
    Ok(())
}

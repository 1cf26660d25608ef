//! Unravel pooling-path beliefs backward from a terminal belief, then
//! forward-iterate the Bayes update to confirm the round trip.
//!
//! ```bash
//! cargo run --example unravel
//! ```

use attrition::dynamics::{bayes_pool_update, unravel_beliefs, SigmaPath};
use attrition::space::{expected_type, Belief, TypeSpace};

fn main() -> attrition::Result<()> {
    let space = TypeSpace::new(vec![1.0, 2.0, 3.0])?;
    let p_terminal = Belief::new(&space, vec![0.01, 0.495, 0.495])?;
    let (sigma, dt, steps) = (0.5, 0.1, 100);

    let path = unravel_beliefs(&p_terminal, &SigmaPath::Constant(sigma), dt, steps)?;
    println!(
        "unraveled {steps} periods back from ({:.3}, {:.3}, {:.3}):",
        0.01, 0.495, 0.495
    );
    for k in [0, 25, 50, 75, 100] {
        let q = path.entry(k);
        println!(
            "  t = {:5.1}: weights = ({:.4}, {:.4}, {:.4}), E[theta] = {:.4}",
            k as f64 * dt,
            q.weight(0),
            q.weight(1),
            q.weight(2),
            expected_type(q)
        );
    }

    let mut p = path.entry(0).clone();
    for _ in 0..steps {
        p = bayes_pool_update(&p, sigma, dt)?;
    }
    let gap = p
        .weights()
        .iter()
        .zip(p_terminal.weights())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("forward iteration returns to the terminal belief within {gap:.2e}");
    Ok(())
}

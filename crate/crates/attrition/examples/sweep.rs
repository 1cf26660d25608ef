//! Sweep separation intensity and period length, verifying each candidate;
//! prints a verdict per cell. Different intensities sustain different
//! pooling paths, so some cells verify and faster attrition may not.
//!
//! ```bash
//! cargo run --example sweep
//! ```

use std::path::PathBuf;

use attrition::scenario::{run_scenario, CellOutcome, RunOutcome, ScenarioConfig};
use attrition::verify::VerifyVerdict;

fn main() -> attrition::Result<()> {
    let mut cfg = ScenarioConfig::price_baseline();
    cfg.out = Some(PathBuf::from("out/sweep"));
    cfg.sweep_sigma = vec![0.25, 0.5, 0.75, 0.9];
    cfg.sweep_dt = vec![0.1, 0.05];
    let report = run_scenario(&cfg)?;

    if let RunOutcome::Sweep(cells) = &report.outcome {
        for cell in cells {
            let status = match &cell.outcome {
                CellOutcome::Verified => "Verified".to_string(),
                CellOutcome::NotVerified(VerifyVerdict::IcFail { failures }) => format!(
                    "ICFail: some type prefers deviating at {} (type, period) pairs",
                    failures.len()
                ),
                CellOutcome::NotVerified(v) => format!("{v:?}"),
                CellOutcome::ConstructionFailed { period, reason } => {
                    format!("construction failed at period {period}: {reason}")
                }
            };
            println!("sigma = {:<4} dt = {:<5} -> {status}", cell.sigma, cell.dt);
        }
    }
    println!("overall exit code {}", report.exit_code());
    Ok(())
}

//! Emit the four CSV time series (prices, values, beliefs, expected type)
//! for the baseline scenario into `out/figures`.
//!
//! ```bash
//! cargo run --example figures
//! ```

use std::path::PathBuf;

use attrition::scenario::{run_scenario, ScenarioConfig};

fn main() -> attrition::Result<()> {
    let mut cfg = ScenarioConfig::price_baseline();
    cfg.out = Some(PathBuf::from("out/figures"));
    let report = run_scenario(&cfg)?;
    for f in &report.files {
        println!("wrote {}", f.display());
    }
    println!("exit code {}", report.exit_code());
    Ok(())
}

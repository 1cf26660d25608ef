//! Thin command-line front end: `attrition run <config> [flags]`.

use std::path::PathBuf;
use std::process::ExitCode;

use attrition::error::Error;
use attrition::scenario::{load_config, run_scenario, RunOutcome};
use attrition::verify::VerifyVerdict;

const USAGE: &str = "\
usage: attrition run <config-path> [--out <dir>] [--tol <real>]
                 [--sweep-sigma <list>] [--sweep-dt <list>] [--quiet]

Runs a scenario config and writes its artifact files.
The output directory defaults to --out, then the config's 'out' field,
then $ATTRITION_OUT, then the current directory.

exit status: 0 verified / all assumptions hold, 1 verification failure,
             2 config or environment error, 3 construction failure
";

fn parse_list(value: &str) -> Result<Vec<f64>, String> {
    let parts: Result<Vec<f64>, _> = value
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    match parts {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(format!("expected a numeric list, got '{value}'")),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    ExitCode::from(run(args) as u8)
}

fn run(args: Vec<String>) -> i32 {
    if args.first().map(String::as_str) != Some("run") {
        eprint!("{USAGE}");
        return 2;
    }
    let mut config_path: Option<PathBuf> = None;
    let mut out: Option<PathBuf> = None;
    let mut tol: Option<f64> = None;
    let mut sweep_sigma: Option<Vec<f64>> = None;
    let mut sweep_dt: Option<Vec<f64>> = None;
    let mut quiet = false;

    let mut it = args[1..].iter();
    while let Some(arg) = it.next() {
        let mut flag_value = |name: &str| -> Result<String, String> {
            it.next()
                .cloned()
                .ok_or_else(|| format!("flag {name} needs a value"))
        };
        match arg.as_str() {
            "--out" => match flag_value("--out") {
                Ok(v) => out = Some(PathBuf::from(v)),
                Err(e) => return usage_error(&e),
            },
            "--tol" => match flag_value("--tol").and_then(|v| {
                v.parse::<f64>()
                    .map_err(|_| format!("bad --tol value '{v}'"))
            }) {
                Ok(v) => tol = Some(v),
                Err(e) => return usage_error(&e),
            },
            "--sweep-sigma" => match flag_value("--sweep-sigma").and_then(|v| parse_list(&v)) {
                Ok(v) => sweep_sigma = Some(v),
                Err(e) => return usage_error(&e),
            },
            "--sweep-dt" => match flag_value("--sweep-dt").and_then(|v| parse_list(&v)) {
                Ok(v) => sweep_dt = Some(v),
                Err(e) => return usage_error(&e),
            },
            "--quiet" => quiet = true,
            other if config_path.is_none() && !other.starts_with('-') => {
                config_path = Some(PathBuf::from(other));
            }
            other => return usage_error(&format!("unexpected argument '{other}'")),
        }
    }
    let Some(config_path) = config_path else {
        return usage_error("missing config path");
    };

    let mut cfg = match load_config(&config_path) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some(tol) = tol {
        cfg.tol = tol;
    }
    if let Some(s) = sweep_sigma {
        cfg.sweep_sigma = s;
    }
    if let Some(d) = sweep_dt {
        cfg.sweep_dt = d;
    }
    // Output directory precedence: --out, config 'out', ATTRITION_OUT, cwd.
    if let Some(out) = out {
        cfg.out = Some(out);
    } else if cfg.out.is_none() {
        if let Ok(env_out) = std::env::var("ATTRITION_OUT") {
            if !env_out.is_empty() {
                cfg.out = Some(PathBuf::from(env_out));
            }
        }
    }

    let report = match run_scenario(&cfg) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::Construction { .. } | Error::NoSolution(_) => 3,
                _ => 2,
            };
        }
    };

    if !quiet {
        match &report.outcome {
            RunOutcome::Attrition(verdict) => {
                let summary = match verdict {
                    VerifyVerdict::Verified => "Verified".to_string(),
                    VerifyVerdict::IndifferenceFail { periods } => {
                        format!("IndifferenceFail ({} periods)", periods.len())
                    }
                    VerifyVerdict::IcFail { failures } => {
                        format!("ICFail ({} type/period pairs)", failures.len())
                    }
                };
                println!("verdict: {summary}");
            }
            RunOutcome::Assumptions { all_hold, reports } => {
                println!(
                    "assumption suite: {} ({} checks)",
                    if *all_hold {
                        "all hold"
                    } else {
                        "failures found"
                    },
                    reports.len()
                );
            }
            RunOutcome::Sweep(cells) => {
                for cell in cells {
                    println!(
                        "sigma = {}, dt = {}: {:?}",
                        cell.sigma, cell.dt, cell.outcome
                    );
                }
            }
        }
        for f in &report.files {
            println!("wrote {}", f.display());
        }
    }
    report.exit_code()
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    eprint!("{USAGE}");
    2
}

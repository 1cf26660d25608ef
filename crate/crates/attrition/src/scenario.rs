//! Scenario runner and file formats.
//!
//! A scenario config is flat `key = value` text under `[section]` headers
//! (sections `model`, `run`, and optional `sweep`; `#` starts a comment).
//! For the price model a run builds the attrition candidate, verifies it,
//! and writes four CSV time series plus a certificate report. For the labor
//! and bargaining adapters a run executes the assumption suite and writes
//! its report. All output is byte-deterministic: numbers are printed with
//! 12 significant digits and rows in a fixed order.
//!
//! Output files for a price run:
//! - `prices.csv`: `t,pooling_price,bliss_price_theta_<k>...`
//! - `values.csv`: `t,v_pool_theta_<k>...,v_dev_theta_<k>...`
//! - `beliefs.csv`: `t,weight_theta_<k>...`
//! - `expected_type.csv`: `t,expected_type`
//! - `certificate.txt`: structured verdict
//!
//! Each CSV has one row per period from 0 to the attrition end time
//! inclusive, plus [`TAIL_ROWS`] rows at the frozen tail values so plots
//! visibly flatten.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::apps::{
    bargaining_sc_paths, labor_sc_paths, make_bargaining_model, make_labor_model, make_price_model,
    BargainingParams, BuyerStrategy, LaborParams, PriceSignalingParams,
};
use crate::assumptions::{run_assumption_suite, AssumptionReport, CheckGrid, Verdict};
use crate::construct::{build_attrition, AttritionCandidate};
use crate::dynamics::SigmaPath;
use crate::error::{Error, Result};
use crate::space::{expected_type, Belief, TypeSpace};
use crate::verify::{verify_candidate, Certificate, VerifyVerdict};

/// Frozen-tail rows appended to every CSV after the attrition window.
pub const TAIL_ROWS: usize = 20;

/// Formats with 12 significant digits, fixed-point, deterministically.
pub fn fmt_significant(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.00000000000".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (11 - exponent).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

/// Which bundled model a scenario drives.
#[derive(Debug, Clone)]
pub enum ModelConfig {
    Price {
        lambda: f64,
        fine: f64,
        theta: Vec<f64>,
    },
    Labor {
        theta: Vec<f64>,
        l_scale: f64,
        l_power: f64,
        m_intercept: f64,
        m_slope: f64,
        max_effort: f64,
    },
    Bargaining {
        theta: Vec<f64>,
        c0: f64,
        c1: f64,
        chi: f64,
        knots: Vec<f64>,
        offers: Vec<f64>,
        accept: Vec<f64>,
        max_offer: f64,
    },
}

/// A parsed scenario.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub model: ModelConfig,
    pub p_terminal: Vec<f64>,
    pub sigma: SigmaPath,
    pub dt: f64,
    pub r: f64,
    pub t_bar: f64,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub sweep_sigma: Vec<f64>,
    pub sweep_dt: Vec<f64>,
}

impl ScenarioConfig {
    /// The baseline price-signaling scenario (lambda = 0.35, F = 1,
    /// sigma = 0.5, dt = 0.1, r = 0.1, attrition over [0, 10]).
    pub fn price_baseline() -> Self {
        ScenarioConfig {
            model: ModelConfig::Price {
                lambda: 0.35,
                fine: 1.0,
                theta: vec![1.0, 2.0, 3.0],
            },
            p_terminal: vec![0.01, 0.495, 0.495],
            sigma: SigmaPath::Constant(0.5),
            dt: 0.1,
            r: 0.1,
            t_bar: 10.0,
            tol: 1e-6,
            out: None,
            sweep_sigma: Vec::new(),
            sweep_dt: Vec::new(),
        }
    }
}

// ---------------------------------------------------------------------------
// config parsing
// ---------------------------------------------------------------------------

struct RawConfig {
    // (section, key) -> (line, value)
    entries: Vec<(String, String, usize, String)>,
}

impl RawConfig {
    fn get(&self, section: &str, key: &str) -> Option<(usize, &str)> {
        self.entries
            .iter()
            .find(|(s, k, _, _)| s == section && k == key)
            .map(|(_, _, line, v)| (*line, v.as_str()))
    }

    fn float(&self, section: &str, key: &str) -> Result<Option<f64>> {
        match self.get(section, key) {
            None => Ok(None),
            Some((line, v)) => {
                let x: f64 = v.parse().map_err(|_| Error::Config {
                    line: Some(line),
                    message: format!("field '{key}': expected a number, got '{v}'"),
                })?;
                if !x.is_finite() {
                    return Err(Error::Config {
                        line: Some(line),
                        message: format!("field '{key}': value must be finite"),
                    });
                }
                Ok(Some(x))
            }
        }
    }

    fn require_float(&self, section: &str, key: &str) -> Result<f64> {
        self.float(section, key)?.ok_or_else(|| Error::Config {
            line: None,
            message: format!("missing required field '{key}' in section [{section}]"),
        })
    }

    fn float_list(&self, section: &str, key: &str) -> Result<Option<Vec<f64>>> {
        match self.get(section, key) {
            None => Ok(None),
            Some((line, v)) => {
                let parts: Vec<&str> = v
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .collect();
                let mut out = Vec::with_capacity(parts.len());
                for p in parts {
                    let x: f64 = p.parse().map_err(|_| Error::Config {
                        line: Some(line),
                        message: format!("field '{key}': expected numbers, got '{p}'"),
                    })?;
                    if !x.is_finite() {
                        return Err(Error::Config {
                            line: Some(line),
                            message: format!("field '{key}': values must be finite"),
                        });
                    }
                    out.push(x);
                }
                if out.is_empty() {
                    return Err(Error::Config {
                        line: Some(line),
                        message: format!("field '{key}': empty list"),
                    });
                }
                Ok(Some(out))
            }
        }
    }
}

const KNOWN_KEYS: &[(&str, &str)] = &[
    ("model", "kind"),
    ("model", "lambda"),
    ("model", "fine"),
    ("model", "theta"),
    ("model", "l_scale"),
    ("model", "l_power"),
    ("model", "m_intercept"),
    ("model", "m_slope"),
    ("model", "max_effort"),
    ("model", "c0"),
    ("model", "c1"),
    ("model", "chi"),
    ("model", "knots"),
    ("model", "offers"),
    ("model", "accept"),
    ("model", "max_offer"),
    ("run", "p_terminal"),
    ("run", "sigma"),
    ("run", "dt"),
    ("run", "r"),
    ("run", "t_bar"),
    ("run", "tol"),
    ("run", "out"),
    ("sweep", "sigma"),
    ("sweep", "dt"),
];

fn lex_config(text: &str) -> Result<RawConfig> {
    let mut section = String::new();
    let mut entries: Vec<(String, String, usize, String)> = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(Error::Config {
                line: Some(line_no),
                message: "unterminated section header".into(),
            })?;
            section = name.trim().to_string();
            if !["model", "run", "sweep"].contains(&section.as_str()) {
                return Err(Error::Config {
                    line: Some(line_no),
                    message: format!("unknown section [{section}]"),
                });
            }
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(Error::Config {
            line: Some(line_no),
            message: format!("expected 'key = value', got '{line}'"),
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if section.is_empty() {
            return Err(Error::Config {
                line: Some(line_no),
                message: format!("key '{key}' appears before any [section] header"),
            });
        }
        if !KNOWN_KEYS.iter().any(|(s, k)| *s == section && *k == key) {
            return Err(Error::Config {
                line: Some(line_no),
                message: format!("unknown field '{key}' in section [{section}]"),
            });
        }
        if entries
            .iter()
            .any(|(s, k, _, _)| *s == section && *k == key)
        {
            return Err(Error::Config {
                line: Some(line_no),
                message: format!("duplicate field '{key}' in section [{section}]"),
            });
        }
        entries.push((section.clone(), key, line_no, value));
    }
    Ok(RawConfig { entries })
}

/// Parses scenario text; errors carry line and field diagnostics.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let raw = lex_config(text)?;

    let (kind_line, kind) = raw.get("model", "kind").ok_or(Error::Config {
        line: None,
        message: "missing required field 'kind' in section [model]".into(),
    })?;
    let theta = raw
        .float_list("model", "theta")?
        .unwrap_or_else(|| vec![1.0, 2.0, 3.0]);

    let model = match kind {
        "price" => ModelConfig::Price {
            lambda: raw.require_float("model", "lambda")?,
            fine: raw.require_float("model", "fine")?,
            theta,
        },
        "labor" => ModelConfig::Labor {
            theta,
            l_scale: raw.float("model", "l_scale")?.unwrap_or(1.0),
            l_power: raw.float("model", "l_power")?.unwrap_or(2.0),
            m_intercept: raw.float("model", "m_intercept")?.unwrap_or(1.2),
            m_slope: raw.float("model", "m_slope")?.unwrap_or(0.3),
            max_effort: raw.float("model", "max_effort")?.unwrap_or(1.0),
        },
        "bargaining" => ModelConfig::Bargaining {
            theta,
            c0: raw.float("model", "c0")?.unwrap_or(0.2),
            c1: raw.float("model", "c1")?.unwrap_or(0.1),
            chi: raw.float("model", "chi")?.unwrap_or(1.0),
            knots: raw
                .float_list("model", "knots")?
                .unwrap_or_else(|| vec![1.0, 3.0]),
            offers: raw
                .float_list("model", "offers")?
                .unwrap_or_else(|| vec![0.8, 2.4]),
            accept: raw
                .float_list("model", "accept")?
                .unwrap_or_else(|| vec![0.2, 0.6]),
            max_offer: raw.float("model", "max_offer")?.unwrap_or(3.0),
        },
        other => {
            return Err(Error::Config {
                line: Some(kind_line),
                message: format!(
                    "field 'kind': expected price, labor or bargaining, got '{other}'"
                ),
            })
        }
    };

    let dt = raw.require_float("run", "dt")?;
    let r = raw.require_float("run", "r")?;
    if dt <= 0.0 {
        return Err(Error::Config {
            line: raw.get("run", "dt").map(|(l, _)| l),
            message: "field 'dt': must be positive".into(),
        });
    }

    let (p_terminal, sigma, t_bar) = if matches!(model, ModelConfig::Price { .. }) {
        let p_terminal = raw.float_list("run", "p_terminal")?.ok_or(Error::Config {
            line: None,
            message: "missing required field 'p_terminal' in section [run]".into(),
        })?;
        let sigma_values = raw.float_list("run", "sigma")?.ok_or(Error::Config {
            line: None,
            message: "missing required field 'sigma' in section [run]".into(),
        })?;
        let sigma = if sigma_values.len() == 1 {
            SigmaPath::Constant(sigma_values[0])
        } else {
            SigmaPath::PerPeriod(sigma_values)
        };
        let t_bar = raw.require_float("run", "t_bar")?;
        let steps = t_bar / dt;
        if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
            return Err(Error::Config {
                line: raw.get("run", "t_bar").map(|(l, _)| l),
                message: format!("field 't_bar': {t_bar} is not an integer multiple of dt = {dt}"),
            });
        }
        (p_terminal, sigma, t_bar)
    } else {
        (
            raw.float_list("run", "p_terminal")?.unwrap_or_default(),
            SigmaPath::Constant(raw.float_list("run", "sigma")?.map(|v| v[0]).unwrap_or(0.0)),
            raw.float("run", "t_bar")?.unwrap_or(0.0),
        )
    };

    Ok(ScenarioConfig {
        model,
        p_terminal,
        sigma,
        dt,
        r,
        t_bar,
        tol: raw.float("run", "tol")?.unwrap_or(1e-6),
        out: raw.get("run", "out").map(|(_, v)| PathBuf::from(v)),
        sweep_sigma: raw.float_list("sweep", "sigma")?.unwrap_or_default(),
        sweep_dt: raw.float_list("sweep", "dt")?.unwrap_or_default(),
    })
}

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

// ---------------------------------------------------------------------------
// emission
// ---------------------------------------------------------------------------

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|source| Error::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    let mut f = fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    f.write_all(contents.as_bytes())
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
    Ok(())
}

/// Writes the four figure CSVs for a candidate/certificate pair into `dir`
/// and returns the file paths. One row per period from 0 to the attrition
/// end inclusive, plus [`TAIL_ROWS`] frozen rows; deterministic bytes.
pub fn emit_figure_series(
    c: &AttritionCandidate,
    cert: &Certificate,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    let n_types = c.model().space().len();
    let periods = c.periods();
    let k_last = periods - 1;
    let rows = periods + TAIL_ROWS;
    let time = |row: usize| row as f64 * c.dt();
    // Frozen tail reuses the last attrition period everywhere.
    let clamp = |row: usize| row.min(k_last);

    let mut prices = String::from("t,pooling_price");
    for k in 1..=n_types {
        let _ = write!(prices, ",bliss_price_theta_{k}");
    }
    prices.push('\n');
    for row in 0..rows {
        let k = clamp(row);
        let _ = write!(
            prices,
            "{},{}",
            fmt_significant(time(row)),
            fmt_significant(c.pooling_actions()[k])
        );
        for &theta in c.model().space().values() {
            let bliss = c
                .model()
                .bliss_action(c.belief_path().entry(k), theta)
                .expect("validated candidate");
            let _ = write!(prices, ",{}", fmt_significant(bliss));
        }
        prices.push('\n');
    }

    let mut values = String::from("t");
    for k in 1..=n_types {
        let _ = write!(values, ",v_pool_theta_{k}");
    }
    for k in 1..=n_types {
        let _ = write!(values, ",v_dev_theta_{k}");
    }
    values.push('\n');
    for row in 0..rows {
        let k = clamp(row);
        let _ = write!(values, "{}", fmt_significant(time(row)));
        for ti in 0..n_types {
            let _ = write!(values, ",{}", fmt_significant(cert.pool_values[ti][k]));
        }
        for ti in 0..n_types {
            let _ = write!(values, ",{}", fmt_significant(cert.dev_values[ti]));
        }
        values.push('\n');
    }

    let mut beliefs = String::from("t");
    for k in 1..=n_types {
        let _ = write!(beliefs, ",weight_theta_{k}");
    }
    beliefs.push('\n');
    for row in 0..rows {
        let k = clamp(row);
        let _ = write!(beliefs, "{}", fmt_significant(time(row)));
        for w in c.belief_path().entry(k).weights() {
            let _ = write!(beliefs, ",{}", fmt_significant(*w));
        }
        beliefs.push('\n');
    }

    let mut expected = String::from("t,expected_type\n");
    for row in 0..rows {
        let k = clamp(row);
        let _ = writeln!(
            expected,
            "{},{}",
            fmt_significant(time(row)),
            fmt_significant(expected_type(c.belief_path().entry(k)))
        );
    }

    let files = vec![
        (dir.join("prices.csv"), prices),
        (dir.join("values.csv"), values),
        (dir.join("beliefs.csv"), beliefs),
        (dir.join("expected_type.csv"), expected),
    ];
    let mut paths = Vec::with_capacity(files.len());
    for (path, contents) in files {
        write_file(&path, &contents)?;
        paths.push(path);
    }
    Ok(paths)
}

// ---------------------------------------------------------------------------
// running
// ---------------------------------------------------------------------------

/// Outcome of a single (non-sweep) run cell.
#[derive(Debug, Clone)]
pub enum CellOutcome {
    Verified,
    NotVerified(VerifyVerdict),
    ConstructionFailed { period: usize, reason: String },
}

/// Outcome of a whole scenario.
#[derive(Debug)]
pub enum RunOutcome {
    /// Price model: candidate built and verified (or not).
    Attrition(VerifyVerdict),
    /// Labor/bargaining adapters: assumption suite results.
    Assumptions {
        all_hold: bool,
        reports: Vec<AssumptionReport>,
    },
    /// Parameter sweep: one cell per (sigma, dt) pair.
    Sweep(Vec<SweepCell>),
}

#[derive(Debug, Clone)]
pub struct SweepCell {
    pub sigma: f64,
    pub dt: f64,
    pub dir: PathBuf,
    pub outcome: CellOutcome,
}

/// A finished run: where it wrote and how it ended.
#[derive(Debug)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub outcome: RunOutcome,
}

impl RunReport {
    /// Exit-status contract: 0 success/Verified, 1 verification or
    /// assumption failure, 3 construction failure inside a sweep.
    /// (Config errors surface as `Error::Config` before a report exists
    /// and map to 2.)
    pub fn exit_code(&self) -> i32 {
        match &self.outcome {
            RunOutcome::Attrition(v) => {
                if v.is_verified() {
                    0
                } else {
                    1
                }
            }
            RunOutcome::Assumptions { all_hold, .. } => {
                if *all_hold {
                    0
                } else {
                    1
                }
            }
            RunOutcome::Sweep(cells) => {
                let mut code = 0;
                for cell in cells {
                    match cell.outcome {
                        CellOutcome::ConstructionFailed { .. } => return 3,
                        CellOutcome::NotVerified(_) => code = 1,
                        CellOutcome::Verified => {}
                    }
                }
                code
            }
        }
    }
}

fn build_model(cfg: &ScenarioConfig) -> Result<Arc<crate::model::SeparableModel>> {
    Ok(Arc::new(match &cfg.model {
        ModelConfig::Price {
            lambda,
            fine,
            theta,
        } => make_price_model(&PriceSignalingParams::new(
            *lambda,
            *fine,
            TypeSpace::new(theta.clone())?,
        ))?,
        ModelConfig::Labor {
            theta,
            l_scale,
            l_power,
            m_intercept,
            m_slope,
            max_effort,
        } => {
            let (ls, lp, mi, ms) = (*l_scale, *l_power, *m_intercept, *m_slope);
            make_labor_model(&LaborParams {
                education_cost: Arc::new(move |e| ls * e.powf(lp)),
                ability_cost: Arc::new(move |t| mi - ms * t),
                discount_rate: cfg.r,
                theta_space: TypeSpace::new(theta.clone())?,
                max_effort: *max_effort,
            })?
        }
        ModelConfig::Bargaining {
            theta,
            c0,
            c1,
            chi,
            knots,
            offers,
            accept,
            max_offer,
        } => {
            let (c0, c1) = (*c0, *c1);
            make_bargaining_model(&BargainingParams {
                seller_valuation: Arc::new(move |t| c0 + c1 * t),
                buyer_valuation: Arc::new(|t| t),
                buyer_proposal_prob: *chi,
                buyer_strategy: BuyerStrategy::new(knots.clone(), offers.clone(), accept.clone())?,
                theta_space: TypeSpace::new(theta.clone())?,
                max_offer: *max_offer,
            })?
        }
    }))
}

fn assumptions_report_text(reports: &[AssumptionReport]) -> String {
    let mut out = String::new();
    for rep in reports {
        let verdict = match rep.verdict {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Inconclusive => "Inconclusive",
        };
        let _ = writeln!(
            out,
            "{} {:?}: {} ({} violations; grid: {})",
            rep.assumption, rep.method, verdict, rep.violation_count, rep.grid_spec
        );
    }
    out
}

fn run_attrition_cell(cfg: &ScenarioConfig, dir: &Path) -> Result<(Vec<PathBuf>, VerifyVerdict)> {
    let model = build_model(cfg)?;
    let p_terminal = Belief::new(model.space(), cfg.p_terminal.clone())?;
    let candidate = build_attrition(model, &p_terminal, &cfg.sigma, cfg.dt, cfg.r, cfg.t_bar)?;
    let cert = verify_candidate(&candidate, cfg.tol)?;
    let mut files = emit_figure_series(&candidate, &cert, dir)?;
    let cert_path = dir.join("certificate.txt");
    write_file(&cert_path, &cert.render())?;
    files.push(cert_path);
    Ok((files, cert.verdict))
}

/// Runs a scenario into `out_dir` (resolved from the config `out` field or
/// the current directory when absent). With sweep lists present, each
/// (sigma, dt) pair runs in its own subdirectory named by the swept values.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunReport> {
    let out_dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));

    match &cfg.model {
        ModelConfig::Labor { .. } | ModelConfig::Bargaining { .. } => {
            let model = build_model(cfg)?;
            let paths = match &cfg.model {
                ModelConfig::Labor { .. } => labor_sc_paths(&model, 6)?,
                _ => bargaining_sc_paths(&model, 6)?,
            };
            let reports =
                run_assumption_suite(&model, &CheckGrid::default(), &paths, 8, cfg.dt, cfg.r)?;
            let all_hold = reports.iter().all(|r| r.verdict == Verdict::Holds);
            let report_path = out_dir.join("assumptions.txt");
            write_file(&report_path, &assumptions_report_text(&reports))?;
            return Ok(RunReport {
                out_dir,
                files: vec![report_path],
                outcome: RunOutcome::Assumptions {
                    all_hold,
                    reports: reports.into(),
                },
            });
        }
        ModelConfig::Price { .. } => {}
    }

    if cfg.sweep_sigma.is_empty() && cfg.sweep_dt.is_empty() {
        let (files, verdict) = run_attrition_cell(cfg, &out_dir)?;
        return Ok(RunReport {
            out_dir,
            files,
            outcome: RunOutcome::Attrition(verdict),
        });
    }

    // Sweep mode: missing dimensions fall back to the base values.
    let base_sigma = match &cfg.sigma {
        SigmaPath::Constant(s) => *s,
        SigmaPath::PerPeriod(v) => v[0],
    };
    let sigmas = if cfg.sweep_sigma.is_empty() {
        vec![base_sigma]
    } else {
        cfg.sweep_sigma.clone()
    };
    let dts = if cfg.sweep_dt.is_empty() {
        vec![cfg.dt]
    } else {
        cfg.sweep_dt.clone()
    };

    let mut cells = Vec::new();
    let mut files = Vec::new();
    for &sigma in &sigmas {
        for &dt in &dts {
            let dir = out_dir.join(format!("sigma_{sigma}_dt_{dt}"));
            let mut cell_cfg = cfg.clone();
            cell_cfg.sigma = SigmaPath::Constant(sigma);
            cell_cfg.dt = dt;
            cell_cfg.sweep_sigma = Vec::new();
            cell_cfg.sweep_dt = Vec::new();
            cell_cfg.out = Some(dir.clone());
            let outcome = match run_attrition_cell(&cell_cfg, &dir) {
                Ok((cell_files, verdict)) => {
                    files.extend(cell_files);
                    if verdict.is_verified() {
                        CellOutcome::Verified
                    } else {
                        CellOutcome::NotVerified(verdict)
                    }
                }
                Err(Error::Construction { period, source }) => CellOutcome::ConstructionFailed {
                    period,
                    reason: source.to_string(),
                },
                Err(e) => return Err(e),
            };
            cells.push(SweepCell {
                sigma,
                dt,
                dir,
                outcome,
            });
        }
    }
    Ok(RunReport {
        out_dir,
        files,
        outcome: RunOutcome::Sweep(cells),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "\
# baseline scenario
[model]
kind = price
lambda = 0.35
fine = 1.0
theta = 1 2 3

[run]
p_terminal = 0.01 0.495 0.495
sigma = 0.5
dt = 0.1
r = 0.1
t_bar = 10
tol = 1e-6
";

    #[test]
    fn parses_the_baseline_config() {
        let cfg = parse_config(BASE).unwrap();
        assert!(matches!(cfg.model, ModelConfig::Price { lambda, .. } if lambda == 0.35));
        assert_eq!(cfg.p_terminal, vec![0.01, 0.495, 0.495]);
        assert_eq!(cfg.sigma, SigmaPath::Constant(0.5));
        assert_eq!(cfg.t_bar, 10.0);
        assert_eq!(cfg.tol, 1e-6);
    }

    #[test]
    fn unknown_fields_are_diagnosed_with_line_numbers() {
        let bad = BASE.replace("tol = 1e-6", "tolerance = 1e-6");
        match parse_config(&bad) {
            Err(Error::Config { line, message }) => {
                assert_eq!(line, Some(14));
                assert!(message.contains("tolerance"), "{message}");
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn non_numeric_values_are_diagnosed() {
        let bad = BASE.replace("dt = 0.1", "dt = fast");
        match parse_config(&bad) {
            Err(Error::Config { line, message }) => {
                assert_eq!(line, Some(11));
                assert!(message.contains("'dt'"), "{message}");
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn fractional_period_grids_are_rejected_at_parse_time() {
        let bad = BASE.replace("t_bar = 10", "t_bar = 10.05");
        assert!(matches!(parse_config(&bad), Err(Error::Config { .. })));
    }

    #[test]
    fn per_period_sigma_lists_parse() {
        let cfg_text = BASE.replace("sigma = 0.5", "sigma = 0.5 0.4 0.3");
        let cfg = parse_config(&cfg_text).unwrap();
        assert_eq!(cfg.sigma, SigmaPath::PerPeriod(vec![0.5, 0.4, 0.3]));
    }

    #[test]
    fn significant_digit_formatting_is_stable() {
        assert_eq!(fmt_significant(0.0), "0.00000000000");
        assert_eq!(fmt_significant(0.5), "0.500000000000");
        assert_eq!(fmt_significant(10.050083333194499), "10.0500833332");
        assert_eq!(fmt_significant(0.254934406199516), "0.254934406200");
        assert_eq!(fmt_significant(-1.5), "-1.50000000000");
    }
}

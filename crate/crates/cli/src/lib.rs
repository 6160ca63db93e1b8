//! Command implementations behind the `orthent` binary: weight-spec and
//! degree-list parsing, report formatting, and the five subcommands.
//!
//! Every error path maps to a machine-parsable single line on stderr
//! (`error[spec]: ...`, `error[budget]: ...`, `error[compute]: ...`) and a
//! stable exit code: 2 for invalid specs or arguments, 3 for exhausted
//! quadrature budgets, 1 for anything else.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use orthent_core::asymptotics::{Asymptotics, AsymptoticsReport};
use orthent_core::bernstein::{exact_f, exact_g, fejer_riesz};
use orthent_core::entropy::{condition_check, entropy_report, EntropyReport};
use orthent_core::error::Error as CoreError;
use orthent_core::orthopoly::{recurrence_coefficients, DEFAULT_DEGREE_CAP};
use orthent_core::verify::run_all;
use orthent_core::weights::{build_weight, szego_constant, Weight, WeightSpec};

/// Environment variable that overrides the quadrature panel budget.
pub const MAX_PANELS_ENV: &str = "ORTHENT_MAX_PANELS";

#[derive(Debug)]
pub enum CliError {
    /// Bad user input: malformed JSON, violated preconditions.
    Spec(String),
    /// Quadrature panel budget exhausted.
    Budget(String),
    /// Any other computational failure.
    Compute(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }

    /// The single-line stderr form.
    pub fn message(&self) -> String {
        match self {
            CliError::Spec(m) => format!("error[spec]: {m}"),
            CliError::Budget(m) => format!("error[budget]: {m}"),
            CliError::Compute(m) => format!("error[compute]: {m}"),
            CliError::Io(e) => format!("error[io]: {e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match &e {
            CoreError::QuadratureBudget { .. } => CliError::Budget(e.to_string()),
            CoreError::InvalidSpec(_)
            | CoreError::PositivityViolation(_)
            | CoreError::NotIntegrable(_)
            | CoreError::TooFewSamples { .. }
            | CoreError::TruncationLevelTooSmall(_) => CliError::Spec(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Output format for report tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

/// Fully resolved run configuration shared by the sweep commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub weight_spec: WeightSpec,
    pub n_list: Vec<usize>,
    pub m_level: f64,
    pub epsilon: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub output: Option<String>,
    pub format: Format,
}

impl RunConfig {
    /// Validate the invariants the commands rely on.
    pub fn validate(&self, degree_cap: usize) -> CliResult<()> {
        if self.m_level.is_nan() || self.m_level <= 2f64.sqrt() {
            return Err(CliError::Spec(format!(
                "M = {} must exceed sqrt(2)",
                self.m_level
            )));
        }
        if self.n_list.is_empty() {
            return Err(CliError::Spec("degree list is empty".into()));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n > degree_cap) {
            return Err(CliError::Spec(format!(
                "degree {n} above the cap {degree_cap} (raise --max-degree to override)"
            )));
        }
        if self.abs_tol.is_nan() || self.abs_tol <= 0.0 {
            return Err(CliError::Spec("abs-tol must be positive".into()));
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(CliError::Spec("epsilon must be positive".into()));
        }
        Ok(())
    }
}

/// Default degree sweep when `--n` is omitted.
pub fn default_n_list() -> Vec<usize> {
    (1..=20).collect()
}

pub fn default_degree_cap() -> usize {
    DEFAULT_DEGREE_CAP
}

/// Parse a weight spec given either inline JSON or a path to a JSON file.
pub fn parse_weight_spec(arg: &str) -> CliResult<WeightSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg))
            .map_err(|e| CliError::Spec(format!("cannot read weight spec file {arg:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Spec(format!("bad weight spec JSON: {e}")))
}

/// Parse `a..b` (inclusive) or a comma list of degrees, ascending output.
pub fn parse_n_list(arg: &str) -> CliResult<Vec<usize>> {
    let parse_one = |s: &str| -> CliResult<usize> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Spec(format!("bad degree {s:?}")))
    };
    let mut list: Vec<usize> = if let Some((lo, hi)) = arg.split_once("..") {
        let lo = parse_one(lo)?;
        let hi = parse_one(hi)?;
        if lo > hi {
            return Err(CliError::Spec(format!("empty degree range {arg:?}")));
        }
        (lo..=hi).collect()
    } else {
        arg.split(',').map(parse_one).collect::<CliResult<_>>()?
    };
    list.sort_unstable();
    list.dedup();
    Ok(list)
}

/// Read the panel-budget override from the environment.
pub fn max_panels_from_env(default: usize) -> CliResult<usize> {
    match std::env::var(MAX_PANELS_ENV) {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| CliError::Spec(format!("{MAX_PANELS_ENV} must be an integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn emit(output: &Option<String>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn build(config: &RunConfig) -> CliResult<(Weight, orthent_core::orthopoly::RecurrenceTable)> {
    let weight = build_weight(config.weight_spec.clone())?;
    let n_max = (*config.n_list.iter().max().unwrap()).max(1);
    let table = recurrence_coefficients(&weight, n_max)?;
    Ok((weight, table))
}

/// `orthent entropy`: one EntropyReport row per degree, ascending.
pub fn cmd_entropy(config: &RunConfig) -> CliResult<()> {
    let (weight, table) = build(config)?;
    let mut rows = Vec::with_capacity(config.n_list.len());
    for &n in &config.n_list {
        rows.push(entropy_report(
            &weight,
            &table,
            n,
            config.m_level,
            config.abs_tol,
            config.max_panels,
        )?);
    }
    let text = render_entropy(&rows, config.format)?;
    emit(&config.output, &text)
}

fn render_entropy(rows: &[EntropyReport], format: Format) -> CliResult<String> {
    match format {
        Format::Csv => {
            let mut out = String::new();
            writeln!(out, "{}", EntropyReport::CSV_HEADER).unwrap();
            for r in rows {
                writeln!(out, "{}", r.csv_row()).unwrap();
            }
            Ok(out)
        }
        Format::Json => {
            let mut out =
                serde_json::to_string_pretty(rows).map_err(|e| CliError::Compute(e.to_string()))?;
            out.push('\n');
            Ok(out)
        }
    }
}

/// `orthent asymptotics`: one AsymptoticsReport row per degree.
pub fn cmd_asymptotics(config: &RunConfig) -> CliResult<()> {
    let (weight, table) = build(config)?;
    let engine = Asymptotics::new(&weight, &table, config.max_panels)?;
    let mut rows = Vec::with_capacity(config.n_list.len());
    for &n in &config.n_list {
        rows.push(engine.report(n, config.m_level, config.abs_tol, config.max_panels)?);
    }
    let text = match config.format {
        Format::Csv => {
            let mut out = String::new();
            writeln!(out, "{}", AsymptoticsReport::CSV_HEADER).unwrap();
            for r in &rows {
                writeln!(out, "{}", r.csv_row()).unwrap();
            }
            out
        }
        Format::Json => {
            let mut out = serde_json::to_string_pretty(&rows)
                .map_err(|e| CliError::Compute(e.to_string()))?;
            out.push('\n');
            out
        }
    };
    emit(&config.output, &text)
}

/// `orthent bernstein`: factorization summary plus an exact F/G table.
pub fn cmd_bernstein(s_json: &str, n_list: Option<&[usize]>) -> CliResult<String> {
    let s: Vec<f64> = serde_json::from_str(s_json)
        .map_err(|e| CliError::Spec(format!("bad S coefficient JSON: {e}")))?;
    let weight = build_weight(WeightSpec::Bernstein { s: s.clone() })?;
    let factor = fejer_riesz(&s, weight.mass())?;

    let mut out = String::new();
    writeln!(out, "S coefficients (increasing degree): {s:?}").unwrap();
    writeln!(out, "raw mass: {}", weight.mass()).unwrap();
    let roots: Vec<String> = factor
        .roots()
        .iter()
        .map(|z| {
            if z.im.abs() < 1e-12 {
                format!("{}", z.re)
            } else {
                format!("{}{:+}i", z.re, z.im)
            }
        })
        .collect();
    writeln!(
        out,
        "q roots (all outside the unit disk): {{{}}}",
        roots.join(", ")
    )
    .unwrap();
    writeln!(out, "q(0) = {}", factor.q0()).unwrap();
    writeln!(out, "G_inf = -2 log q(0) = {}", -2.0 * factor.q0().ln()).unwrap();
    writeln!(
        out,
        "degree threshold: n > {}",
        factor.degree() as f64 / 2.0
    )
    .unwrap();

    let default_list: Vec<usize> =
        (factor.min_valid_degree()..factor.min_valid_degree() + 10).collect();
    let list = n_list.unwrap_or(&default_list);
    writeln!(out, "n,exact_F,exact_G").unwrap();
    for &n in list {
        if 2 * n <= factor.degree() {
            continue;
        }
        let f = exact_f(&factor, n)?;
        let g = exact_g(&factor, n)?;
        writeln!(out, "{n},{f},{g}").unwrap();
    }
    Ok(out)
}

/// `orthent conditions`: the four sufficient-condition suprema.
pub fn cmd_conditions(config: &RunConfig) -> CliResult<String> {
    let (weight, table) = build(config)?;
    let s = condition_check(
        &weight,
        &table,
        &config.n_list,
        config.epsilon,
        config.abs_tol,
        config.max_panels,
    )?;
    let szego = szego_constant(&weight, config.abs_tol)?;
    let mut out = String::new();
    writeln!(out, "degrees: {:?}", config.n_list).unwrap();
    writeln!(out, "epsilon: {}", config.epsilon).unwrap();
    writeln!(out, "szego_constant: {szego}").unwrap();
    writeln!(out, "sup_E_log: {}", s.sup_e_log).unwrap();
    writeln!(out, "sup_E_pow: {}", s.sup_e_pow).unwrap();
    writeln!(out, "sup_F_log: {}", s.sup_f_log).unwrap();
    writeln!(out, "sup_F_pow: {}", s.sup_f_pow).unwrap();
    writeln!(out, "divergence_flag: {}", s.divergence_flag).unwrap();
    Ok(out)
}

/// `orthent verify`: run the acceptance criteria, print one line each;
/// returns false when any failed.
pub fn cmd_verify() -> bool {
    let outcomes = run_all();
    let mut all_pass = true;
    for o in &outcomes {
        println!("{}", o.line());
        all_pass &= o.passed;
    }
    let total: f64 = outcomes.iter().map(|o| o.seconds).sum();
    println!(
        "verify: {} of {} criteria passed in {:.1}s",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len(),
        total
    );
    all_pass
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_list_parsing() {
        assert_eq!(parse_n_list("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(parse_n_list("10,20,40,80").unwrap(), vec![10, 20, 40, 80]);
        assert_eq!(parse_n_list("7").unwrap(), vec![7]);
        assert_eq!(parse_n_list("5,1,5").unwrap(), vec![1, 5]);
        assert!(parse_n_list("5..1").is_err());
        assert!(parse_n_list("a..b").is_err());
    }

    #[test]
    fn weight_spec_inline_json() {
        let spec = parse_weight_spec(r#"{"kind":"chebyshev"}"#).unwrap();
        assert_eq!(spec, WeightSpec::Chebyshev);
        assert!(parse_weight_spec(r#"{"kind":"nope"}"#).is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = RunConfig {
            weight_spec: WeightSpec::Chebyshev,
            n_list: vec![1, 2],
            m_level: 1.5,
            epsilon: 0.5,
            abs_tol: 1e-10,
            max_panels: 4096,
            output: None,
            format: Format::Csv,
        };
        assert!(c.validate(200).is_ok());
        c.m_level = 1.0;
        assert!(matches!(c.validate(200), Err(CliError::Spec(_))));
        c.m_level = 1.5;
        c.n_list = vec![500];
        assert!(matches!(c.validate(200), Err(CliError::Spec(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Spec("x".into()).exit_code(), 2);
        assert_eq!(CliError::Budget("x".into()).exit_code(), 3);
        assert_eq!(CliError::Compute("x".into()).exit_code(), 1);
        let from_core: CliError = CoreError::NotIntegrable(-2.0).into();
        assert_eq!(from_core.exit_code(), 2);
        let budget: CliError = CoreError::QuadratureBudget {
            panels: 9,
            residual: 1.0,
            tol: 0.5,
        }
        .into();
        assert_eq!(budget.exit_code(), 3);
    }

    #[test]
    fn bernstein_summary_contains_oracle_values() {
        let out = cmd_bernstein("[5,-4]", Some(&[2, 3])).unwrap();
        assert!(out.contains("q roots"), "{out}");
        assert!(out.contains("{2"), "{out}");
        // q(0) = 2/sqrt3
        assert!(out.contains("1.154700"), "{out}");
        // G_inf = log(3/4)
        assert!(out.contains("-0.287682"), "{out}");
    }
}

//! The `tau` command: solve a problem file, tabulate optimality ratios, or
//! print the Taylor reference solution.
//!
//! Exit statuses: 0 success, 1 I/O failure, 2 parse or usage error,
//! 3 method error.

mod output;

use std::path::PathBuf;

use tau_analysis::{convergence_table, FunctionSamples, NormKind, PrecisionConfig};
use tau_core::{parse_problem_file, taylor_reference, tau_solve, ParseDiagnostic, ProblemFile, ProblemSource};
use thiserror::Error;

pub use output::{json_rational, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Analyze,
    Taylor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub degree_override: Option<usize>,
    pub format: Format,
    pub precision_bits: Option<usize>,
    pub grid_size: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub norm: NormKind,
}

impl CliConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input_path: input_path.into(),
            degree_override: None,
            format: Format::Text,
            precision_bits: None,
            grid_size: None,
            output_path: None,
            norm: NormKind::Sup,
        }
    }

    pub fn precision(&self) -> PrecisionConfig {
        let default = PrecisionConfig::default();
        PrecisionConfig {
            working_bits: self.precision_bits.unwrap_or(default.working_bits),
            grid_size: self.grid_size.unwrap_or(default.grid_size),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}:{diagnostic}")]
    Parse { origin: String, diagnostic: ParseDiagnostic },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Method(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Method(_) => 3,
        }
    }
}

fn method(err: impl std::fmt::Display) -> CliError {
    CliError::Method(err.to_string())
}

pub fn load(path: &std::path::Path) -> Result<ProblemFile, CliError> {
    let src = ProblemSource::from_path(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_problem_file(&src).map_err(|diagnostic| CliError::Parse {
        origin: src.origin.clone(),
        diagnostic,
    })
}

/// Runs the command and returns what it prints.
pub fn execute(config: &CliConfig) -> Result<String, CliError> {
    let file = load(&config.input_path)?;
    match config.command {
        Command::Solve => solve(config, &file),
        Command::Analyze => analyze(config, &file),
        Command::Taylor => taylor(config, &file),
    }
}

/// Runs the command and writes its output to the configured destination.
pub fn run(config: &CliConfig) -> Result<(), CliError> {
    let text = execute(config)?;
    match &config.output_path {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

fn solve(config: &CliConfig, file: &ProblemFile) -> Result<String, CliError> {
    let problem = match config.degree_override {
        Some(n) => file.problem.with_degree(n),
        None => file.problem.clone(),
    };
    let solution = tau_solve(&problem).map_err(method)?;
    Ok(output::solution(&solution, config.format))
}

/// Degrees `s+1, s+3, ..` up to the problem's `n`, or just the override.
pub fn analysis_degrees(file: &ProblemFile, degree_override: Option<usize>) -> Vec<usize> {
    match degree_override {
        Some(n) => vec![n],
        None => {
            let problem = &file.problem;
            (problem.integration_order() + 1..=problem.degree).step_by(2).collect()
        }
    }
}

fn analyze(config: &CliConfig, file: &ProblemFile) -> Result<String, CliError> {
    let cfg = config.precision();
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let ns = analysis_degrees(file, config.degree_override);
    let Some(&n_max) = ns.iter().max() else {
        return Err(CliError::Method(format!(
            "no degrees to analyze: n = {} but the table starts at s + 1 = {}",
            file.problem.degree,
            file.problem.integration_order() + 1
        )));
    };
    let problem = &file.problem;
    let reference_degree = file.reference_taylor_degree.unwrap_or(2 * n_max + 20);
    let reference = taylor_reference(problem, reference_degree).map_err(method)?;
    let samples = FunctionSamples::from_poly(&reference.derivative(problem.order()), problem.interval.clone(), cfg)
        .map_err(method)?;
    let rows = convergence_table(problem, &samples, &ns, config.norm, cfg);
    if let [Err(err)] = rows.as_slice() {
        return Err(method(err));
    }
    if rows.iter().all(Result::is_err) {
        let first = rows.iter().find_map(|r| r.as_ref().err()).expect("nonempty");
        return Err(method(format!("every row failed; first: {first}")));
    }
    Ok(output::table(&ns, &rows, config.format))
}

fn taylor(config: &CliConfig, file: &ProblemFile) -> Result<String, CliError> {
    let n = config
        .degree_override
        .ok_or_else(|| CliError::Usage("taylor requires --degree N".into()))?;
    let series = taylor_reference(&file.problem, n).map_err(method)?;
    Ok(output::taylor(n, &series, config.format))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(text: &str) -> ProblemFile {
        parse_problem_file(&ProblemSource::inline(text)).unwrap()
    }

    #[test]
    fn table_degrees_start_after_s() {
        let f = file("LDUMK := (x*dif(y,2) - dif(y,1) + 4*x^3*y = 0); T := x^2; interval := (-1,1); n := 22;");
        assert_eq!(analysis_degrees(&f, None), vec![4, 6, 8, 10, 12, 14, 16, 18, 20, 22]);
        assert_eq!(analysis_degrees(&f, Some(7)), vec![7]);
        let short = file("LDUMK := (x*dif(y,2) - dif(y,1) = 0); T := x^2; interval := (-1,1); n := 3;");
        assert!(analysis_degrees(&short, None).is_empty());
    }

    #[test]
    fn exit_codes() {
        let io = CliError::Io {
            path: "p".into(),
            source: std::io::Error::from(std::io::ErrorKind::NotFound),
        };
        assert_eq!(io.exit_code(), 1);
        assert_eq!(CliError::Usage("u".into()).exit_code(), 2);
        assert_eq!(CliError::Method("m".into()).exit_code(), 3);
    }

    #[test]
    fn default_precision_applies_overrides() {
        let mut config = CliConfig::new(Command::Analyze, "f");
        assert_eq!(config.precision(), PrecisionConfig::default());
        config.precision_bits = Some(256);
        assert_eq!(config.precision().working_bits, 256);
        assert_eq!(config.precision().grid_size, 4097);
    }
}

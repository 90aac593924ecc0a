//! Batch entry point for the verification suites.
//!
//! Configuration comes from a flat `key = value` file (one pair per line,
//! `#` comments) overridden by command-line flags. Exit status is 0 when
//! every check passes, 1 on any failure, and 2 on configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use spingeom::algebra::TolerancePolicy;
use spingeom::eightmap::IndexConvention;
use spingeom::suites::{run, ConventionOverrides, SuiteConfig, SuiteId};
use spingeom::waves::GradientForm;

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Run the spinor-geometry verification suites",
    version
)]
struct Cli {
    /// Suite selector: clifford | map | waves | bilinears | conformal | fivegeom | all
    suite: Option<String>,

    /// Suite selector (flag form; the positional wins if both are given)
    #[arg(long = "suite", value_name = "NAME")]
    suite_flag: Option<String>,

    /// Base seed for all randomized checks
    #[arg(long)]
    seed: Option<u64>,

    /// Base trial count; individual checks scale proportionally
    #[arg(long)]
    trials: Option<u64>,

    /// Absolute and relative tolerance for float identities
    #[arg(long)]
    tol: Option<f64>,

    /// Base points per axis for finite-difference grids
    #[arg(long)]
    grid: Option<usize>,

    /// Output format: human | structured
    #[arg(long)]
    format: Option<String>,

    /// Flat key = value configuration file
    #[arg(long)]
    config: Option<PathBuf>,

    /// Exercise exact-backend variants where available
    #[arg(long)]
    exact: bool,

    /// Override the displacement-map contraction order (frame-row | displacement-row)
    #[arg(long = "index-placement", value_name = "NAME")]
    index_placement: Option<String>,

    /// Override the gradient-spinor form (gamma-eps-conj | gamma-plain | dagger-eps-conj | dagger-plain)
    #[arg(long = "gradient-form", value_name = "NAME")]
    gradient_form: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    Structured,
}

#[derive(Debug, Default)]
struct Settings {
    suite: Option<String>,
    seed: Option<u64>,
    trials: Option<u64>,
    tol: Option<f64>,
    grid: Option<usize>,
    format: Option<String>,
    exact: Option<bool>,
    index_placement: Option<String>,
    gradient_form: Option<String>,
}

struct ConfigError {
    message: String,
}

impl ConfigError {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
        }
    }
}

fn parse_config_file(text: &str) -> Result<Settings, ConfigError> {
    let mut settings = Settings::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::new(format!(
                "config line {}: expected `key = value`, found `{line}`",
                lineno + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            ConfigError::new(format!(
                "config line {}: invalid {what} `{value}`",
                lineno + 1
            ))
        };
        match key {
            "suite" => settings.suite = Some(value.to_string()),
            "seed" => settings.seed = Some(value.parse().map_err(|_| bad("seed"))?),
            "trials" => settings.trials = Some(value.parse().map_err(|_| bad("trial count"))?),
            "tol" => settings.tol = Some(value.parse().map_err(|_| bad("tolerance"))?),
            "grid" => settings.grid = Some(value.parse().map_err(|_| bad("grid size"))?),
            "format" => settings.format = Some(value.to_string()),
            "exact" => settings.exact = Some(value.parse().map_err(|_| bad("boolean"))?),
            "index_placement" => settings.index_placement = Some(value.to_string()),
            "gradient_form" => settings.gradient_form = Some(value.to_string()),
            _ => {
                return Err(ConfigError::new(format!(
                    "config line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
        }
    }
    Ok(settings)
}

fn resolve(cli: Cli) -> Result<(SuiteConfig, Format), ConfigError> {
    let mut settings = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                ConfigError::new(format!("cannot read config {}: {e}", path.display()))
            })?;
            parse_config_file(&text)?
        }
        None => Settings::default(),
    };

    // Flags override file values.
    if let Some(s) = cli.suite_flag {
        settings.suite = Some(s);
    }
    if let Some(s) = cli.suite {
        settings.suite = Some(s);
    }
    if let Some(v) = cli.seed {
        settings.seed = Some(v);
    }
    if let Some(v) = cli.trials {
        settings.trials = Some(v);
    }
    if let Some(v) = cli.tol {
        settings.tol = Some(v);
    }
    if let Some(v) = cli.grid {
        settings.grid = Some(v);
    }
    if let Some(v) = cli.format {
        settings.format = Some(v);
    }
    if cli.exact {
        settings.exact = Some(true);
    }
    if let Some(v) = cli.index_placement {
        settings.index_placement = Some(v);
    }
    if let Some(v) = cli.gradient_form {
        settings.gradient_form = Some(v);
    }

    let suite_name = settings.suite.as_deref().unwrap_or("all");
    let suites = SuiteId::parse(suite_name).ok_or_else(|| {
        ConfigError::new(format!(
            "unknown suite `{suite_name}`\nusage: verify [clifford|map|waves|bilinears|conformal|fivegeom|all] [flags]"
        ))
    })?;

    let format = match settings.format.as_deref().unwrap_or("human") {
        "human" => Format::Human,
        "structured" => Format::Structured,
        other => {
            return Err(ConfigError::new(format!(
                "unknown format `{other}` (expected human or structured)"
            )));
        }
    };

    let defaults = TolerancePolicy::default();
    let tol = settings.tol.unwrap_or(defaults.abs_tol);
    let policy = TolerancePolicy {
        abs_tol: tol,
        rel_tol: tol,
        trials: settings.trials.unwrap_or(defaults.trials),
        seed: settings.seed.unwrap_or(defaults.seed),
    };
    policy
        .validate()
        .map_err(|e| ConfigError::new(e.to_string()))?;

    let index_placement = match settings.index_placement.as_deref() {
        None => None,
        Some(name) => Some(IndexConvention::parse(name).ok_or_else(|| {
            ConfigError::new(format!("unknown index placement `{name}`"))
        })?),
    };
    let gradient_form = match settings.gradient_form.as_deref() {
        None => None,
        Some(name) => Some(GradientForm::parse(name).ok_or_else(|| {
            ConfigError::new(format!("unknown gradient form `{name}`"))
        })?),
    };

    let grid = settings.grid.unwrap_or(9);
    if grid < 5 {
        return Err(ConfigError::new(format!(
            "grid must have at least 5 points per axis, got {grid}"
        )));
    }

    Ok((
        SuiteConfig {
            suites,
            policy,
            grid,
            exact: settings.exact.unwrap_or(false),
            overrides: ConventionOverrides {
                index_placement,
                gradient_form,
            },
        },
        format,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (config, format) = match resolve(cli) {
        Ok(resolved) => resolved,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(2);
        }
    };

    let report = run(&config);
    match format {
        Format::Human => print!("{}", report.emit_human()),
        Format::Structured => println!("{}", report.emit_structured()),
    }

    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

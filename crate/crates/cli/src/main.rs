use std::path::PathBuf;
use std::process::ExitCode;

use biaxial_cli::commands;
use biaxial_cli::config::{parse_floats, GridSpec, Range};
use biaxial_cli::{CliError, Format, RunConfig, Suite};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "biaxial", version, about = "Hypermonogenic constructions in R^p x R^q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, default_value_t = 3)]
    p: usize,
    #[arg(long, global = true, default_value_t = 2)]
    q: usize,
    /// Direction in R^q as comma-separated floats; normalised. Defaults to e1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, global = true, default_value_t = 3)]
    k: usize,
    /// Series truncation.
    #[arg(long = "J", global = true, default_value_t = biaxial_core::fields::DEFAULT_TRUNCATION)]
    truncation: usize,
    /// Nodes per one-dimensional quadrature factor.
    #[arg(long, global = true, default_value_t = 32)]
    res: usize,
    /// Finite-difference step.
    #[arg(long, global = true, default_value_t = biaxial_core::fields::DEFAULT_FD_STEP)]
    h: f64,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file, written atomically. Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Tabulate a field at x = u e1, y = v s.
    Eval {
        /// exp-hpw | fourier-kernel | poly:k | ck
        #[arg(long, default_value = "exp-hpw")]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        x_axis: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        y_axis: Option<Range>,
    },
    /// Closed kernel against the sphere oracle.
    KernelTable {
        #[arg(long)]
        r_range: Option<Range>,
        #[arg(long)]
        theta_range: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Hemisphere reconstruction report.
    Reconstruct {
        /// constant | linear | exp-hpw | all
        #[arg(long, default_value = "all")]
        field: String,
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
    },
}

fn empty_grid() -> GridSpec {
    GridSpec {
        x_axis: None,
        y_axis: None,
        r_range: None,
        theta_range: None,
        y: None,
        points: None,
        radius: None,
    }
}

fn build_config(cli: Cli) -> Result<(RunConfig, Command, Option<PathBuf>), CliError> {
    let c = cli.common;
    let name = match &cli.command {
        Command::Verify { .. } => "verify",
        Command::Eval { .. } => "eval",
        Command::KernelTable { .. } => "kernel-table",
        Command::Reconstruct { .. } => "reconstruct",
    };
    let mut cfg = RunConfig::new(name, c.p, c.q);
    if let Some(s) = &c.s {
        cfg.s = parse_floats(s).map_err(CliError::Config)?;
    }
    cfg.k = c.k;
    cfg.truncation = c.truncation;
    cfg.res = c.res;
    cfg.h = c.h;
    cfg.seed = c.seed;
    cfg.format = c.format;
    match &cli.command {
        Command::Verify { .. } => {}
        Command::Eval { field, x_axis, y_axis } => {
            cfg.field = Some(field.clone());
            cfg.grid = Some(GridSpec {
                x_axis: Some(x_axis.unwrap_or(Range { lo: 0.0, hi: 1.0, n: 5 })),
                y_axis: Some(y_axis.unwrap_or(Range { lo: 0.0, hi: 0.0, n: 1 })),
                ..empty_grid()
            });
        }
        Command::KernelTable { r_range, theta_range, y } => {
            let y = match y {
                Some(v) => parse_floats(v).map_err(CliError::Config)?,
                None => vec![0.0; c.q],
            };
            cfg.grid = Some(GridSpec {
                r_range: Some(r_range.unwrap_or(Range { lo: 0.0, hi: 0.6, n: 5 })),
                theta_range: Some(theta_range.unwrap_or(Range {
                    lo: 0.0,
                    hi: std::f64::consts::FRAC_PI_2,
                    n: 5,
                })),
                y: Some(y),
                ..empty_grid()
            });
        }
        Command::Reconstruct { field, points, radius } => {
            cfg.field = Some(field.clone());
            cfg.grid = Some(GridSpec {
                points: Some(*points),
                radius: Some(*radius),
                ..empty_grid()
            });
        }
    }
    Ok((cfg.validate()?, cli.command, c.out))
}

fn fail(kind: &str, message: &str) -> ExitCode {
    let err = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{err}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", e.to_string().trim()),
    };
    let run = || -> Result<bool, CliError> {
        let (cfg, command, out) = build_config(cli)?;
        let outcome = match command {
            Command::Verify { suite } => commands::verify(suite, &cfg)?,
            Command::Eval { .. } => commands::eval(&cfg)?,
            Command::KernelTable { .. } => commands::kernel_table(&cfg)?,
            Command::Reconstruct { .. } => commands::reconstruct(&cfg)?,
        };
        biaxial_cli::output::emit(&outcome.text, out.as_deref())?;
        Ok(outcome.pass)
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => fail(e.kind(), &e.to_string()),
    }
}

mod commands;
mod config;
mod error;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use twedge::mc_harness::MatrixModel;

use config::{Command, Ensemble, Format, GoeForm, RunConfig, SRange};
use error::CliError;

/// Edgeworth corrections to the largest-eigenvalue laws of GOE and GUE.
#[derive(Debug, Parser)]
#[command(name = "twedge", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "TWEDGE_THREADS")]
    threads: Option<usize>,

    /// Read the run configuration from a JSON file instead of flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Print the resolved configuration as JSON and exit.
    #[arg(long, global = true)]
    print_config: bool,

    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Debug, Args)]
struct Common {
    /// Node count of the Fredholm quadrature.
    #[arg(long, default_value_t = twedge::fredholm::DEFAULT_NODES)]
    m: usize,
    /// Output file (stdout if omitted).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Table format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct Grid {
    /// `min:max:step` or a single value.
    #[arg(long, allow_hyphen_values = true, default_value = "-8:6:0.05")]
    s: SRange,
    /// Comma-separated matrix sizes.
    #[arg(long, value_delimiter = ',', default_value = "100")]
    n: Vec<usize>,
    /// Shift of the edge scaling.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    c: f64,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Tabulate the limiting functions on an s-grid.
    Limits {
        /// `min:max:step` or a single value.
        #[arg(long, allow_hyphen_values = true, default_value = "-8:6:0.05")]
        s: SRange,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the large-n expansion.
    Expand {
        #[command(flatten)]
        grid: Grid,
        #[arg(long, value_enum, default_value_t = Ensemble::Goe)]
        ensemble: Ensemble,
        #[arg(long, value_enum, default_value_t = GoeForm::Standard)]
        goe_form: GoeForm,
        #[command(flatten)]
        common: Common,
    },
    /// Exact finite-n distribution functions.
    FiniteN {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo sampling of the largest eigenvalue.
    Mc {
        /// Comma-separated matrix sizes.
        #[arg(long, value_delimiter = ',', default_value = "100")]
        n: Vec<usize>,
        /// Shift of the edge scaling.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        c: f64,
        /// 1 for GOE, 2 for GUE.
        #[arg(long, default_value_t = 1)]
        beta: u8,
        /// Samples per matrix size.
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// `dense` or `tridiagonal`.
        #[arg(long, value_parser = parse_model, default_value = "dense")]
        model: MatrixModel,
        /// Write the raw samples (u64 count, then f64 values, little endian).
        #[arg(long)]
        dump: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the invariant checks.
    Validate {
        /// Skip the slow checks.
        #[arg(long)]
        quick: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Fit error-vs-n slopes from a finite-n CSV.
    RateFit {
        /// CSV written by `finite-n`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Ensemble::Goe)]
        ensemble: Ensemble,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_model(text: &str) -> Result<MatrixModel, String> {
    match text {
        "dense" => Ok(MatrixModel::Dense),
        "tridiagonal" => Ok(MatrixModel::Tridiagonal),
        other => Err(format!("unknown model {other:?}, expected dense or tridiagonal")),
    }
}

fn apply_common(cfg: &mut RunConfig, common: Common) {
    cfg.m = common.m;
    cfg.output = common.output;
    cfg.format = common.format;
}

fn apply_grid(cfg: &mut RunConfig, grid: Grid) {
    cfg.s_range = grid.s;
    cfg.n_list = grid.n;
    cfg.c = grid.c;
}

fn to_config(sub: Sub) -> RunConfig {
    match sub {
        Sub::Limits { s, common } => {
            let mut cfg = RunConfig::new(Command::Limits);
            cfg.s_range = s;
            apply_common(&mut cfg, common);
            cfg
        }
        Sub::Expand { grid, ensemble, goe_form, common } => {
            let mut cfg = RunConfig::new(Command::Expand);
            apply_grid(&mut cfg, grid);
            cfg.ensemble = ensemble;
            cfg.goe_form = goe_form;
            apply_common(&mut cfg, common);
            cfg
        }
        Sub::FiniteN { grid, common } => {
            let mut cfg = RunConfig::new(Command::FiniteN);
            apply_grid(&mut cfg, grid);
            apply_common(&mut cfg, common);
            cfg
        }
        Sub::Mc { n, c, beta, count, seed, model, dump, common } => {
            let mut cfg = RunConfig::new(Command::Mc);
            cfg.n_list = n;
            cfg.c = c;
            cfg.beta = beta;
            cfg.count = count;
            cfg.seed = seed;
            cfg.model = model;
            cfg.dump = dump;
            apply_common(&mut cfg, common);
            cfg
        }
        Sub::Validate { quick, common } => {
            let mut cfg = RunConfig::new(Command::Validate);
            cfg.quick = quick;
            apply_common(&mut cfg, common);
            cfg
        }
        Sub::RateFit { input, ensemble, common } => {
            let mut cfg = RunConfig::new(Command::RateFit);
            cfg.input = Some(input);
            cfg.ensemble = ensemble;
            apply_common(&mut cfg, common);
            cfg
        }
    }
}

fn resolve(cli: Cli) -> Result<(RunConfig, bool), CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    let cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Input {
                path: path.clone(),
                source,
            })?;
            RunConfig::from_json(&text)?
        }
        None => match cli.command {
            Some(sub) => to_config(sub),
            None => return Err(CliError::Config("a subcommand or --config is required".into())),
        },
    };
    Ok((cfg, cli.print_config))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = resolve(cli).and_then(|(cfg, print_only)| {
        if print_only {
            cfg.validate()?;
            println!("{}", cfg.to_json());
            Ok(())
        } else {
            commands::run(&cfg)
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

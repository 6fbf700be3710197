use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use towerlab_cli::{
    cmd_build, cmd_census, cmd_classify, cmd_count, cmd_genus, cmd_subext, load_grid, load_spec, CliError,
    Format, LoadedSpec,
};

/// Explicit towers of function fields over finite fields.
#[derive(Parser)]
#[command(name = "towerlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Tower spec file (TOML).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Number of steps (build) or top level (count, genus).
    #[arg(long, global = true, default_value_t = 3)]
    depth: usize,
    /// Level for classify.
    #[arg(long, global = true, default_value_t = 2)]
    level: usize,
    /// Census grid file (TOML).
    #[arg(long, global = true)]
    grid: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Starting precision of local expansions.
    #[arg(long, global = true)]
    precision: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the first `--depth` steps and print the evidence.
    Build,
    /// N(T_j), genus information and N/g for j = 1..depth.
    Count,
    /// Classification of the step into `--level` above each degree-one place.
    Classify,
    /// Exact genus of T_2 and bounds up to `--depth`.
    Genus,
    /// Resolve the first Artin-Schreier step into degree-p steps.
    Subext,
    /// Sweep a grid of family parameters.
    Census,
}

fn spec(cli: &Cli) -> Result<LoadedSpec, CliError> {
    let path = cli.spec.as_ref().ok_or_else(|| CliError::Usage("--spec is required".into()))?;
    let mut s = load_spec(path)?;
    if let Some(p) = cli.precision {
        s.tower = s.tower.with_precision(p)?;
    }
    Ok(s)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Build => cmd_build(&spec(cli)?, cli.depth),
        Command::Count => cmd_count(&spec(cli)?, cli.depth, cli.format),
        Command::Classify => cmd_classify(&spec(cli)?, cli.level, cli.format),
        Command::Genus => cmd_genus(&spec(cli)?, cli.depth, cli.format),
        Command::Subext => cmd_subext(&spec(cli)?, cli.seed),
        Command::Census => {
            let path = cli.grid.as_ref().ok_or_else(|| CliError::Usage("--grid is required".into()))?;
            cmd_census(&load_grid(path)?, cli.seed.unwrap_or(0), cli.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| match &cli.out {
        Some(path) => std::fs::write(path, out).map_err(CliError::from),
        None => {
            print!("{out}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

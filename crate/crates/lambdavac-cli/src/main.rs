//! `lambdavac` — construct, verify, and analyze a family of exact
//! Λ-vacuum solutions from the command line.
//!
//! Exit codes: `0` success, `1` verification failure, `2` input error.

mod commands;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{
    cmd_catalog, cmd_curvature, cmd_nullfield, cmd_signmap, cmd_singularities, cmd_slice,
    cmd_verify, cmd_weyl, load_input, parse_at, parse_exact, InputError, LoadedInput,
};
use lambdavac::grid::Grid2D;

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Deterministic pretty-printed JSON.
    Json,
    /// CSV (grid and loci reports only).
    Csv,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Catalog solution name (see `lambdavac catalog`).
    #[arg(long, value_name = "NAME", conflicts_with = "metric")]
    builtin: Option<String>,

    /// Path to a .metric solution file.
    #[arg(long, value_name = "FILE")]
    metric: Option<PathBuf>,

    /// Cosmological constant as an exact constant (like 1, 1/2, or 0.25).
    #[arg(long, value_name = "NUM")]
    lambda: Option<String>,

    /// Mass parameter as an exact constant.
    #[arg(long, value_name = "NUM")]
    m: Option<String>,

    /// Seed for the probabilistic zero test.
    #[arg(long, default_value_t = 42, value_name = "N")]
    seed: u64,

    /// Tolerance override for the probabilistic zero test.
    #[arg(long, value_name = "REAL")]
    tol: Option<f64>,

    /// Write the report to this path instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Parser)]
#[command(
    name = "lambdavac",
    version,
    about = "Exact Λ-vacuum solutions: verification, curvature, and grid analyses"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Verify the vacuum field equations component by component.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Summarize curvature: scalar, Kretschmann, nonzero Riemann components.
    Curvature {
        #[command(flatten)]
        common: CommonArgs,
        /// Evaluate reported expressions at this point, like t=0,x=0.
        #[arg(long, value_name = "ASSIGN")]
        at: Option<String>,
    },
    /// Newman–Penrose Weyl scalars and the closed-form psi2 comparison.
    Weyl {
        #[command(flatten)]
        common: CommonArgs,
        /// Evaluate the scalars at this point, like t=0,x=0.
        #[arg(long, value_name = "ASSIGN")]
        at: Option<String>,
    },
    /// Sign map of g00 over a (t,x) grid.
    Signmap {
        #[command(flatten)]
        common: CommonArgs,
        /// Lattice description t0:t1:nt,x0:x1:nx (endpoints included).
        #[arg(long, value_name = "SPEC")]
        grid: String,
    },
    /// Null-curve slope field over a (t,x) grid.
    Nullfield {
        #[command(flatten)]
        common: CommonArgs,
        /// Lattice description t0:t1:nt,x0:x1:nx (endpoints included).
        #[arg(long, value_name = "SPEC")]
        grid: String,
    },
    /// Scan a grid for physical and chart singular loci.
    Singularities {
        #[command(flatten)]
        common: CommonArgs,
        /// Lattice description t0:t1:nt,x0:x1:nx (endpoints included).
        #[arg(long, value_name = "SPEC")]
        grid: String,
        /// Kretschmann magnitude above which a peak counts as physical.
        #[arg(long, default_value_t = 1e6, value_name = "REAL")]
        k_threshold: f64,
        /// Determinant magnitude below which a point counts as degenerate.
        #[arg(long, default_value_t = 1e-8, value_name = "REAL")]
        det_threshold: f64,
    },
    /// Induced metric on a slice of fixed coordinates.
    Slice {
        #[command(flatten)]
        common: CommonArgs,
        /// Coordinates to fix, like t=0 or y=0,z=pi.
        #[arg(long, value_name = "ASSIGN")]
        at: String,
    },
    /// List the built-in solutions.
    Catalog {
        /// Write the report to this path instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Report format (json only).
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn load_common(common: &CommonArgs) -> Result<LoadedInput, InputError> {
    let lambda = common
        .lambda
        .as_deref()
        .map(|s| parse_exact(s, "lambda"))
        .transpose()?;
    let m = common.m.as_deref().map(|s| parse_exact(s, "m")).transpose()?;
    let input = load_input(&common.builtin, &common.metric, lambda, m)?;
    for w in &input.warnings {
        eprintln!("warning: {w}");
    }
    Ok(input)
}

fn parse_grid(spec: &str) -> Result<Grid2D, InputError> {
    spec.parse().map_err(|e| InputError(format!("{e}")))
}

fn require_json(format: Format, what: &str) -> Result<(), InputError> {
    if format == Format::Csv {
        Err(InputError(format!(
            "csv output is not available for {what}; use --format json"
        )))
    } else {
        Ok(())
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), InputError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| InputError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<i32, InputError> {
    let cli = Cli::parse();
    let (text, code, out) = match &cli.cmd {
        Cmd::Verify { common } => {
            require_json(common.format, "verify")?;
            let input = load_common(common)?;
            let (text, code) = cmd_verify(&input, common.seed, common.tol)?;
            (text, code, common.out.clone())
        }
        Cmd::Curvature { common, at } => {
            require_json(common.format, "curvature")?;
            let input = load_common(common)?;
            let at = at.as_deref().map(parse_at).transpose()?;
            let (text, code) = cmd_curvature(&input, &at, common.seed)?;
            (text, code, common.out.clone())
        }
        Cmd::Weyl { common, at } => {
            require_json(common.format, "weyl")?;
            let input = load_common(common)?;
            let at = at.as_deref().map(parse_at).transpose()?;
            let (text, code) = cmd_weyl(&input, &at, common.seed, common.tol)?;
            (text, code, common.out.clone())
        }
        Cmd::Signmap { common, grid } => {
            let input = load_common(common)?;
            let grid = parse_grid(grid)?;
            let (text, code) =
                cmd_signmap(&input, &grid, common.seed, common.format == Format::Csv)?;
            (text, code, common.out.clone())
        }
        Cmd::Nullfield { common, grid } => {
            let input = load_common(common)?;
            let grid = parse_grid(grid)?;
            let (text, code) =
                cmd_nullfield(&input, &grid, common.seed, common.format == Format::Csv)?;
            (text, code, common.out.clone())
        }
        Cmd::Singularities {
            common,
            grid,
            k_threshold,
            det_threshold,
        } => {
            let input = load_common(common)?;
            let grid = parse_grid(grid)?;
            let (text, code) = cmd_singularities(
                &input,
                &grid,
                *k_threshold,
                *det_threshold,
                common.seed,
                common.format == Format::Csv,
            )?;
            (text, code, common.out.clone())
        }
        Cmd::Slice { common, at } => {
            require_json(common.format, "slice")?;
            let input = load_common(common)?;
            let at = parse_at(at)?;
            if at.is_empty() {
                return Err(InputError("--at must fix at least one coordinate".to_string()));
            }
            let (text, code) = cmd_slice(&input, &at, common.seed)?;
            (text, code, common.out.clone())
        }
        Cmd::Catalog { out, format } => {
            require_json(*format, "catalog")?;
            let (text, code) = cmd_catalog();
            (text, code, out.clone())
        }
    };
    emit(&text, &out)?;
    Ok(code)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}

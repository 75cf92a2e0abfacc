//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid problem (or failed verification),
//! 2 usage or I/O error, 3 numerical failure.

pub mod csv_out;
pub mod svg;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use parhyp_core::example::{example_forced, example_printed};
use parhyp_core::{
    sample_grid, verify_solution, Error, GridConfig, GridSpec, ProblemSpec, SeriesConfig, Solution,
    SolveOptions, Tolerances,
};

pub use csv_out::emit_csv;
pub use svg::{render_svg, SvgOptions};

#[derive(Parser, Debug)]
#[command(
    name = "parhyp",
    version,
    about = "Mixed parabolic-hyperbolic boundary value problem solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the interface problem and print tau and nu samples as CSV.
    Solve {
        problem: PathBuf,
        #[arg(long, default_value_t = 11)]
        samples: usize,
        #[arg(long)]
        force: bool,
    },
    /// Evaluate u on a grid over the closed domain and print CSV.
    Eval {
        problem: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        force: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the verification suite and print the JSON report.
    Verify {
        problem: PathBuf,
        #[arg(long)]
        force: bool,
        /// Points per axis of each residual grid.
        #[arg(long, default_value_t = 64)]
        n_interior: usize,
    },
    /// Render a heatmap of u as SVG.
    Render {
        problem: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        force: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the built-in example (a = 2, b = -1, phi0 = 1 - y, phi1 = y).
    Example {
        /// Accept psi = x despite the failed corner compatibility check.
        #[arg(long)]
        force: bool,
        /// Use psi = 4x, which is compatible.
        #[arg(long)]
        printed: bool,
        /// Write example.json, example.csv and example.svg here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        n_terms: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct GridArgs {
    #[arg(long, default_value_t = 101)]
    nx: usize,
    #[arg(long, default_value_t = 50)]
    ny_top: usize,
    #[arg(long, default_value_t = 50)]
    ny_bot: usize,
    /// Fixed number of series terms instead of the adaptive tail bound.
    #[arg(long)]
    n_terms: Option<usize>,
}

impl GridArgs {
    fn spec(&self) -> GridSpec {
        GridSpec {
            nx: self.nx,
            ny_top: self.ny_top,
            ny_bot: self.ny_bot,
        }
    }
}

enum Failure {
    Core(Error),
    Io(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_numerical() => 3,
            Failure::Core(Error::Config(_)) => 2,
            Failure::Core(_) | Failure::Invalid(_) => 1,
            Failure::Io(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(m) | Failure::Invalid(m) => f.write_str(m),
        }
    }
}

fn options(force: bool, n_terms: Option<usize>) -> SolveOptions {
    SolveOptions {
        force,
        series: match n_terms {
            Some(n) => SeriesConfig::with_terms(n),
            None => SeriesConfig::default(),
        },
        ..SolveOptions::default()
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ProblemSpec, Failure> {
    if !path.exists() {
        return Err(Failure::Io(format!(
            "cannot read {}: no such file",
            path.display()
        )));
    }
    Ok(ProblemSpec::load(path)?)
}

fn build(p: &ProblemSpec, opts: &SolveOptions, err: &mut dyn Write) -> Result<Solution, Failure> {
    let sol = Solution::build(p, opts)?;
    for w in &sol.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(sol)
}

fn solve_csv(sol: &Solution, samples: usize) -> Result<String, Failure> {
    if samples < 2 {
        return Err(Failure::Core(Error::Config(
            "--samples must be at least 2".into(),
        )));
    }
    let d = &sol.interface;
    let mut s = String::from("x,tau,nu\n");
    for i in 0..samples {
        let x = i as f64 / (samples - 1) as f64;
        writeln!(
            s,
            "{x},{},{}",
            csv_out::format_sig17(d.tau(x)?),
            csv_out::format_sig17(d.nu(x)?)
        )
        .unwrap();
    }
    Ok(s)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("write failed: {e}"));
    match cli.command {
        Command::Solve {
            problem,
            samples,
            force,
        } => {
            let p = load(&problem)?;
            let sol = build(&p, &options(force, None), err)?;
            let d = &sol.interface;
            let _ = writeln!(
                err,
                "lambda = {}, tau(0) = {}, tau(1) = {}, c = {}, richardson = {:e}, nodes = {}",
                d.lambda,
                d.tau0,
                d.tau1,
                d.c,
                d.richardson_estimate,
                d.grid_len()
            );
            out.write_all(solve_csv(&sol, samples)?.as_bytes())
                .map_err(io)?;
        }
        Command::Eval {
            problem,
            grid,
            force,
            output,
        } => {
            let p = load(&problem)?;
            let sol = build(&p, &options(force, grid.n_terms), err)?;
            let bytes = emit_csv(&sample_grid(&sol, &grid.spec())?);
            match output {
                Some(path) => write_file(&path, &bytes)?,
                None => out.write_all(&bytes).map_err(io)?,
            }
        }
        Command::Verify {
            problem,
            force,
            n_interior,
        } => {
            let p = load(&problem)?;
            let sol = build(&p, &options(force, None), err)?;
            let grids = GridConfig {
                n_interior,
                ..GridConfig::default()
            };
            let report = verify_solution(&sol, &grids, &Tolerances::default())?;
            writeln!(out, "{}", report.to_json()).map_err(io)?;
            if !report.passed {
                let _ = writeln!(err, "verification failed: {}", report.failures().join(", "));
                return Ok(1);
            }
        }
        Command::Render {
            problem,
            grid,
            force,
            output,
        } => {
            let p = load(&problem)?;
            let sol = build(&p, &options(force, grid.n_terms), err)?;
            let samples = sample_grid(&sol, &grid.spec())?;
            write_file(&output, &render_svg(&samples, &SvgOptions::default()))?;
        }
        Command::Example {
            force,
            printed,
            output,
            n_terms,
        } => {
            let p = if printed {
                example_printed()
            } else {
                example_forced()
            };
            let sol = Solution::build(&p, &options(force, Some(n_terms))).map_err(|e| match e {
                Error::Validation(m) => Failure::Invalid(format!(
                    "{m}\nthe example with psi = x needs --force; --printed selects psi = 4x"
                )),
                e => Failure::Core(e),
            })?;
            for w in &sol.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let d = &sol.interface;
            let _ = writeln!(err, "tau(0.5) = {}, nu(0) = {}", d.tau(0.5)?, d.nu(0.0)?);
            match output {
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(|e| {
                        Failure::Io(format!("cannot create {}: {e}", dir.display()))
                    })?;
                    let samples = sample_grid(&sol, &GridSpec::default())?;
                    let files = [
                        ("example.json", p.to_json().into_bytes()),
                        ("example.csv", emit_csv(&samples)),
                        ("example.svg", render_svg(&samples, &SvgOptions::default())),
                    ];
                    for (name, bytes) in files {
                        let path = dir.join(name);
                        write_file(&path, &bytes)?;
                        writeln!(out, "{}", path.display()).map_err(io)?;
                    }
                }
                None => writeln!(out, "{}", p.to_json()).map_err(io)?,
            }
        }
    }
    Ok(0)
}

/// Run with explicit output streams. `argv[0]` is the program name.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

//! Command-line flags and the TOML config file that can stand in for them.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use fracdiff_core::kernels::{KernelSpec, Route};
use serde::Deserialize;

use crate::error::{CliError, CliResult};
use crate::grid::Values;

/// Environment variable supplying the default worker count.
pub const THREADS_ENV: &str = "FRACDIFF_THREADS";

/// Fractional diffusion kernels, Cauchy solves, moments and validation.
#[derive(Debug, Parser)]
#[command(name = "fracdiff", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fundamental solution N(x, t) for delta initial data.
    Kernel(Shared),
    /// Green's function G₁ (propagates the initial value).
    G1(Shared),
    /// Green's function G₂ (propagates the source).
    G2(Shared),
    /// Solve the Cauchy problem for sampled initial data.
    Solve(SolveArgs),
    /// Fractional moments, closed form against quadrature.
    Moments(MomentArgs),
    /// Kernel values next to their small- and large-|x| asymptotics.
    Asymptotics(Shared),
    /// Run the validation suites.
    Validate(ValidateArgs),
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Shared {
    /// Space-fractional order α ∈ (0, 2].
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Time-fractional order β ∈ (0, 2].
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Diffusion coefficient η > 0 [default: 1].
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Times: a value, a comma list, or lo:hi:count [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<Values>,
    /// Positions: a value, a comma list, or lo:hi:count.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<Values>,
    /// Evaluation route: series_small, series_large, contour, fourier, gaussian or auto [default: auto].
    #[arg(long, value_parser = parse_route)]
    pub route: Option<Route>,
    /// Accuracy target; its meaning depends on the subcommand.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file whose keys stand in for any flag not given.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write a JSON run report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Worker threads [default: $FRACDIFF_THREADS, else all cores].
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub shared: Shared,
    /// Initial value f(x) as CSV with header `x,value`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Initial velocity g(x), same format and grid; only for 1 < β ≤ 2.
    #[arg(long)]
    pub velocity: Option<PathBuf>,
    /// Time-independent source φ(x), same format and grid.
    #[arg(long)]
    pub source: Option<PathBuf>,
    /// Minimum number of spectral nodes.
    #[arg(long)]
    pub nk: Option<usize>,
    /// Zero-padding factor of the periodic embedding.
    #[arg(long)]
    pub pad: Option<usize>,
    /// Wavenumber cutoff.
    #[arg(long)]
    pub kmax: Option<f64>,
    /// Panels of the time-convolution mesh for the source.
    #[arg(long)]
    pub n_tau: Option<usize>,
    /// Largest admissible edge value of the data, relative to its peak.
    #[arg(long)]
    pub boundary_floor: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct MomentArgs {
    #[command(flatten)]
    pub shared: Shared,
    /// Moment orders δ: a value, a comma list, or lo:hi:count.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<Values>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub shared: Shared,
    /// Run only this suite.
    #[arg(long)]
    pub suite: Option<String>,
}

fn parse_route(s: &str) -> Result<Route, String> {
    s.parse().map_err(|_| format!("unknown route `{s}`"))
}

/// Everything a config file may set. Keys are the flag names with `_`
/// for `-`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    alpha: Option<f64>,
    beta: Option<f64>,
    eta: Option<f64>,
    t: Option<Values>,
    x: Option<Values>,
    route: Option<String>,
    tol: Option<f64>,
    out: Option<PathBuf>,
    report: Option<PathBuf>,
    threads: Option<usize>,
    input: Option<PathBuf>,
    velocity: Option<PathBuf>,
    source: Option<PathBuf>,
    nk: Option<usize>,
    pad: Option<usize>,
    kmax: Option<f64>,
    n_tau: Option<usize>,
    boundary_floor: Option<f64>,
    delta: Option<Values>,
    suite: Option<String>,
}

fn load(path: &Path) -> CliResult<FileConfig> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn fill<T>(flag: &mut Option<T>, file: Option<T>) {
    if flag.is_none() {
        *flag = file;
    }
}

impl Shared {
    fn absorb(&mut self, mut file: FileConfig) -> CliResult<FileConfig> {
        let route = match file.route.take() {
            Some(r) => Some(parse_route(&r).map_err(CliError::usage)?),
            None => None,
        };
        fill(&mut self.alpha, file.alpha.take());
        fill(&mut self.beta, file.beta.take());
        fill(&mut self.eta, file.eta.take());
        fill(&mut self.t, file.t.take());
        fill(&mut self.x, file.x.take());
        fill(&mut self.route, route);
        fill(&mut self.tol, file.tol.take());
        fill(&mut self.out, file.out.take());
        fill(&mut self.report, file.report.take());
        fill(&mut self.threads, file.threads.take());
        Ok(file)
    }

    fn env_threads(&mut self) -> CliResult<()> {
        if self.threads.is_none() {
            if let Ok(v) = std::env::var(THREADS_ENV) {
                let n = v.trim().parse().map_err(|_| CliError::usage(format!("{THREADS_ENV}=`{v}` is not a thread count")))?;
                self.threads = Some(n);
            }
        }
        Ok(())
    }

    /// Kernel parameters from α, β and η.
    pub fn spec(&self) -> CliResult<KernelSpec> {
        let alpha = self.alpha.ok_or_else(|| CliError::usage("missing --alpha"))?;
        let beta = self.beta.ok_or_else(|| CliError::usage("missing --beta"))?;
        Ok(KernelSpec::new(alpha, beta, self.eta.unwrap_or(1.0))?)
    }

    /// Requested times, default 1.
    pub fn times(&self) -> Vec<f64> {
        self.t.as_ref().map_or_else(|| vec![1.0], Values::points)
    }

    /// Requested positions.
    pub fn positions(&self) -> CliResult<Vec<f64>> {
        Ok(self.x.as_ref().ok_or_else(|| CliError::usage("missing --x"))?.points())
    }

    /// Route, default auto.
    pub fn route(&self) -> Route {
        self.route.unwrap_or(Route::Auto)
    }
}

impl Command {
    /// The flags shared by every subcommand.
    pub fn shared(&self) -> &Shared {
        match self {
            Command::Kernel(s) | Command::G1(s) | Command::G2(s) | Command::Asymptotics(s) => s,
            Command::Solve(a) => &a.shared,
            Command::Moments(a) => &a.shared,
            Command::Validate(a) => &a.shared,
        }
    }

    /// Subcommand name.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Kernel(_) => "kernel",
            Command::G1(_) => "g1",
            Command::G2(_) => "g2",
            Command::Solve(_) => "solve",
            Command::Moments(_) => "moments",
            Command::Asymptotics(_) => "asymptotics",
            Command::Validate(_) => "validate",
        }
    }

    fn shared_mut(&mut self) -> &mut Shared {
        match self {
            Command::Kernel(s) | Command::G1(s) | Command::G2(s) | Command::Asymptotics(s) => s,
            Command::Solve(a) => &mut a.shared,
            Command::Moments(a) => &mut a.shared,
            Command::Validate(a) => &mut a.shared,
        }
    }

    /// Fill unset flags from `--config`, then the thread count from the
    /// environment.
    pub fn resolve(&mut self) -> CliResult<()> {
        if let Some(path) = self.shared().config.clone() {
            let rest = self.shared_mut().absorb(load(&path)?)?;
            match self {
                Command::Solve(a) => {
                    fill(&mut a.input, rest.input);
                    fill(&mut a.velocity, rest.velocity);
                    fill(&mut a.source, rest.source);
                    fill(&mut a.nk, rest.nk);
                    fill(&mut a.pad, rest.pad);
                    fill(&mut a.kmax, rest.kmax);
                    fill(&mut a.n_tau, rest.n_tau);
                    fill(&mut a.boundary_floor, rest.boundary_floor);
                }
                Command::Moments(a) => fill(&mut a.delta, rest.delta),
                Command::Validate(a) => fill(&mut a.suite, rest.suite),
                _ => {}
            }
        }
        self.shared_mut().env_threads()
    }
}

use std::io::Write;
use std::time::Instant;

use fracdiff_core::kernels::{green, large_x_behavior, small_x_behavior, Kernel, KernelSpec, KernelValue, Route};
use fracdiff_core::moments::{moment_formula, moment_quadrature, MomentQuery};
use fracdiff_core::solver::{solve, SolveConfig, SourceTerm};
use fracdiff_core::Error as CoreError;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::io::{num, opt_num, read_field, sink, write_csv, write_field};
use crate::options::{Cli, Command, MomentArgs, Shared, SolveArgs, ValidateArgs};
use crate::report::{RunReport, SpecEcho};
use crate::suites;

/// What a command hands back for the report.
struct Summary {
    spec: Option<SpecEcho>,
    rows: usize,
    discrepancy: f64,
}

/// Run a parsed command line: resolve the config, run on a pool of the
/// requested size, and write the report.
pub fn run(mut cli: Cli) -> CliResult<()> {
    let start = Instant::now();
    cli.command.resolve()?;
    let shared = cli.command.shared().clone();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = shared.threads {
        if n == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::usage(e.to_string()))?;
    let (summary, verdict) = pool.install(|| dispatch(&cli.command))?;
    if let Some(path) = &shared.report {
        RunReport {
            command: cli.command.name().into(),
            spec: summary.spec,
            rows_written: summary.rows,
            max_cross_route_discrepancy: summary.discrepancy,
            wall_time: start.elapsed().as_secs_f64(),
        }
        .write(path)?;
    }
    verdict
}

/// The summary, plus a deferred failure for commands (validate) that still
/// report after failing.
fn dispatch(command: &Command) -> CliResult<(Summary, CliResult<()>)> {
    let done = |s| Ok((s, Ok(())));
    match command {
        Command::Kernel(s) | Command::G1(s) => done(kernel(s, Kernel::G1, command.shared().report.is_some())?),
        Command::G2(s) => done(kernel(s, Kernel::G2, s.report.is_some())?),
        Command::Solve(a) => done(solve_cmd(a)?),
        Command::Moments(a) => done(moments(a)?),
        Command::Asymptotics(s) => done(asymptotics(s)?),
        Command::Validate(a) => validate(a),
    }
}

/// Every (t, x) pair, ordered by t and then x.
fn sample_points(shared: &Shared) -> CliResult<Vec<(f64, f64)>> {
    let xs = shared.positions()?;
    Ok(shared.times().into_iter().flat_map(|t| xs.iter().map(move |&x| (t, x))).collect())
}

fn spec_columns(spec: &KernelSpec) -> [String; 3] {
    [num(spec.alpha()), num(spec.beta()), num(spec.eta())]
}

fn at(t: f64, x: f64) -> String {
    format!("x = {x}, t = {t}")
}

/// An independent second opinion on a kernel value.
fn cross_check(kind: Kernel, spec: &KernelSpec, t: f64, x: f64, first: &KernelValue) -> Option<f64> {
    let other = if first.route == Route::Fourier { Route::Contour } else { Route::Fourier };
    let v = green(kind, spec, x, t, other).ok()?.value;
    Some((v - first.value).abs() / v.abs().max(first.value.abs()).max(1e-300))
}

fn kernel(shared: &Shared, kind: Kernel, cross: bool) -> CliResult<Summary> {
    let spec = shared.spec()?;
    let route = shared.route();
    let points = sample_points(shared)?;
    let values: Vec<(KernelValue, Option<f64>)> = points
        .par_iter()
        .map(|&(t, x)| {
            let v = green(kind, &spec, x, t, route).map_err(|e| CliError::from(e).context(at(t, x)))?;
            if let Some(tol) = shared.tol {
                if v.err_est > tol * v.value.abs() {
                    return Err(CliError::from(CoreError::NonConvergence { what: "kernel route", estimate: v.err_est })
                        .context(format!("{}: error estimate above --tol", at(t, x))));
                }
            }
            Ok((v, if cross { cross_check(kind, &spec, t, x, &v) } else { None }))
        })
        .collect::<CliResult<_>>()?;
    let [a, b, e] = spec_columns(&spec);
    let rows: Vec<Vec<String>> = points
        .iter()
        .zip(&values)
        .map(|(&(t, x), (v, _))| vec![num(x), num(t), a.clone(), b.clone(), e.clone(), v.route.name().into(), num(v.value), num(v.err_est)])
        .collect();
    let header = ["x", "t", "alpha", "beta", "eta", "route", "value", "err_est"];
    let rows = write_csv(sink(shared.out.as_deref())?, &header, &rows)?;
    let discrepancy = values.iter().filter_map(|(_, d)| *d).fold(0.0, f64::max);
    Ok(Summary { spec: Some((&spec).into()), rows, discrepancy })
}

fn solve_cmd(args: &SolveArgs) -> CliResult<Summary> {
    let shared = &args.shared;
    let spec = shared.spec()?;
    let times = shared.times();
    let &[t] = times.as_slice() else {
        return Err(CliError::usage("solve takes a single --t"));
    };
    let input = args.input.as_deref().ok_or_else(|| CliError::usage("missing --input"))?;
    let f = read_field(input)?;
    let g = args.velocity.as_deref().map(read_field).transpose()?;
    let phi = match args.source.as_deref() {
        Some(path) => {
            let s = read_field(path)?;
            if !s.same_grid(&f) {
                return Err(CliError::grid(format!("{}: source grid differs from the input grid", path.display())));
            }
            let (x0, dx, values) = (s.x0(), s.dx(), s.values().to_vec());
            Some(SourceTerm::new(format!("time-independent source from {}", path.display()), move |x, _t| {
                let i = ((x - x0) / dx).round();
                if i >= 0.0 && (i as usize) < values.len() {
                    values[i as usize]
                } else {
                    0.0
                }
            }))
        }
        None => None,
    };
    let defaults = SolveConfig::default();
    let cfg = SolveConfig {
        kmax: args.kmax.unwrap_or(defaults.kmax),
        nk: args.nk.unwrap_or(defaults.nk),
        n_tau: args.n_tau.unwrap_or(defaults.n_tau),
        tol: shared.tol.unwrap_or(defaults.tol),
        pad: args.pad.unwrap_or(defaults.pad),
        boundary_floor: args.boundary_floor.unwrap_or(defaults.boundary_floor),
    };
    let u = solve(&spec, &f, g.as_ref(), phi.as_ref(), t, &cfg)?;
    let rows = write_field(sink(shared.out.as_deref())?, "N", &u)?;
    Ok(Summary { spec: Some((&spec).into()), rows, discrepancy: 0.0 })
}

fn moments(args: &MomentArgs) -> CliResult<Summary> {
    let shared = &args.shared;
    let spec = shared.spec()?;
    let deltas = args.delta.as_ref().ok_or_else(|| CliError::usage("missing --delta"))?.points();
    let cfg = SolveConfig { tol: shared.tol.unwrap_or(SolveConfig::default().tol), ..SolveConfig::default() };
    let jobs: Vec<(f64, f64)> = shared.times().into_iter().flat_map(|t| deltas.iter().map(move |&d| (t, d))).collect();
    let values: Vec<(f64, f64)> = jobs
        .par_iter()
        .map(|&(t, delta)| {
            let q = MomentQuery::for_spec(delta, &spec);
            let ctx = |e: CoreError| CliError::from(e).context(format!("δ = {delta}, t = {t}"));
            Ok((moment_formula(&spec, q, t).map_err(ctx)?, moment_quadrature(&spec, q, t, &cfg).map_err(ctx)?))
        })
        .collect::<CliResult<_>>()?;
    let [a, b, e] = spec_columns(&spec);
    let mut worst: f64 = 0.0;
    let rows: Vec<Vec<String>> = jobs
        .iter()
        .zip(&values)
        .map(|(&(t, delta), &(formula, quad))| {
            let diff = (quad - formula).abs() / formula.abs();
            worst = worst.max(diff);
            vec![num(t), a.clone(), b.clone(), e.clone(), num(delta), num(formula), num(quad), num(diff)]
        })
        .collect();
    let header = ["t", "alpha", "beta", "eta", "delta", "formula", "quadrature", "rel_diff"];
    let rows = write_csv(sink(shared.out.as_deref())?, &header, &rows)?;
    Ok(Summary { spec: Some((&spec).into()), rows, discrepancy: worst })
}

fn asymptotics(shared: &Shared) -> CliResult<Summary> {
    let spec = shared.spec()?;
    let points = sample_points(shared)?;
    let alpha = spec.alpha();
    let mut fits = Vec::new();
    for t in shared.times() {
        let small = match small_x_behavior(&spec, t) {
            Ok(s) => Some(s),
            Err(CoreError::Regime) => None,
            Err(e) => return Err(e.into()),
        };
        fits.push((t, small, large_x_behavior(&spec, t)?));
    }
    let values: Vec<Option<f64>> = points
        .par_iter()
        .map(|&(t, x)| match green(Kernel::G1, &spec, x, t, shared.route()) {
            Ok(v) => Ok(Some(v.value)),
            Err(CoreError::SingularAtOrigin) => Ok(None),
            Err(e) => Err(CliError::from(e).context(at(t, x))),
        })
        .collect::<CliResult<_>>()?;
    let [a, b, e] = spec_columns(&spec);
    let rows: Vec<Vec<String>> = points
        .iter()
        .zip(&values)
        .map(|(&(t, x), v)| {
            let (_, small, large) = fits.iter().find(|f| f.0 == t).expect("every time has a fit");
            let y = x.abs();
            let small_x = small.and_then(|s| {
                let tail = if s.b == 0.0 { 0.0 } else { s.b * y.powf(alpha - 1.0) };
                tail.is_finite().then_some(s.a + tail)
            });
            let large_x = large.filter(|_| y > 0.0).map(|l| l.coefficient * y.powf(l.exponent));
            vec![num(x), num(t), a.clone(), b.clone(), e.clone(), opt_num(*v), opt_num(small_x), opt_num(large_x)]
        })
        .collect();
    for (t, small, large) in &fits {
        let small = small.map_or("undefined at α = 1".into(), |s| format!("A = {:.6e}, B = {:.6e}", s.a, s.b));
        let large = large.map_or("no algebraic tail".into(), |l| format!("C = {:.6e}, exponent {:.6}", l.coefficient, l.exponent));
        eprintln!("t = {t}: small |x|: {small}; large |x|: {large}");
    }
    let header = ["x", "t", "alpha", "beta", "eta", "value", "small_x", "large_x"];
    let rows = write_csv(sink(shared.out.as_deref())?, &header, &rows)?;
    Ok(Summary { spec: Some((&spec).into()), rows, discrepancy: 0.0 })
}

fn validate(args: &ValidateArgs) -> CliResult<(Summary, CliResult<()>)> {
    let picked = suites::select(args.suite.as_deref())
        .ok_or_else(|| CliError::usage(format!("unknown suite `{}`", args.suite.as_deref().unwrap_or_default())))?;
    let mut out = sink(args.shared.out.as_deref())?;
    let mut failed = Vec::new();
    let mut discrepancy: f64 = 0.0;
    for suite in &picked {
        let outcome = suite.run();
        writeln!(out, "{outcome}")?;
        out.flush()?;
        if !outcome.passed() {
            failed.push(suite.name);
        }
        if suite.name == "routes" {
            discrepancy = outcome.discrepancy();
        }
    }
    let total = picked.len();
    writeln!(out, "{} of {total} suites passed", total - failed.len())?;
    out.flush()?;
    let verdict = if failed.is_empty() { Ok(()) } else { Err(CliError::validation(format!("failed: {}", failed.join(", ")))) };
    Ok((Summary { spec: None, rows: total, discrepancy }, verdict))
}

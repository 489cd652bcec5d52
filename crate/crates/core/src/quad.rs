//! Quadrature building blocks shared by the kernels, moments and oracles.
//!
//! - [`integrate`]: globally adaptive 21-point Gauss-Kronrod on a finite
//!   interval (QUADPACK-style error estimate, bisection of the worst panel).
//! - [`gauss_legendre`]: nodes and weights for fixed-order panels.
//! - [`Epsilon`]: Wynn's ε-algorithm for accelerating partial sums.
//! - [`cosine_integral`]: ∫₀^∞ f(κ) cos(κy) dκ for slowly decaying f, done by
//!   half-period panels plus ε-extrapolation of the partial sums.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::{Error, Result};

/// Kronrod abscissae (positive half, descending; the last one is the centre).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_335_612,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
/// 10-point Gauss weights for the odd-indexed Kronrod abscissae.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Accuracy request for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Absolute error target.
    pub abs: f64,
    /// Relative error target.
    pub rel: f64,
    /// Maximum number of panels before giving up.
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-13, rel: 1e-11, max_panels: 400 }
    }
}

impl Tolerance {
    /// Tolerance with the given absolute and relative targets.
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel, ..Self::default() }
    }

    /// Same targets, different panel budget.
    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }
}

/// Value of an integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    /// Integral estimate.
    pub value: f64,
    /// Estimated absolute error.
    pub abs_err: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// One 21-point Gauss-Kronrod panel: (Kronrod value, error estimate).
fn gk21<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx)?;
        let f2 = f(centre + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    if !value.is_finite() {
        return Err(Error::NonConvergence { what: "quadrature (non-finite integrand)", estimate: f64::INFINITY });
    }
    Ok((value, err.max(50.0 * f64::EPSILON * value.abs())))
}

/// Globally adaptive Gauss-Kronrod quadrature of a fallible integrand on a
/// finite interval.
///
/// Integrable endpoint singularities are fine: the rule never samples the
/// endpoints and bisection concentrates panels there.
///
/// # Errors
/// Propagates integrand errors; [`Error::NonConvergence`] when the panel
/// budget runs out before the tolerance is met.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(QuadResult { value: 0.0, abs_err: 0.0, evaluations: 0 });
    }
    let (value, err) = gk21(&mut f, a, b)?;
    let mut panels: Vec<Panel> = alloc::vec![Panel { a, b, value, err }];
    let mut evaluations = 21;
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        let target = tol.abs.max(tol.rel * total.abs());
        if total_err <= target {
            return Ok(QuadResult { value: total, abs_err: total_err, evaluations });
        }
        if panels.len() >= tol.max_panels {
            return Err(Error::NonConvergence { what: "adaptive quadrature", estimate: total_err });
        }
        let (worst, _) = panels.iter().enumerate().max_by(|x, y| x.1.err.total_cmp(&y.1.err)).expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            // Interval can no longer be split in floating point.
            return Err(Error::NonConvergence { what: "adaptive quadrature", estimate: total_err });
        }
        let (v1, e1) = gk21(&mut f, p.a, mid)?;
        let (v2, e2) = gk21(&mut f, mid, p.b)?;
        evaluations += 42;
        panels.push(Panel { a: p.a, b: mid, value: v1, err: e1 });
        panels.push(Panel { a: mid, b: p.b, value: v2, err: e2 });
    }
}

/// Infallible-integrand convenience wrapper around [`integrate`].
pub fn integrate_fn<F>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    integrate(|x| Ok(f(x)), a, b, tol)
}

/// Gauss-Legendre nodes and weights on [−1, 1], computed by Newton iteration
/// on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = x;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Wynn's ε-algorithm over a growing sequence of partial sums.
///
/// Push partial sums one at a time; [`Epsilon::estimate`] returns the deepest
/// even-column entry of the ε-table together with the change from the
/// previous estimate, which serves as the error proxy.
#[derive(Debug, Clone, Default)]
pub struct Epsilon {
    sums: Vec<f64>,
    history: Vec<f64>,
}

impl Epsilon {
    /// Keep at most this many trailing partial sums in the table.
    const WINDOW: usize = 40;

    /// Empty table.
    pub fn new() -> Self {
        Self::default()
    }

    /// Append the next partial sum and return the updated estimate.
    pub fn push(&mut self, s: f64) -> (f64, f64) {
        self.sums.push(s);
        if self.sums.len() > Self::WINDOW {
            self.sums.remove(0);
        }
        let est = self.extrapolate();
        let err = match self.history.last() {
            Some(&prev) => (est - prev).abs(),
            None => f64::INFINITY,
        };
        self.history.push(est);
        (est, err)
    }

    /// Number of partial sums pushed so far.
    pub fn len(&self) -> usize {
        self.history.len()
    }

    /// `true` before the first push.
    pub fn is_empty(&self) -> bool {
        self.history.is_empty()
    }

    fn extrapolate(&self) -> f64 {
        let n = self.sums.len();
        let mut prev: Vec<f64> = alloc::vec![0.0; n + 1];
        let mut cur: Vec<f64> = self.sums.clone();
        let mut best = *self.sums.last().expect("non-empty");
        let mut column = 0;
        while cur.len() > 1 {
            let mut next = Vec::with_capacity(cur.len() - 1);
            for i in 0..cur.len() - 1 {
                let diff = cur[i + 1] - cur[i];
                if diff == 0.0 || !diff.is_finite() {
                    // Converged or degenerate column; stop at the last good estimate.
                    return best;
                }
                next.push(prev[i + 1] + 1.0 / diff);
            }
            prev = cur;
            cur = next;
            column += 1;
            if column % 2 == 0 {
                let candidate = *cur.last().expect("non-empty");
                if !candidate.is_finite() {
                    return best;
                }
                best = candidate;
            }
        }
        best
    }
}

/// Options for [`cosine_integral`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineOptions {
    /// Absolute error target for the whole integral.
    pub abs: f64,
    /// Relative error target.
    pub rel: f64,
    /// Start of the periodic panel sequence; [0, warmup] is integrated
    /// adaptively as a single block of periods.
    pub warmup: f64,
    /// Maximum number of half-period panels in the tail.
    pub max_panels: usize,
}

impl Default for CosineOptions {
    fn default() -> Self {
        Self { abs: 1e-13, rel: 1e-10, warmup: 4.0, max_panels: 4000 }
    }
}

/// ∫₀^∞ f(κ) cos(κy) dκ for an integrand that decays (possibly only
/// algebraically) and may be singular-but-integrable at κ = 0.
///
/// For y > 0 the tail is cut at the zeros of cos(κy); each half-period panel
/// is integrated adaptively and the partial sums are accelerated with the
/// ε-algorithm. At y = 0 the integral is split at κ = 1 and the upper half
/// mapped onto (0, 1] by κ = 1/u.
///
/// # Errors
/// Propagates integrand errors; [`Error::NonConvergence`] if the tail cannot
/// be summed to the requested accuracy.
pub fn cosine_integral<F>(mut f: F, y: f64, opts: CosineOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let y = y.abs();
    let panel_tol = Tolerance::new(opts.abs * 0.05, opts.rel * 0.05).with_max_panels(200);
    if y == 0.0 {
        let head = integrate(&mut f, 0.0, 1.0, panel_tol.with_max_panels(600))?;
        let tail = integrate(
            |u| {
                if u == 0.0 {
                    return Ok(0.0);
                }
                Ok(f(1.0 / u)? / (u * u))
            },
            0.0,
            1.0,
            panel_tol.with_max_panels(600),
        )?;
        return Ok(QuadResult {
            value: head.value + tail.value,
            abs_err: head.abs_err + tail.abs_err,
            evaluations: head.evaluations + tail.evaluations,
        });
    }

    let half_period = PI / y;
    let start = half_period * (opts.warmup / half_period).ceil().max(1.0);
    let mut g = |k: f64| -> Result<f64> { Ok(f(k)? * (k * y).cos()) };

    // Head: [0, min(1, start)] carries the κ = 0 behaviour, the rest is split
    // on half periods so each panel sees at most one sign change.
    let mut value = 0.0;
    let mut abs_err = 0.0;
    let mut evaluations = 0;
    let first = start.min(1.0);
    let r = integrate(&mut g, 0.0, first, panel_tol.with_max_panels(600))?;
    value += r.value;
    abs_err += r.abs_err;
    evaluations += r.evaluations;
    let mut a = first;
    while a < start {
        let b = (half_period * ((a / half_period).floor() + 1.0)).min(start);
        let b = if b <= a { (a + half_period).min(start) } else { b };
        let r = integrate(&mut g, a, b, panel_tol)?;
        value += r.value;
        abs_err += r.abs_err;
        evaluations += r.evaluations;
        a = b;
    }

    let mut eps = Epsilon::new();
    let mut partial = value;
    let mut negligible = 0;
    let mut settled = 0;
    let mut last_estimate = partial;
    for j in 0..opts.max_panels {
        let lo = start + j as f64 * half_period;
        let r = integrate(&mut g, lo, lo + half_period, panel_tol)?;
        evaluations += r.evaluations;
        abs_err += r.abs_err;
        partial += r.value;
        let (estimate, change) = eps.push(partial);
        let target = opts.abs.max(opts.rel * estimate.abs());

        if r.value.abs() <= 0.01 * target {
            negligible += 1;
            if negligible >= 3 {
                return Ok(QuadResult { value: partial, abs_err: abs_err + r.value.abs(), evaluations });
            }
        } else {
            negligible = 0;
        }
        if j >= 6 && change <= target {
            settled += 1;
            if settled >= 3 {
                return Ok(QuadResult { value: estimate, abs_err: abs_err + change, evaluations });
            }
        } else {
            settled = 0;
        }
        last_estimate = estimate;
    }
    Err(Error::NonConvergence { what: "oscillatory cosine integral", estimate: (partial - last_estimate).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rule_is_exact_for_high_degree_polynomials() {
        // K21 integrates degree 31 exactly; G10 degree 19.
        for deg in [0, 5, 19, 31] {
            let (v, _) = gk21(&mut |x: f64| Ok(x.powi(deg)), 0.0, 1.0).unwrap();
            assert!((v - 1.0 / (deg as f64 + 1.0)).abs() < 1e-15, "degree {deg}");
        }
        let mut gauss_only = 0.0;
        for j in 0..5 {
            let x = XGK[2 * j + 1];
            gauss_only += WG[j] * 2.0 * x.powi(18);
        }
        assert!((gauss_only - 2.0 / 19.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let r = integrate_fn(|x| 1.0 / x.sqrt(), 0.0, 1.0, Tolerance::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10);
        let r = integrate_fn(|x| x.ln(), 0.0, 1.0, Tolerance::default()).unwrap();
        assert!((r.value + 1.0).abs() < 1e-10);
    }

    #[test]
    fn gauss_legendre_weights_sum_to_two() {
        for n in [1, 2, 7, 20, 64] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n = {n}");
            let m4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
            if n >= 3 {
                assert!((m4 - 0.4).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn epsilon_accelerates_alternating_series() {
        // ln 2 = 1 − 1/2 + 1/3 − …
        let mut eps = Epsilon::new();
        let mut s = 0.0;
        let mut est = 0.0;
        for k in 1..=20 {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            est = eps.push(s).0;
        }
        assert!((est - core::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn cosine_integral_of_algebraic_and_exponential_integrands() {
        // ∫ cos(κy)/(1+κ²) dκ = (π/2) e^{−y}
        for y in [0.5, 1.0, 3.0] {
            let r = cosine_integral(|k| Ok(1.0 / (1.0 + k * k)), y, CosineOptions::default()).unwrap();
            assert!((r.value - PI / 2.0 * (-y).exp()).abs() < 1e-11, "y = {y}: {}", r.value);
        }
        // ∫ cos(κy) e^{−κ} dκ = 1/(1+y²)
        let r = cosine_integral(|k| Ok((-k).exp()), 2.0, CosineOptions::default()).unwrap();
        assert!((r.value - 0.2).abs() < 1e-12);
        let r = cosine_integral(|k| Ok(1.0 / (1.0 + k * k)), 0.0, CosineOptions::default()).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-11);
    }
}

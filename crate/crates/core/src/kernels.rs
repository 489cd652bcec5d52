//! Green's functions and the fundamental solution of
//! ∂^β N/∂t^β = η ∂^α N/∂|x|^α on the whole line.
//!
//! With c = (η t^β)^{1/α} and the similarity variable y = |x|/c,
//!
//! ```text
//! G_1(x,t) = (1/π) ∫₀^∞ cos(kx) E_{β,1}(−η k^α t^β) dk
//!          = 1/(α|x|) · H^{2,1}_{3,3}[ y | (1,1/α),(1,β/α),(1,1/2) ; (1,1),(1,1/α),(1,1/2) ]
//! G_2(x,t) = (1/π) ∫₀^∞ cos(kx) E_{β,β}(−η k^α t^β) dk
//!          = 1/(α|x|) · H^{2,1}_{3,3}[ y | (1,1/α),(β,β/α),(1,1/2) ; (1,1),(1,1/α),(1,1/2) ]
//! ```
//!
//! The fundamental solution (delta initial data) is G_1. Every kernel can be
//! evaluated by four independent routes, see [`Route`].

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::fox_h::{self, residues, ContourSpec, HParams, SeriesStop, Side};
use crate::quad::{cosine_integral, CosineOptions};
use crate::special_fn::{mittag_leffler, MLParams};
use crate::{Error, Result};

/// Physical parameters (α, β, η) of one fractional diffusion problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    alpha: f64,
    beta: f64,
    eta: f64,
}

impl KernelSpec {
    /// Validated constructor: 0 < α ≤ 2, 0 < β ≤ 2, η > 0.
    ///
    /// # Errors
    /// [`Error::InvalidParameter`] naming the offending field.
    pub fn new(alpha: f64, beta: f64, eta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::invalid("alpha", alpha, "0 < alpha <= 2"));
        }
        if !(beta > 0.0 && beta <= 2.0) {
            return Err(Error::invalid("beta", beta, "0 < beta <= 2"));
        }
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::invalid("eta", eta, "a finite value > 0"));
        }
        Ok(Self { alpha, beta, eta })
    }

    /// Space-fractional order α.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Time-fractional order β.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Diffusion coefficient η.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// `true` when the fundamental solution is a probability density
    /// (β ≤ 1), so normalisation and positivity apply.
    pub fn is_subdiffusive(&self) -> bool {
        self.beta <= 1.0
    }

    /// Length scale c = (η t^β)^{1/α}.
    pub fn length_scale(&self, t: f64) -> f64 {
        (self.eta * t.powf(self.beta)).powf(1.0 / self.alpha)
    }

    /// Fourier symbol λ(k) = η|k|^α.
    pub fn symbol(&self, k: f64) -> f64 {
        self.eta * k.abs().powf(self.alpha)
    }
}

/// Which Green's function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// G_1, propagator of the initial value f; equals the fundamental solution.
    G1,
    /// G_2, propagator of the source term.
    G2,
}

impl Kernel {
    /// Second Mittag-Leffler parameter of the Fourier symbol.
    fn ml_beta(self, spec: &KernelSpec) -> f64 {
        match self {
            Kernel::G1 => 1.0,
            Kernel::G2 => spec.beta,
        }
    }
}

/// Evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Residue series in ascending powers; valid for y^α ≤ 1.
    SeriesSmall,
    /// Residue series in descending powers; valid for y^α ≥ 1.
    SeriesLarge,
    /// Mellin-Barnes quadrature along a vertical line; x ≠ 0.
    Contour,
    /// Fourier-cosine quadrature of the Mittag-Leffler symbol.
    Fourier,
    /// Closed-form Gaussian, only at α = 2, β = 1.
    Gaussian,
    /// Pick a route: the Gaussian where it applies, otherwise the series for
    /// the region, falling back to the contour and then to Fourier.
    Auto,
}

impl Route {
    /// Lower-case name used in CSV output and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Route::SeriesSmall => "series_small",
            Route::SeriesLarge => "series_large",
            Route::Contour => "contour",
            Route::Fourier => "fourier",
            Route::Gaussian => "gaussian",
            Route::Auto => "auto",
        }
    }
}

impl core::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "series_small" => Route::SeriesSmall,
            "series_large" => Route::SeriesLarge,
            "contour" => Route::Contour,
            "fourier" => Route::Fourier,
            "gaussian" => Route::Gaussian,
            "auto" => Route::Auto,
            _ => return Err(Error::InvalidHParams(alloc::format!("unknown route `{s}`"))),
        })
    }
}

/// A kernel value with its error estimate and the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    /// The value.
    pub value: f64,
    /// Estimated absolute error.
    pub err_est: f64,
    /// Route actually used (never [`Route::Auto`]).
    pub route: Route,
}

/// The H-function parameter block of G_1 or G_2.
pub fn hparams(kind: Kernel, spec: &KernelSpec) -> HParams {
    let (a, b) = (spec.alpha, spec.beta);
    let second = match kind {
        Kernel::G1 => (1.0, b / a),
        Kernel::G2 => (b, b / a),
    };
    HParams::new(2, 1, alloc::vec![(1.0, 1.0 / a), second, (1.0, 0.5)], alloc::vec![(1.0, 1.0), (1.0, 1.0 / a), (1.0, 0.5)])
        .expect("kernel parameter blocks always satisfy the pole-separation condition")
}

/// Accuracy a series partial sum must reach to be accepted.
const SERIES_REL_TOL: f64 = 1e-10;
/// Smallest κ(y) at which [`Route::Auto`] trusts an asymptotic right series.
const ASYMPTOTIC_SCALE: f64 = 200.0;
/// Residue budget for the series routes.
const SERIES_TERMS: usize = 600;

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("t", t, "a finite value > 0"))
    }
}

/// G_1 or G_2 at (x, t) by the requested route.
///
/// # Errors
/// [`Error::Region`] when a series route is asked for outside its region
/// (or the contour route at x = 0), [`Error::NonConvergence`] when a route
/// misses its accuracy target, [`Error::SingularAtOrigin`] where the kernel is
/// infinite at x = 0.
pub fn green(kind: Kernel, spec: &KernelSpec, x: f64, t: f64, route: Route) -> Result<KernelValue> {
    check_t(t)?;
    if !x.is_finite() {
        return Err(Error::invalid("x", x, "a finite position"));
    }
    let c = spec.length_scale(t);
    let y = x.abs() / c;
    let similarity = y.powf(spec.alpha);
    let gaussian_case = spec.alpha == 2.0 && spec.beta == 1.0;
    match route {
        Route::Gaussian => {
            if !gaussian_case {
                return Err(Error::Region { route: "gaussian", similarity });
            }
            let v = (-y * y / 4.0).exp() / (2.0 * c * PI.sqrt());
            Ok(KernelValue { value: v, err_est: 4.0 * f64::EPSILON * v, route })
        }
        Route::SeriesSmall => {
            if similarity > 1.0 {
                return Err(Error::Region { route: "series_small", similarity });
            }
            series_small(kind, spec, y, c)
        }
        Route::SeriesLarge => {
            if similarity < 1.0 {
                return Err(Error::Region { route: "series_large", similarity });
            }
            series_large(kind, spec, y, c)
        }
        Route::Contour => {
            if y == 0.0 {
                return Err(Error::Region { route: "contour", similarity });
            }
            let h = hparams(kind, spec);
            let v = fox_h::eval_contour(&h, y, ContourSpec::auto(&h, y)?)?;
            let scale = 1.0 / (spec.alpha * c * y);
            Ok(KernelValue { value: v.value * scale, err_est: v.err_est * scale, route })
        }
        Route::Fourier => fourier(kind, spec, y, c),
        Route::Auto => {
            if gaussian_case && kind == Kernel::G1 {
                return green(kind, spec, x, t, Route::Gaussian);
            }
            // Past y^α = 1 the right series is asymptotic when μ > 0 and
            // blind to exponentially small terms until κ(y) is large.
            let first = if similarity <= 1.0 {
                Route::SeriesSmall
            } else if y > 0.0 && hparams(kind, spec).exponential_scale(y) < ASYMPTOTIC_SCALE {
                Route::Contour
            } else {
                Route::SeriesLarge
            };
            match green(kind, spec, x, t, first) {
                Ok(v) => Ok(v),
                Err(Error::SingularAtOrigin) => Err(Error::SingularAtOrigin),
                Err(_) if y > 0.0 && first != Route::Contour => match green(kind, spec, x, t, Route::Contour) {
                    Ok(v) => Ok(v),
                    Err(_) => green(kind, spec, x, t, Route::Fourier),
                },
                Err(_) => green(kind, spec, x, t, Route::Fourier),
            }
        }
    }
}

fn accept(sum: fox_h::SeriesSum, scale: f64, what: &'static str, route: Route) -> Result<KernelValue> {
    let err = sum.err_est();
    if sum.stop != SeriesStop::Empty && err > SERIES_REL_TOL * sum.value.abs() {
        return Err(Error::NonConvergence { what, estimate: err * scale });
    }
    Ok(KernelValue { value: sum.value * scale, err_est: err * scale, route })
}

fn series_small(kind: Kernel, spec: &KernelSpec, y: f64, c: f64) -> Result<KernelValue> {
    let h = hparams(kind, spec);
    let scale = 1.0 / (spec.alpha * c);
    if y == 0.0 {
        return value_at_origin(&h, scale);
    }
    // Sum residue terms of H(y)/y directly so the 1/|x| prefactor never
    // meets a 0/0 near the origin.
    let sum = fox_h::sum_residues(&h, Side::Left, y, SERIES_TERMS, -1.0)?;
    accept(sum, scale, "small-argument residue series", Route::SeriesSmall)
}

fn series_large(kind: Kernel, spec: &KernelSpec, y: f64, c: f64) -> Result<KernelValue> {
    let h = hparams(kind, spec);
    let scale = 1.0 / (spec.alpha * c);
    let sum = fox_h::sum_residues(&h, Side::Right, y, SERIES_TERMS, -1.0)?;
    if sum.stop == SeriesStop::Empty {
        return Err(Error::NonConvergence { what: "large-argument residue series (no poles)", estimate: 0.0 });
    }
    accept(sum, scale, "large-argument residue series", Route::SeriesLarge)
}

/// lim_{y→0} H(y)/y from the residue at ξ = −1; infinite if any residue
/// lies right of ξ = −1.
fn value_at_origin(h: &HParams, scale: f64) -> Result<KernelValue> {
    for r in residues(h, Side::Left) {
        let r = r?;
        if r.xi < -1.0 - 1e-8 {
            break;
        }
        if r.log_coeff.is_none() {
            continue;
        }
        if r.xi > -1.0 + 1e-8 {
            return Err(Error::SingularAtOrigin);
        }
        let v = r.coeff() * scale;
        return Ok(KernelValue { value: v, err_est: 8.0 * f64::EPSILON * v.abs(), route: Route::SeriesSmall });
    }
    Ok(KernelValue { value: 0.0, err_est: 0.0, route: Route::SeriesSmall })
}

fn fourier(kind: Kernel, spec: &KernelSpec, y: f64, c: f64) -> Result<KernelValue> {
    let b = kind.ml_beta(spec);
    let (alpha, beta) = (spec.alpha, spec.beta);
    if y == 0.0 {
        // ∫ E_{β,b}(−κ^α) dκ needs an integrable tail; E ~ κ^{−α}/Γ(b−β)
        // unless that coefficient vanishes (b = β), then ~ κ^{−2α}.
        let tail_power = if beta == 1.0 && b == 1.0 {
            f64::INFINITY
        } else if (b - beta).abs() < 1e-15 {
            2.0 * alpha
        } else {
            alpha
        };
        if tail_power <= 1.0 {
            return Err(Error::SingularAtOrigin);
        }
    }
    let p = MLParams::new(beta, b)?;
    let symbol = |k: f64| -> Result<f64> {
        if k == 0.0 {
            return Ok(crate::special_fn::rgamma_real(b));
        }
        let u = k.powf(alpha);
        if beta == 1.0 && b == 1.0 {
            return Ok((-u).exp());
        }
        Ok(mittag_leffler(p, Complex64::new(-u, 0.0))?.re)
    };
    let r = cosine_integral(symbol, y, CosineOptions::default())?;
    let scale = 1.0 / (PI * c);
    Ok(KernelValue { value: r.value * scale, err_est: r.abs_err * scale, route: Route::Fourier })
}

/// G_1(x, t) by Fourier-cosine quadrature of E_{β,1}(−η|k|^α t^β).
///
/// # Errors
/// As [`green`].
pub fn green_g1(spec: &KernelSpec, x: f64, t: f64) -> Result<f64> {
    Ok(green(Kernel::G1, spec, x, t, Route::Fourier)?.value)
}

/// G_2(x, t) by Fourier-cosine quadrature of E_{β,β}(−η|k|^α t^β).
///
/// # Errors
/// As [`green`].
pub fn green_g2(spec: &KernelSpec, x: f64, t: f64) -> Result<f64> {
    Ok(green(Kernel::G2, spec, x, t, Route::Fourier)?.value)
}

/// The fundamental solution N(x, t) for N(x, 0) = δ(x).
///
/// # Errors
/// As [`green`].
pub fn fundamental_solution(spec: &KernelSpec, x: f64, t: f64, route: Route) -> Result<KernelValue> {
    green(Kernel::G1, spec, x, t, route)
}

/// Leading small-|x| behaviour N ≈ A + B|x|^{α−1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallX {
    /// Constant term A.
    pub a: f64,
    /// Coefficient B of |x|^{α−1}.
    pub b: f64,
}

/// A and B from the residues at ξ = −1 and ξ = −α of the fundamental
/// solution's Mellin-Barnes integrand.
///
/// For 1 < α < 2 the constant A dominates as x → 0; for 0 < α < 1 the
/// |x|^{α−1} term does. Either coefficient is zero when its pole cancels.
///
/// # Errors
/// [`Error::Regime`] at α = 1, where both poles coincide.
pub fn small_x_behavior(spec: &KernelSpec, t: f64) -> Result<SmallX> {
    check_t(t)?;
    if (spec.alpha - 1.0).abs() < 1e-12 {
        return Err(Error::Regime);
    }
    let h = hparams(Kernel::G1, spec);
    let c = spec.length_scale(t);
    let alpha = spec.alpha;
    let deepest = -alpha.max(1.0) - 1e-6;
    let (mut a, mut b) = (0.0, 0.0);
    for r in residues(&h, Side::Left) {
        let r = r?;
        if r.xi < deepest {
            break;
        }
        if (r.xi + 1.0).abs() < 1e-8 {
            a = r.coeff() / (alpha * c);
        } else if (r.xi + alpha).abs() < 1e-8 {
            b = r.coeff() / (alpha * c.powf(alpha));
        }
    }
    Ok(SmallX { a, b })
}

/// Leading large-|x| behaviour N ≈ C|x|^{p}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeX {
    /// Coefficient C.
    pub coefficient: f64,
    /// Exponent p, which is −(1+α) whenever that pole survives.
    pub exponent: f64,
}

/// The first surviving residue on the right of the contour, as a power law
/// in |x|. `None` when every right pole cancels, as for the Gaussian, whose
/// decay is faster than any power.
///
/// # Errors
/// Residue failures for colliding poles.
pub fn large_x_behavior(spec: &KernelSpec, t: f64) -> Result<Option<LargeX>> {
    check_t(t)?;
    let h = hparams(Kernel::G1, spec);
    let c = spec.length_scale(t);
    for r in residues(&h, Side::Right).take(64) {
        let r = r?;
        if r.log_coeff.is_some() {
            // H(y) ≈ c_j y^{−ξ} and N = H(|x|/c)/(α|x|)
            return Ok(Some(LargeX { coefficient: r.coeff() * c.powf(r.xi) / spec.alpha, exponent: -1.0 - r.xi }));
        }
    }
    Ok(None)
}

/// Measured power-law decay of the fundamental solution.
#[derive(Debug, Clone, PartialEq)]
pub struct TailFit {
    /// Least-squares slope of ln N against ln |x|.
    pub exponent: f64,
    /// The (|x|, N) samples used.
    pub samples: Vec<(f64, f64)>,
}

/// Fit the log-log slope of N(x, t) over `points` log-spaced |x| in [lo, hi].
///
/// # Errors
/// Propagates kernel evaluation errors; [`Error::InvalidParameter`] for an
/// empty or inverted range.
pub fn tail_exponent(spec: &KernelSpec, t: f64, lo: f64, hi: f64, points: usize) -> Result<TailFit> {
    if !(lo > 0.0 && hi > lo && points >= 2) {
        return Err(Error::invalid("range", lo, "0 < lo < hi and at least two points"));
    }
    let mut samples = Vec::with_capacity(points);
    for i in 0..points {
        let x = lo * (hi / lo).powf(i as f64 / (points - 1) as f64);
        samples.push((x, fundamental_solution(spec, x, t, Route::Auto)?.value));
    }
    let n = points as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, v) in &samples {
        let (lx, ly) = (x.ln(), v.abs().ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Ok(TailFit { exponent, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::gamma;

    fn spec(a: f64, b: f64) -> KernelSpec {
        KernelSpec::new(a, b, 1.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn spec_validation() {
        assert!(KernelSpec::new(0.0, 1.0, 1.0).is_err());
        assert!(KernelSpec::new(2.1, 1.0, 1.0).is_err());
        assert!(KernelSpec::new(1.0, 0.0, 1.0).is_err());
        assert!(KernelSpec::new(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn gaussian_by_every_route() {
        let s = spec(2.0, 1.0);
        let g = |x: f64| (-x * x / 4.0).exp() / (4.0 * PI).sqrt();
        for x in [0.0, 0.3, 1.0, 2.5] {
            for route in [Route::Auto, Route::Fourier, Route::SeriesSmall, Route::Contour] {
                if (route == Route::Contour && x == 0.0) || (route == Route::SeriesSmall && x > 2.0) {
                    continue;
                }
                let v = fundamental_solution(&s, x, 1.0, route).unwrap();
                assert!((v.value - g(x)).abs() < 1e-10, "{route:?} at {x}: {} vs {}", v.value, g(x));
            }
        }
    }

    #[test]
    fn cauchy_and_stable_values() {
        let s = spec(1.0, 1.0);
        assert!(rel(green_g1(&s, 0.0, 1.0).unwrap(), 1.0 / PI) < 1e-10);
        let v = fundamental_solution(&s, 2.0, 1.0, Route::Auto).unwrap().value;
        assert!(rel(v, 1.0 / (5.0 * PI)) < 1e-10);
        let v = fundamental_solution(&s, 10.0, 1.0, Route::SeriesLarge).unwrap().value;
        assert!(rel(v, 1.0 / (101.0 * PI)) < 1e-10);
        // Stable density at the origin: Γ(1 + 1/α)/π
        let s = spec(1.8, 1.0);
        let v = fundamental_solution(&s, 0.0, 1.0, Route::Auto).unwrap().value;
        assert!(rel(v, 0.283_068_758_591_619) < 1e-10);
    }

    #[test]
    fn reference_values_for_fractional_time() {
        // mpmath quadrature of the cosine integral.
        let s = spec(1.5, 0.5);
        for (x, want) in [(0.3, 0.326_512_139_708_374_3), (1.0, 0.162_019_184_186_927_46), (4.0, 0.016_193_389_147_750_404)] {
            for route in [Route::Auto, Route::Contour, Route::Fourier] {
                let v = fundamental_solution(&s, x, 1.0, route).unwrap().value;
                assert!(rel(v, want) < 1e-8, "{route:?} x={x}: {v} vs {want}");
            }
        }
        let s = spec(0.75, 0.5);
        for (x, want) in [(0.5, 0.177_410_984_333_667_73), (3.0, 0.026_103_229_941_847_233)] {
            for route in [Route::Auto, Route::Contour, Route::Fourier] {
                let v = fundamental_solution(&s, x, 1.0, route).unwrap().value;
                assert!(rel(v, want) < 1e-8, "{route:?} x={x}: {v} vs {want}");
            }
        }
    }

    #[test]
    fn g2_examples() {
        let s = spec(2.0, 0.5);
        let v = green_g2(&s, 0.5, 1.0).unwrap();
        assert!(rel(v, 0.127_828_659_524_514_1) < 1e-8, "{v}");
        let h = green(Kernel::G2, &s, 0.5, 1.0, Route::Contour).unwrap().value;
        assert!(rel(h, v) < 1e-8, "H-form {h} vs cosine {v}");
        let s = spec(1.3, 1.0);
        assert!((green_g1(&s, 0.7, 1.0).unwrap() - green_g2(&s, 0.7, 1.0).unwrap()).abs() < 1e-14);
        assert_eq!(green_g2(&s, -0.7, 2.0).unwrap(), green_g2(&s, 0.7, 2.0).unwrap());
    }

    #[test]
    fn series_routes_respect_regions() {
        let s = spec(1.5, 1.0);
        assert!(matches!(fundamental_solution(&s, 5.0, 1.0, Route::SeriesSmall), Err(Error::Region { .. })));
        assert!(matches!(fundamental_solution(&s, 0.1, 1.0, Route::SeriesLarge), Err(Error::Region { .. })));
        assert!(matches!(fundamental_solution(&s, 0.0, 1.0, Route::Contour), Err(Error::Region { .. })));
    }

    #[test]
    fn small_x_coefficients() {
        let s = spec(2.0, 1.0);
        let r = small_x_behavior(&s, 1.0).unwrap();
        assert!(rel(r.a, 1.0 / (4.0 * PI).sqrt()) < 1e-13);
        assert_eq!(r.b, 0.0);
        let s = spec(1.5, 1.0);
        let r = small_x_behavior(&s, 1.0).unwrap();
        assert!(rel(r.a, gamma(5.0 / 3.0) / PI) < 1e-13);
        // 0 < α < 1: the |x|^{α−1} coefficient.
        let s = spec(0.5, 0.5);
        let r = small_x_behavior(&s, 1.0).unwrap();
        assert!(rel(r.b, 0.225_079_079_039_276_5) < 1e-12, "{r:?}");
        assert_eq!(small_x_behavior(&spec(1.0, 0.5), 1.0), Err(Error::Regime));
    }

    #[test]
    fn leading_tail() {
        // symmetric stable law: Γ(1+α) sin(πα/2)/π · ηt · |x|^{−1−α}
        let s = spec(1.5, 1.0);
        let l = large_x_behavior(&s, 2.0).unwrap().unwrap();
        assert!((l.exponent + 2.5).abs() < 1e-14);
        assert!(rel(l.coefficient, 2.0 * gamma(2.5) * (0.75 * PI).sin() / PI) < 1e-12, "{l:?}");
        let far = fundamental_solution(&s, 1e3, 2.0, Route::Auto).unwrap().value;
        assert!(rel(far, l.coefficient * 1e3f64.powf(l.exponent)) < 1e-3);
        assert_eq!(large_x_behavior(&spec(2.0, 1.0), 1.0).unwrap(), None);
    }

    #[test]
    fn origin_singularity_is_reported() {
        let s = spec(0.5, 0.5);
        assert_eq!(fundamental_solution(&s, 0.0, 1.0, Route::Auto), Err(Error::SingularAtOrigin));
        assert_eq!(fundamental_solution(&s, 0.0, 1.0, Route::Fourier), Err(Error::SingularAtOrigin));
    }

    #[test]
    fn auto_avoids_asymptotic_series_near_the_crossover() {
        // y ≈ 8 with μ ≈ 0.48: the right series stops at terms of 1e-14 yet
        // misses e^{−κ cos φ} terms of relative size 1e-8.
        let s = spec(1.2000230294888623, 0.6293531982328211);
        let x = 8.115588508411653;
        let auto = fundamental_solution(&s, x, 1.0, Route::Auto).unwrap();
        let fourier = fundamental_solution(&s, x, 1.0, Route::Fourier).unwrap();
        assert_eq!(auto.route, Route::Contour);
        assert!((auto.value - fourier.value).abs() < 1e-11 * fourier.value);
        let far = fundamental_solution(&s, 1e4, 1.0, Route::Auto).unwrap();
        assert_eq!(far.route, Route::SeriesLarge);
    }
}

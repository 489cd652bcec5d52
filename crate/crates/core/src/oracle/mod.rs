//! Reference machinery that shares as little as possible with the analytic
//! routes it is meant to check.
//!
//! - [`weyl_apply`]: the Riesz-Weyl operator as the Fourier multiplier −|k|^μ
//!   on a padded grid; [`weyl_apply_periodic`] on a periodic one.
//! - [`TimeStepPlan`] / [`caputo_l1_step`]: an L1 Caputo time stepper with
//!   that spectral space operator, and [`evolve`] to drive it.
//! - [`talbot_invert`]: numerical inverse Laplace transform on a fixed
//!   cotangent contour, with [`laplace_transform`] for round trips.
//! - [`stable_density`]: symmetric α-stable densities by direct panel
//!   quadrature of the characteristic function.
//! - [`rl_integral`]: Riemann-Liouville fractional integrals by quadrature.

mod stepper;
mod talbot;

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::field::{PeriodicEmbedding, SampledField, DEFAULT_BOUNDARY_FLOOR};
use crate::quad::{gauss_legendre, integrate, Tolerance};
use crate::special_fn::{gamma, rgamma_real};
use crate::{Error, Result};

pub use stepper::{caputo_l1_step, evolve, l1_mode, TimeStepPlan};
pub use talbot::{laplace_transform, talbot_invert, TALBOT_NODES, TALBOT_SCALE};

/// Relative spectral energy above which [`WeylOutput::aliased`] reports true.
pub const ALIASING_THRESHOLD: f64 = 1e-8;

/// Result of [`weyl_apply`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeylOutput {
    /// The transformed field on the input grid.
    pub field: SampledField,
    /// Fraction of the input's spectral energy in the top tenth of the band.
    pub tail_energy: f64,
}

impl WeylOutput {
    /// True when the input was not resolved well enough for the derivative
    /// to be trusted to roughly single precision.
    pub fn aliased(&self) -> bool {
        self.tail_energy > ALIASING_THRESHOLD
    }
}

/// Apply the fractional Laplacian with symbol −|k|^μ.
///
/// The field is zero-padded to four times its length before transforming.
///
/// # Errors
/// [`Error::InvalidParameter`] for μ ≤ 0; [`Error::BoundaryFloor`] when the
/// field has not decayed at the grid edges.
pub fn weyl_apply(mu: f64, field: &SampledField) -> Result<WeylOutput> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::invalid("mu", mu, "mu > 0"));
    }
    field.check_boundary(DEFAULT_BOUNDARY_FLOOR)?;
    let emb = PeriodicEmbedding::new(field.len(), field.dx(), 4, 64);
    let spec = emb.forward(field.values());
    let kn = emb.nyquist();
    let (mut total, mut top) = (0.0, 0.0);
    for (s, &k) in spec.iter().zip(emb.wavenumbers()) {
        let e = s.norm_sqr();
        total += e;
        if k.abs() >= 0.9 * kn {
            top += e;
        }
    }
    let tail_energy = if total > 0.0 { top / total } else { 0.0 };
    let out: Vec<Complex64> = spec
        .into_iter()
        .zip(emb.wavenumbers())
        .map(|(s, &k)| if k == 0.0 { Complex64::new(0.0, 0.0) } else { -s * k.abs().powf(mu) })
        .collect();
    Ok(WeylOutput { field: field.with_values(emb.inverse(out))?, tail_energy })
}

/// The same multiplier with the grid taken as one period of a periodic
/// function, with no padding and no boundary check.
///
/// # Errors
/// [`Error::InvalidParameter`] for μ ≤ 0.
pub fn weyl_apply_periodic(mu: f64, field: &SampledField) -> Result<SampledField> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::invalid("mu", mu, "mu > 0"));
    }
    let n = field.len();
    let mut buf: Vec<Complex64> = field.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    crate::fft::dft(&mut buf, crate::fft::Direction::Forward);
    let k = crate::fft::wavenumbers(n, field.dx());
    for (b, &k) in buf.iter_mut().zip(&k) {
        *b *= if k == 0.0 { 0.0 } else { -k.abs().powf(mu) };
    }
    crate::fft::dft(&mut buf, crate::fft::Direction::Inverse);
    field.with_values(buf.into_iter().map(|c| c.re).collect())
}

/// Similarity variable beyond which [`stable_density`] switches to its
/// large-|x| series.
const STABLE_SERIES_FROM: f64 = 20.0;

/// Symmetric α-stable density (1/π)∫₀^∞ cos(kx) exp(−scale·k^α) dk.
///
/// With c = scale^{1/α} and y = |x|/c, the integral over κ = ck is done on
/// fixed Gauss-Legendre panels (geometrically graded towards κ = 0, then
/// uniform with at most a quarter period each) up to κ^α = 40. For y > 20
/// and α < 2 the convergent-or-asymptotic series
/// Σ (−1)^{n+1} Γ(nα+1)/n! sin(nπα/2) y^{−nα−1} / (πc) is used instead.
///
/// # Errors
/// [`Error::InvalidParameter`] outside 0 < α ≤ 2, scale > 0.
pub fn stable_density(alpha: f64, scale: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid("alpha", alpha, "0 < alpha <= 2"));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::invalid("scale", scale, "scale > 0"));
    }
    if !x.is_finite() {
        return Err(Error::invalid("x", x, "a finite point"));
    }
    let c = scale.powf(1.0 / alpha);
    let y = x.abs() / c;
    if y > STABLE_SERIES_FROM && alpha < 2.0 {
        if let Some(v) = stable_tail_series(alpha, y) {
            return Ok(v / (PI * c));
        }
    }
    Ok(stable_panels(alpha, y) / (PI * c))
}

fn stable_panels(alpha: f64, y: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(20);
    let panel = |a: f64, b: f64| -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        nodes
            .iter()
            .zip(&weights)
            .map(|(&u, &w)| {
                let k = mid + half * u;
                w * (k * y).cos() * (-k.powf(alpha)).exp()
            })
            .sum::<f64>()
            * half
    };
    let kmax = 40f64.powf(1.0 / alpha);
    let mut sum = 0.0;
    // graded panels [2^-(j+1), 2^-j] down to 2^-60 carry the k^α cusp
    let mut hi = 1.0f64.min(kmax);
    for _ in 0..60 {
        sum += panel(0.5 * hi, hi);
        hi *= 0.5;
    }
    let width = if y > 0.0 { (0.5 * PI / y).min(0.5) } else { 0.5 };
    let mut a = 1.0f64.min(kmax);
    while a < kmax {
        let b = (a + width).min(kmax);
        sum += panel(a, b);
        a = b;
    }
    sum
}

/// Large-y series; `None` when the terms stop decreasing before 1e-17 relative.
fn stable_tail_series(alpha: f64, y: f64) -> Option<f64> {
    let ly = y.ln();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for n in 1..400 {
        let nf = n as f64;
        let s = crate::special_fn::sin_pi(nf * alpha / 2.0);
        let log_mag = crate::special_fn::log_gamma_unchecked(Complex64::new(nf * alpha + 1.0, 0.0)).re
            - crate::special_fn::log_gamma_unchecked(Complex64::new(nf + 1.0, 0.0)).re
            - (nf * alpha + 1.0) * ly;
        let mag = log_mag.exp();
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * mag * s;
        sum += term;
        if mag <= 1e-17 * sum.abs() {
            return Some(sum);
        }
        if mag > prev {
            return None;
        }
        prev = mag;
    }
    None
}

/// Riemann-Liouville integral (1/Γ(ν)) ∫₀^t (t−τ)^{ν−1} f(τ) dτ.
///
/// On [t/2, t] the substitution τ = t − w^{1/ν} absorbs the kernel
/// singularity; [0, t/2] is left to adaptive Gauss-Kronrod directly, which
/// copes with integrable singularities of f at τ = 0.
///
/// # Errors
/// [`Error::InvalidParameter`] for ν ≤ 0 or t < 0; quadrature failures.
pub fn rl_integral(f: impl Fn(f64) -> f64, nu: f64, t: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::invalid("nu", nu, "nu > 0"));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", t, "t >= 0"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let tol = Tolerance::new(1e-15, 1e-12).with_max_panels(2000);
    let half = 0.5 * t;
    let near = integrate(|w| Ok(f(t - w.powf(1.0 / nu))), 0.0, half.powf(nu), tol)?;
    let far = integrate(|s| Ok((t - s).powf(nu - 1.0) * f(s)), 0.0, half, tol)?;
    Ok(near.value * rgamma_real(nu + 1.0) + far.value * rgamma_real(nu))
}

/// Γ(μ+1)/Γ(μ+1+ν)·t^{μ+ν}, the Riemann-Liouville integral of t^μ.
pub fn rl_power(mu: f64, nu: f64, t: f64) -> f64 {
    gamma(mu + 1.0) * rgamma_real(mu + 1.0 + nu) * t.powf(mu + nu)
}

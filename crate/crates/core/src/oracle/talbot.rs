//! Bromwich inversion on a fixed cotangent contour.

use num_complex::Complex64;
use num_traits::Float;

use crate::quad::{integrate, Tolerance};
use crate::{Error, Result};

/// Default node count for [`talbot_invert`].
pub const TALBOT_NODES: usize = 64;

/// Size M of the contour s(θ) = (M/t)(…). The node count only refines the
/// quadrature on this fixed contour; rounding is amplified by about
/// e^{0.17 M}, and the contour truncation error is about e^{−1.36 M}.
pub const TALBOT_SCALE: f64 = 28.0;

/// Changes larger than this under node doubling are reported as oscillation.
const DOUBLING_TOL: f64 = 1e-6;

// Weideman-Trefethen optimised cotangent contour
// s(θ) = (M/t)(σ + μ θ cot(νθ) + i ω θ), −π < θ < π.
const SIGMA: f64 = -0.6122;
const MU: f64 = 0.5017;
const NU: f64 = 0.6407;
const OMEGA: f64 = 0.2645;

fn midpoint_rule<F>(f: &F, t: f64, nodes: usize) -> f64
where
    F: Fn(Complex64) -> Complex64,
{
    let n = nodes as f64;
    let h = 2.0 * core::f64::consts::PI / n;
    let scale = TALBOT_SCALE / t;
    let mut sum = 0.0;
    // conjugate symmetry: only θ > 0 is needed, f(t) = (h/π) Σ Im[...]
    for k in 0..nodes / 2 {
        let theta = (k as f64 + 0.5) * h;
        let (sn, cs) = (NU * theta).sin_cos();
        let cot = cs / sn;
        let s = Complex64::new(SIGMA + MU * theta * cot, OMEGA * theta) * scale;
        let ds = Complex64::new(MU * (cot - NU * theta / (sn * sn)), OMEGA) * scale;
        sum += ((s * t).exp() * f(s) * ds).im;
    }
    sum * h / core::f64::consts::PI
}

/// f(t) from its Laplace transform F(s).
///
/// F must be analytic to the right of the contour and real on the real
/// axis; any branch cut belongs on the negative real axis (use principal
/// powers). The result at `nodes` is returned after checking it against
/// `2·nodes`.
///
/// # Errors
/// [`Error::InvalidParameter`] for t ≤ 0 or fewer than 8 nodes;
/// [`Error::Oscillation`] when doubling the nodes moves the result by more
/// than 1e-6 relative to max(1, |f(t)|); [`Error::NonConvergence`] when F
/// returns non-finite values on the contour.
pub fn talbot_invert<F>(f: F, t: f64, nodes: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", t, "t > 0"));
    }
    if nodes < 8 {
        return Err(Error::invalid("nodes", nodes as f64, "at least 8 nodes"));
    }
    let nodes = nodes + nodes % 2;
    let v = midpoint_rule(&f, t, nodes);
    let check = midpoint_rule(&f, t, 2 * nodes);
    if !(v.is_finite() && check.is_finite()) {
        return Err(Error::NonConvergence { what: "Talbot inversion", estimate: f64::INFINITY });
    }
    let change = (v - check).abs();
    if change > DOUBLING_TOL * v.abs().max(1.0) {
        return Err(Error::Oscillation { change });
    }
    Ok(v)
}

/// ∫₀^∞ e^{−st} g(t) dt for complex s, by integrating along the ray on
/// which s·t is real and positive.
///
/// This is the analytic continuation of the transform whenever g extends
/// analytically into the sector between that ray and the positive axis and
/// decays there, which is what lets it reach the left half-plane nodes of
/// the Talbot contour.
///
/// # Errors
/// Quadrature failures and a zero `s`.
pub fn laplace_transform<G>(g: G, s: Complex64) -> Result<Complex64>
where
    G: Fn(Complex64) -> Complex64,
{
    let r = s.norm();
    if r == 0.0 {
        return Err(Error::invalid("s", 0.0, "s != 0"));
    }
    let dir = s.conj() / r; // t = (u/|s|)·dir makes s·t = u
    let tol = Tolerance::new(1e-16, 1e-13).with_max_panels(2000);
    let upper = 80.0;
    let part = |want_im: bool| -> Result<f64> {
        integrate(
            |u| {
                let t = dir * (u / r);
                let v = (-u).exp() * g(t) * dir / r;
                Ok(if want_im { v.im } else { v.re })
            },
            0.0,
            upper,
            tol,
        )
        .map(|q| q.value)
    };
    Ok(Complex64::new(part(false)?, part(true)?))
}

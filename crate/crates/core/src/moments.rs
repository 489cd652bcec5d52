//! Fractional absolute moments ⟨|x|^δ⟩ = ∫ |x|^δ N(x, t) dx of the
//! fundamental solution.
//!
//! The closed form is
//!
//! ```text
//! ⟨|x|^δ⟩ = (2/α)(ηt^β)^{δ/α} Γ(−δ/α)Γ(1+δ)Γ(1+δ/α) / (Γ(−δ/2)Γ(1+βδ/α)Γ(1+δ/2))
//! ```
//!
//! Pairing Γ(−z)Γ(1+z) = −π/sin(πz) turns the two awkward ratios into
//! sin(πδ/2)/sin(πδ/α). That quotient is finite at δ = 0 (where it tends to
//! α/2) and identically 1 at α = 2.

use num_traits::Float;

use crate::fox_h::{residues, Side};
use crate::kernels::{fundamental_solution, hparams, Kernel, KernelSpec, Route};
use crate::quad::{integrate, Tolerance};
use crate::solver::SolveConfig;
use crate::special_fn::{gamma, rgamma_real, sin_pi};
use crate::{Error, Result};

/// A moment order δ together with its admissibility for a given α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuery {
    delta: f64,
    admissible: bool,
}

impl MomentQuery {
    /// Classify δ for the space order `alpha`.
    ///
    /// δ is admissible when δ > −1, δ + α > 0 and the heavy tail still
    /// integrates: δ < α for α < 2, δ ≤ 2 at α = 2.
    pub fn new(delta: f64, alpha: f64) -> Self {
        let upper = if alpha >= 2.0 { delta <= 2.0 } else { delta < alpha };
        let admissible = delta.is_finite() && delta > -1.0 && delta + alpha > 0.0 && upper;
        MomentQuery { delta, admissible }
    }

    /// Shorthand for `MomentQuery::new(delta, spec.alpha())`.
    pub fn for_spec(delta: f64, spec: &KernelSpec) -> Self {
        Self::new(delta, spec.alpha())
    }

    /// The order δ.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Whether the moment integral converges.
    pub fn admissible(&self) -> bool {
        self.admissible
    }
}

/// sin(πδ/2)/sin(πδ/α), with its limits at δ = 0 and α = 2.
fn sine_ratio(delta: f64, alpha: f64) -> Result<f64> {
    if alpha == 2.0 {
        return Ok(1.0);
    }
    if delta == 0.0 {
        return Ok(alpha / 2.0);
    }
    let den = sin_pi(delta / alpha);
    if den == 0.0 {
        return Err(Error::GammaPole { at: -delta / alpha });
    }
    Ok(sin_pi(delta / 2.0) / den)
}

/// The closed-form moment at time `t`.
///
/// # Errors
/// [`Error::Inadmissible`] outside the convergence window;
/// [`Error::InvalidParameter`] for t ≤ 0.
pub fn moment_formula(spec: &KernelSpec, q: MomentQuery, t: f64) -> Result<f64> {
    check_t(t)?;
    let (alpha, beta, delta) = (spec.alpha(), spec.beta(), q.delta);
    if !q.admissible {
        return Err(Error::Inadmissible { delta, alpha });
    }
    let scale = (spec.eta() * t.powf(beta)).powf(delta / alpha);
    let ratio = sine_ratio(delta, alpha)?;
    Ok((2.0 / alpha) * scale * gamma(1.0 + delta) * rgamma_real(1.0 + beta * delta / alpha) * ratio)
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", t, "t > 0"));
    }
    Ok(())
}

/// Termwise ∫ y^δ Σ (c_j/α) y^{−ξ_j−1} dy over [0, y0] (left poles) or
/// [y0, ∞) (right poles). `None` if the terms do not fall below 1e-17 of
/// the sum within the budget. A double pole ends the expansion; the sum so
/// far is kept when the last simple-pole term, carried to the double pole's
/// power, is negligible against a moment of order one.
fn termwise(spec: &KernelSpec, side: Side, delta: f64, y0: f64) -> Result<Option<f64>> {
    let h = hparams(Kernel::G1, spec);
    let ly = y0.ln();
    let mut sum = 0.0;
    let mut quiet = 0;
    let mut any = false;
    let (mut last, mut last_xi) = (f64::INFINITY, 0.0);
    for (i, r) in residues(&h, side).enumerate() {
        if i >= 400 {
            return Ok(None);
        }
        let r = match r {
            Ok(r) => r,
            Err(Error::PoleCollision { xi, .. }) => {
                let carried = last * y0.powf((last_xi - xi).abs());
                return Ok(if any && carried <= 1e-14 { Some(sum / spec.alpha()) } else { None });
            }
            Err(e) => return Err(e),
        };
        let Some(lc) = r.log_coeff else { continue };
        any = true;
        let p = delta - r.xi;
        // ∫₀^{y0} y^{p−1} = y0^p/p on the left, ∫_{y0}^∞ = −y0^p/p on the right
        let term = (lc + p * ly).exp().re / p * if side == Side::Left { 1.0 } else { -1.0 };
        if !term.is_finite() {
            return Ok(None);
        }
        sum += term;
        last = term.abs();
        last_xi = r.xi;
        if term.abs() <= 1e-17 * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(Some(sum / spec.alpha()));
            }
        } else {
            quiet = 0;
            if term.abs() > 1e6 * sum.abs().max(1.0) {
                return Ok(None);
            }
        }
    }
    // a finite residue list (or none at all) is summed exactly
    Ok(if any { Some(sum / spec.alpha()) } else { Some(0.0) })
}

/// Where the head ends and its value.
///
/// Tries the ascending residue series first. At α = 1 with β < 1 the left
/// poles are double, so the series is unusable; the head is then dropped at
/// a y0 where n(y) ~ y^{min(α,1)−1} (with a log factor at α = 1) leaves a
/// negligible remainder and the quadrature runs down to it.
fn head_split(spec: &KernelSpec, delta: f64) -> Result<(f64, f64)> {
    let mut y0 = 0.5;
    while y0 >= 1e-8 {
        if let Some(v) = termwise(spec, Side::Left, delta, y0)? {
            return Ok((y0, v));
        }
        y0 *= 0.5;
    }
    let e = delta + spec.alpha().min(1.0);
    let y0 = 1e-13f64.powf(1.0 / e);
    let remainder = y0.powf(e) * (1.0 - y0.ln()) / e;
    if !(y0 > 1e-200 && remainder < 1e-10) {
        return Err(Error::NonConvergence { what: "moment head", estimate: remainder });
    }
    Ok((y0, 0.0))
}

/// The moment by direct quadrature of |x|^δ N(x, t).
///
/// In the similarity variable y = |x|/(ηt^β)^{1/α} the integral splits into
/// a head [0, y0] and a tail [y1, ∞), both integrated term by term from the
/// residue expansions, and a middle part done by adaptive Gauss-Kronrod in
/// ln y on values of the fundamental solution. When the kernel has no
/// algebraic tail (α = 2) the middle is extended until the integrand is
/// negligible. `cfg.tol` is the relative tolerance of the middle part.
///
/// # Errors
/// [`Error::TailDivergence`] for δ ≥ α < 2; [`Error::Inadmissible`] for
/// other orders outside the window; kernel and quadrature failures.
pub fn moment_quadrature(spec: &KernelSpec, q: MomentQuery, t: f64, cfg: &SolveConfig) -> Result<f64> {
    check_t(t)?;
    let (alpha, delta) = (spec.alpha(), q.delta);
    if alpha < 2.0 && delta >= alpha {
        return Err(Error::TailDivergence { delta, alpha });
    }
    if !q.admissible {
        return Err(Error::Inadmissible { delta, alpha });
    }
    let c = spec.length_scale(t);

    let (y0, head) = head_split(spec, delta)?;

    // n(y) = c·N(cy, t) depends on y only
    let density = |y: f64| -> Result<f64> { Ok(c * fundamental_solution(spec, c * y, t, Route::Auto)?.value) };
    let has_tail = residues(&hparams(Kernel::G1, spec), Side::Right).take(64).any(|r| matches!(r, Ok(r) if r.log_coeff.is_some()));
    let (y1, tail) = if has_tail {
        let mut y1 = 8.0;
        loop {
            if let Some(v) = termwise(spec, Side::Right, delta, y1)? {
                break (y1, v);
            }
            y1 *= 2.0;
            if y1 > 1e6 {
                return Err(Error::NonConvergence { what: "moment tail series", estimate: y1 });
            }
        }
    } else {
        // Stop once the integrand is negligible or the density has sunk to
        // the evaluation's own noise floor; beyond that point y^{δ+1} only
        // amplifies rounding and the quadrature would chase it.
        let mut y1 = 4.0;
        let peak = density(0.0).unwrap_or(1.0).abs().max(1e-300);
        while y1 < 1e4 {
            let v = fundamental_solution(spec, c * y1, t, Route::Auto)?;
            if y1.powf(delta + 1.0) * c * v.value.abs() <= 1e-18 * peak || v.value.abs() <= v.err_est {
                break;
            }
            y1 *= 1.25;
        }
        (y1, 0.0)
    };

    let tol = Tolerance::new(1e-15, cfg.tol.min(1e-6)).with_max_panels(400);
    let middle = integrate(
        |u| {
            let y = u.exp();
            Ok(y.powf(delta + 1.0) * density(y)?)
        },
        y0.ln(),
        y1.ln(),
        tol,
    )?;
    Ok(2.0 * c.powf(delta) * (head + middle.value + tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn spec(a: f64, b: f64) -> KernelSpec {
        KernelSpec::new(a, b, 1.0).unwrap()
    }

    #[test]
    fn admissibility_window() {
        assert!(MomentQuery::new(0.7, 1.5).admissible());
        assert!(!MomentQuery::new(1.6, 1.5).admissible());
        assert!(!MomentQuery::new(1.5, 1.5).admissible());
        assert!(MomentQuery::new(2.0, 2.0).admissible());
        assert!(!MomentQuery::new(2.1, 2.0).admissible());
        assert!(!MomentQuery::new(-1.0, 1.5).admissible());
        assert!(!MomentQuery::new(-0.6, 0.5).admissible());
    }

    #[test]
    fn gaussian_moments() {
        let s = spec(2.0, 1.0);
        let m1 = moment_formula(&s, MomentQuery::new(1.0, 2.0), 1.0).unwrap();
        assert!((m1 - 2.0 / PI.sqrt()).abs() < 1e-14);
        let m2 = moment_formula(&s, MomentQuery::new(2.0, 2.0), 1.0).unwrap();
        assert!((m2 - 2.0).abs() < 1e-14);
        let cfg = SolveConfig::default();
        let q1 = moment_quadrature(&s, MomentQuery::new(1.0, 2.0), 1.0, &cfg).unwrap();
        assert!((q1 - 2.0 / PI.sqrt()).abs() < 1e-9, "{q1}");
        let q2 = moment_quadrature(&s, MomentQuery::new(2.0, 2.0), 1.0, &cfg).unwrap();
        assert!((q2 - 2.0).abs() < 1e-9, "{q2}");
    }

    #[test]
    fn limits() {
        for (a, b) in [(1.5, 0.8), (0.7, 0.5), (2.0, 0.3)] {
            let s = spec(a, b);
            let m = moment_formula(&s, MomentQuery::new(1e-6, a), 1.3).unwrap();
            assert!((m - 1.0).abs() < 1e-4);
            assert_eq!(moment_formula(&s, MomentQuery::new(0.0, a), 1.3).unwrap(), 1.0);
        }
        for b in [0.5, 1.0, 1.7] {
            let s = KernelSpec::new(2.0, b, 0.6).unwrap();
            let t = 1.7;
            let target = 2.0 * 0.6 * t.powf(b) * rgamma_real(1.0 + b);
            let m = moment_formula(&s, MomentQuery::new(2.0 - 1e-9, 2.0), t).unwrap();
            assert!((m - target).abs() < 1e-6 * target);
        }
    }

    #[test]
    fn quadrature_matches_formula() {
        let cfg = SolveConfig::default();
        let s = spec(1.5, 0.8);
        let q = MomentQuery::new(0.7, 1.5);
        let a = moment_formula(&s, q, 1.0).unwrap();
        let b = moment_quadrature(&s, q, 1.0, &cfg).unwrap();
        assert!((a - b).abs() < 1e-5 * a, "{a} vs {b}");
        let n = moment_quadrature(&s, MomentQuery::new(0.0, 1.5), 1.0, &cfg).unwrap();
        assert!((n - 1.0).abs() < 1e-8, "{n}");
        let s = spec(0.75, 0.5);
        let q = MomentQuery::new(-0.4, 0.75);
        let a = moment_formula(&s, q, 2.0).unwrap();
        let b = moment_quadrature(&s, q, 2.0, &cfg).unwrap();
        assert!((a - b).abs() < 1e-5 * a, "{a} vs {b}");
    }

    #[test]
    fn divergence_is_reported() {
        let s = spec(1.5, 0.8);
        let q = MomentQuery::new(1.6, 1.5);
        assert!(matches!(moment_formula(&s, q, 1.0), Err(Error::Inadmissible { .. })));
        assert!(matches!(moment_quadrature(&s, q, 1.0, &SolveConfig::default()), Err(Error::TailDivergence { .. })));
        let q = MomentQuery::new(-1.2, 1.5);
        assert!(matches!(moment_quadrature(&s, q, 1.0, &SolveConfig::default()), Err(Error::Inadmissible { .. })));
    }
}

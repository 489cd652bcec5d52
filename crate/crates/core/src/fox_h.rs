//! Fox H-functions
//!
//! ```text
//! H^{m,n}_{p,q}[z] = (1/2πi) ∫ Θ(ξ) z^{−ξ} dξ
//!
//! Θ(ξ) = Π_{j≤m} Γ(b_j + B_j ξ) Π_{j≤n} Γ(1 − a_j − A_j ξ)
//!        ─────────────────────────────────────────────────────
//!        Π_{j>m} Γ(1 − b_j − B_j ξ) Π_{j>n} Γ(a_j + A_j ξ)
//! ```
//!
//! with the integral taken along a vertical line Re ξ = γ that separates the
//! poles of the Γ(b_j + B_j ξ) factors (to its left) from those of the
//! Γ(1 − a_j − A_j ξ) factors (to its right).
//!
//! Three evaluation routes are provided:
//!
//! - [`eval_series_small`]: close the contour to the left and sum residues.
//!   Gives ascending powers of z; convergent when μ = ΣB − ΣA > 0.
//! - [`eval_series_large`]: close to the right. Descending powers; convergent
//!   when μ < 0, asymptotic otherwise.
//! - [`eval_contour`]: trapezoidal quadrature along the line itself.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::special_fn::{is_nonpositive_integer, log_gamma_unchecked};
use crate::{Error, Result};

/// Two poles closer than this (in ξ) are treated as one location.
const POLE_TOL: f64 = 1e-8;
/// Tolerance of the construction-time pole-separation check.
const SEPARATION_TOL: f64 = 1e-9;
/// Range of k, l scanned by the separation check.
const SEPARATION_SCAN: usize = 64;

/// Parameter block (m, n, p, q, (a_j, A_j), (b_j, B_j)) of an H-function.
#[derive(Debug, Clone, PartialEq)]
pub struct HParams {
    m: usize,
    n: usize,
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
}

/// One Γ(offset + slope·ξ) factor of Θ.
#[derive(Debug, Clone, Copy)]
struct Factor {
    offset: f64,
    slope: f64,
    numerator: bool,
}

impl Factor {
    fn arg(&self, xi: Complex64) -> Complex64 {
        self.offset + self.slope * xi
    }

    /// Pole locations ξ = −(offset + k)/slope of a numerator factor.
    fn pole(&self, k: usize) -> f64 {
        -(self.offset + k as f64) / self.slope
    }
}

impl HParams {
    /// Validated constructor.
    ///
    /// `upper` holds the p pairs (a_j, A_j), `lower` the q pairs (b_j, B_j).
    ///
    /// # Errors
    /// [`Error::InvalidHParams`] when the counts are inconsistent, a
    /// coefficient is not strictly positive, or the two pole families
    /// intersect (checked for k, l ≤ 64).
    pub fn new(m: usize, n: usize, upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self> {
        let (p, q) = (upper.len(), lower.len());
        if n > p || m < 1 || m > q {
            return Err(Error::InvalidHParams(format!("need 0 ≤ n ≤ p and 1 ≤ m ≤ q, got m={m}, n={n}, p={p}, q={q}")));
        }
        for &(a, big_a) in &upper {
            if !(a.is_finite() && big_a.is_finite() && big_a > 0.0) {
                return Err(Error::InvalidHParams(format!("upper pair ({a}, {big_a}) needs finite a and A > 0")));
            }
        }
        for &(b, big_b) in &lower {
            if !(b.is_finite() && big_b.is_finite() && big_b > 0.0) {
                return Err(Error::InvalidHParams(format!("lower pair ({b}, {big_b}) needs finite b and B > 0")));
            }
        }
        let h = Self { m, n, upper, lower };
        h.check_separation()?;
        Ok(h)
    }

    fn check_separation(&self) -> Result<()> {
        for (i, &(a, big_a)) in self.upper[..self.n].iter().enumerate() {
            for (j, &(b, big_b)) in self.lower[..self.m].iter().enumerate() {
                for k in 0..=SEPARATION_SCAN {
                    let lhs = big_a * (b + k as f64);
                    for l in 0..=SEPARATION_SCAN {
                        let rhs = big_b * (a - l as f64 - 1.0);
                        if (lhs - rhs).abs() <= SEPARATION_TOL * lhs.abs().max(1.0) {
                            return Err(Error::InvalidHParams(format!(
                                "pole families overlap: upper {} and lower {} at k={k}, l={l}",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// m
    pub fn m(&self) -> usize {
        self.m
    }
    /// n
    pub fn n(&self) -> usize {
        self.n
    }
    /// p, the number of upper pairs.
    pub fn p(&self) -> usize {
        self.upper.len()
    }
    /// q, the number of lower pairs.
    pub fn q(&self) -> usize {
        self.lower.len()
    }
    /// The upper pairs (a_j, A_j).
    pub fn upper(&self) -> &[(f64, f64)] {
        &self.upper
    }
    /// The lower pairs (b_j, B_j).
    pub fn lower(&self) -> &[(f64, f64)] {
        &self.lower
    }

    /// Decay exponent of |Θ(γ + iy)| ~ |y|^c e^{−θπ|y|/2}:
    /// θ = Σ_{j≤n}A_j − Σ_{j>n}A_j + Σ_{j≤m}B_j − Σ_{j>m}B_j.
    pub fn theta_exponent(&self) -> f64 {
        let sa: f64 = self.upper[..self.n].iter().map(|x| x.1).sum::<f64>() - self.upper[self.n..].iter().map(|x| x.1).sum::<f64>();
        let sb: f64 = self.lower[..self.m].iter().map(|x| x.1).sum::<f64>() - self.lower[self.m..].iter().map(|x| x.1).sum::<f64>();
        sa + sb
    }

    /// μ = ΣB_j − ΣA_j. The left residue series converges for μ > 0, the
    /// right one for μ < 0.
    pub fn mu(&self) -> f64 {
        self.lower.iter().map(|x| x.1).sum::<f64>() - self.upper.iter().map(|x| x.1).sum::<f64>()
    }

    /// Exponent κ(z) = μ (β₀ z)^{1/μ}, β₀ = Π A_j^{−A_j} Π B_j^{B_j}, of the
    /// exponentially small terms e^{−κ cos φ} that an asymptotic right
    /// series (μ > 0) cannot represent. Infinite when μ ≤ 0.
    pub fn exponential_scale(&self, z: f64) -> f64 {
        let mu = self.mu();
        if mu <= 0.0 {
            return f64::INFINITY;
        }
        let ln_b0 = self.lower.iter().map(|&(_, b)| b * b.ln()).sum::<f64>() - self.upper.iter().map(|&(_, a)| a * a.ln()).sum::<f64>();
        mu * ((ln_b0 + z.ln()) / mu).exp()
    }

    fn factors(&self) -> Vec<Factor> {
        let mut f = Vec::with_capacity(self.p() + self.q());
        for &(b, big_b) in &self.lower[..self.m] {
            f.push(Factor { offset: b, slope: big_b, numerator: true });
        }
        for &(a, big_a) in &self.upper[..self.n] {
            f.push(Factor { offset: 1.0 - a, slope: -big_a, numerator: true });
        }
        for &(b, big_b) in &self.lower[self.m..] {
            f.push(Factor { offset: 1.0 - b, slope: -big_b, numerator: false });
        }
        for &(a, big_a) in &self.upper[self.n..] {
            f.push(Factor { offset: a, slope: big_a, numerator: false });
        }
        f
    }

    /// The pole-free strip (left, right) between the two families; either
    /// edge may be infinite when the corresponding family is empty.
    ///
    /// # Errors
    /// [`Error::EmptyStrip`] when the families overlap in real part.
    pub fn strip(&self) -> Result<(f64, f64)> {
        let left = self.lower[..self.m].iter().map(|&(b, bb)| -b / bb).fold(f64::NEG_INFINITY, f64::max);
        let right = self.upper[..self.n].iter().map(|&(a, aa)| (1.0 - a) / aa).fold(f64::INFINITY, f64::min);
        if left >= right {
            return Err(Error::EmptyStrip { left, right });
        }
        Ok((left, right))
    }

    /// Apply the cancellation law: drop a lower pair with index ≤ m that
    /// equals an upper pair with index > n, and an upper pair with index ≤ n
    /// that equals a lower pair with index > m. The value of the function is
    /// unchanged. Pairs are compared to 1e-12.
    pub fn cancel(&self) -> HParams {
        let same = |x: (f64, f64), y: (f64, f64)| (x.0 - y.0).abs() <= 1e-12 && (x.1 - y.1).abs() <= 1e-12;
        let mut h = self.clone();
        'outer: loop {
            for j in 0..h.m {
                for i in h.n..h.upper.len() {
                    if h.m > 1 && same(h.lower[j], h.upper[i]) {
                        h.lower.remove(j);
                        h.upper.remove(i);
                        h.m -= 1;
                        continue 'outer;
                    }
                }
            }
            for i in 0..h.n {
                for j in h.m..h.lower.len() {
                    if same(h.upper[i], h.lower[j]) {
                        h.upper.remove(i);
                        h.lower.remove(j);
                        h.n -= 1;
                        continue 'outer;
                    }
                }
            }
            return h;
        }
    }

    /// H^{1,0}_{0,1}[x | −; (α, 1)] = x^α e^{−x}.
    pub fn exponential(alpha: f64) -> Result<Self> {
        Self::new(1, 0, Vec::new(), alloc::vec![(alpha, 1.0)])
    }

    /// H^{1,1}_{1,2}[z | (0,1); (0,1), (1−β, α)] = E_{α,β}(−z).
    pub fn mittag_leffler(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(1, 1, alloc::vec![(0.0, 1.0)], alloc::vec![(0.0, 1.0), (1.0 - beta, alpha)])
    }

    /// H^{2,0}_{0,2}[x | −; (ν/2, 1), (−ν/2, 1)] = 2 K_ν(2√x).
    pub fn bessel_k(nu: f64) -> Result<Self> {
        Self::new(2, 0, Vec::new(), alloc::vec![(nu / 2.0, 1.0), (-nu / 2.0, 1.0)])
    }

    /// H^{1,0}_{1,1}[x | (ρ, σ); (0, 1)], whose t-form t^{ρ−1}H[z t^{−σ}] is the
    /// inverse Laplace transform of s^{−ρ} exp(−z s^σ) for 0 < σ < 1.
    pub fn laplace_pair(rho: f64, sigma: f64) -> Result<Self> {
        Self::new(1, 0, alloc::vec![(rho, sigma)], alloc::vec![(0.0, 1.0)])
    }
}

/// Log of Θ(ξ); `None` when a denominator factor makes Θ vanish.
fn log_theta(factors: &[Factor], xi: Complex64) -> Result<Option<Complex64>> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (index, f) in factors.iter().enumerate() {
        let arg = f.arg(xi);
        if is_nonpositive_integer(arg) {
            if f.numerator {
                return Err(Error::ThetaPole { factor: index, xi: xi.re });
            }
            return Ok(None);
        }
        let lg = log_gamma_unchecked(arg);
        if f.numerator {
            acc += lg;
        } else {
            acc -= lg;
        }
    }
    Ok(Some(acc))
}

/// Θ(ξ), the gamma-product kernel of the Mellin-Barnes integrand, evaluated
/// in log space.
///
/// # Errors
/// [`Error::ThetaPole`] naming the numerator factor that is singular at ξ
/// (factors are numbered lower j ≤ m, upper j ≤ n, lower j > m, upper j > n).
pub fn theta(h: &HParams, xi: Complex64) -> Result<Complex64> {
    Ok(match log_theta(&h.factors(), xi)? {
        Some(l) => l.exp(),
        None => Complex64::new(0.0, 0.0),
    })
}

/// Which way the contour is closed when summing residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Poles of the Γ(b_j + B_j ξ), j ≤ m, factors; ascending powers of z.
    Left,
    /// Poles of the Γ(1 − a_j − A_j ξ), j ≤ n, factors; descending powers.
    Right,
}

/// A single residue contribution c·z^{−ξ} to the H-function.
///
/// The sign from the orientation of the closed contour is already folded in,
/// so the function value is the plain sum of [`Residue::term`] over a side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residue {
    /// Pole location.
    pub xi: f64,
    /// log of the coefficient c, or `None` when the pole is cancelled by a
    /// zero of a denominator factor.
    pub log_coeff: Option<Complex64>,
}

impl Residue {
    /// The real coefficient c.
    pub fn coeff(&self) -> f64 {
        self.log_coeff.map_or(0.0, |l| l.exp().re)
    }

    /// c·z^{−ξ + shift} for z = e^{ln_z}.
    pub fn term(&self, ln_z: f64, shift: f64) -> f64 {
        match self.log_coeff {
            Some(l) => (l + (shift - self.xi) * ln_z).exp().re,
            None => 0.0,
        }
    }
}

/// Iterator over the residues on one side of the contour, nearest first.
///
/// Coincident poles from different factors are merged and their net order
/// computed (numerator singular factors minus denominator zeros). Order 1
/// yields a residue, order ≤ 0 yields a vanishing entry, order ≥ 2 yields
/// [`Error::PoleCollision`].
#[derive(Debug, Clone)]
pub struct Residues {
    factors: Vec<Factor>,
    families: Vec<usize>,
    next_k: Vec<usize>,
    side: Side,
}

/// Residues of Θ(ξ)z^{−ξ} on the given side, in order of distance from the
/// contour.
pub fn residues(h: &HParams, side: Side) -> Residues {
    let factors = h.factors();
    let families: Vec<usize> =
        factors.iter().enumerate().filter(|(_, f)| f.numerator && ((side == Side::Left) == (f.slope > 0.0))).map(|(i, _)| i).collect();
    let next_k = alloc::vec![0; families.len()];
    Residues { factors, families, next_k, side }
}

impl Residues {
    fn residue_at(&self, xi0: f64) -> Result<Residue> {
        let mut order = 0i32;
        let mut acc = Complex64::new(0.0, 0.0);
        let xi = Complex64::new(xi0, 0.0);
        for f in &self.factors {
            let arg = f.offset + f.slope * xi0;
            let nearest = arg.round();
            let singular = nearest <= 0.0 && (arg - nearest).abs() <= POLE_TOL * f.slope.abs().max(1.0) * xi0.abs().max(1.0);
            if singular {
                let k = -nearest;
                // Γ(−k + s·ε) ≈ (−1)^k / (k! s ε), 1/Γ(−k + s·ε) ≈ (−1)^k k! s ε.
                let lead =
                    Complex64::new(0.0, PI * k) - log_gamma_unchecked(Complex64::new(k + 1.0, 0.0)) - Complex64::new(f.slope, 0.0).ln();
                if f.numerator {
                    order += 1;
                    acc += lead;
                } else {
                    order -= 1;
                    acc -= lead;
                }
            } else {
                let lg = log_gamma_unchecked(f.arg(xi));
                if f.numerator {
                    acc += lg;
                } else {
                    acc -= lg;
                }
            }
        }
        match order {
            i32::MIN..=0 => Ok(Residue { xi: xi0, log_coeff: None }),
            1 => {
                if self.side == Side::Right {
                    // Clockwise closure.
                    acc += Complex64::new(0.0, PI);
                }
                Ok(Residue { xi: xi0, log_coeff: Some(acc) })
            }
            _ => Err(Error::PoleCollision { xi: xi0, order }),
        }
    }
}

impl Iterator for Residues {
    type Item = Result<Residue>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.families.is_empty() {
            return None;
        }
        let positions: Vec<f64> = self.families.iter().zip(&self.next_k).map(|(&i, &k)| self.factors[i].pole(k)).collect();
        let target = match self.side {
            Side::Left => positions.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Side::Right => positions.iter().copied().fold(f64::INFINITY, f64::min),
        };
        let tol = POLE_TOL * target.abs().max(1.0);
        for (k, &pos) in self.next_k.iter_mut().zip(&positions) {
            if (pos - target).abs() <= tol {
                *k += 1;
            }
        }
        Some(self.residue_at(target))
    }
}

/// Why a residue series stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesStop {
    /// Terms fell below 1e-14 of the running sum.
    Converged,
    /// The requested number of terms was used up first.
    TermLimit,
    /// Terms started growing; the sum was truncated at the smallest term.
    Diverging,
    /// There are no poles on this side; the series is identically zero.
    Empty,
}

/// A partial sum of a residue series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    /// The partial sum.
    pub value: f64,
    /// Magnitude of the last included non-zero term (truncation proxy).
    pub last_term: f64,
    /// Largest term magnitude seen (cancellation proxy).
    pub max_term: f64,
    /// Residues visited, including vanishing ones.
    pub terms_used: usize,
    /// Stopping reason.
    pub stop: SeriesStop,
}

impl SeriesSum {
    /// Error estimate combining truncation and cancellation.
    ///
    /// Terms come from exp(log c − ξ ln z) with exponents of a few tens, so
    /// each carries a relative error of tens of ulps; cancellation scales that
    /// by the largest term.
    pub fn err_est(&self) -> f64 {
        let trunc = match self.stop {
            SeriesStop::Converged | SeriesStop::Empty => self.last_term,
            _ => self.last_term.max(1e-14 * self.value.abs()),
        };
        trunc + 128.0 * f64::EPSILON * self.max_term
    }
}

/// Sum of residue terms c·z^{−ξ+shift} on one side.
pub(crate) fn sum_residues(h: &HParams, side: Side, z: f64, terms: usize, shift: f64) -> Result<SeriesSum> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::invalid("z", z, "a finite value > 0"));
    }
    let ln_z = z.ln();
    let mut sum = 0.0;
    let mut carry = 0.0;
    let mut max_term: f64 = 0.0;
    let mut last_term = 0.0;
    let mut small = 0;
    let mut min_term = f64::INFINITY;
    let mut sum_at_min = 0.0;
    let mut since_min = 0;
    let mut used = 0;
    let mut any = false;
    // On its convergent side a series may grow for a while before it falls.
    let asymptotic = match side {
        Side::Left => h.mu() <= 0.0,
        Side::Right => h.mu() >= 0.0,
    };
    for r in residues(h, side).take(terms) {
        let r = r?;
        used += 1;
        if r.log_coeff.is_none() {
            continue;
        }
        any = true;
        let t = r.term(ln_z, shift);
        // Neumaier summation keeps the alternating series honest.
        let s = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
        let mag = t.abs();
        max_term = max_term.max(mag);
        last_term = mag;
        let total = sum + carry;
        if mag < min_term {
            min_term = mag;
            sum_at_min = total;
            since_min = 0;
        } else {
            since_min += 1;
        }
        if mag <= 1e-14 * total.abs() || mag == 0.0 {
            small += 1;
            if small >= 2 {
                return Ok(SeriesSum { value: total, last_term: mag, max_term, terms_used: used, stop: SeriesStop::Converged });
            }
        } else {
            small = 0;
        }
        if asymptotic && since_min >= 3 && mag > 1e3 * min_term {
            return Ok(SeriesSum { value: sum_at_min, last_term: min_term, max_term, terms_used: used, stop: SeriesStop::Diverging });
        }
        if !total.is_finite() {
            return Err(Error::NonConvergence { what: "residue series", estimate: f64::INFINITY });
        }
    }
    if !any {
        return Ok(SeriesSum { value: 0.0, last_term: 0.0, max_term: 0.0, terms_used: used, stop: SeriesStop::Empty });
    }
    Ok(SeriesSum { value: sum + carry, last_term, max_term, terms_used: used, stop: SeriesStop::TermLimit })
}

/// Small-argument residue series: sum over the poles left of the contour.
///
/// # Errors
/// [`Error::PoleCollision`] for a non-simple pole; [`Error::InvalidParameter`]
/// unless z > 0.
pub fn eval_series_small(h: &HParams, z: f64, terms: usize) -> Result<SeriesSum> {
    sum_residues(h, Side::Left, z, terms, 0.0)
}

/// Large-argument residue series: sum over the poles right of the contour.
///
/// # Errors
/// As [`eval_series_small`].
pub fn eval_series_large(h: &HParams, z: f64, terms: usize) -> Result<SeriesSum> {
    sum_residues(h, Side::Right, z, terms, 0.0)
}

/// Vertical integration line Re ξ = γ truncated to |Im ξ| ≤ T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// Abscissa γ.
    pub gamma: f64,
    /// Initial truncation height T (doubled adaptively up to [`MAX_HALF_HEIGHT`]).
    pub half_height: f64,
    /// Number of trapezoid nodes on [0, T].
    pub nodes: usize,
}

/// Hard cap on the truncation height.
pub const MAX_HALF_HEIGHT: f64 = 400.0;

impl ContourSpec {
    /// Validated constructor (strip membership is checked at evaluation).
    ///
    /// # Errors
    /// [`Error::InvalidParameter`] unless T > 0 and nodes ≥ 16.
    pub fn new(gamma: f64, half_height: f64, nodes: usize) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::invalid("gamma", gamma, "a finite abscissa"));
        }
        if !(half_height > 0.0 && half_height <= MAX_HALF_HEIGHT) {
            return Err(Error::invalid("half_height", half_height, "0 < T ≤ 400"));
        }
        if nodes < 16 {
            return Err(Error::invalid("nodes", nodes as f64, "at least 16 nodes"));
        }
        Ok(Self { gamma, half_height, nodes })
    }

    /// Contour at the middle of the pole-free strip with a step size chosen
    /// for ~1e-16 discretisation error at argument z.
    ///
    /// # Errors
    /// [`Error::EmptyStrip`] if there is no admissible strip.
    pub fn auto(h: &HParams, z: f64) -> Result<Self> {
        let (left, right) = h.strip()?;
        let (gamma, half_width) = match (left.is_finite(), right.is_finite()) {
            (true, true) => (0.5 * (left + right), 0.5 * (right - left)),
            (true, false) => (left + 1.0, 1.0),
            (false, true) => (right - 1.0, 1.0),
            (false, false) => (0.0, 1.0),
        };
        let d = 0.8 * half_width;
        let step = 2.0 * PI * d / (40.0 + d * z.ln().abs());
        let half_height = 8.0;
        let nodes = ((half_height / step).ceil() as usize).max(16);
        Self::new(gamma, half_height, nodes)
    }
}

/// Result of [`eval_contour`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourValue {
    /// H(z).
    pub value: f64,
    /// Estimated absolute error (truncation + discretisation).
    pub err_est: f64,
    /// Truncation height actually used.
    pub half_height: f64,
}

/// Mellin-Barnes integral along Re ξ = γ by the trapezoidal rule.
///
/// With ξ = γ + iy and real parameters the integrand is conjugate-symmetric,
/// so H(z) = (1/π) ∫₀^∞ Re[Θ(γ+iy) z^{−γ−iy}] dy. The range is doubled until
/// the last doubling changes the result by less than 1e-9 relative.
///
/// # Errors
/// [`Error::ContourOutsideStrip`], [`Error::NonConvergentIntegrand`] when
/// θ ≤ 0, [`Error::NonConvergence`] when the cap T = 400 is reached first.
pub fn eval_contour(h: &HParams, z: f64, c: ContourSpec) -> Result<ContourValue> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::invalid("z", z, "a finite value > 0"));
    }
    let (left, right) = h.strip()?;
    if !(c.gamma > left && c.gamma < right) {
        return Err(Error::ContourOutsideStrip { gamma: c.gamma, left, right });
    }
    let theta_exp = h.theta_exponent();
    if theta_exp <= 0.0 {
        return Err(Error::NonConvergentIntegrand { theta: theta_exp });
    }
    let factors = h.factors();
    let ln_z = z.ln();
    let step = c.half_height / c.nodes as f64;
    let f = |y: f64| -> Result<f64> {
        let xi = Complex64::new(c.gamma, y);
        Ok(match log_theta(&factors, xi)? {
            Some(l) => (l - xi * ln_z).exp().re,
            None => 0.0,
        })
    };

    // Trapezoid sums: `all` on step h, `even` on step 2h (for the
    // discretisation estimate), `abs` for the roundoff scale.
    let f0 = f(0.0)?;
    let mut all = 0.5 * f0;
    let mut even = 0.5 * f0;
    let mut abs = 0.5 * f0.abs();
    let mut j = 1usize;
    let mut height = c.half_height;
    let mut previous: Option<f64> = None;
    loop {
        let last = (height / step).round() as usize;
        while j <= last {
            let v = f(j as f64 * step)?;
            all += v;
            abs += v.abs();
            if j % 2 == 0 {
                even += v;
            }
            j += 1;
        }
        let value = all * step / PI;
        let scale = abs * step / PI;
        if let Some(prev) = previous {
            let change = (value - prev).abs();
            if change <= 1e-9 * value.abs() + 1e-15 * scale {
                let disc = (value - even * 2.0 * step / PI).abs();
                let disc = if scale > 0.0 { disc.min(disc * disc / scale) } else { disc };
                let err_est = change + disc + 4.0 * f64::EPSILON * scale;
                return Ok(ContourValue { value, err_est, half_height: height });
            }
            if height >= MAX_HALF_HEIGHT {
                return Err(Error::NonConvergence { what: "Mellin-Barnes contour truncation", estimate: change });
            }
        }
        previous = Some(value);
        height = (2.0 * height).min(MAX_HALF_HEIGHT);
    }
}

/// Contour evaluation with an automatically placed contour.
///
/// # Errors
/// As [`eval_contour`] and [`ContourSpec::auto`].
pub fn eval_contour_auto(h: &HParams, z: f64) -> Result<ContourValue> {
    eval_contour(h, z, ContourSpec::auto(h, z)?)
}

/// H[x^δ] = (1/δ) H'[x] where H' has all A_j, B_j divided by δ.
///
/// Returns the transformed parameter block; the caller applies the 1/δ
/// prefactor.
///
/// # Errors
/// [`Error::InvalidParameter`] unless δ > 0.
pub fn scale_argument(h: &HParams, delta: f64) -> Result<HParams> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::invalid("delta", delta, "a finite value > 0"));
    }
    let upper = h.upper.iter().map(|&(a, aa)| (a, aa / delta)).collect();
    let lower = h.lower.iter().map(|&(b, bb)| (b, bb / delta)).collect();
    // Scaling preserves pole separation, so skip re-validation.
    Ok(HParams { m: h.m, n: h.n, upper, lower })
}

impl core::fmt::Display for HParams {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let pairs = |v: &[(f64, f64)]| -> alloc::string::String {
            if v.is_empty() {
                return "-".to_string();
            }
            v.iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(",")
        };
        write!(f, "H^{{{},{}}}_{{{},{}}}[{} ; {}]", self.m, self.n, self.p(), self.q(), pairs(&self.upper), pairs(&self.lower))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::{gamma, mittag_leffler_real};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn construction_checks() {
        assert!(HParams::new(0, 0, Vec::new(), alloc::vec![(0.0, 1.0)]).is_err());
        assert!(HParams::new(1, 2, alloc::vec![(0.0, 1.0)], alloc::vec![(0.0, 1.0)]).is_err());
        assert!(HParams::new(1, 0, Vec::new(), alloc::vec![(0.0, -1.0)]).is_err());
        // Γ(ξ) and Γ(1 − 1 − ξ) = Γ(−ξ) share the pole at ξ = 0.
        assert!(HParams::new(1, 1, alloc::vec![(1.0, 1.0)], alloc::vec![(0.0, 1.0)]).is_err());
    }

    #[test]
    fn theta_examples() {
        let h = HParams::new(1, 0, Vec::new(), alloc::vec![(0.0, 1.0)]).unwrap();
        assert!((theta(&h, Complex64::new(1.0, 0.0)).unwrap().re - 1.0).abs() < 1e-15);
        let h = HParams::exponential(0.5).unwrap();
        let v = theta(&h, Complex64::new(1.5, 0.0)).unwrap();
        assert!(rel(v.re, gamma(2.0)) < 1e-14);
        assert!(matches!(theta(&h, Complex64::new(-0.5, 0.0)), Err(Error::ThetaPole { factor: 0, .. })));
    }

    #[test]
    fn exponential_identity_by_contour() {
        for alpha in [0.0, 0.5, 1.0] {
            let h = HParams::exponential(alpha).unwrap();
            for x in [0.1, 1.0, 3.7, 10.0] {
                let v = eval_contour_auto(&h, x).unwrap();
                let want = x.powf(alpha) * (-x).exp();
                assert!((v.value - want).abs() < 1e-9 * want.max(1e-3), "α={alpha} x={x}: {} vs {want}", v.value);
            }
        }
    }

    #[test]
    fn bessel_k0_by_contour_and_series() {
        // 2K_0(2) from mpmath.
        let want = 0.227_787_745_499_066_87;
        let h = HParams::bessel_k(0.0).unwrap();
        assert!(rel(eval_contour_auto(&h, 1.0).unwrap().value, want) < 1e-10);
        // Double poles of Γ(ξ)² are rejected by the series route.
        assert!(matches!(eval_series_small(&h, 1.0, 50), Err(Error::PoleCollision { .. })));
        let h = HParams::bessel_k(0.6).unwrap();
        let want = 0.060_582_906_063_890_086;
        assert!(rel(eval_contour_auto(&h, 2.5).unwrap().value, want) < 1e-10);
        let s = eval_series_small(&h, 2.5, 200).unwrap();
        assert!(rel(s.value, want) < 1e-10, "{s:?}");
    }

    #[test]
    fn mittag_leffler_identity() {
        for (a, b) in [(0.5, 1.0), (0.8, 0.6), (1.5, 1.0)] {
            let h = HParams::mittag_leffler(a, b).unwrap();
            for z in [0.1, 1.0, 4.0, 10.0] {
                let want = mittag_leffler_real(a, b, -z).unwrap();
                let c = eval_contour_auto(&h, z).unwrap().value;
                assert!((c - want).abs() < 1e-8, "({a},{b}) z={z}: {c} vs {want}");
            }
            let s = eval_series_small(&h, 0.5, 400).unwrap();
            assert!((s.value - mittag_leffler_real(a, b, -0.5).unwrap()).abs() < 1e-12);
        }
        // E_1(−1) = e^{−1}
        let h = HParams::mittag_leffler(1.0, 1.0).unwrap();
        assert!((eval_contour_auto(&h, 1.0).unwrap().value - (-1.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn large_series_of_mittag_leffler_is_asymptotic() {
        // E_{α,β}(−z) ~ Σ_{k≥1} (−1)^{k+1} z^{−k}/Γ(β − αk)
        let h = HParams::mittag_leffler(0.5, 1.0).unwrap();
        let s = eval_series_large(&h, 40.0, 60).unwrap();
        let want = mittag_leffler_real(0.5, 1.0, -40.0).unwrap();
        assert!(rel(s.value, want) < 1e-8, "{s:?} vs {want}");
    }

    #[test]
    fn scaling_property() {
        let h = HParams::exponential(0.5).unwrap();
        assert_eq!(scale_argument(&h, 1.0).unwrap(), h);
        let round = scale_argument(&scale_argument(&h, 2.0).unwrap(), 0.5).unwrap();
        assert_eq!(round, h);
        let x: f64 = 1.3;
        let scaled = scale_argument(&h, 2.0).unwrap();
        let lhs = eval_contour_auto(&scaled, x).unwrap().value / 2.0;
        let want = x.powf(1.0) * (-x * x).exp();
        assert!(rel(lhs, want) < 1e-9);
    }

    #[test]
    fn contour_rejections() {
        let h = HParams::exponential(0.0).unwrap();
        let c = ContourSpec::new(-1.0, 8.0, 64).unwrap();
        assert!(matches!(eval_contour(&h, 1.0, c), Err(Error::ContourOutsideStrip { .. })));
        assert!(ContourSpec::new(0.5, 8.0, 8).is_err());
        // θ = B − A = 0 for H^{1,0}_{1,1}[(0,1);(0,1)].
        let h = HParams::laplace_pair(0.0, 1.0).unwrap();
        assert!(matches!(eval_contour_auto(&h, 1.0), Err(Error::NonConvergentIntegrand { .. })));
    }

    #[test]
    fn cancellation_law() {
        // Γ(ξ)Γ(1+ξ)/Γ(1+ξ) → Γ(ξ): x^0 e^{−x} with an extra cancelling pair.
        let h = HParams::new(2, 0, alloc::vec![(1.0, 1.0)], alloc::vec![(0.0, 1.0), (1.0, 1.0)]).unwrap();
        let reduced = h.cancel();
        assert_eq!(reduced, HParams::exponential(0.0).unwrap());
        for x in [0.3, 2.0] {
            let a = eval_contour_auto(&h, x).unwrap().value;
            let b = eval_contour_auto(&reduced, x).unwrap().value;
            assert!((a - b).abs() < 1e-10);
        }
    }
}

//! L1 discretisation of the Caputo derivative, 0 < β ≤ 1.
//!
//! With τ = dt, a0 = τ^{−β}/Γ(2−β) and b_j = (j+1)^{1−β} − j^{1−β}, the
//! scheme for D^β u = −λu + φ reads
//!
//! ```text
//! a0 [ (u^{n+1} − u^n) + Σ_{j=1}^{n} b_j (u^{n+1−j} − u^{n−j}) ] = −λ u^{n+1} + φ^{n+1}
//! ```
//!
//! solved mode by mode after a Fourier transform. For β < 1 the first step
//! also receives half of the right-hand side at t = 0. That restores the
//! dt^{2−β} rate which the plain scheme loses to the t^β start of the
//! solution. For β = 1 the scheme is backward Euler.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::field::{PeriodicEmbedding, SampledField, SourceTerm};
use crate::kernels::KernelSpec;
use crate::solver::l1_weights;
use crate::special_fn::rgamma_real;
use crate::{Error, Result};

/// Uniform time mesh plus the memory the Caputo derivative needs.
///
/// The plan owns the state on the whole periodic buffer, so mass that
/// spreads into the padding keeps evolving instead of being clipped after
/// every step. It is single-writer: one plan drives one trajectory.
#[derive(Debug, Clone)]
pub struct TimeStepPlan {
    dt: f64,
    steps: usize,
    pad: usize,
    emb: Option<PeriodicEmbedding>,
    grid: Option<(f64, f64, usize)>,
    current: Vec<f64>,
    /// Increments U^{j+1} − U^j on the buffer, one per completed step.
    history: Vec<Vec<f64>>,
}

impl TimeStepPlan {
    /// `steps` equal steps up to `horizon`.
    ///
    /// # Errors
    /// [`Error::InvalidParameter`] for a non-positive horizon or zero steps.
    pub fn new(horizon: f64, steps: usize) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::invalid("horizon", horizon, "horizon > 0"));
        }
        if steps == 0 {
            return Err(Error::invalid("steps", 0.0, "steps >= 1"));
        }
        Ok(TimeStepPlan { dt: horizon / steps as f64, steps, pad: 4, emb: None, grid: None, current: Vec::new(), history: Vec::new() })
    }

    /// Pad factor of the periodic buffer (default 4, at least 1).
    pub fn with_pad(mut self, pad: usize) -> Self {
        self.pad = pad.max(1);
        self
    }

    /// Step size.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Planned number of steps.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Steps taken so far; equals the number of stored snapshots.
    pub fn completed(&self) -> usize {
        self.history.len()
    }

    /// Time reached so far.
    pub fn time(&self) -> f64 {
        self.completed() as f64 * self.dt
    }
}

/// Advance `field` = U^n by one step of the plan.
///
/// On the first call the plan adopts the grid of `field`; later calls must
/// use the same grid. The values passed in replace the plan's state on the
/// grid, while the padding keeps the plan's own state.
///
/// # Errors
/// - [`Error::InvalidParameter`] unless 0 < β ≤ 1.
/// - [`Error::HistoryMismatch`] once the plan has taken all its steps.
/// - [`Error::GridMismatch`] if the grid changes between calls.
pub fn caputo_l1_step(spec: &KernelSpec, plan: &mut TimeStepPlan, field: &SampledField, phi: Option<&SourceTerm>) -> Result<SampledField> {
    let beta = spec.beta();
    if beta > 1.0 {
        return Err(Error::invalid("beta", beta, "0 < beta <= 1 for the L1 scheme"));
    }
    let done = plan.completed();
    if done >= plan.steps {
        return Err(Error::HistoryMismatch { expected: plan.steps, found: done + 1 });
    }
    let key = (field.x0(), field.dx(), field.len());
    match plan.grid {
        None => {
            let emb = PeriodicEmbedding::new(field.len(), field.dx(), plan.pad, 64);
            plan.current = vec![0.0; emb.m()];
            plan.emb = Some(emb);
            plan.grid = Some(key);
        }
        Some(g) if g != key => {
            return Err(Error::GridMismatch(alloc::format!(
                "plan was started on {} points from x0 = {}, got {} points from x0 = {}",
                g.2,
                g.0,
                key.2,
                key.0
            )));
        }
        Some(_) => {}
    }
    let emb = plan.emb.as_ref().expect("embedding set above");
    let n = field.len();
    plan.current[..n].copy_from_slice(field.values());

    let dt = plan.dt;
    let a0 = dt.powf(-beta) * rgamma_real(2.0 - beta);
    let b = l1_weights(beta, done + 1);

    // a0·u^n − a0·Σ_{j=1}^{n} b_j ΔU^{n−j}, assembled in physical space
    let mut rhs: Vec<f64> = plan.current.iter().map(|u| a0 * u).collect();
    for j in 1..=done {
        let w = a0 * b[j];
        for (r, d) in rhs.iter_mut().zip(&plan.history[done - j]) {
            *r -= w * d;
        }
    }
    let sample_source = |t: f64| -> Vec<f64> {
        let mut v = vec![0.0; emb.m()];
        if let Some(phi) = phi {
            for (i, x) in field.xs().enumerate() {
                v[i] = phi.eval(x, t);
            }
        }
        v
    };
    let src_next = sample_source((done + 1) as f64 * dt);
    let first_correction = done == 0 && beta < 1.0;
    let src_start = if first_correction { sample_source(0.0) } else { vec![0.0; emb.m()] };

    let mut spectrum = fft_buffer(&rhs);
    let s_next = fft_buffer(&src_next);
    let s_start = fft_buffer(&src_start);
    let u_hat = fft_buffer(&plan.current);
    for (i, (s, &k)) in spectrum.iter_mut().zip(emb.wavenumbers()).enumerate() {
        let lam = spec.symbol(k.abs());
        let mut r = *s + s_next[i];
        if first_correction {
            r += 0.5 * (s_start[i] - u_hat[i] * lam);
        }
        *s = r / (a0 + lam);
    }
    crate::fft::fft(&mut spectrum, crate::fft::Direction::Inverse);
    let next: Vec<f64> = spectrum.into_iter().map(|c| c.re).collect();
    let delta: Vec<f64> = next.iter().zip(&plan.current).map(|(a, b)| a - b).collect();
    plan.history.push(delta);
    plan.current = next;
    field.with_values(plan.current[..n].to_vec())
}

fn fft_buffer(v: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    crate::fft::fft(&mut buf, crate::fft::Direction::Forward);
    buf
}

/// Run a fresh plan of `steps` steps from `initial` to time `t`.
///
/// # Errors
/// As [`caputo_l1_step`] and [`TimeStepPlan::new`].
pub fn evolve(spec: &KernelSpec, initial: &SampledField, phi: Option<&SourceTerm>, t: f64, steps: usize) -> Result<SampledField> {
    let mut plan = TimeStepPlan::new(t, steps)?;
    let mut u = initial.clone();
    for _ in 0..steps {
        u = caputo_l1_step(spec, &mut plan, &u, phi)?;
    }
    Ok(u)
}

/// The scheme applied to the single mode D^β u = −λu, u(0) = 1, returning u(t).
///
/// # Errors
/// [`Error::InvalidParameter`] unless 0 < β ≤ 1, λ ≥ 0, t > 0 and steps ≥ 1.
pub fn l1_mode(beta: f64, lambda: f64, t: f64, steps: usize) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::invalid("beta", beta, "0 < beta <= 1 for the L1 scheme"));
    }
    if !(lambda >= 0.0) {
        return Err(Error::invalid("lambda", lambda, "lambda >= 0"));
    }
    if !(t > 0.0) || steps == 0 {
        return Err(Error::invalid("t", t, "t > 0 and at least one step"));
    }
    let dt = t / steps as f64;
    let a0 = dt.powf(-beta) * rgamma_real(2.0 - beta);
    let b = l1_weights(beta, steps);
    let mut u = vec![1.0];
    let mut du: Vec<f64> = Vec::with_capacity(steps);
    for n in 0..steps {
        let mut rhs = a0 * u[n];
        for j in 1..=n {
            rhs -= a0 * b[j] * du[n - j];
        }
        if n == 0 && beta < 1.0 {
            rhs -= 0.5 * lambda * u[0];
        }
        let next = rhs / (a0 + lambda);
        du.push(next - u[n]);
        u.push(next);
    }
    Ok(u[steps])
}

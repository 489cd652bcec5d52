//! Uniformly sampled fields and the periodic embedding used by every
//! spectral operation in the crate.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::fft::{fft, next_pow2, wavenumbers, Direction};
use crate::{Error, Result};

/// Default for the boundary floor: edge values may be at most this fraction
/// of the field's maximum magnitude.
pub const DEFAULT_BOUNDARY_FLOOR: f64 = 1e-12;

/// Samples of a real function on the uniform grid x_i = x0 + i·dx.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    x0: f64,
    dx: f64,
    values: Vec<f64>,
}

impl SampledField {
    /// Wrap existing samples.
    ///
    /// # Errors
    /// [`Error::InvalidParameter`] when dx is not positive, x0 is not finite,
    /// fewer than two values are given, or a value is not finite.
    pub fn new(x0: f64, dx: f64, values: Vec<f64>) -> Result<Self> {
        if !x0.is_finite() {
            return Err(Error::invalid("x0", x0, "a finite left edge"));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::invalid("dx", dx, "dx > 0"));
        }
        if values.len() < 2 {
            return Err(Error::invalid("values", values.len() as f64, "at least two samples"));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid("values", *bad, "finite samples"));
        }
        Ok(SampledField { x0, dx, values })
    }

    /// Sample `f` at `n` points starting from `x0`.
    ///
    /// # Errors
    /// As [`SampledField::new`].
    pub fn from_fn(x0: f64, dx: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..n).map(|i| f(x0 + i as f64 * dx)).collect();
        Self::new(x0, dx, values)
    }

    /// A grid of `n` points symmetric about the origin with spacing `dx`.
    ///
    /// # Errors
    /// As [`SampledField::new`].
    pub fn centered(n: usize, dx: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let x0 = -((n / 2) as f64) * dx;
        Self::from_fn(x0, dx, n, f)
    }

    /// The discrete delta at the grid point nearest the origin, with unit mass.
    ///
    /// # Errors
    /// As [`SampledField::new`]; also rejects grids that do not contain 0.
    pub fn delta(x0: f64, dx: f64, n: usize) -> Result<Self> {
        let i = (-x0 / dx).round();
        if !(i >= 0.0 && (i as usize) < n) {
            return Err(Error::invalid("x0", x0, "a grid that contains x = 0"));
        }
        let mut values = vec![0.0; n];
        values[i as usize] = 1.0 / dx;
        Self::new(x0, dx, values)
    }

    /// Left edge.
    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Grid spacing.
    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: a field holds at least two samples.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coordinate of sample `i`.
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    /// Iterator over the grid coordinates.
    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.x(i))
    }

    /// The samples.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Consume the field and return its samples.
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Same grid, new samples.
    ///
    /// # Errors
    /// [`Error::GridMismatch`] on a length change, otherwise as [`SampledField::new`].
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::GridMismatch(alloc::format!("expected {} samples, got {}", self.len(), values.len())));
        }
        Self::new(self.x0, self.dx, values)
    }

    /// Trapezoid-free Riemann sum Σ f_i dx, which is exact for band-limited data.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.dx
    }

    /// Largest |f_i|.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// max(|f_0|, |f_last|) / max|f|, or 0 for the zero field.
    pub fn boundary_ratio(&self) -> f64 {
        let peak = self.max_abs();
        if peak == 0.0 {
            return 0.0;
        }
        let edge = self.values[0].abs().max(self.values[self.len() - 1].abs());
        edge / peak
    }

    /// Require the edges to have decayed below `floor` of the maximum.
    ///
    /// # Errors
    /// [`Error::BoundaryFloor`] when they have not.
    pub fn check_boundary(&self, floor: f64) -> Result<()> {
        let ratio = self.boundary_ratio();
        if ratio > floor {
            return Err(Error::BoundaryFloor { ratio, floor });
        }
        Ok(())
    }

    /// True when both fields share x0, dx and length.
    pub fn same_grid(&self, other: &SampledField) -> bool {
        self.len() == other.len() && (self.x0 - other.x0).abs() <= 1e-12 * self.dx && (self.dx - other.dx).abs() <= 1e-12 * self.dx
    }

    /// Sup-norm distance to another field on the same grid.
    ///
    /// # Errors
    /// [`Error::GridMismatch`] when the grids differ.
    pub fn sup_distance(&self, other: &SampledField) -> Result<f64> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch(String::from("fields live on different grids")));
        }
        Ok(self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}

/// A prescribed source φ(x, t).
pub struct SourceTerm {
    evaluator: Box<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    description: String,
}

impl SourceTerm {
    /// Wrap a closure with a short human-readable description.
    pub fn new(description: impl Into<String>, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        SourceTerm { evaluator: Box::new(f), description: description.into() }
    }

    /// φ(x, t).
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        (self.evaluator)(x, t)
    }

    /// The description given at construction.
    pub fn description(&self) -> &str {
        &self.description
    }
}

impl fmt::Debug for SourceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SourceTerm").field("description", &self.description).finish_non_exhaustive()
    }
}

/// A field of `n` samples placed at the start of a zero-padded periodic
/// buffer of length `m`.
///
/// Multiplying the buffer's spectrum by an even symbol and transforming back
/// is a circular convolution. As long as the kernel has decayed over the
/// `m − n` padding cells, it agrees with the whole-line convolution on the
/// original samples. Heavy-tailed kernels leak a little through the wrap;
/// the pad factor controls how much.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicEmbedding {
    n: usize,
    m: usize,
    dx: f64,
    k: Vec<f64>,
}

impl PeriodicEmbedding {
    /// Embedding for `n` samples with at least `pad · n` and `min_len` slots.
    pub fn new(n: usize, dx: f64, pad: usize, min_len: usize) -> Self {
        let m = next_pow2(min_len.max(pad.max(1) * n));
        PeriodicEmbedding { n, m, dx, k: wavenumbers(m, dx) }
    }

    /// Samples of the physical grid.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Length of the periodic buffer.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Angular wavenumber of each FFT slot.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.k
    }

    /// Nyquist wavenumber π/dx.
    pub fn nyquist(&self) -> f64 {
        core::f64::consts::PI / self.dx
    }

    /// Forward transform of the samples with zero padding.
    pub fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        debug_assert_eq!(values.len(), self.n);
        let mut buf = vec![Complex64::new(0.0, 0.0); self.m];
        for (b, &v) in buf.iter_mut().zip(values) {
            b.re = v;
        }
        fft(&mut buf, Direction::Forward);
        buf
    }

    /// Inverse transform, keeping the real part of the first `n` slots.
    pub fn inverse(&self, mut spectrum: Vec<Complex64>) -> Vec<f64> {
        fft(&mut spectrum, Direction::Inverse);
        spectrum.truncate(self.n);
        spectrum.into_iter().map(|c| c.re).collect()
    }

    /// Multiply the spectrum of `values` by `symbol(|k|)` and transform back.
    pub fn apply_symbol(&self, values: &[f64], mut symbol: impl FnMut(f64) -> f64) -> Vec<f64> {
        let mut spec = self.forward(values);
        for (s, &k) in spec.iter_mut().zip(&self.k) {
            *s *= symbol(k.abs());
        }
        self.inverse(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SampledField::new(0.0, 0.0, vec![1.0, 2.0]).is_err());
        assert!(SampledField::new(0.0, 1.0, vec![1.0]).is_err());
        assert!(SampledField::new(0.0, 1.0, vec![1.0, f64::NAN]).is_err());
        let f = SampledField::new(-1.0, 0.5, vec![0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(f.x(4), 1.0);
        assert_eq!(f.boundary_ratio(), 0.0);
        assert!(SampledField::delta(1.0, 0.1, 10).is_err());
    }

    #[test]
    fn boundary_floor() {
        let g = SampledField::centered(101, 0.2, |x| (-x * x).exp()).unwrap();
        assert!(g.check_boundary(DEFAULT_BOUNDARY_FLOOR).is_ok());
        let wide = SampledField::centered(101, 0.2, |x| (-x * x / 50.0).exp()).unwrap();
        assert!(matches!(wide.check_boundary(DEFAULT_BOUNDARY_FLOOR), Err(Error::BoundaryFloor { .. })));
    }

    #[test]
    fn embedding_round_trip_and_identity_symbol() {
        let f = SampledField::centered(100, 0.1, |x| (-x * x).exp() * (3.0 * x).sin()).unwrap();
        let e = PeriodicEmbedding::new(f.len(), f.dx(), 4, 64);
        assert_eq!(e.m(), 512);
        let back = e.apply_symbol(f.values(), |_| 1.0);
        for (a, b) in back.iter().zip(f.values()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn delta_has_unit_mass() {
        let d = SampledField::delta(-5.0, 0.05, 201).unwrap();
        assert!((d.mass() - 1.0).abs() < 1e-14);
        assert!((d.values()[100] - 20.0).abs() < 1e-12);
    }
}

//! In-place iterative radix-2 FFT on `Complex64` buffers.
//!
//! [`fft`] takes power-of-two lengths only; the spectral solver and oracles
//! size their periodic embeddings accordingly (see [`next_pow2`]). [`dft`]
//! accepts any length and falls back to the O(n²) sum when it has to.

use core::f64::consts::PI;

use num_complex::Complex64;

/// Smallest power of two ≥ `n` (and ≥ 2).
pub fn next_pow2(n: usize) -> usize {
    n.max(2).next_power_of_two()
}

/// Transform direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// X_k = Σ x_j e^{−2πijk/n}
    Forward,
    /// x_j = (1/n) Σ X_k e^{+2πijk/n}, normalised so that inverse ∘ forward = id.
    Inverse,
}

/// Transform `data` in place.
///
/// # Panics
/// If `data.len()` is not a power of two.
pub fn fft(data: &mut [Complex64], dir: Direction) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length {n} is not a power of two");
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let sign = match dir {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = sign * 2.0 * PI / len as f64;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                // Direct twiddles avoid the drift of a running product on long transforms.
                let w = Complex64::from_polar(1.0, step * k as f64);
                let u = data[start + k];
                let v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }
    if dir == Direction::Inverse {
        let scale = 1.0 / n as f64;
        for x in data.iter_mut() {
            *x *= scale;
        }
    }
}

/// Discrete Fourier transform of any length, with the conventions of [`fft`].
pub fn dft(data: &mut [Complex64], dir: Direction) {
    let n = data.len();
    if n.is_power_of_two() {
        return fft(data, dir);
    }
    let sign = if dir == Direction::Forward { -1.0 } else { 1.0 };
    let input = data.to_vec();
    for (k, out) in data.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, x) in input.iter().enumerate() {
            let phase = sign * 2.0 * PI * ((j * k) % n) as f64 / n as f64;
            acc += x * Complex64::from_polar(1.0, phase);
        }
        *out = if dir == Direction::Inverse { acc / n as f64 } else { acc };
    }
}

/// Angular wavenumbers 2πm/(n·dx) in FFT order (non-negative first, then negative).
pub fn wavenumbers(n: usize, dx: f64) -> alloc::vec::Vec<f64> {
    let base = 2.0 * PI / (n as f64 * dx);
    (0..n).map(|m| if m <= n / 2 { m as f64 * base } else { (m as f64 - n as f64) * base }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn matches_direct_dft() {
        let n = 16;
        let x: Vec<Complex64> = (0..n).map(|j| Complex64::new((j as f64 * 0.7).sin(), j as f64 * 0.1)).collect();
        let mut y = x.clone();
        fft(&mut y, Direction::Forward);
        for k in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, xj) in x.iter().enumerate() {
                s += xj * Complex64::from_polar(1.0, -2.0 * PI * (j * k) as f64 / n as f64);
            }
            assert!((s - y[k]).norm() < 1e-12);
        }
        fft(&mut y, Direction::Inverse);
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn wavenumber_layout() {
        let k = wavenumbers(8, 0.5);
        let base = 2.0 * PI / 4.0;
        assert_eq!(k[1], base);
        assert_eq!(k[4], 4.0 * base);
        assert_eq!(k[7], -base);
        assert_eq!(next_pow2(5), 8);
        assert_eq!(next_pow2(8), 8);
    }
}

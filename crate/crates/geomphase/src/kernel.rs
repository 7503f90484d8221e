//! Offset-major summation kernels for the Poisson-weighted double series.
//!
//! Every analytical observable (fidelity, purity, Q-function value) is a sum
//! of the shape
//!
//!   Σ_{l₁,l₂} w(l₁)w(l₂) · exp[iδ(l₁²-l₂²)] · exp[-C(l₁-l₂)²] · exp[i(l₂-l₁)χ]
//!
//! whose magnitude factor depends on the offset d = l₁-l₂ only. The kernels
//! therefore loop offset-major: the decaying envelope exp(-Cd²) is applied
//! once per offset, the inner sum over the smaller label advances the phase
//! by a fixed rotation exp(i·2δd) per step, and offsets beyond the point
//! where the envelope underflows the working tolerance are skipped
//! entirely. Offsets are evaluated independently (no conjugate-pair
//! shortcut), so the imaginary residual of a sum that must be real is a live
//! consistency check rather than zero by construction.
//!
//! With the `parallel` feature the offsets are distributed over rayon and
//! the partial sums folded in offset order, so results are identical to the
//! sequential fallback.

use crate::parallel;
use num_complex::Complex64;

/// Envelope exponent beyond which an offset contributes below 1e-14 and is
/// dropped (e^-34 ≈ 1.7e-15).
const BAND_EXPONENT: f64 = 34.0;

/// Real weights over a contiguous Fock window starting at `l_min`.
#[derive(Debug, Clone, Copy)]
pub struct WeightedWindow<'a> {
    pub weights: &'a [f64],
    pub l_min: u64,
}

/// Largest offset worth evaluating for a Gaussian envelope exp(-c·d²) over
/// a window of `n` labels. Falls back to the full window when the decay is
/// too weak to truncate.
pub fn band_limit(c: f64, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let full = n - 1;
    if c <= 0.0 {
        return full;
    }
    // compare in f64 first: for tiny c the cast would saturate and `+ 1`
    // would overflow
    let d = (BAND_EXPONENT / c).sqrt();
    if !(d < full as f64) {
        return full;
    }
    d.floor() as usize + 1
}

/// Partial sum over one signed offset `d`:
/// e^{-c·d²}·e^{-i·d·χ}·Σ_i w_i·w_{i+|d|}·exp[iδ·d·(2(l_min+i)+|d|)].
fn offset_partial(w: &WeightedWindow<'_>, d: i64, delta: f64, c: f64, chi: f64) -> Complex64 {
    let ad = d.unsigned_abs() as usize;
    let n = w.weights.len();
    debug_assert!(ad < n);
    let count = n - ad;
    let df = d as f64;
    let envelope = (-c * df * df).exp();
    let mut z = Complex64::from_polar(1.0, delta * df * (2.0 * w.l_min as f64 + ad as f64));
    let rot = Complex64::from_polar(1.0, 2.0 * delta * df);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..count {
        let ww = w.weights[i] * w.weights[i + ad];
        acc += ww * z;
        z *= rot;
    }
    acc * envelope * Complex64::from_polar(1.0, -chi * df)
}

/// Full double series Σ w(l₁)w(l₂)·e^{iδ(l₁²-l₂²)}·e^{-c(l₁-l₂)²}·e^{i(l₂-l₁)χ}.
pub fn phased_sum(w: &WeightedWindow<'_>, delta: f64, c: f64, chi: f64) -> Complex64 {
    let d_max = band_limit(c, w.weights.len()) as i64;
    let total = (2 * d_max + 1) as usize;
    let (re, im) = parallel::sum_indexed(total, |idx| {
        let d = idx as i64 - d_max;
        let z = offset_partial(w, d, delta, c, chi);
        (z.re, z.im)
    });
    Complex64::new(re, im)
}

/// Sequential variant of [`phased_sum`], compiled regardless of features;
/// used by the benches to compare against the parallel path.
pub fn phased_sum_seq(w: &WeightedWindow<'_>, delta: f64, c: f64, chi: f64) -> Complex64 {
    let d_max = band_limit(c, w.weights.len()) as i64;
    let total = (2 * d_max + 1) as usize;
    let (re, im) = parallel::sum_indexed_seq(total, |idx| {
        let d = idx as i64 - d_max;
        let z = offset_partial(w, d, delta, c, chi);
        (z.re, z.im)
    });
    Complex64::new(re, im)
}

/// Phase-free double series Σ w(l₁)w(l₂)·e^{-c(l₁-l₂)²} (used for purity,
/// where the magnitude factor enters squared — pass the doubled exponent).
pub fn decayed_sum(w: &WeightedWindow<'_>, c: f64) -> f64 {
    let d_max = band_limit(c, w.weights.len());
    let partials = parallel::map_indexed(d_max + 1, |d| {
        let weights = w.weights;
        let n = weights.len();
        let mut s = 0.0;
        for i in 0..n - d {
            s += weights[i] * weights[i + d];
        }
        let df = d as f64;
        let factor = if d == 0 { 1.0 } else { 2.0 };
        factor * (-c * df * df).exp() * s
    });
    partials.into_iter().sum()
}

//! Closed-form field observables of the unitary optomechanical gate.
//!
//! The field density matrix after the (possibly imperfect, possibly
//! N-rescaled) gate is diagonal-window-banded in the Fock basis: entry
//! (l₁,l₂) is the Poisson amplitude product times a unit-modulus Kerr phase
//! Ψ(l₁,l₂) = exp[iB(l₁²-l₂²)] and a decoherence magnitude
//! ℳ(l₁,l₂) = exp[-C(l₁-l₂)²]. Both factors are fully described by the two
//! scalars B and C, which this module computes in closed form for the
//! continuous and pulsed regimes; [`kernel`](crate::kernel) then turns them
//! into fidelity, purity, and Q-function values.

use crate::error_models::RescaleFactor;
use crate::kernel::{self, WeightedWindow};
use crate::poisson::{
    self, coherent_amplitudes, poisson_weights_over, poisson_window, FockWindow,
};
use crate::{GateError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Threshold below which sin[(1+ξ)π/N_p] is treated as singular.
const SIN_SINGULAR_CUTOFF: f64 = 1e-8;
/// Maximum tolerated imaginary residual of a fidelity sum.
const IM_RESIDUAL_TOL: f64 = 1e-8;

/// Initial field state and numerical truncation budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    /// Coherent amplitude α ≥ 0 (real without loss of generality).
    pub alpha: f64,
    /// Mean thermal phonon occupation of the mechanics, n_th ≥ 0.
    pub n_th: f64,
    /// Poisson mass allowed outside the Fock window, per side.
    pub tail_eps: f64,
}

impl FieldParams {
    pub fn new(alpha: f64, n_th: f64) -> Result<Self> {
        Self::with_tail_eps(alpha, n_th, 1e-12)
    }

    pub fn with_tail_eps(alpha: f64, n_th: f64, tail_eps: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "alpha must be finite and non-negative, got {alpha}"
            )));
        }
        if !n_th.is_finite() || n_th < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "n_th must be finite and non-negative, got {n_th}"
            )));
        }
        if !(tail_eps > 0.0 && tail_eps < 1.0) {
            return Err(GateError::InvalidParameter(format!(
                "tail_eps must be in (0, 1), got {tail_eps}"
            )));
        }
        Ok(Self { alpha, n_th, tail_eps })
    }

    fn window(&self) -> Result<FockWindow> {
        poisson_window(self.alpha, self.tail_eps)
    }
}

/// Field density matrix after the gate, up to the Poisson amplitudes:
/// entry (l₁,l₂) carries phase exp[i·kerr_coeff·(l₁²-l₂²)] and magnitude
/// exp[-decay_coeff·(l₁-l₂)²].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesState {
    pub window: FockWindow,
    /// B: coefficient of (l₁²-l₂²) in the phase factor Ψ.
    pub kerr_coeff: f64,
    /// C ≥ 0: coefficient of (l₁-l₂)² in the magnitude factor ℳ.
    pub decay_coeff: f64,
}

impl SeriesState {
    /// Unit-modulus phase factor Ψ(l₁,l₂).
    pub fn phase(&self, l1: u64, l2: u64) -> Complex64 {
        let (a, b) = (l1 as f64, l2 as f64);
        Complex64::from_polar(1.0, self.kerr_coeff * (a * a - b * b))
    }

    /// Magnitude factor ℳ(l₁,l₂) ∈ (0, 1].
    pub fn magnitude(&self, l1: u64, l2: u64) -> f64 {
        let d = l1 as f64 - l2 as f64;
        (-self.decay_coeff * d * d).exp()
    }
}

/// Series state of the continuous gate run for scaled time (1+η)2πN² at
/// rescaled strength k/N.
pub fn series_continuous(
    f: &FieldParams,
    k: f64,
    eta: f64,
    n: RescaleFactor,
) -> Result<SeriesState> {
    check_strength(k)?;
    let window = f.window()?;
    let (kerr_coeff, decay_coeff) = match n {
        RescaleFactor::Infinity => (k * k * (1.0 + eta) * 2.0 * PI, 0.0),
        RescaleFactor::Finite(n) => {
            let n2 = (n as f64) * (n as f64);
            let over = eta * 2.0 * PI * n2;
            let b = k * k / n2 * ((1.0 + eta) * 2.0 * PI * n2 - over.sin());
            let c = k * k / n2 * (2.0 * f.n_th + 1.0) * (1.0 - over.cos());
            (b, c)
        }
    };
    Ok(SeriesState { window, kerr_coeff, decay_coeff })
}

/// Series state of the pulsed gate: N_p pulses of strength λ/N, each
/// advancing the mechanical rotation by (1+ξ)2π/N_p, repeated N² times.
pub fn series_pulsed(
    f: &FieldParams,
    lambda: f64,
    n_p: u64,
    xi: f64,
    n: RescaleFactor,
) -> Result<SeriesState> {
    check_strength(lambda)?;
    if n_p < 2 {
        return Err(GateError::InvalidParameter(format!(
            "n_p must be at least 2, got {n_p}"
        )));
    }
    let window = f.window()?;
    let half = (1.0 + xi) * PI / n_p as f64;
    if half.sin().abs() < SIN_SINGULAR_CUTOFF {
        return Err(GateError::SingularConfiguration(format!(
            "(1+xi)*pi/n_p = {half} is a multiple of pi; pulse phase increment degenerates"
        )));
    }
    let denom = 8.0 * half.sin() * half.sin();
    let (kerr_coeff, decay_coeff) = match n {
        RescaleFactor::Infinity => {
            (lambda * lambda * n_p as f64 * (2.0 * half).sin() / denom, 0.0)
        }
        RescaleFactor::Finite(n) => {
            let n2 = (n as f64) * (n as f64);
            let over = xi * 2.0 * PI * n2;
            let b = lambda * lambda / n2
                * (n2 * n_p as f64 * (2.0 * half).sin() - over.sin())
                / denom;
            let c = lambda * lambda / n2 * (2.0 * f.n_th + 1.0) * (1.0 - over.cos()) / denom;
            (b, c)
        }
    };
    Ok(SeriesState { window, kerr_coeff, decay_coeff })
}

/// Kerr coefficient of the ideal continuous gate, 2πk².
pub fn target_kerr_continuous(k: f64) -> f64 {
    2.0 * PI * k * k
}

/// Kerr coefficient of the ideal pulsed gate, λ²(N_p/4)·cot(π/N_p).
pub fn target_kerr_pulsed(lambda: f64, n_p: u64) -> f64 {
    let x = PI / n_p as f64;
    lambda * lambda * n_p as f64 / 4.0 * x.cos() / x.sin()
}

/// Overlap ⟨target|ρ_f|target⟩ with the ideal Kerr-evolved coherent state.
///
/// The double series is real by Hermiticity; an imaginary residual above
/// tolerance indicates a kernel defect and is reported as an error rather
/// than silently discarded.
pub fn fidelity(s: &SeriesState, f: &FieldParams, target_kerr: f64) -> Result<f64> {
    let weights = poisson_weights_over(f.alpha, s.window);
    let w = WeightedWindow { weights: &weights, l_min: s.window.l_min };
    let sum = kernel::phased_sum(&w, s.kerr_coeff - target_kerr, s.decay_coeff, 0.0);
    if sum.im.abs() > IM_RESIDUAL_TOL {
        return Err(GateError::InternalConsistency(format!(
            "fidelity series imaginary residual {} exceeds {IM_RESIDUAL_TOL}",
            sum.im
        )));
    }
    Ok(sum.re)
}

/// Field purity Tr(ρ_f²) = Σ w(l₁)w(l₂)·ℳ²(l₁,l₂).
pub fn purity(s: &SeriesState, f: &FieldParams) -> f64 {
    let weights = poisson_weights_over(f.alpha, s.window);
    let w = WeightedWindow { weights: &weights, l_min: s.window.l_min };
    kernel::decayed_sum(&w, 2.0 * s.decay_coeff)
}

/// Rectangular phase-space grid specification for Q-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QGridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    /// Points per axis (≥ 1; a single point evaluates at the lower corner).
    pub resolution: usize,
}

impl QGridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.resolution == 0 {
            return Err(GateError::InvalidParameter(
                "grid resolution must be at least 1".into(),
            ));
        }
        if !(self.re_min <= self.re_max && self.im_min <= self.im_max) {
            return Err(GateError::InvalidParameter(
                "grid ranges must be non-empty intervals".into(),
            ));
        }
        Ok(())
    }

    /// Axis coordinate `i` of `resolution` points spanning [lo, hi].
    fn coord(lo: f64, hi: f64, res: usize, i: usize) -> f64 {
        if res == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (res - 1) as f64
        }
    }
}

/// Sampled Husimi Q-function on a [`QGridSpec`] grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QGrid {
    pub spec: QGridSpec,
    /// Row-major: `values[row * resolution + col]` is Q at
    /// (re = coord(col), im = coord(row)).
    pub values: Vec<f64>,
}

impl QGrid {
    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.spec.resolution + col]
    }

    pub fn point(&self, row: usize, col: usize) -> (f64, f64) {
        (
            QGridSpec::coord(self.spec.re_min, self.spec.re_max, self.spec.resolution, col),
            QGridSpec::coord(self.spec.im_min, self.spec.im_max, self.spec.resolution, row),
        )
    }
}

/// Q at a single phase-space point β.
///
/// With β = r·e^{iχ}, the series reduces to the standard banded double sum
/// over amplitudes u(l) = exp(-α²/2 - r²/2 + l·ln(αr) - lnΓ(l+1)), a phase
/// offset -χ per unit offset, and the same (B, C) factors as fidelity.
pub fn qfunction_point(s: &SeriesState, f: &FieldParams, beta: Complex64) -> f64 {
    let r = beta.norm();
    let chi = if r == 0.0 { 0.0 } else { beta.arg() };
    let amps = q_amplitudes(f.alpha, r, s.window);
    let w = WeightedWindow { weights: &amps, l_min: s.window.l_min };
    let sum = kernel::phased_sum(&w, s.kerr_coeff, s.decay_coeff, chi);
    sum.re / PI
}

/// Q sampled over a grid; rows are evaluated independently (and in parallel
/// when the `parallel` feature is enabled).
pub fn qfunction(s: &SeriesState, f: &FieldParams, spec: QGridSpec) -> Result<QGrid> {
    spec.validate()?;
    let res = spec.resolution;
    let rows = crate::parallel::map_indexed(res, |row| {
        let im = QGridSpec::coord(spec.im_min, spec.im_max, res, row);
        let mut out = Vec::with_capacity(res);
        for col in 0..res {
            let re = QGridSpec::coord(spec.re_min, spec.re_max, res, col);
            out.push(qfunction_point_seq(s, f, Complex64::new(re, im)));
        }
        out
    });
    Ok(QGrid { spec, values: rows.into_iter().flatten().collect() })
}

/// Sequential single-point Q used inside the row-parallel grid loop (nesting
/// rayon inside rayon would only add scheduling overhead).
fn qfunction_point_seq(s: &SeriesState, f: &FieldParams, beta: Complex64) -> f64 {
    let r = beta.norm();
    let chi = if r == 0.0 { 0.0 } else { beta.arg() };
    let amps = q_amplitudes(f.alpha, r, s.window);
    let w = WeightedWindow { weights: &amps, l_min: s.window.l_min };
    let sum = kernel::phased_sum_seq(&w, s.kerr_coeff, s.decay_coeff, chi);
    sum.re / PI
}

/// u(l) = e^{-α²/2-r²/2}·(αr)^l/l!, in log space.
fn q_amplitudes(alpha: f64, r: f64, window: FockWindow) -> Vec<f64> {
    let x = alpha * r;
    (window.l_min..=window.l_max)
        .map(|l| {
            if x == 0.0 {
                return if l == 0 {
                    (-alpha * alpha / 2.0 - r * r / 2.0).exp()
                } else {
                    0.0
                };
            }
            (-alpha * alpha / 2.0 - r * r / 2.0 + l as f64 * x.ln()
                - statrs::function::gamma::ln_gamma(l as f64 + 1.0))
            .exp()
        })
        .collect()
}

/// Mean quadrature ⟨âe^{-iφ_q}+â†e^{iφ_q}⟩ after the mechanical-displacement
/// part of the error gate alone: the amplitude decays, the phase does not.
pub fn quadrature_mean_mech_error(f: &FieldParams, k: f64, eta: f64, phi_q: f64) -> f64 {
    let decay = -(2.0 * f.n_th + 1.0) * k * k * (1.0 - (eta * 2.0 * PI).cos());
    2.0 * f.alpha * phi_q.cos() * decay.exp()
}

/// Mean quadrature after the excess-Kerr part of the error gate alone: the
/// amplitude decays by the coherent-spread factor and the phase shifts by
/// α²sin(4πηk²) + 2πηk².
pub fn quadrature_mean_kerr_error(f: &FieldParams, k: f64, eta: f64, phi_q: f64) -> f64 {
    let a2 = f.alpha * f.alpha;
    let t = 4.0 * PI * eta * k * k;
    2.0 * f.alpha
        * (-a2 * (1.0 - t.cos())).exp()
        * (phi_q - a2 * t.sin() - 2.0 * PI * eta * k * k).cos()
}

fn check_strength(s: f64) -> Result<()> {
    if !s.is_finite() || s < 0.0 {
        return Err(GateError::InvalidParameter(format!(
            "interaction strength must be finite and non-negative, got {s}"
        )));
    }
    Ok(())
}

/// Export a [`QGrid`] row by row as `re,im,q` lines (no header).
pub fn qgrid_rows(grid: &QGrid) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
    let res = grid.spec.resolution;
    (0..res * res).map(move |idx| {
        let (row, col) = (idx / res, idx % res);
        let (re, im) = grid.point(row, col);
        (re, im, grid.value(row, col))
    })
}

/// Weights of the initial coherent state restricted to a window — exposed so
/// the oracle tests can build the matching target state.
pub fn target_amplitudes(f: &FieldParams, window: FockWindow) -> Vec<f64> {
    coherent_amplitudes(f.alpha, window)
}

/// Window used by all series at these field parameters.
pub fn field_window(f: &FieldParams) -> Result<FockWindow> {
    poisson::poisson_window(f.alpha, f.tail_eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error_models::unify_strength;
    use approx::assert_abs_diff_eq;

    fn fp(alpha: f64, n_th: f64) -> FieldParams {
        FieldParams::new(alpha, n_th).unwrap()
    }

    #[test]
    fn continuous_zero_error_is_pure_kerr() {
        let s = series_continuous(&fp(1.0, 0.0), 0.1, 0.0, RescaleFactor::new_finite(3).unwrap())
            .unwrap();
        assert_abs_diff_eq!(s.kerr_coeff, 2.0 * PI * 0.01, epsilon = 1e-15);
        assert_eq!(s.decay_coeff, 0.0);
        assert_eq!(s.magnitude(7, 3), 1.0);
    }

    #[test]
    fn continuous_infinite_n_has_no_decoherence() {
        let s = series_continuous(&fp(1.0, 100.0), 0.1, 0.07, RescaleFactor::Infinity).unwrap();
        assert_eq!(s.decay_coeff, 0.0);
        assert_abs_diff_eq!(s.kerr_coeff, 0.01 * 1.07 * 2.0 * PI, epsilon = 1e-15);
    }

    #[test]
    fn pulsed_zero_error_matches_polygon_kerr() {
        for &n_p in &[3u64, 4, 6, 17] {
            let s = series_pulsed(&fp(1.0, 0.0), 0.2, n_p, 0.0, RescaleFactor::new_finite(1).unwrap())
                .unwrap();
            assert_abs_diff_eq!(s.kerr_coeff, target_kerr_pulsed(0.2, n_p), epsilon = 1e-14);
            assert_abs_diff_eq!(s.decay_coeff, 0.0, epsilon = 1e-18);
        }
    }

    #[test]
    fn pulsed_singular_configuration_rejected() {
        // (1+xi)*pi/n_p = pi  =>  pulse rotation is a full turn
        let err = series_pulsed(&fp(1.0, 0.0), 0.1, 2, 1.0, RescaleFactor::new_finite(1).unwrap());
        assert!(matches!(err, Err(GateError::SingularConfiguration(_))));
    }

    #[test]
    fn zero_error_fidelity_and_purity_are_unity() {
        let f = fp(1.0, 0.0);
        let s = series_continuous(&f, 0.1, 0.0, RescaleFactor::new_finite(1).unwrap()).unwrap();
        let fid = fidelity(&s, &f, target_kerr_continuous(0.1)).unwrap();
        let pur = purity(&s, &f);
        assert_abs_diff_eq!(fid, 1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(pur, 1.0, epsilon = 1e-11);
    }

    #[test]
    fn infinite_n_purity_is_unity_for_any_error() {
        let f = fp(2.0, 50.0);
        let s = series_continuous(&f, 0.1, 0.09, RescaleFactor::Infinity).unwrap();
        assert_abs_diff_eq!(purity(&s, &f), 1.0, epsilon = 1e-11);
    }

    #[test]
    fn continuous_fidelity_ordering_matches_fig3() {
        // Fig. 3(b): at alpha=100, k=0.001, n_th=100, eta=0.05 the rescaling
        // N=10 lowers the continuous-gate fidelity relative to N=1.
        let f = fp(100.0, 100.0);
        let t = target_kerr_continuous(0.001);
        let f1 = fidelity(
            &series_continuous(&f, 0.001, 0.05, RescaleFactor::new_finite(1).unwrap()).unwrap(),
            &f,
            t,
        )
        .unwrap();
        let f10 = fidelity(
            &series_continuous(&f, 0.001, 0.05, RescaleFactor::new_finite(10).unwrap()).unwrap(),
            &f,
            t,
        )
        .unwrap();
        assert!(f10 < f1, "expected F(N=10) < F(N=1), got {f10} vs {f1}");
    }

    #[test]
    fn pulsed_fidelity_ordering_matches_fig4() {
        // Fig. 4(b): for the pulsed gate the same rescaling raises fidelity.
        let f = fp(100.0, 100.0);
        let t = target_kerr_pulsed(0.001, 6);
        let f1 = fidelity(
            &series_pulsed(&f, 0.001, 6, 0.05, RescaleFactor::new_finite(1).unwrap()).unwrap(),
            &f,
            t,
        )
        .unwrap();
        let f10 = fidelity(
            &series_pulsed(&f, 0.001, 6, 0.05, RescaleFactor::new_finite(10).unwrap()).unwrap(),
            &f,
            t,
        )
        .unwrap();
        assert!(f10 > f1, "expected F(N=10) > F(N=1), got {f10} vs {f1}");
    }

    #[test]
    fn continuous_purity_ordering_matches_fig3() {
        let f = fp(100.0, 100.0);
        let p: Vec<f64> = [1u64, 4, 10]
            .iter()
            .map(|&n| {
                purity(
                    &series_continuous(&f, 0.001, 0.05, RescaleFactor::new_finite(n).unwrap())
                        .unwrap(),
                    &f,
                )
            })
            .collect();
        assert!(p[0] < p[1] && p[1] < p[2], "purities {p:?} not increasing");
    }

    #[test]
    fn unified_pulsed_series_converges_to_continuous() {
        let f = fp(1.0, 0.5);
        let (k, err) = (0.1, 0.04);
        let target = series_continuous(&f, k, err, RescaleFactor::new_finite(2).unwrap()).unwrap();
        let mut prev_gap = f64::INFINITY;
        for &n_p in &[40u64, 400, 4000] {
            let lam = unify_strength(k, err, n_p);
            let s =
                series_pulsed(&f, lam, n_p, err, RescaleFactor::new_finite(2).unwrap()).unwrap();
            let gap = (s.kerr_coeff - target.kerr_coeff)
                .abs()
                .max((s.decay_coeff - target.decay_coeff).abs());
            assert!(gap < prev_gap, "gap {gap} did not shrink (n_p = {n_p})");
            prev_gap = gap;
        }
        // first-order convergence: gap ~ k²·O(1/n_p)
        assert!(prev_gap < 1e-7, "final gap {prev_gap}");
    }

    #[test]
    fn infinite_n_fidelity_is_smooth_in_error() {
        // §VI.A: "the fast oscillation is smoothened" — at N=inf the
        // fidelity decreases monotonically over a modest error range.
        let f = fp(10.0, 0.0);
        let t = target_kerr_continuous(0.01);
        let mut prev = f64::INFINITY;
        for i in 0..=10 {
            let eta = 0.01 * i as f64;
            let s = series_continuous(&f, 0.01, eta, RescaleFactor::Infinity).unwrap();
            let fid = fidelity(&s, &f, t).unwrap();
            assert!(fid < prev + 1e-15, "non-monotone at eta={eta}: {fid} vs {prev}");
            prev = fid;
        }
    }

    #[test]
    fn q_of_coherent_state_peaks_at_alpha() {
        let f = fp(1.0, 0.0);
        let s = series_continuous(&f, 0.0, 0.0, RescaleFactor::new_finite(1).unwrap()).unwrap();
        let peak = qfunction_point(&s, &f, Complex64::new(1.0, 0.0));
        assert_abs_diff_eq!(peak, 1.0 / PI, epsilon = 1e-11);
        // Q(beta) = (1/pi)·exp(-|beta-alpha|²) for a coherent state
        let off = qfunction_point(&s, &f, Complex64::new(0.5, 0.3));
        let expect = (1.0 / PI) * (-0.25f64 - 0.09).exp();
        assert_abs_diff_eq!(off, expect, epsilon = 1e-11);
    }

    #[test]
    fn qgrid_normalises() {
        let f = fp(1.0, 0.0);
        let s = series_continuous(&f, 0.1, 0.05, RescaleFactor::new_finite(1).unwrap()).unwrap();
        let spec = QGridSpec { re_min: -4.0, re_max: 5.0, im_min: -4.5, im_max: 4.5, resolution: 61 };
        let grid = qfunction(&s, &f, spec).unwrap();
        assert!(grid.values.iter().all(|&q| q >= -1e-14));
        let cell = (9.0 / 60.0) * (9.0 / 60.0);
        let mass: f64 = grid.values.iter().sum::<f64>() * cell;
        assert!((mass - 1.0).abs() < 0.02, "Riemann mass = {mass}");
    }

    #[test]
    fn quadrature_means_reduce_at_zero_error() {
        let f = fp(1.3, 0.7);
        assert_abs_diff_eq!(
            quadrature_mean_mech_error(&f, 0.1, 0.0, 0.4),
            2.0 * 1.3 * 0.4f64.cos(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            quadrature_mean_kerr_error(&f, 0.1, 0.0, 0.4),
            2.0 * 1.3 * 0.4f64.cos(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            quadrature_mean_mech_error(&f, 0.1, 0.3, std::f64::consts::FRAC_PI_2),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn fidelity_bounded_by_sqrt_purity() {
        let f = fp(3.0, 2.0);
        for &eta in &[0.01, 0.05, 0.1] {
            let s =
                series_continuous(&f, 0.2, eta, RescaleFactor::new_finite(1).unwrap()).unwrap();
            let fid = fidelity(&s, &f, target_kerr_continuous(0.2)).unwrap();
            let pur = purity(&s, &f);
            assert!(fid <= pur.sqrt() + 1e-10, "F={fid} > sqrt(P)={}", pur.sqrt());
        }
    }
}

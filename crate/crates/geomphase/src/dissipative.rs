//! Closed-form joint states and field observables with mechanical damping.
//!
//! The damped gate still produces a highly structured joint state: the field
//! Fock level l is entangled with the mechanical coherent state |ilΦ⟩, and
//! the (l₁,l₂) entry carries a real decoherence factor
//! A(l₁,l₂) = exp[-a(l₁-l₂)²] plus a unit-modulus Kerr phase
//! R(l₁,l₂) = exp[ir(l₁²-l₂²)]. Tracing out the mechanics multiplies A by
//! the coherent-state overlap ⟨il₂Φ|il₁Φ⟩ = exp[-|Φ|²(l₁-l₂)²/2], which is
//! real because the mechanical labels share the common scale Φ — so the
//! field state is again fully described by two scalars and the machinery of
//! [`analytic`](crate::analytic) applies unchanged.
//!
//! All rates are dimensionless: times are ω_m·t radians and `gamma_ratio`
//! is γ/ω_m. The mechanical bath is a vacuum bath and the initial state is
//! coherent field ⊗ vacuum mechanics.

use crate::analytic::{self, FieldParams, SeriesState};
use crate::error_models::{
    unify_strength, ConvergenceEntry, ConvergenceReport, RescaleFactor,
};
use crate::poisson::FockWindow;
use crate::{GateError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Below this |D| the pulse recurrence is resonant and the geometric series
/// degenerates.
const D_SINGULAR_CUTOFF: f64 = 1e-14;

/// Interference denominator D = |1 - e^{-iω_mΔt-γΔt/2}|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DFactor {
    pub value: f64,
}

/// D for a free-evolution interval of `omega_dt` radians with accumulated
/// damping exponent `gamma_dt` = γΔt.
pub fn d_factor(omega_dt: f64, gamma_dt: f64) -> DFactor {
    DFactor {
        value: 1.0 - 2.0 * (-gamma_dt / 2.0).exp() * omega_dt.cos() + (-gamma_dt).exp(),
    }
}

/// Pulsed gate with damped free-evolution intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipativePulsedParams {
    /// Per-pulse strength λ before rescaling.
    pub lambda: f64,
    /// Pulse count N_p before rescaling (the rescaled run uses N²N_p pulses
    /// of strength λ/N with the same interval).
    pub n_pulses: u64,
    /// Relative error ξ on the interval time.
    pub xi: f64,
    /// γ/ω_m ≥ 0.
    pub gamma_ratio: f64,
    pub n: RescaleFactor,
    /// Interval time in radians, ω_mΔt = (1+ξ)2π/N_p; fixed under rescaling.
    pub delta_t: f64,
}

impl DissipativePulsedParams {
    pub fn new(
        lambda: f64,
        n_pulses: u64,
        xi: f64,
        gamma_ratio: f64,
        n: RescaleFactor,
    ) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "lambda must be finite and non-negative, got {lambda}"
            )));
        }
        if n_pulses < 2 {
            return Err(GateError::InvalidParameter(format!(
                "n_pulses must be at least 2, got {n_pulses}"
            )));
        }
        if !gamma_ratio.is_finite() || gamma_ratio < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "gamma_ratio must be finite and non-negative, got {gamma_ratio}"
            )));
        }
        let delta_t = (1.0 + xi) * 2.0 * PI / n_pulses as f64;
        Ok(Self { lambda, n_pulses, xi, gamma_ratio, n, delta_t })
    }
}

/// Continuous gate under the Lindblad master equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipativeContinuousParams {
    /// Dimensionless strength k = g₀/√2ω_m before rescaling.
    pub k: f64,
    /// Relative error η on the interaction time.
    pub eta: f64,
    /// γ/ω_m ≥ 0.
    pub gamma_ratio: f64,
    pub n: RescaleFactor,
    /// Base interaction time in radians, ω_mt = (1+η)2π; the rescaled run
    /// uses N²·t at strength k/N.
    pub t_angle: f64,
}

impl DissipativeContinuousParams {
    pub fn new(k: f64, eta: f64, gamma_ratio: f64, n: RescaleFactor) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "k must be finite and non-negative, got {k}"
            )));
        }
        if !gamma_ratio.is_finite() || gamma_ratio < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "gamma_ratio must be finite and non-negative, got {gamma_ratio}"
            )));
        }
        let t_angle = (1.0 + eta) * 2.0 * PI;
        if t_angle < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "eta = {eta} makes the interaction time negative"
            )));
        }
        Ok(Self { k, eta, gamma_ratio, n, t_angle })
    }
}

/// Joint field–mechanics state after the damped gate.
///
/// Entry (l₁,l₂) of the joint state is the Poisson amplitude product times
/// `decoherence(l₁,l₂)·phase(l₁,l₂)`, with the mechanics in
/// |il₁Φ⟩⟨il₂Φ|. Field-only observables additionally pick up the mechanical
/// overlap, folded in by [`JointStateRep::field_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointStateRep {
    pub window: FockWindow,
    /// Mechanical coherent scale: the label at field level l is i·l·Φ.
    pub phi: Complex64,
    /// a ≥ 0: coefficient of (l₁-l₂)² in the joint decoherence factor A.
    pub decay_coeff: f64,
    /// r: coefficient of (l₁²-l₂²) in the joint Kerr phase R.
    pub kerr_phase: f64,
}

impl JointStateRep {
    /// Joint decoherence factor A(l₁,l₂) ∈ (0, 1].
    pub fn decoherence(&self, l1: u64, l2: u64) -> f64 {
        let d = l1 as f64 - l2 as f64;
        (-self.decay_coeff * d * d).exp()
    }

    /// Joint Kerr phase R(l₁,l₂).
    pub fn phase(&self, l1: u64, l2: u64) -> Complex64 {
        let (a, b) = (l1 as f64, l2 as f64);
        Complex64::from_polar(1.0, self.kerr_phase * (a * a - b * b))
    }

    /// Decay coefficient of the reduced field state: the joint coefficient
    /// plus |Φ|²/2 from the mechanical coherent-state overlap.
    pub fn total_decay_coeff(&self) -> f64 {
        self.decay_coeff + 0.5 * self.phi.norm_sqr()
    }

    /// Reduced field state in the same scalar form the unitary module uses.
    pub fn field_series(&self) -> SeriesState {
        SeriesState {
            window: self.window,
            kerr_coeff: self.kerr_phase,
            decay_coeff: self.total_decay_coeff(),
        }
    }
}

/// State after N²N_p pulses of strength λ/N separated by damped intervals.
pub fn pulsed_dissipative_state(
    f: &FieldParams,
    p: &DissipativePulsedParams,
) -> Result<JointStateRep> {
    let window = analytic::field_window(f)?;
    let tau = p.delta_t;
    let g = p.gamma_ratio * tau;
    let d = d_factor(tau, g).value;
    if d.abs() < D_SINGULAR_CUTOFF {
        return Err(GateError::SingularConfiguration(format!(
            "interference denominator D = {d} vanishes (lossless resonant interval)"
        )));
    }
    let n_p = p.n_pulses as f64;
    match p.n {
        RescaleFactor::Infinity => {
            // λ/N → 0 while N²N_p → ∞: the residual displacement vanishes
            // and per-offset decay and phase approach finite limits.
            let l2 = p.lambda * p.lambda;
            let decay_coeff = l2 / 4.0 * (-(-g).exp_m1()) * n_p / d;
            let kerr_phase = l2 / 2.0 * n_p * (-g / 2.0).exp() * tau.sin() / d;
            Ok(JointStateRep { window, phi: Complex64::new(0.0, 0.0), decay_coeff, kerr_phase })
        }
        RescaleFactor::Finite(n) => {
            let nf = n as f64;
            let lam = p.lambda / nf;
            let m = nf * nf * n_p; // total pulse count N²N_p
            let l2 = lam * lam;
            let q = Complex64::from_polar((-g / 2.0).exp(), -tau);
            let phi = lam / f64::sqrt(2.0) * (Complex64::new(1.0, 0.0) - q.powf(m))
                / (Complex64::new(1.0, 0.0) - q);
            // A-exponent: the (1-e^{-g}) prefactor is multiplied through so
            // every term vanishes cleanly at γ=0 instead of cancelling.
            let em_g = (-g).exp();
            let one_minus = -(-g).exp_m1(); // 1 - e^{-g}
            let bracket = one_minus * (m - 1.0)
                + em_g * (-(-(m - 1.0) * g).exp_m1())
                - one_minus * 2.0 / d
                    * ((-g / 2.0).exp() * tau.cos() - em_g
                        - (-m * g / 2.0).exp() * (m * tau).cos()
                        + (-(m + 1.0) * g / 2.0).exp() * ((m - 1.0) * tau).cos());
            let decay_coeff = l2 / 4.0 / d * bracket;
            let kerr_phase = l2 / 2.0
                * ((m - 1.0) * (-g / 2.0).exp() * tau.sin() / d
                    - ((-g).exp() * (2.0 * tau).sin()
                        - (-(m + 1.0) * g / 2.0).exp() * ((m + 1.0) * tau).sin()
                        - 2.0 * (-1.5 * g).exp() * tau.sin()
                        + 2.0 * (-(m + 2.0) * g / 2.0).exp() * (m * tau).sin()
                        - (-(m + 3.0) * g / 2.0).exp() * ((m - 1.0) * tau).sin())
                        / (d * d));
            Ok(JointStateRep { window, phi, decay_coeff, kerr_phase })
        }
    }
}

/// State after continuous damped evolution for time N²(1+η)2π at strength
/// k/N.
pub fn continuous_dissipative_state(
    f: &FieldParams,
    p: &DissipativeContinuousParams,
) -> Result<JointStateRep> {
    let window = analytic::field_window(f)?;
    let gr = p.gamma_ratio;
    let denom = 4.0 + gr * gr;
    match p.n {
        RescaleFactor::Infinity => {
            let k2 = p.k * p.k;
            let decay_coeff = 2.0 * k2 / denom * gr * p.t_angle;
            let kerr_phase = 4.0 * k2 / denom * p.t_angle;
            Ok(JointStateRep { window, phi: Complex64::new(0.0, 0.0), decay_coeff, kerr_phase })
        }
        RescaleFactor::Finite(n) => {
            let nf = n as f64;
            let k = p.k / nf;
            let s = nf * nf * p.t_angle;
            let k2 = k * k;
            let half = Complex64::new(gr / 2.0, 1.0); // iω_m + γ/2 in units of ω_m
            // g₀/√2 = kω_m, so the coherent scale is k/(i + γ/2ω_m)·(1-e^{-(i+γ/2ω_m)s})
            let phi = k / half * (Complex64::new(1.0, 0.0) - (-half * s).exp());
            let eg = (-gr * s / 2.0).exp(); // e^{-γs/2}
            // A_t exponent, grouped so every γ-dependent term vanishes at γ=0
            // without cancellation against γs.
            let a_bracket = gr * s - (-gr * s).exp_m1()
                - 4.0 * gr * gr / denom * (1.0 - eg * s.cos())
                - 8.0 * gr / denom * eg * s.sin();
            let decay_coeff = 2.0 * k2 / denom * a_bracket;
            let kerr_phase = 4.0 * k2 / denom
                * (s - eg * (4.0 - gr * gr) / denom * s.sin()
                    - 4.0 * gr / denom * (1.0 - eg * s.cos()));
            Ok(JointStateRep { window, phi, decay_coeff, kerr_phase })
        }
    }
}

/// Gate fidelity of the damped field state against the ideal Kerr target.
pub fn fidelity_dissipative(
    state: &JointStateRep,
    f: &FieldParams,
    target_kerr: f64,
) -> Result<f64> {
    require_vacuum_mechanics(f)?;
    analytic::fidelity(&state.field_series(), f, target_kerr)
}

/// Purity of the damped field state.
pub fn purity_dissipative(state: &JointStateRep, f: &FieldParams) -> Result<f64> {
    require_vacuum_mechanics(f)?;
    Ok(analytic::purity(&state.field_series(), f))
}

fn require_vacuum_mechanics(f: &FieldParams) -> Result<()> {
    if f.n_th != 0.0 {
        return Err(GateError::UnsupportedParameter(format!(
            "dissipative closed forms assume an initial mechanical vacuum (n_th = 0), got n_th = {}",
            f.n_th
        )));
    }
    Ok(())
}

/// Convergence of the pulsed damped gate to the continuous one when the
/// pulse strength is slaved to λ = √2k(1+η)2π/N_p and N_p grows.
///
/// The fidelity target of the pulsed gate uses the error-free strength
/// √2k·2π/N_p: the target state knows nothing about the timing error.
///
/// The per-N_p distance is the maximum gap over the full state description
/// (residual mechanical label Φ, excess Kerr coefficient, field decay
/// coefficient) and the derived F̃/P̃ values. The state-level gaps shrink at
/// first order in 1/N_p — the same rate as the unitary decomposition — while
/// F̃ and P̃ themselves converge faster because the target-phase replacement
/// cancels the first-order Kerr mismatch.
pub fn dissipative_unification_check(
    f: &FieldParams,
    k: f64,
    eta: f64,
    gamma_ratio: f64,
    n: RescaleFactor,
    n_p_sequence: &[u64],
) -> Result<ConvergenceReport> {
    if n_p_sequence.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GateError::InvalidParameter(
            "n_p_sequence must be strictly increasing".into(),
        ));
    }
    let cont = continuous_dissipative_state(
        f,
        &DissipativeContinuousParams::new(k, eta, gamma_ratio, n)?,
    )?;
    let f_c = fidelity_dissipative(&cont, f, analytic::target_kerr_continuous(k))?;
    let p_c = purity_dissipative(&cont, f)?;
    let mut entries = Vec::with_capacity(n_p_sequence.len());
    for &n_p in n_p_sequence {
        let lambda = unify_strength(k, eta, n_p);
        let state = pulsed_dissipative_state(
            f,
            &DissipativePulsedParams::new(lambda, n_p, eta, gamma_ratio, n)?,
        )?;
        let lambda_ideal = f64::sqrt(2.0) * k * 2.0 * PI / n_p as f64;
        let target = analytic::target_kerr_pulsed(lambda_ideal, n_p);
        let f_p = fidelity_dissipative(&state, f, target)?;
        let p_p = purity_dissipative(&state, f)?;
        let target_c = analytic::target_kerr_continuous(k);
        let distance = [
            (state.phi - cont.phi).norm(),
            ((state.kerr_phase - target) - (cont.kerr_phase - target_c)).abs(),
            (state.total_decay_coeff() - cont.total_decay_coeff()).abs(),
            (f_p - f_c).abs(),
            (p_p - p_c).abs(),
        ]
        .into_iter()
        .fold(0.0f64, f64::max);
        entries.push(ConvergenceEntry { level: n_p, distance });
    }
    Ok(ConvergenceReport::from_entries(entries))
}

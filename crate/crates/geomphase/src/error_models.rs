//! Coefficient-level decomposition of imperfect gates under the
//! interaction-strength rescaling transformation.
//!
//! Reducing the strength by a factor N while traversing the mechanical phase
//! space N² more times (longer time for the continuous gate, more pulses for
//! the pulsed gate) shrinks the loop but keeps the enclosed area. The gate
//! then factors into a mechanical-entangling error gate, a self-Kerr error
//! gate and the target gate; this module holds all three as plain coefficient
//! triples/quadruples, with the target-mode operator Ô left symbolic.

use crate::phase_space::{continuous_coefficients, ContinuousParams};
use crate::{GateError, Result};
use std::f64::consts::{PI, SQRT_2, TAU};

/// The rescale factor N. The N→∞ limit is a first-class value: the paper's
/// limit expressions are evaluated in closed form, because the finite-N
/// oscillations sin/cos(η·2πN²) never converge pointwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RescaleFactor {
    Finite(u64),
    Infinity,
}

impl RescaleFactor {
    pub fn new_finite(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(GateError::InvalidParameter("rescale factor must be >= 1".into()));
        }
        Ok(Self::Finite(n))
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Self::Finite(n) => Some(*n as f64),
            Self::Infinity => None,
        }
    }
}

impl std::fmt::Display for RescaleFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(n) => write!(f, "{n}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

/// Decomposition of an imperfect gate into a mechanical error gate (the x̂
/// and p̂ coefficients per unit Ô), a self-Kerr error gate and the target
/// gate (coefficients of Ô²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorGateDecomposition {
    pub mech_disp_x: f64,
    pub mech_disp_p: f64,
    pub kerr_error: f64,
    pub kerr_target: f64,
}

impl ErrorGateDecomposition {
    /// Magnitude of the mechanical entanglement vector.
    pub fn mech_magnitude(&self) -> f64 {
        self.mech_disp_x.hypot(self.mech_disp_p)
    }

    /// Total Kerr phase (error plus target).
    pub fn kerr_total(&self) -> f64 {
        self.kerr_error + self.kerr_target
    }
}

/// Continuous gate with relative interaction-time error η, strength k,
/// rescale factor N. The |η| ≪ 1 regime of interest is not enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmErrorParams {
    pub k: f64,
    pub eta: f64,
    pub n: RescaleFactor,
}

impl SmErrorParams {
    pub fn new(k: f64, eta: f64, n: RescaleFactor) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "k must be finite and non-negative, got {k}"
            )));
        }
        if !eta.is_finite() {
            return Err(GateError::InvalidParameter("eta must be finite".into()));
        }
        Ok(Self { k, eta, n })
    }
}

/// Pulsed gate with relative phase-increment error ξ (θ' = (1+ξ)2π/N_p),
/// strength λ, base pulse count N_p, rescale factor N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MilburnErrorParams {
    pub lambda: f64,
    pub n_pulses: u64,
    pub xi: f64,
    pub n: RescaleFactor,
}

impl MilburnErrorParams {
    pub fn new(lambda: f64, n_pulses: u64, xi: f64, n: RescaleFactor) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "lambda must be finite and non-negative, got {lambda}"
            )));
        }
        if n_pulses < 2 {
            return Err(GateError::InvalidParameter("n_pulses must be >= 2".into()));
        }
        if !xi.is_finite() {
            return Err(GateError::InvalidParameter("xi must be finite".into()));
        }
        Ok(Self { lambda, n_pulses, xi, n })
    }
}

/// Error decomposition of the continuous gate at interaction time
/// t' = N²(1+η)2π/ω_m and strength k/N:
///
/// mech_x = √2(k/N)sin(η2πN²), mech_p = -√2(k/N)(1-cos(η2πN²)),
/// kerr_error = k²[η2π - sin(η2πN²)/N²], kerr_target = 2πk².
///
/// At N = ∞ the mechanical parts vanish exactly and kerr_error = 2πk²η: the
/// self-Kerr error gate does not become the identity in the limit.
pub fn sm_error_gate(p: SmErrorParams) -> ErrorGateDecomposition {
    let kerr_target = TAU * p.k * p.k;
    match p.n {
        RescaleFactor::Finite(n) => {
            let n = n as f64;
            let phase = p.eta * TAU * n * n;
            ErrorGateDecomposition {
                mech_disp_x: SQRT_2 * (p.k / n) * phase.sin(),
                mech_disp_p: -SQRT_2 * (p.k / n) * (1.0 - phase.cos()),
                kerr_error: p.k * p.k * (p.eta * TAU - phase.sin() / (n * n)),
                kerr_target,
            }
        }
        RescaleFactor::Infinity => ErrorGateDecomposition {
            mech_disp_x: 0.0,
            mech_disp_p: 0.0,
            kerr_error: kerr_target * p.eta,
            kerr_target,
        },
    }
}

/// Error decomposition of the pulsed gate at phase increment
/// θ' = (1+ξ)2π/N_p, strength λ/N and N²N_p pulses.
///
/// At N = ∞ the mechanical error gate is exactly the identity and the Kerr
/// error keeps only the cotangent-difference term.
pub fn milburn_error_gate(p: MilburnErrorParams) -> ErrorGateDecomposition {
    let np = p.n_pulses as f64;
    let l2 = p.lambda * p.lambda;
    let cot_ideal = 1.0 / (PI / np).tan();
    let half_err = PI * (1.0 + p.xi) / np; // π/N_p + ξπ/N_p
    let cot_err = 1.0 / half_err.tan();
    let kerr_target = l2 * (np / 4.0) * cot_ideal;
    match p.n {
        RescaleFactor::Finite(n) => {
            let nf = n as f64;
            // Δ = N²ξ2π - (1+ξ)2π/N_p
            let delta = nf * nf * p.xi * TAU - (1.0 + p.xi) * TAU / np;
            let (sin_d, cos_d) = delta.sin_cos();
            let pref = p.lambda / nf;
            let mech_disp_x = pref * (0.5 + 0.5 * cos_d + 0.5 * sin_d * cot_err);
            let mech_disp_p = -pref * (0.5 * cot_err + 0.5 * sin_d - 0.5 * cos_d * cot_err);
            let kerr_error = l2
                * ((np / 4.0) * (cot_err - cot_ideal)
                    - (nf * nf * p.xi * TAU).sin()
                        / (8.0 * nf * nf * half_err.sin() * half_err.sin()));
            ErrorGateDecomposition { mech_disp_x, mech_disp_p, kerr_error, kerr_target }
        }
        RescaleFactor::Infinity => ErrorGateDecomposition {
            mech_disp_x: 0.0,
            mech_disp_p: 0.0,
            kerr_error: l2 * (np / 4.0) * (cot_err - cot_ideal),
            kerr_target,
        },
    }
}

/// First-order Taylor forms of the pulsed Kerr error:
/// -λ²πξ/(2sin²(π/N_p)) for N = 1 and -λ²πξ/(4sin²(π/N_p)) for N = ∞.
/// The paper provides these two cases only; other N are rejected.
pub fn milburn_kerr_taylor(p: MilburnErrorParams) -> Result<f64> {
    let s = (PI / p.n_pulses as f64).sin();
    let base = -p.lambda * p.lambda * PI * p.xi / (s * s);
    match p.n {
        RescaleFactor::Finite(1) => Ok(base / 2.0),
        RescaleFactor::Infinity => Ok(base / 4.0),
        RescaleFactor::Finite(n) => Err(GateError::UnsupportedParameter(format!(
            "Kerr Taylor form is only available for N = 1 or N = ∞, got N = {n}"
        ))),
    }
}

/// The strength map that unifies the two regimes: λ = √2·k·(1+ξ)·2π/N_p.
/// With this λ the pulsed decomposition tends to the continuous one as
/// N_p → ∞ (after renaming ξ to η).
pub fn unify_strength(k: f64, xi: f64, n_pulses: u64) -> f64 {
    SQRT_2 * k * (1.0 + xi) * TAU / n_pulses as f64
}

/// Error-free version of the same map, used for the target-gate phase when
/// comparing the two regimes (the target carries no relative error).
pub fn unify_strength_ideal(k: f64, n_pulses: u64) -> f64 {
    SQRT_2 * k * TAU / n_pulses as f64
}

/// One row of a convergence report: discretisation level and measured
/// distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceEntry {
    pub level: u64,
    pub distance: f64,
}

/// Distances against a limit for an increasing sequence of levels, plus the
/// slope of log(distance) vs log(level) when it is well defined.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub entries: Vec<ConvergenceEntry>,
    pub slope: Option<f64>,
}

impl ConvergenceReport {
    pub fn from_entries(entries: Vec<ConvergenceEntry>) -> Self {
        let slope = fit_log_slope(&entries);
        Self { entries, slope }
    }
}

/// Least-squares slope of ln(distance) against ln(level), ignoring exact
/// zeros (which occur in error-free configurations).
pub fn fit_log_slope(entries: &[ConvergenceEntry]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = entries
        .iter()
        .filter(|e| e.distance > 0.0 && e.level > 0)
        .map(|e| ((e.level as f64).ln(), e.distance.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-30 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Componentwise distance between the pulsed decomposition evaluated with
/// the unified strength and the continuous decomposition. The Kerr parts are
/// compared as totals (error + target): the unified λ carries the relative
/// error, which at finite N_p redistributes Kerr phase between the error
/// gate and the target gate without changing their product.
pub fn unified_distance(k: f64, eta: f64, n: RescaleFactor, n_pulses: u64) -> Result<f64> {
    let lambda = unify_strength(k, eta, n_pulses);
    let milburn = milburn_error_gate(MilburnErrorParams::new(lambda, n_pulses, eta, n)?);
    let sm = sm_error_gate(SmErrorParams::new(k, eta, n)?);
    Ok((milburn.mech_disp_x - sm.mech_disp_x)
        .abs()
        .max((milburn.mech_disp_p - sm.mech_disp_p).abs())
        .max((milburn.kerr_total() - sm.kerr_total()).abs()))
}

/// Convergence of the unified pulsed decomposition to the continuous one
/// over an increasing sequence of pulse counts.
pub fn unification_suite(
    k: f64,
    eta: f64,
    n: RescaleFactor,
    n_p_sequence: &[u64],
) -> Result<ConvergenceReport> {
    if !n_p_sequence.windows(2).all(|w| w[0] < w[1]) {
        return Err(GateError::InvalidParameter(
            "n_p_sequence must be strictly increasing".into(),
        ));
    }
    let entries = n_p_sequence
        .iter()
        .map(|&np| {
            Ok(ConvergenceEntry {
                level: np,
                distance: unified_distance(k, eta, n, np)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::from_entries(entries))
}

/// Consistency of the N = 1 continuous decomposition with the plain loop
/// coefficients at φ = (1+η)2π: the mechanical parts match (d₁, -d₂) and the
/// total Kerr phase equals d₃ (identically, since
/// k²[η2π - sin(η2π)] + 2πk² = k²[φ - sinφ] at φ = (1+η)2π).
pub fn sm_composition_residual(k: f64, eta: f64) -> Result<f64> {
    let dec = sm_error_gate(SmErrorParams::new(k, eta, RescaleFactor::Finite(1))?);
    let loop_c = continuous_coefficients(ContinuousParams::new(k, (1.0 + eta) * TAU)?);
    Ok((dec.mech_disp_x - loop_c.disp_x)
        .abs()
        .max((-dec.mech_disp_p - loop_c.disp_p).abs())
        .max((dec.kerr_total() - loop_c.kerr).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sm_perfect_gate_collapses_to_target() {
        for n in [RescaleFactor::Finite(1), RescaleFactor::Finite(7), RescaleFactor::Infinity] {
            let d = sm_error_gate(SmErrorParams::new(0.4, 0.0, n).unwrap());
            assert_eq!(d.mech_disp_x, 0.0);
            assert_eq!(d.mech_disp_p, 0.0);
            assert_eq!(d.kerr_error, 0.0);
            assert_abs_diff_eq!(d.kerr_target, TAU * 0.16, epsilon = 1e-14);
        }
    }

    #[test]
    fn sm_infinite_rescale_keeps_kerr_error() {
        let d = sm_error_gate(SmErrorParams::new(0.3, 0.07, RescaleFactor::Infinity).unwrap());
        assert_eq!(d.mech_disp_x, 0.0);
        assert_eq!(d.mech_disp_p, 0.0);
        assert_abs_diff_eq!(d.kerr_error, TAU * 0.09 * 0.07, epsilon = 1e-15);
    }

    #[test]
    fn sm_n1_direct_evaluation() {
        let d = sm_error_gate(
            SmErrorParams::new(1e-3, 0.05, RescaleFactor::Finite(1)).unwrap(),
        );
        assert_abs_diff_eq!(
            d.mech_disp_x,
            SQRT_2 * 1e-3 * (0.1 * PI).sin(),
            epsilon = 1e-18
        );
        assert_abs_diff_eq!(
            d.kerr_error,
            1e-6 * (0.1 * PI - (0.1 * PI).sin()),
            epsilon = 1e-20
        );
    }

    #[test]
    fn milburn_perfect_gate_collapses_to_target() {
        for n in [RescaleFactor::Finite(1), RescaleFactor::Finite(5), RescaleFactor::Infinity] {
            let d = milburn_error_gate(MilburnErrorParams::new(0.2, 6, 0.0, n).unwrap());
            assert_abs_diff_eq!(d.mech_disp_x, 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(d.mech_disp_p, 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(d.kerr_error, 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(
                d.kerr_target,
                0.04 * 1.5 / (PI / 6.0).tan(),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn milburn_kerr_error_first_order() {
        // small ξ: finite-N expression approaches the printed Taylor forms
        let lambda = 1e-3;
        let xi = 1e-5;
        for (n, divisor) in [(RescaleFactor::Finite(1), 2.0), (RescaleFactor::Infinity, 4.0)] {
            let d = milburn_error_gate(MilburnErrorParams::new(lambda, 6, xi, n).unwrap());
            let taylor = -lambda * lambda * PI * xi / (divisor * (PI / 6.0).sin().powi(2));
            assert_abs_diff_eq!(d.kerr_error, taylor, epsilon = taylor.abs() * 1e-3);
        }
    }

    #[test]
    fn kerr_taylor_values_and_ratio() {
        let p1 = MilburnErrorParams::new(1e-3, 6, 0.01, RescaleFactor::Finite(1)).unwrap();
        let t1 = milburn_kerr_taylor(p1).unwrap();
        // -10⁻⁶·π·0.01/(2·sin²(π/6)) = -2π×10⁻⁸
        assert_abs_diff_eq!(t1, -TAU * 1e-8, epsilon = 1e-22);
        let pinf = MilburnErrorParams::new(1e-3, 6, 0.01, RescaleFactor::Infinity).unwrap();
        let tinf = milburn_kerr_taylor(pinf).unwrap();
        assert_abs_diff_eq!(t1 / tinf, 2.0, epsilon = 1e-12);
        // ξ = 0 gives zero
        let p0 = MilburnErrorParams::new(1e-3, 6, 0.0, RescaleFactor::Finite(1)).unwrap();
        assert_eq!(milburn_kerr_taylor(p0).unwrap(), 0.0);
        // other finite N unsupported
        let p3 = MilburnErrorParams::new(1e-3, 6, 0.01, RescaleFactor::Finite(3)).unwrap();
        assert!(milburn_kerr_taylor(p3).is_err());
    }

    #[test]
    fn unify_strength_values() {
        assert_abs_diff_eq!(
            unify_strength(0.4, 0.0, 6),
            SQRT_2 * 0.4 * TAU / 6.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            unify_strength(1e-3, 0.05, 6),
            SQRT_2 * 1e-3 * 1.05 * PI / 3.0,
            epsilon = 1e-18
        );
    }

    #[test]
    fn mech_error_suppression_envelope() {
        let k = 0.3;
        let eta = 0.07;
        for n in [1_u64, 2, 5, 20, 100] {
            let d = sm_error_gate(
                SmErrorParams::new(k, eta, RescaleFactor::Finite(n)).unwrap(),
            );
            assert!(d.mech_magnitude() <= 2.0 * SQRT_2 * k / n as f64 + 1e-15);
        }
        let d = sm_error_gate(SmErrorParams::new(k, eta, RescaleFactor::Infinity).unwrap());
        assert_eq!(d.mech_magnitude(), 0.0);
    }

    #[test]
    fn unification_distance_shrinks_first_order() {
        let report = unification_suite(
            1e-3,
            0.05,
            RescaleFactor::Finite(1),
            &[10, 100, 1000],
        )
        .unwrap();
        let d: Vec<f64> = report.entries.iter().map(|e| e.distance).collect();
        assert!(d[0] > d[1] && d[1] > d[2]);
        let slope = report.slope.unwrap();
        assert!((-1.1..=-0.9).contains(&slope), "slope = {slope}");
    }

    #[test]
    fn unification_exact_at_zero_error() {
        for np in [6_u64, 60, 600] {
            let d = unified_distance(1e-3, 0.0, RescaleFactor::Finite(1), np).unwrap();
            // mech parts vanish identically; Kerr totals agree only in the
            // N_p → ∞ limit, so compare against the discretisation scale
            assert!(d <= 2e-6 * TAU / np as f64 * 10.0, "distance {d} at N_p = {np}");
        }
    }

    #[test]
    fn unification_infinity_branch() {
        let report = unification_suite(
            1e-3,
            0.05,
            RescaleFactor::Infinity,
            &[10, 100, 1000, 10000],
        )
        .unwrap();
        let last = report.entries.last().unwrap().distance;
        assert!(last < 1e-12, "kerr distance should vanish, got {last}");
    }

    #[test]
    fn composition_consistency_continuous() {
        // N = 1 decomposition against the raw loop coefficients at φ = (1+η)2π
        for &eta in &[-0.1, -0.03, 0.0, 0.02, 0.1] {
            let k = 0.27;
            let d = sm_error_gate(SmErrorParams::new(k, eta, RescaleFactor::Finite(1)).unwrap());
            let c = continuous_coefficients(
                ContinuousParams::new(k, ((1.0 + eta) * TAU).max(0.0)).unwrap(),
            );
            assert_abs_diff_eq!(d.mech_disp_x, c.disp_x, epsilon = 1e-12);
            assert_abs_diff_eq!(-d.mech_disp_p, c.disp_p, epsilon = 1e-12);
            assert_abs_diff_eq!(d.kerr_total(), c.kerr, epsilon = 1e-12);
        }
    }

    #[test]
    fn composition_consistency_pulsed() {
        use crate::phase_space::{pulsed_coefficients, PulseParams};
        for &xi in &[-0.1, -0.05, 0.0, 0.05, 0.1] {
            let lambda = 0.3;
            let np = 6;
            let d = milburn_error_gate(
                MilburnErrorParams::new(lambda, np, xi, RescaleFactor::Finite(1)).unwrap(),
            );
            let theta = (1.0 + xi) * TAU / np as f64;
            let c = pulsed_coefficients(PulseParams::new(lambda, theta, np).unwrap());
            assert_abs_diff_eq!(d.mech_disp_x, c.disp_x, epsilon = 1e-12);
            assert_abs_diff_eq!(-d.mech_disp_p, c.disp_p, epsilon = 1e-12);
            assert_abs_diff_eq!(d.kerr_total(), c.kerr, epsilon = 1e-12);
        }
    }
}

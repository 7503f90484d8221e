//! Loop coefficients and mechanical phase-space geometry of the two gate
//! regimes.
//!
//! The pulsed gate is a product of `n_pulses` kicks generated by
//! `(b̂ e^{inθ} + b̂† e^{-inθ})/√2 = x̂ cos(nθ) - p̂ sin(nθ)`; the fixed
//! relative sign between the `x̂` and `p̂` parts is the sign convention
//! carried by the whole crate. Collapsing the product with the
//! Baker–Campbell–Hausdorff formula leaves a displacement part
//! `exp[iÔ(c₁x̂ - c₂p̂)]` and a self-Kerr part `exp[iÔ²c₃]`; this module
//! computes `(c₁, c₂, c₃)` (and their continuous-regime analogues
//! `(d₁, d₂, d₃)`) in closed form, by direct pulse-by-pulse accumulation,
//! and as signed areas of the traversed figure.

use crate::{GateError, Result};
use std::f64::consts::{PI, TAU};

/// Below this value of |sin(θ/2)| the closed forms (which carry sin(θ/2)
/// denominators) are abandoned for the pulse-by-pulse accumulation.
const SIN_HALF_THETA_CUTOFF: f64 = 1e-8;

/// Parameters of the pulsed (Milburn) gate: `n_pulses` kicks of strength
/// `lambda`, adjacent kick directions separated by `theta` radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseParams {
    pub lambda: f64,
    pub theta: f64,
    pub n_pulses: u64,
}

impl PulseParams {
    pub fn new(lambda: f64, theta: f64, n_pulses: u64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "lambda must be finite and non-negative, got {lambda}"
            )));
        }
        if !theta.is_finite() {
            return Err(GateError::InvalidParameter("theta must be finite".into()));
        }
        if n_pulses == 0 {
            return Err(GateError::InvalidParameter("n_pulses must be >= 1".into()));
        }
        Ok(Self { lambda, theta, n_pulses })
    }
}

/// Parameters of the continuous (Sørensen–Mølmer) gate: rescaled strength
/// `k` and total swept angle `phi = ω_m t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousParams {
    pub k: f64,
    pub phi: f64,
}

impl ContinuousParams {
    pub fn new(k: f64, phi: f64) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "k must be finite and non-negative, got {k}"
            )));
        }
        if !phi.is_finite() || phi < 0.0 {
            return Err(GateError::InvalidParameter(format!(
                "phi must be finite and non-negative, got {phi}"
            )));
        }
        Ok(Self { k, phi })
    }
}

/// The coefficient triple characterising a gate in either regime:
/// displacement parts `disp_x` (c₁/d₁) and `disp_p` (c₂/d₂), and the
/// self-Kerr phase `kerr` (c₃/d₃).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopCoefficients {
    pub disp_x: f64,
    pub disp_p: f64,
    pub kerr: f64,
}

impl LoopCoefficients {
    /// Componentwise maximum absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.disp_x - other.disp_x)
            .abs()
            .max((self.disp_p - other.disp_p).abs())
            .max((self.kerr - other.kerr).abs())
    }
}

/// Total swept angle decomposed as `2π·full_loops + net` with `net ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweptAngle {
    pub full_loops: u64,
    pub net: OrderedNet,
}

/// Net angle newtype so `SweptAngle` can stay `Eq`-free of NaN concerns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderedNet(pub f64);

impl Eq for OrderedNet {}

/// Decompose a non-negative total angle into full loops plus net remainder.
pub fn swept_angle(total: f64) -> Result<SweptAngle> {
    if !total.is_finite() || total < 0.0 {
        return Err(GateError::InvalidParameter(format!(
            "total angle must be finite and non-negative, got {total}"
        )));
    }
    let full_loops = (total / TAU).floor();
    let mut net = total - full_loops * TAU;
    let mut full_loops = full_loops as u64;
    // floating point can land net exactly on 2π; fold it over
    if net >= TAU {
        net -= TAU;
        full_loops += 1;
    }
    Ok(SweptAngle { full_loops, net: OrderedNet(net) })
}

/// Closed-form pulsed coefficients.
///
/// c₁ = λ[½ + ½cos((N_p-1)θ) + ½sin((N_p-1)θ)cot(θ/2)]
/// c₂ = λ[½cot(θ/2)(1 - cos((N_p-1)θ)) + ½sin((N_p-1)θ)]
/// c₃ = ½λ²(N_p sinθ - sin(N_pθ)) / (4sin²(θ/2))
///
/// Near θ ≡ 0 (mod 2π) the sin(θ/2) denominators are avoided by falling
/// back to [`pulsed_coefficients_bruteforce`], which is regular everywhere;
/// at exactly θ ≡ 0 this gives the collinear limit (N_pλ, 0, 0).
pub fn pulsed_coefficients(p: PulseParams) -> LoopCoefficients {
    let half = p.theta / 2.0;
    if half.sin().abs() < SIN_HALF_THETA_CUTOFF {
        return pulsed_coefficients_bruteforce(p);
    }
    let np = p.n_pulses as f64;
    let cot_half = half.cos() / half.sin();
    let a = (np - 1.0) * p.theta;
    let disp_x = p.lambda * (0.5 + 0.5 * a.cos() + 0.5 * a.sin() * cot_half);
    let disp_p = p.lambda * (0.5 * cot_half * (1.0 - a.cos()) + 0.5 * a.sin());
    let kerr = 0.5 * p.lambda * p.lambda * (np * p.theta.sin() - (np * p.theta).sin())
        / (4.0 * half.sin() * half.sin());
    LoopCoefficients { disp_x, disp_p, kerr }
}

/// Pulse-by-pulse accumulation of the gate product, the independent oracle
/// for [`pulsed_coefficients`].
///
/// Multiplying the running product `exp[iÔ(C₁x̂ - C₂p̂)]` by the next kick
/// `exp[iÔλ(x̂ cos a - p̂ sin a)]` picks up, via the pairwise commutator
/// `[x̂ cos a - p̂ sin b, ...] = i sin(a-b)`, a scalar Kerr increment
/// λ(C₁ sin a - C₂ cos a)/2 before the displacement sums advance.
pub fn pulsed_coefficients_bruteforce(p: PulseParams) -> LoopCoefficients {
    let mut c1 = 0.0_f64;
    let mut c2 = 0.0_f64;
    let mut c3 = 0.0_f64;
    for n in 0..p.n_pulses {
        let a = n as f64 * p.theta;
        let (sin_a, cos_a) = a.sin_cos();
        c3 += 0.5 * p.lambda * (c1 * sin_a - c2 * cos_a);
        c1 += p.lambda * cos_a;
        c2 += p.lambda * sin_a;
    }
    LoopCoefficients { disp_x: c1, disp_p: c2, kerr: c3 }
}

/// Continuous-regime coefficients:
/// d₁ = √2·k·sinφ, d₂ = √2·k·(1-cosφ), d₃ = k²(φ - sinφ).
pub fn continuous_coefficients(c: ContinuousParams) -> LoopCoefficients {
    let s2k = std::f64::consts::SQRT_2 * c.k;
    LoopCoefficients {
        disp_x: s2k * c.phi.sin(),
        disp_p: s2k * (1.0 - c.phi.cos()),
        kerr: c.k * c.k * (c.phi - c.phi.sin()),
    }
}

/// Pulsed gate evaluated on the discretisation that tends to the continuous
/// gate: λ = √2·k·θ with θ = φ/n_p. Converges to
/// [`continuous_coefficients`]`(k, φ)` at first order in 1/n_p.
pub fn continuous_limit_of_pulsed(k: f64, phi: f64, n_p: u64) -> Result<LoopCoefficients> {
    let theta = phi / n_p as f64;
    let lambda = std::f64::consts::SQRT_2 * k * theta;
    Ok(pulsed_coefficients(PulseParams::new(lambda, theta, n_p)?))
}

/// Phase-space figure traversed by a gate: polygon vertices (pulsed) or arc
/// samples (continuous), together with the circumscribing circle.
///
/// Points are (x, p) coordinates; the figure's endpoint displacement is
/// `(disp_x, -disp_p)`, matching the paper's plots whose vertical axis is
/// `-P`. For collinear pulsed trajectories (θ ≡ 0 mod 2π) the circle
/// degenerates: `radius` is `f64::INFINITY` and `center` is meaningless.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub points: Vec<(f64, f64)>,
    pub center: (f64, f64),
    pub radius: f64,
}

/// Polygon trajectory of the pulsed gate: vertex V₁ at the origin, step n in
/// direction angle -nθ.
pub fn trajectory_pulsed(p: PulseParams) -> Trajectory {
    let mut points = Vec::with_capacity(p.n_pulses as usize + 1);
    let (mut x, mut y) = (0.0_f64, 0.0_f64);
    points.push((x, y));
    for n in 0..p.n_pulses {
        let a = n as f64 * p.theta;
        x += p.lambda * a.cos();
        y -= p.lambda * a.sin();
        points.push((x, y));
    }
    let half = p.theta / 2.0;
    let (center, radius) = if half.sin().abs() < SIN_HALF_THETA_CUTOFF {
        ((0.0, 0.0), f64::INFINITY)
    } else {
        let r = p.lambda / (2.0 * half.sin().abs());
        // center below the first step for positive θ: R = r·(sin(θ/2), -cos(θ/2))
        let sign = if half.sin() >= 0.0 { 1.0 } else { -1.0 };
        ((r * half.sin() * sign, -r * half.cos() * sign), r)
    };
    Trajectory { points, center, radius }
}

/// Arc trajectory of the continuous gate: `samples` points on the circle of
/// radius √2·k centered at (0, -√2·k), starting from the origin.
pub fn trajectory_continuous(c: ContinuousParams, samples: usize) -> Result<Trajectory> {
    if samples < 2 {
        return Err(GateError::InvalidParameter(format!(
            "samples must be >= 2, got {samples}"
        )));
    }
    let r = std::f64::consts::SQRT_2 * c.k;
    let points = (0..samples)
        .map(|j| {
            let s = c.phi * j as f64 / (samples - 1) as f64;
            (r * s.sin(), -r * (1.0 - s.cos()))
        })
        .collect();
    Ok(Trajectory { points, center: (0.0, -r), radius: r })
}

/// Kerr phase of the pulsed gate computed geometrically: N_p copies of the
/// isoceles triangle (apex at the circle center, base one pulse vector),
/// minus or plus the triangle spanned by the first and last vertices and the
/// center. The sign follows the net swept angle: subtract for θ_net < π, add
/// for θ_net > π (at exactly π the triangle is degenerate and the choice is
/// immaterial; the positive branch is taken).
pub fn kerr_area_oracle_pulsed(p: PulseParams) -> LoopCoefficients {
    let coeffs = pulsed_coefficients(p);
    let half = p.theta / 2.0;
    if half.sin().abs() < SIN_HALF_THETA_CUTOFF {
        // collinear: zero enclosed area
        return LoopCoefficients { kerr: 0.0, ..coeffs };
    }
    let traj = trajectory_pulsed(p);
    let np = p.n_pulses as f64;
    // isoceles triangle: base λ, signed apothem (λ/2)cot(θ/2) — negative for
    // θ > π, where the apex sits on the far side of the base
    let apothem = 0.5 * p.lambda * (half.cos() / half.sin());
    let per_pulse = 0.5 * p.lambda * apothem;
    let first = *traj.points.first().expect("non-empty");
    let last = *traj.points.last().expect("non-empty");
    let tri = unsigned_triangle_area(first, traj.center, last);
    let theta_net = swept_angle(np * p.theta.abs()).expect("finite angle").net.0;
    let sign = if theta_net <= PI { 1.0 } else { -1.0 };
    let orientation = if p.theta >= 0.0 { 1.0 } else { -1.0 };
    LoopCoefficients {
        kerr: orientation * (np * per_pulse - sign * tri),
        ..coeffs
    }
}

/// Kerr phase of the continuous gate computed geometrically: M full circles
/// plus the sector of the net angle, minus or plus the triangle L₁RL₂ with
/// the same sign rule as the pulsed case.
pub fn kerr_area_oracle_continuous(c: ContinuousParams) -> Result<LoopCoefficients> {
    let coeffs = continuous_coefficients(c);
    let sw = swept_angle(c.phi)?;
    let r = std::f64::consts::SQRT_2 * c.k;
    let circles = sw.full_loops as f64 * PI * r * r;
    let sector = 0.5 * r * r * sw.net.0;
    let endpoint = (r * c.phi.sin(), -r * (1.0 - c.phi.cos()));
    let tri = unsigned_triangle_area((0.0, 0.0), (0.0, -r), endpoint);
    let sign = if sw.net.0 <= PI { 1.0 } else { -1.0 };
    Ok(LoopCoefficients {
        kerr: circles + sector - sign * tri,
        ..coeffs
    })
}

fn unsigned_triangle_area(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    let ux = a.0 - b.0;
    let uy = a.1 - b.1;
    let vx = c.0 - b.0;
    let vy = c.1 - b.1;
    0.5 * (ux * vy - uy * vx).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn square() -> PulseParams {
        PulseParams::new(1.0, PI / 2.0, 4).unwrap()
    }

    #[test]
    fn bruteforce_square_is_unit_kerr() {
        // Milburn's unit rectangle: κ_x κ_p = 1
        let c = pulsed_coefficients_bruteforce(square());
        assert_abs_diff_eq!(c.disp_x, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.disp_p, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.kerr, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn closed_form_square_is_unit_kerr() {
        let c = pulsed_coefficients(square());
        assert_abs_diff_eq!(c.disp_x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.disp_p, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.kerr, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn single_pulse_is_pure_displacement() {
        let c = pulsed_coefficients_bruteforce(PulseParams::new(0.7, 1.3, 1).unwrap());
        assert_eq!(c.disp_x, 0.7);
        assert_eq!(c.disp_p, 0.0);
        assert_eq!(c.kerr, 0.0);
    }

    #[test]
    fn regular_polygon_kerr_matches_cotangent_form() {
        // closed loop: kerr = λ²(N_p/4)cot(π/N_p)
        for &(lambda, n_p) in &[(0.5, 6_u64), (1.0, 4), (0.2, 11), (0.9, 100)] {
            let theta = TAU / n_p as f64;
            let p = PulseParams::new(lambda, theta, n_p).unwrap();
            let expected =
                lambda * lambda * (n_p as f64 / 4.0) / (PI / n_p as f64).tan();
            for c in [pulsed_coefficients(p), pulsed_coefficients_bruteforce(p)] {
                assert_abs_diff_eq!(c.disp_x, 0.0, epsilon = 1e-10 * n_p as f64);
                assert_abs_diff_eq!(c.disp_p, 0.0, epsilon = 1e-10 * n_p as f64);
                assert_abs_diff_eq!(c.kerr, expected, epsilon = 1e-10 * expected.abs());
            }
        }
    }

    #[test]
    fn zero_theta_is_collinear() {
        let c = pulsed_coefficients(PulseParams::new(0.3, 0.0, 5).unwrap());
        assert_abs_diff_eq!(c.disp_x, 1.5, epsilon = 1e-14);
        assert_eq!(c.disp_p, 0.0);
        assert_eq!(c.kerr, 0.0);
        // and at θ = 2π the same limit applies without error
        let c = pulsed_coefficients(PulseParams::new(0.3, TAU, 5).unwrap());
        assert_abs_diff_eq!(c.disp_x, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn continuous_closed_loop() {
        let c = continuous_coefficients(ContinuousParams::new(0.7, TAU).unwrap());
        assert_abs_diff_eq!(c.disp_x, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.disp_p, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.kerr, TAU * 0.49, epsilon = 1e-12);
    }

    #[test]
    fn continuous_half_loop() {
        let c = continuous_coefficients(ContinuousParams::new(1.0, PI).unwrap());
        assert_abs_diff_eq!(c.disp_x, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.disp_p, 2.0 * std::f64::consts::SQRT_2, epsilon = 1e-14);
        assert_abs_diff_eq!(c.kerr, PI, epsilon = 1e-14);
    }

    #[test]
    fn continuous_no_evolution() {
        let c = continuous_coefficients(ContinuousParams::new(0.8, 0.0).unwrap());
        assert_eq!((c.disp_x, c.disp_p, c.kerr), (0.0, 0.0, 0.0));
    }

    #[test]
    fn swept_angle_decomposition() {
        let s = swept_angle(2.1 * PI).unwrap();
        assert_eq!(s.full_loops, 1);
        assert_abs_diff_eq!(s.net.0, 0.1 * PI, epsilon = 1e-12);
        let s = swept_angle(0.0).unwrap();
        assert_eq!((s.full_loops, s.net.0), (0, 0.0));
        let s = swept_angle(4.0 * PI).unwrap();
        assert_eq!(s.full_loops, 2);
        assert_abs_diff_eq!(s.net.0, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn pulsed_trajectory_closes_for_square() {
        let t = trajectory_pulsed(square());
        assert_eq!(t.points.len(), 5);
        let end = *t.points.last().unwrap();
        assert_abs_diff_eq!(end.0, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(end.1, 0.0, epsilon = 1e-14);
        // adjacent vertex distance equals λ, all vertices on the circle
        for w in t.points.windows(2) {
            let d = ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt();
            assert_abs_diff_eq!(d, 1.0, epsilon = 1e-12);
        }
        for &(x, y) in &t.points {
            let r = ((x - t.center.0).powi(2) + (y - t.center.1).powi(2)).sqrt();
            assert_abs_diff_eq!(r, t.radius, epsilon = 1e-12);
        }
    }

    #[test]
    fn pulsed_trajectory_collinear() {
        let t = trajectory_pulsed(PulseParams::new(1.0, 0.0, 3).unwrap());
        assert_eq!(t.points, vec![(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        assert!(t.radius.is_infinite());
    }

    #[test]
    fn continuous_trajectory_endpoint() {
        let t = trajectory_continuous(ContinuousParams::new(1.0, PI).unwrap(), 3).unwrap();
        let end = *t.points.last().unwrap();
        assert_abs_diff_eq!(end.0, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(end.1, -2.0 * std::f64::consts::SQRT_2, epsilon = 1e-14);
        for &(x, y) in &t.points {
            let r = ((x - t.center.0).powi(2) + (y - t.center.1).powi(2)).sqrt();
            assert_abs_diff_eq!(r, t.radius, epsilon = 1e-12);
        }
    }

    #[test]
    fn trajectory_endpoint_matches_coefficients() {
        let p = PulseParams::new(0.6, 1.1, 9).unwrap();
        let c = pulsed_coefficients(p);
        let end = *trajectory_pulsed(p).points.last().unwrap();
        assert_abs_diff_eq!(end.0, c.disp_x, epsilon = 1e-12);
        assert_abs_diff_eq!(end.1, -c.disp_p, epsilon = 1e-12);
    }

    #[test]
    fn area_oracle_square() {
        let c = kerr_area_oracle_pulsed(square());
        assert_abs_diff_eq!(c.kerr, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn area_oracle_continuous_closed() {
        let k = 0.8;
        let c = kerr_area_oracle_continuous(ContinuousParams::new(k, TAU).unwrap()).unwrap();
        assert_abs_diff_eq!(c.kerr, TAU * k * k, epsilon = 1e-12);
        let c = kerr_area_oracle_continuous(ContinuousParams::new(k, 0.0).unwrap()).unwrap();
        assert_eq!(c.kerr, 0.0);
    }

    #[test]
    fn area_oracle_both_sign_branches() {
        // θ_net < π and > π, single partial loop
        for &phi in &[0.6 * PI, 1.7 * PI, 2.0, 5.9] {
            let c = ContinuousParams::new(0.5, phi).unwrap();
            let oracle = kerr_area_oracle_continuous(c).unwrap();
            let closed = continuous_coefficients(c);
            assert_abs_diff_eq!(oracle.kerr, closed.kerr, epsilon = 1e-12);
        }
    }

    #[test]
    fn rescaling_error_is_singular_free_near_two_pi() {
        // just inside the fallback band
        let p = PulseParams::new(0.5, TAU + 1e-9, 7).unwrap();
        let c = pulsed_coefficients(p);
        assert!(c.disp_x.is_finite() && c.kerr.is_finite());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(PulseParams::new(-0.1, 1.0, 3).is_err());
        assert!(PulseParams::new(0.1, f64::NAN, 3).is_err());
        assert!(PulseParams::new(0.1, 1.0, 0).is_err());
        assert!(ContinuousParams::new(0.1, -1.0).is_err());
        assert!(trajectory_continuous(ContinuousParams::new(1.0, 1.0).unwrap(), 1).is_err());
        assert!(swept_angle(-0.5).is_err());
    }

    proptest! {
        #[test]
        fn closed_form_matches_bruteforce(
            lambda in 0.0_f64..1.0,
            theta in 1e-6_f64..(TAU - 1e-6),
            n_p in 1_u64..2000,
        ) {
            let p = PulseParams::new(lambda, theta, n_p).unwrap();
            let a = pulsed_coefficients(p);
            let b = pulsed_coefficients_bruteforce(p);
            let scale = 1.0_f64.max(a.disp_x.abs()).max(a.disp_p.abs()).max(a.kerr.abs());
            prop_assert!(a.max_abs_diff(&b) / scale < 1e-10);
        }

        #[test]
        fn area_oracle_matches_kerr_pulsed(
            lambda in 0.01_f64..1.0,
            theta in 0.05_f64..(TAU - 0.05),
            n_p in 2_u64..200,
        ) {
            let p = PulseParams::new(lambda, theta, n_p).unwrap();
            let closed = pulsed_coefficients(p);
            let area = kerr_area_oracle_pulsed(p);
            let scale = 1.0_f64.max(closed.kerr.abs());
            prop_assert!((closed.kerr - area.kerr).abs() / scale < 1e-10);
        }

        #[test]
        fn entanglement_vector_bounded(
            lambda in 0.01_f64..1.0,
            theta in 0.05_f64..(TAU - 0.05),
            n_p in 1_u64..500,
        ) {
            let p = PulseParams::new(lambda, theta, n_p).unwrap();
            let c = pulsed_coefficients(p);
            let radius = lambda / (2.0 * (theta / 2.0).sin().abs());
            let len2 = c.disp_x * c.disp_x + c.disp_p * c.disp_p;
            prop_assert!(len2 <= (2.0 * radius).powi(2) * (1.0 + 1e-12));
        }

        #[test]
        fn closed_loop_has_no_displacement(lambda in 0.0_f64..1.0, n_p in 2_u64..300) {
            let p = PulseParams::new(lambda, TAU / n_p as f64, n_p).unwrap();
            let c = pulsed_coefficients(p);
            prop_assert!(c.disp_x * c.disp_x + c.disp_p * c.disp_p < 1e-20);
        }
    }
}

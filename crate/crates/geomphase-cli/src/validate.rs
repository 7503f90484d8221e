//! Self-check suites runnable from the CLI: closed forms against their
//! independent oracles, printed one line per check.

use geomphase::analytic::{
    fidelity, purity, series_continuous, series_pulsed, target_kerr_continuous,
    target_kerr_pulsed, FieldParams,
};
use geomphase::dissipative::{
    continuous_dissipative_state, dissipative_unification_check, fidelity_dissipative,
    pulsed_dissipative_state, purity_dissipative, DissipativeContinuousParams,
    DissipativePulsedParams,
};
use geomphase::error_models::{unification_suite, RescaleFactor};
use geomphase::oracle::lindblad::{default_steps, lindblad_evolve_converged, run_pulsed_dissipative};
use geomphase::oracle::{
    fidelity_to, initial_joint_state, partial_trace_mech, purity_of, run_continuous, run_pulsed,
    TruncationConfig,
};
use geomphase::phase_space::{
    continuous_coefficients, continuous_limit_of_pulsed, kerr_area_oracle_continuous,
    kerr_area_oracle_pulsed, pulsed_coefficients, pulsed_coefficients_bruteforce,
    ContinuousParams, PulseParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn bound(name: &'static str, value: f64, tol: f64) -> Self {
        Check {
            name,
            passed: value.is_finite() && value < tol,
            detail: format!("max residual {value:.3e} (tolerance {tol:.0e})"),
        }
    }

    fn slope(name: &'static str, slope: Option<f64>) -> Self {
        match slope {
            Some(s) => Check {
                name,
                passed: (s + 1.0).abs() <= 0.1,
                detail: format!("log-log slope {s:.3} (expected -1.0 +/- 0.1)"),
            },
            None => Check { name, passed: false, detail: "slope undefined".into() },
        }
    }
}

fn rel_scale(c: &geomphase::phase_space::LoopCoefficients) -> f64 {
    c.disp_x.abs().max(c.disp_p.abs()).max(c.kerr.abs()).max(1.0)
}

/// Closed-form coefficients vs the pulse-product recurrence and the swept
/// area, over seeded random draws covering both swept-angle branches.
pub fn geometry_suite() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x67656f6d);
    let mut worst_bch: f64 = 0.0;
    for _ in 0..1000 {
        let p = PulseParams::new(
            rng.gen_range(0.0..1.0),
            rng.gen_range(1e-6..TAU - 1e-6),
            rng.gen_range(1..=200),
        )
        .unwrap();
        let a = pulsed_coefficients(p);
        let b = pulsed_coefficients_bruteforce(p);
        worst_bch = worst_bch.max(a.max_abs_diff(&b) / rel_scale(&b));
    }

    let mut worst_area: f64 = 0.0;
    for _ in 0..500 {
        let p = PulseParams::new(
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.05..TAU - 0.05),
            rng.gen_range(2..=60),
        )
        .unwrap();
        let closed = pulsed_coefficients(p);
        let area = kerr_area_oracle_pulsed(p);
        worst_area = worst_area.max((closed.kerr - area.kerr).abs() / rel_scale(&closed));
        let c = ContinuousParams::new(rng.gen_range(0.01..0.8), rng.gen_range(0.1..6.0 * PI))
            .unwrap();
        let closed = continuous_coefficients(c);
        let area = kerr_area_oracle_continuous(c).unwrap();
        worst_area = worst_area.max((closed.kerr - area.kerr).abs() / rel_scale(&closed));
    }

    // gate-level distance: coefficient triple plus the O(1/N_p) mechanical
    // frame lag from the missing final free rotation
    let entries: Vec<_> = (6..=14)
        .map(|e| {
            let n_p = 1u64 << e;
            let lim = continuous_limit_of_pulsed(0.5, TAU, n_p).unwrap();
            let exact = continuous_coefficients(ContinuousParams::new(0.5, TAU).unwrap());
            geomphase::error_models::ConvergenceEntry {
                level: n_p,
                distance: lim.max_abs_diff(&exact).max(TAU / n_p as f64),
            }
        })
        .collect();
    let slope = geomphase::error_models::fit_log_slope(&entries);

    vec![
        Check::bound("geometry/pulsed-coeffs-vs-recurrence", worst_bch, 1e-10),
        Check::bound("geometry/kerr-vs-swept-area", worst_area, 1e-10),
        Check::slope("geometry/continuous-limit-order", slope),
    ]
}

/// Pulsed-to-continuous convergence of the error-gate decompositions,
/// unitary and dissipative.
pub fn unification_suite_checks() -> Vec<Check> {
    let seq: Vec<u64> = vec![8, 16, 32, 64, 128, 256];
    let unit = unification_suite(0.001, 0.05, RescaleFactor::Finite(1), &seq).unwrap();
    let f = FieldParams::new(2.0, 0.0).unwrap();
    let diss = dissipative_unification_check(
        &f,
        0.001,
        0.05,
        0.02,
        RescaleFactor::Finite(1),
        &[10, 30, 100, 300, 1000],
    )
    .unwrap();
    vec![
        Check::slope("unification/unitary-order", unit.slope),
        Check::slope("unification/dissipative-order", diss.slope),
    ]
}

/// Analytic series vs the truncated-Fock-space oracle, unitary gates.
pub fn oracle_unitary_suite() -> Vec<Check> {
    let alpha = 1.0;
    let f = FieldParams::new(alpha, 0.0).unwrap();
    let t = TruncationConfig::new(16, 24).unwrap();
    let rho0 = initial_joint_state(alpha, 0.0, &t).unwrap();
    let n1 = RescaleFactor::Finite(1);

    let (k, eta) = (0.1, 0.05);
    let s = series_continuous(&f, k, eta, n1).unwrap();
    let target = target_kerr_continuous(k);
    let out = run_continuous(&rho0, &t, f64::sqrt(2.0) * k, (1.0 + eta) * TAU).unwrap();
    let rho_f = partial_trace_mech(&out, &t);
    let gap_c = (fidelity(&s, &f, target).unwrap() - fidelity_to(&rho_f, alpha, target))
        .abs()
        .max((purity(&s, &f) - purity_of(&rho_f)).abs());

    let (lambda, n_p, xi) = (0.1, 6u64, 0.05);
    let s = series_pulsed(&f, lambda, n_p, xi, n1).unwrap();
    let target = target_kerr_pulsed(lambda, n_p);
    let theta = (1.0 + xi) * TAU / n_p as f64;
    let out = run_pulsed(&rho0, &t, lambda, theta, n_p).unwrap();
    let rho_f = partial_trace_mech(&out, &t);
    let gap_p = (fidelity(&s, &f, target).unwrap() - fidelity_to(&rho_f, alpha, target))
        .abs()
        .max((purity(&s, &f) - purity_of(&rho_f)).abs());

    vec![
        Check::bound("oracle-unitary/continuous", gap_c, 1e-6),
        Check::bound("oracle-unitary/pulsed", gap_p, 1e-6),
    ]
}

/// Damped closed forms vs the RK4 Lindblad oracle.
pub fn oracle_dissipative_suite() -> Vec<Check> {
    let alpha = 1.0;
    let f = FieldParams::new(alpha, 0.0).unwrap();
    let t = TruncationConfig::new(14, 16).unwrap();
    let rho0 = initial_joint_state(alpha, 0.0, &t).unwrap();
    let n1 = RescaleFactor::Finite(1);
    let gamma = 0.02;

    let (k, eta) = (0.1, 0.05);
    let state = continuous_dissipative_state(
        &f,
        &DissipativeContinuousParams::new(k, eta, gamma, n1).unwrap(),
    )
    .unwrap();
    let target = target_kerr_continuous(k);
    let time = (1.0 + eta) * TAU;
    let out = lindblad_evolve_converged(
        &rho0,
        &t,
        f64::sqrt(2.0) * k,
        gamma,
        time,
        default_steps(time),
        1e-6,
    )
    .unwrap();
    let rho_f = partial_trace_mech(&out, &t);
    let gap_c = (fidelity_dissipative(&state, &f, target).unwrap()
        - fidelity_to(&rho_f, alpha, target))
    .abs()
    .max((purity_dissipative(&state, &f).unwrap() - purity_of(&rho_f)).abs());

    let (lambda, n_p, xi) = (0.1, 6u64, 0.05);
    let state = pulsed_dissipative_state(
        &f,
        &DissipativePulsedParams::new(lambda, n_p, xi, gamma, n1).unwrap(),
    )
    .unwrap();
    let target = target_kerr_pulsed(lambda, n_p);
    let theta = (1.0 + xi) * TAU / n_p as f64;
    let out =
        run_pulsed_dissipative(&rho0, &t, lambda, theta, gamma, n_p, default_steps(theta)).unwrap();
    let rho_f = partial_trace_mech(&out, &t);
    let gap_p = (fidelity_dissipative(&state, &f, target).unwrap()
        - fidelity_to(&rho_f, alpha, target))
    .abs()
    .max((purity_dissipative(&state, &f).unwrap() - purity_of(&rho_f)).abs());

    vec![
        Check::bound("oracle-dissipative/continuous", gap_c, 1e-4),
        Check::bound("oracle-dissipative/pulsed", gap_p, 1e-4),
    ]
}

/// Run the requested suites; returns true when every check passed.
pub fn run(suites: &[&str]) -> bool {
    let mut checks = Vec::new();
    for &s in suites {
        match s {
            "geometry" => checks.extend(geometry_suite()),
            "unification" => checks.extend(unification_suite_checks()),
            "oracle-unitary" => checks.extend(oracle_unitary_suite()),
            "oracle-dissipative" => checks.extend(oracle_dissipative_suite()),
            other => unreachable!("unknown suite {other}"),
        }
    }
    let mut all = true;
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("{tag} {}: {}", c.name, c.detail);
        all &= c.passed;
    }
    all
}

//! Fixed-step RK4 integration of the Lindblad master equation
//! dρ/dt = -i[Ĥ,ρ] + (γ/2)(2b̂ρb̂† - b̂†b̂ρ - ρb̂†b̂).
//!
//! Both Ĥ and the dissipator leave the field Fock index untouched, so every
//! mechanical (f₁,f₂) block obeys its own closed "bilateral" equation
//! dB/dt = -i(Ĥ_{f₁}B - BĤ_{f₂}) + γ(b̂Bb̂† - ½b̂†b̂B - ½Bb̂†b̂), with
//! Ĥ_f = b̂†b̂ - g₀·f·x̂_m real symmetric tridiagonal. One RK4 derivative is
//! therefore O(D_m²) per block — tridiagonal multiplies plus elementwise
//! dissipator terms — and blocks integrate independently in parallel.
//!
//! Fixed step over adaptive: identical step grids make runs reproducible and
//! make the step-halving convergence check meaningful.

use super::{
    guard_boundary, mech_block, pulse_unitaries, CMatrix, DensityMatrix, TruncationConfig,
};
use crate::parallel;
use crate::{GateError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default RK4 resolution: steps per mechanical period 2π.
pub const DEFAULT_STEPS_PER_PERIOD: usize = 2048;

/// Real symmetric tridiagonal matrix (the mechanical block Hamiltonians).
#[derive(Debug, Clone)]
struct Tridiag {
    diag: Vec<f64>,
    /// off[m] couples levels m and m+1.
    off: Vec<f64>,
}

fn block_hamiltonian(f: usize, g0: f64, dim: usize) -> Tridiag {
    let diag = (0..dim).map(|m| m as f64).collect();
    let off = (0..dim - 1)
        .map(|m| -g0 * f as f64 * (((m + 1) as f64) / 2.0).sqrt())
        .collect();
    Tridiag { diag, off }
}

/// out = h·b (tridiagonal × dense).
fn tridiag_left(h: &Tridiag, b: &CMatrix, out: &mut CMatrix) {
    let n = h.diag.len();
    for j in 0..n {
        for i in 0..n {
            let mut v = b[(i, j)] * h.diag[i];
            if i > 0 {
                v += b[(i - 1, j)] * h.off[i - 1];
            }
            if i + 1 < n {
                v += b[(i + 1, j)] * h.off[i];
            }
            out[(i, j)] = v;
        }
    }
}

/// out += sign·(b·h) (dense × tridiagonal).
fn tridiag_right_add(b: &CMatrix, h: &Tridiag, sign: f64, out: &mut CMatrix) {
    let n = h.diag.len();
    for j in 0..n {
        for i in 0..n {
            let mut v = b[(i, j)] * h.diag[j];
            if j > 0 {
                v += b[(i, j - 1)] * h.off[j - 1];
            }
            if j + 1 < n {
                v += b[(i, j + 1)] * h.off[j];
            }
            out[(i, j)] += v * sign;
        }
    }
}

/// Bilateral Lindblad derivative of one mechanical block.
fn block_derivative(
    b: &CMatrix,
    h1: &Tridiag,
    h2: &Tridiag,
    gamma: f64,
    scratch: &mut CMatrix,
) -> CMatrix {
    let n = b.nrows();
    tridiag_left(h1, b, scratch);
    tridiag_right_add(b, h2, -1.0, scratch);
    let mut out = CMatrix::zeros(n, n);
    let minus_i = Complex64::new(0.0, -1.0);
    for j in 0..n {
        for i in 0..n {
            let mut v = minus_i * scratch[(i, j)];
            if gamma > 0.0 {
                // γ(b B b† - ½(n̂B + Bn̂)) elementwise
                let mut dis = -0.5 * (i as f64 + j as f64) * b[(i, j)];
                if i + 1 < n && j + 1 < n {
                    dis += (((i + 1) as f64) * ((j + 1) as f64)).sqrt() * b[(i + 1, j + 1)];
                }
                v += gamma * dis;
            }
            out[(i, j)] = v;
        }
    }
    out
}

fn rk4_block(b: &mut CMatrix, h1: &Tridiag, h2: &Tridiag, gamma: f64, dt: f64, steps: usize) {
    let n = b.nrows();
    let mut scratch = CMatrix::zeros(n, n);
    for _ in 0..steps {
        let k1 = block_derivative(b, h1, h2, gamma, &mut scratch);
        let s2 = &*b + &k1 * Complex64::new(dt / 2.0, 0.0);
        let k2 = block_derivative(&s2, h1, h2, gamma, &mut scratch);
        let s3 = &*b + &k2 * Complex64::new(dt / 2.0, 0.0);
        let k3 = block_derivative(&s3, h1, h2, gamma, &mut scratch);
        let s4 = &*b + &k3 * Complex64::new(dt, 0.0);
        let k4 = block_derivative(&s4, h1, h2, gamma, &mut scratch);
        *b += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4)
            * Complex64::new(dt / 6.0, 0.0);
    }
}

/// Damped evolution under Ĥ = b̂†b̂ - g₀n̂x̂_m for `time` radians with a
/// fixed number of RK4 steps.
pub fn lindblad_evolve(
    rho: &DensityMatrix,
    t: &TruncationConfig,
    g0: f64,
    gamma: f64,
    time: f64,
    steps: usize,
) -> Result<DensityMatrix> {
    if gamma < 0.0 {
        return Err(GateError::InvalidParameter(format!(
            "gamma must be non-negative, got {gamma}"
        )));
    }
    if steps == 0 {
        return Err(GateError::InvalidParameter("steps must be positive".into()));
    }
    let df = t.field_dim;
    let hs: Vec<Tridiag> = (0..df).map(|f| block_hamiltonian(f, g0, t.mech_dim)).collect();
    let dt = time / steps as f64;
    let blocks = parallel::map_indexed(df * df, |idx| {
        let (f1, f2) = (idx / df, idx % df);
        if f1 > f2 {
            return None;
        }
        let mut b = mech_block(rho, t, f1, f2);
        rk4_block(&mut b, &hs[f1], &hs[f2], gamma, dt, steps);
        Some(b)
    });
    let mut out = DensityMatrix { dim: rho.dim, entries: CMatrix::zeros(rho.dim, rho.dim) };
    let dm = t.mech_dim;
    for f1 in 0..df {
        for f2 in f1..df {
            let b = blocks[f1 * df + f2].as_ref().expect("upper block");
            out.entries.view_mut((f1 * dm, f2 * dm), (dm, dm)).copy_from(b);
            if f1 != f2 {
                let adj = b.adjoint();
                out.entries.view_mut((f2 * dm, f1 * dm), (dm, dm)).copy_from(&adj);
            }
        }
    }
    // symmetrize: RK4 drift can leave ~1e-15-scale asymmetry on the diagonal
    let sym = (&out.entries + out.entries.adjoint()) * Complex64::new(0.5, 0.0);
    out.entries = sym;
    guard_boundary(&out, t)?;
    Ok(out)
}

/// Single full-space RK4 step on a dense Ĥ with dissipation through `b`.
/// Generic (no block structure assumed) — calibration and small-scale tests.
pub fn lindblad_step(
    rho: &DensityMatrix,
    h: &CMatrix,
    b: &CMatrix,
    gamma: f64,
    dt: f64,
) -> DensityMatrix {
    let deriv = |r: &CMatrix| -> CMatrix {
        let comm = h * r - r * h;
        let mut d = comm * Complex64::new(0.0, -1.0);
        if gamma > 0.0 {
            let bd = b.adjoint();
            let n = &bd * b;
            d += (b * r * &bd - (&n * r + r * &n) * Complex64::new(0.5, 0.0))
                * Complex64::new(gamma, 0.0);
        }
        d
    };
    let k1 = deriv(&rho.entries);
    let k2 = deriv(&(&rho.entries + &k1 * Complex64::new(dt / 2.0, 0.0)));
    let k3 = deriv(&(&rho.entries + &k2 * Complex64::new(dt / 2.0, 0.0)));
    let k4 = deriv(&(&rho.entries + &k3 * Complex64::new(dt, 0.0)));
    let next = &rho.entries
        + (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4)
            * Complex64::new(dt / 6.0, 0.0);
    let sym = (&next + next.adjoint()) * Complex64::new(0.5, 0.0);
    DensityMatrix { dim: rho.dim, entries: sym }
}

/// Largest entrywise gap between two density matrices.
pub fn max_entry_gap(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    (&a.entries - &b.entries).iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

/// Step-halving wrapper: integrates at `steps` and `2·steps` and accepts the
/// finer result only if the two agree within `tol`.
pub fn lindblad_evolve_converged(
    rho: &DensityMatrix,
    t: &TruncationConfig,
    g0: f64,
    gamma: f64,
    time: f64,
    steps: usize,
    tol: f64,
) -> Result<DensityMatrix> {
    let coarse = lindblad_evolve(rho, t, g0, gamma, time, steps)?;
    let fine = lindblad_evolve(rho, t, g0, gamma, time, steps * 2)?;
    let residual = max_entry_gap(&coarse, &fine);
    if residual > tol {
        return Err(GateError::ConvergenceFailure {
            residual,
            tolerance: tol,
            suggested_steps: steps * 4,
        });
    }
    Ok(fine)
}

/// Default step count for an evolution of `time` radians.
pub fn default_steps(time: f64) -> usize {
    ((time.abs() / (2.0 * PI)) * DEFAULT_STEPS_PER_PERIOD as f64).ceil().max(16.0) as usize
}

/// Milburn gate with damped intervals: N_p instantaneous pulses e^{iλn̂x̂_m}
/// separated by N_p-1 damped free-evolution intervals of `theta` radians.
pub fn run_pulsed_dissipative(
    rho: &DensityMatrix,
    t: &TruncationConfig,
    lambda: f64,
    theta: f64,
    gamma: f64,
    n_p: u64,
    steps_per_interval: usize,
) -> Result<DensityMatrix> {
    let ps = pulse_unitaries(lambda, t);
    let mut state = super::apply_block_unitaries(rho, t, &ps);
    for _ in 1..n_p {
        state = lindblad_evolve(&state, t, 0.0, gamma, theta, steps_per_interval)?;
        state = super::apply_block_unitaries(&state, t, &ps);
    }
    guard_boundary(&state, t)?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::super::{
        build_operators, coherent_vector, initial_joint_state, partial_trace_mech, purity_of,
        run_continuous, DensityMatrix, TruncationConfig,
    };
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn damped_coherent_state_calibration() {
        // single-field-level system: <b>(t) = beta0 e^{-it-gamma t/2}
        let t = TruncationConfig::new(2, 30).unwrap();
        let beta0 = Complex64::new(1.2, 0.0);
        let mech = coherent_vector(beta0, t.mech_dim);
        let field = coherent_vector(Complex64::new(0.0, 0.0), t.field_dim);
        let joint = field.kronecker(&mech);
        let rho = DensityMatrix::from_pure(&joint);
        let gamma = 0.1;
        let time = 3.0;
        let out = lindblad_evolve(&rho, &t, 0.0, gamma, time, 2048).unwrap();
        let b = super::super::ladder(t.mech_dim);
        let rho_m = {
            // field level 0 block is the mechanical state (level 1 is empty)
            mech_block(&out, &t, 0, 0)
        };
        let mean = (&b * &rho_m).diagonal().sum();
        let expect = beta0 * Complex64::from_polar((-gamma * time / 2.0).exp(), -time);
        assert_abs_diff_eq!(mean.re, expect.re, epsilon = 1e-8);
        assert_abs_diff_eq!(mean.im, expect.im, epsilon = 1e-8);
        assert_abs_diff_eq!(out.trace().re, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn lossless_limit_matches_unitary_evolution() {
        let t = TruncationConfig::new(14, 24).unwrap();
        let g0 = f64::sqrt(2.0) * 0.1;
        let rho = initial_joint_state(1.0, 0.0, &t).unwrap();
        let time = 1.3;
        let uni = run_continuous(&rho, &t, g0, time).unwrap();
        let lin = lindblad_evolve(&rho, &t, g0, 0.0, time, default_steps(time)).unwrap();
        assert!(max_entry_gap(&uni, &lin) < 1e-6);
    }

    #[test]
    fn generic_step_agrees_with_blockwise_path() {
        let t = TruncationConfig::new(10, 10).unwrap();
        let ops = build_operators(&t, 0.2);
        let rho = initial_joint_state(0.5, 0.0, &t).unwrap();
        let gamma = 0.05;
        let dt = 1e-3;
        let steps = 40;
        let mut generic = rho.clone();
        for _ in 0..steps {
            generic = lindblad_step(&generic, &ops.hamiltonian, &ops.annihilate_mech, gamma, dt);
        }
        let blockwise =
            lindblad_evolve(&rho, &t, 0.2, gamma, dt * steps as f64, steps).unwrap();
        assert!(max_entry_gap(&generic, &blockwise) < 1e-10);
    }

    #[test]
    fn trace_preserved_over_a_period() {
        let t = TruncationConfig::new(14, 20).unwrap();
        let rho = initial_joint_state(1.0, 0.0, &t).unwrap();
        let out = lindblad_evolve(&rho, &t, 0.1, 0.05, 2.0 * PI, DEFAULT_STEPS_PER_PERIOD)
            .unwrap();
        assert_abs_diff_eq!(out.trace().re, 1.0, epsilon = 1e-8);
        out.validate().unwrap();
    }

    #[test]
    fn step_halving_flags_coarse_grids() {
        let t = TruncationConfig::new(14, 16).unwrap();
        let rho = initial_joint_state(1.0, 0.0, &t).unwrap();
        let err = lindblad_evolve_converged(&rho, &t, 0.2, 0.02, 2.0 * PI, 8, 1e-12);
        assert!(matches!(err, Err(GateError::ConvergenceFailure { .. })));
        let ok = lindblad_evolve_converged(&rho, &t, 0.2, 0.02, 2.0 * PI, 1024, 1e-8);
        assert!(ok.is_ok());
    }

    #[test]
    fn damping_degrades_closed_loop_purity() {
        let t = TruncationConfig::new(14, 20).unwrap();
        let rho = initial_joint_state(1.0, 0.0, &t).unwrap();
        let theta = 2.0 * PI / 6.0;
        let lossless = run_pulsed_dissipative(&rho, &t, 0.1, theta, 0.0, 6, 256).unwrap();
        let damped = run_pulsed_dissipative(&rho, &t, 0.1, theta, 0.05, 6, 256).unwrap();
        let p0 = purity_of(&partial_trace_mech(&lossless, &t));
        let p1 = purity_of(&partial_trace_mech(&damped, &t));
        assert_abs_diff_eq!(p0, 1.0, epsilon = 1e-8);
        assert!(p1 < p0 - 1e-6, "purity {p1} not degraded vs {p0}");
    }
}

//! Brute-force truncated-Fock-space simulator.
//!
//! Ground truth for every closed form in the crate: dense operators, exact
//! unitaries via Hermitian eigendecomposition, pulsed and continuous gate
//! runs, Lindblad integration (see [`lindblad`]), partial traces, and state
//! metrics. Everything is dimensionless with ω_m = 1: times are in radians
//! of mechanical phase and γ means γ/ω_m.
//!
//! The optomechanical Hamiltonian Ĥ = b̂†b̂ - g₀n̂x̂_m is block-diagonal in
//! the field Fock index: field level f sees the mechanical Hamiltonian
//! Ĥ_f = b̂†b̂ - g₀·f·x̂_m. The evolution routines exploit this by working
//! per (f₁,f₂) mechanical block instead of exponentiating on the full
//! tensor space, which keeps the brute force honest (nothing analytical
//! enters) while staying fast enough for the acceptance budget. Blocks are
//! processed through the crate's [`parallel`](crate::parallel) layer.

pub mod lindblad;

use crate::parallel;
use crate::poisson::{self, FockWindow};
use crate::{GateError, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Population allowed at the truncation boundary before a run is rejected.
pub const BOUNDARY_POP_LIMIT: f64 = 1e-8;

const DEFAULT_DIM_CEILING: usize = 4000;

/// Fock-space cutoffs for the joint field ⊗ mechanics space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationConfig {
    pub field_dim: usize,
    pub mech_dim: usize,
}

impl TruncationConfig {
    pub fn new(field_dim: usize, mech_dim: usize) -> Result<Self> {
        if field_dim < 2 || mech_dim < 2 {
            return Err(GateError::InvalidParameter(format!(
                "truncation dims must be at least 2, got {field_dim}x{mech_dim}"
            )));
        }
        if field_dim * mech_dim > DEFAULT_DIM_CEILING {
            return Err(GateError::InvalidParameter(format!(
                "total dimension {} exceeds the {DEFAULT_DIM_CEILING} ceiling",
                field_dim * mech_dim
            )));
        }
        Ok(Self { field_dim, mech_dim })
    }

    /// Default cutoffs for a coherent field of amplitude `alpha` whose
    /// mechanical excursion stays below `max_disp`.
    pub fn for_scale(alpha: f64, max_disp: f64) -> Result<Self> {
        let field_dim = (alpha * alpha + 8.0 * alpha + 10.0).ceil() as usize;
        let mech_dim = (max_disp * max_disp + 8.0 * max_disp + 15.0).ceil() as usize;
        Self::new(field_dim, mech_dim)
    }

    pub fn total_dim(&self) -> usize {
        self.field_dim * self.mech_dim
    }

    /// Same field cutoff, doubled mechanical cutoff (truncation-convergence
    /// probes).
    pub fn doubled_mech(&self) -> Result<Self> {
        Self::new(self.field_dim, self.mech_dim * 2)
    }
}

/// Dense truncated operators on the joint space (field-major ordering:
/// joint index = f·mech_dim + m).
#[derive(Debug, Clone)]
pub struct Operators {
    pub config: TruncationConfig,
    /// n̂ ⊗ 1
    pub number_field: CMatrix,
    /// 1 ⊗ b̂
    pub annihilate_mech: CMatrix,
    /// 1 ⊗ x̂_m
    pub x_mech: CMatrix,
    /// 1 ⊗ p̂_m
    pub p_mech: CMatrix,
    /// Ĥ = 1⊗b̂†b̂ - g₀·(n̂⊗x̂_m)
    pub hamiltonian: CMatrix,
}

/// Truncated annihilation operator of dimension `dim`.
pub fn ladder(dim: usize) -> CMatrix {
    let mut a = CMatrix::zeros(dim, dim);
    for m in 1..dim {
        a[(m - 1, m)] = Complex64::new((m as f64).sqrt(), 0.0);
    }
    a
}

/// x̂ = (b̂+b̂†)/√2 at dimension `dim`.
pub fn position(dim: usize) -> CMatrix {
    let b = ladder(dim);
    (&b + b.adjoint()) / Complex64::new(f64::sqrt(2.0), 0.0)
}

/// p̂ = i(b̂†-b̂)/√2 at dimension `dim`.
pub fn momentum(dim: usize) -> CMatrix {
    let b = ladder(dim);
    (b.adjoint() - &b) * Complex64::new(0.0, 1.0) / Complex64::new(f64::sqrt(2.0), 0.0)
}

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Dense operator set for coupling g₀ (ω_m = 1).
pub fn build_operators(t: &TruncationConfig, g0: f64) -> Operators {
    let id_f = CMatrix::identity(t.field_dim, t.field_dim);
    let id_m = CMatrix::identity(t.mech_dim, t.mech_dim);
    let b = ladder(t.mech_dim);
    let num_f = {
        let mut n = CMatrix::zeros(t.field_dim, t.field_dim);
        for f in 0..t.field_dim {
            n[(f, f)] = Complex64::new(f as f64, 0.0);
        }
        n
    };
    let num_m = b.adjoint() * &b;
    let x = position(t.mech_dim);
    let p = momentum(t.mech_dim);
    let hamiltonian =
        kron(&id_f, &num_m) - kron(&num_f, &x) * Complex64::new(g0, 0.0);
    Operators {
        config: *t,
        number_field: kron(&num_f, &id_m),
        annihilate_mech: kron(&id_f, &b),
        x_mech: kron(&id_f, &x),
        p_mech: kron(&id_f, &p),
        hamiltonian,
    }
}

/// Largest |A - A†| entry.
pub fn hermiticity_deviation(a: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in i..a.ncols() {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

/// e^{-iHs} via Hermitian eigendecomposition.
pub fn exp_unitary(h: &CMatrix, s: f64) -> Result<CMatrix> {
    let scale = h.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let dev = hermiticity_deviation(h);
    if dev > 1e-12 * scale.max(1.0) {
        return Err(GateError::NonHermitian { deviation: dev });
    }
    let eig = h.clone().symmetric_eigen();
    let mut u = eig.eigenvectors.clone();
    for (col, &ev) in eig.eigenvalues.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -ev * s);
        for row in 0..u.nrows() {
            u[(row, col)] *= phase;
        }
    }
    Ok(&u * eig.eigenvectors.adjoint())
}

/// Dense density matrix (joint or field-only).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub dim: usize,
    pub entries: CMatrix,
}

impl DensityMatrix {
    pub fn from_pure(state: &CVector) -> Self {
        let entries = state * state.adjoint();
        Self { dim: state.len(), entries }
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diagonal().sum()
    }

    /// Trace, Hermiticity, and positivity checks (eigendecomposition —
    /// intended for tests, not hot paths).
    pub fn validate(&self) -> Result<()> {
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(GateError::InternalConsistency(format!(
                "density matrix trace {tr} is not 1"
            )));
        }
        let dev = hermiticity_deviation(&self.entries);
        if dev > 1e-10 {
            return Err(GateError::NonHermitian { deviation: dev });
        }
        let eig = self.entries.clone().symmetric_eigen();
        let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -1e-10 {
            return Err(GateError::InternalConsistency(format!(
                "density matrix has negative eigenvalue {min}"
            )));
        }
        Ok(())
    }
}

/// Coherent-state amplitude vector for real α, truncated at `dim`.
pub fn coherent_field_vector(alpha: f64, dim: usize) -> CVector {
    let window = FockWindow { l_min: 0, l_max: dim as u64 - 1 };
    let amps = poisson::coherent_amplitudes(alpha, window);
    CVector::from_iterator(dim, amps.into_iter().map(|a| Complex64::new(a, 0.0)))
}

/// Coherent-state amplitude vector for complex β.
pub fn coherent_vector(beta: Complex64, dim: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    let mut cur = Complex64::new((-beta.norm_sqr() / 2.0).exp(), 0.0);
    for m in 0..dim {
        v[m] = cur;
        cur *= beta / Complex64::new(((m + 1) as f64).sqrt(), 0.0);
    }
    v
}

/// Thermal mechanical state as a Boltzmann mixture over Fock states.
pub fn thermal_mech(n_th: f64, dim: usize) -> Result<CMatrix> {
    if n_th < 0.0 {
        return Err(GateError::InvalidParameter(format!(
            "n_th must be non-negative, got {n_th}"
        )));
    }
    let ratio = n_th / (1.0 + n_th);
    let mut rho = CMatrix::zeros(dim, dim);
    let mut p = 1.0 / (1.0 + n_th);
    for m in 0..dim {
        rho[(m, m)] = Complex64::new(p, 0.0);
        p *= ratio;
    }
    // p is now the weight of the first excluded level; the geometric tail is
    // p/(1-ratio)
    let tail = if ratio < 1.0 { p / (1.0 - ratio) } else { f64::INFINITY };
    if tail > 1e-12 {
        return Err(GateError::TruncationInsufficient { population: tail, limit: 1e-12 });
    }
    Ok(rho)
}

/// |α⟩_f ⊗ ρ_m(n_th) as a joint density matrix.
pub fn initial_joint_state(alpha: f64, n_th: f64, t: &TruncationConfig) -> Result<DensityMatrix> {
    let c = coherent_field_vector(alpha, t.field_dim);
    let rho_m = thermal_mech(n_th, t.mech_dim)?;
    let field = &c * c.adjoint();
    Ok(DensityMatrix { dim: t.total_dim(), entries: field.kronecker(&rho_m) })
}

/// Mechanical (f₁,f₂) block of a joint density matrix.
pub fn mech_block(rho: &DensityMatrix, t: &TruncationConfig, f1: usize, f2: usize) -> CMatrix {
    let dm = t.mech_dim;
    rho.entries.view((f1 * dm, f2 * dm), (dm, dm)).into_owned()
}

fn set_mech_block(rho: &mut DensityMatrix, t: &TruncationConfig, f1: usize, f2: usize, b: &CMatrix) {
    let dm = t.mech_dim;
    rho.entries.view_mut((f1 * dm, f2 * dm), (dm, dm)).copy_from(b);
}

/// Population on the outermost field and mechanical levels.
pub fn boundary_population(rho: &DensityMatrix, t: &TruncationConfig) -> f64 {
    let (df, dm) = (t.field_dim, t.mech_dim);
    let mut pop = 0.0;
    for m in 0..dm {
        pop += rho.entries[((df - 1) * dm + m, (df - 1) * dm + m)].re;
    }
    for f in 0..df - 1 {
        pop += rho.entries[(f * dm + dm - 1, f * dm + dm - 1)].re;
    }
    pop
}

fn guard_boundary(rho: &DensityMatrix, t: &TruncationConfig) -> Result<()> {
    let pop = boundary_population(rho, t);
    if pop > BOUNDARY_POP_LIMIT {
        return Err(GateError::TruncationInsufficient {
            population: pop,
            limit: BOUNDARY_POP_LIMIT,
        });
    }
    Ok(())
}

/// Mechanical block Hamiltonian Ĥ_f = b̂†b̂ - g₀·f·x̂_m as a dense real
/// symmetric matrix.
fn mech_block_hamiltonian(f: usize, g0: f64, dim: usize) -> DMatrix<f64> {
    let mut h = DMatrix::zeros(dim, dim);
    for m in 0..dim {
        h[(m, m)] = m as f64;
        if m + 1 < dim {
            let x = (((m + 1) as f64) / 2.0).sqrt();
            h[(m, m + 1)] = -g0 * f as f64 * x;
            h[(m + 1, m)] = -g0 * f as f64 * x;
        }
    }
    h
}

fn real_exp_unitary(h: &DMatrix<f64>, s: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let dim = h.nrows();
    let mut u = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let phase = Complex64::from_polar(1.0, -eig.eigenvalues[col] * s);
        for row in 0..dim {
            u[(row, col)] = phase * eig.eigenvectors[(row, col)];
        }
    }
    let qt = CMatrix::from_fn(dim, dim, |i, j| Complex64::new(eig.eigenvectors[(j, i)], 0.0));
    &u * qt
}

fn apply_block_unitaries(
    rho: &DensityMatrix,
    t: &TruncationConfig,
    us: &[CMatrix],
) -> DensityMatrix {
    let df = t.field_dim;
    let blocks = parallel::map_indexed(df * df, |idx| {
        let (f1, f2) = (idx / df, idx % df);
        if f1 > f2 {
            return None; // filled from the adjoint of the upper block
        }
        let b = mech_block(rho, t, f1, f2);
        Some(&us[f1] * b * us[f2].adjoint())
    });
    let mut out = DensityMatrix { dim: rho.dim, entries: CMatrix::zeros(rho.dim, rho.dim) };
    for f1 in 0..df {
        for f2 in f1..df {
            let b = blocks[f1 * df + f2].as_ref().expect("upper block");
            set_mech_block(&mut out, t, f1, f2, b);
            if f1 != f2 {
                let adj = b.adjoint();
                set_mech_block(&mut out, t, f2, f1, &adj);
            }
        }
    }
    out
}

/// Continuous gate: ρ → e^{-iĤt}ρe^{iĤt} with Ĥ = b̂†b̂ - g₀n̂x̂_m,
/// evaluated blockwise in the field index.
pub fn run_continuous(
    rho: &DensityMatrix,
    t: &TruncationConfig,
    g0: f64,
    time: f64,
) -> Result<DensityMatrix> {
    let us = parallel::map_indexed(t.field_dim, |f| {
        real_exp_unitary(&mech_block_hamiltonian(f, g0, t.mech_dim), time)
    });
    let out = apply_block_unitaries(rho, t, &us);
    guard_boundary(&out, t)?;
    Ok(out)
}

/// Free mechanical rotation e^{-iθb̂†b̂}: a diagonal phase per block entry.
fn apply_free_rotation(rho: &mut DensityMatrix, t: &TruncationConfig, theta: f64) {
    let (df, dm) = (t.field_dim, t.mech_dim);
    let phases: Vec<Complex64> =
        (0..dm).map(|m| Complex64::from_polar(1.0, -theta * m as f64)).collect();
    for f1 in 0..df {
        for f2 in 0..df {
            for m1 in 0..dm {
                for m2 in 0..dm {
                    let p = phases[m1] * phases[m2].conj();
                    rho.entries[(f1 * dm + m1, f2 * dm + m2)] *= p;
                }
            }
        }
    }
}

/// Pulse unitaries e^{iλf·x̂_m} for every field level, built from one
/// eigendecomposition of x̂_m.
fn pulse_unitaries(lambda: f64, t: &TruncationConfig) -> Vec<CMatrix> {
    let dim = t.mech_dim;
    let mut x = DMatrix::zeros(dim, dim);
    for m in 0..dim - 1 {
        let v = (((m + 1) as f64) / 2.0).sqrt();
        x[(m, m + 1)] = v;
        x[(m + 1, m)] = v;
    }
    let eig = x.symmetric_eigen();
    let q = CMatrix::from_fn(dim, dim, |i, j| Complex64::new(eig.eigenvectors[(i, j)], 0.0));
    let qt = q.adjoint();
    parallel::map_indexed(t.field_dim, |f| {
        let mut u = q.clone();
        for col in 0..dim {
            let phase = Complex64::from_polar(1.0, lambda * f as f64 * eig.eigenvalues[col]);
            for row in 0..dim {
                u[(row, col)] *= phase;
            }
        }
        &u * &qt
    })
}

/// Milburn gate: N_p pulses e^{iλn̂x̂_m} separated by N_p-1 free rotations
/// of θ radians.
pub fn run_pulsed(
    rho: &DensityMatrix,
    t: &TruncationConfig,
    lambda: f64,
    theta: f64,
    n_p: u64,
) -> Result<DensityMatrix> {
    if n_p == 0 {
        return Ok(rho.clone());
    }
    let ps = pulse_unitaries(lambda, t);
    let mut state = apply_block_unitaries(rho, t, &ps);
    for _ in 1..n_p {
        apply_free_rotation(&mut state, t, theta);
        state = apply_block_unitaries(&state, t, &ps);
    }
    guard_boundary(&state, t)?;
    Ok(state)
}

/// Reduced field state: ρ_f[f₁,f₂] = Σ_m ⟨f₁m|ρ|f₂m⟩.
pub fn partial_trace_mech(rho: &DensityMatrix, t: &TruncationConfig) -> DensityMatrix {
    let (df, dm) = (t.field_dim, t.mech_dim);
    let mut out = CMatrix::zeros(df, df);
    for f1 in 0..df {
        for f2 in 0..df {
            let mut s = Complex64::new(0.0, 0.0);
            for m in 0..dm {
                s += rho.entries[(f1 * dm + m, f2 * dm + m)];
            }
            out[(f1, f2)] = s;
        }
    }
    DensityMatrix { dim: df, entries: out }
}

/// Overlap fidelity ⟨t|ρ_f|t⟩ against the ideal Kerr-evolved coherent state
/// |t⟩ = e^{i·target_kerr·n̂²}|α⟩.
pub fn fidelity_to(rho_f: &DensityMatrix, alpha: f64, target_kerr: f64) -> f64 {
    let dim = rho_f.dim;
    let mut t = coherent_field_vector(alpha, dim);
    for l in 0..dim {
        t[l] *= Complex64::from_polar(1.0, target_kerr * (l * l) as f64);
    }
    (t.adjoint() * &rho_f.entries * &t)[(0, 0)].re
}

/// Tr ρ².
pub fn purity_of(rho: &DensityMatrix) -> f64 {
    rho.entries.iter().map(|z| z.norm_sqr()).sum()
}

/// Husimi Q at β: ⟨β|ρ|β⟩/π.
pub fn qfunction_of(rho_f: &DensityMatrix, beta: Complex64) -> f64 {
    let v = coherent_vector(beta, rho_f.dim);
    (v.adjoint() * &rho_f.entries * &v)[(0, 0)].re / std::f64::consts::PI
}

/// Deviations of the displacement-conjugation identities
/// Û†x̂_mÛ = x̂_m + c₂ and Û†p̂_mÛ = p̂_m + c₁ for Û = e^{i(c₁x̂_m-c₂p̂_m)},
/// measured on the interior half of the truncated space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacementCheckReport {
    pub max_dev_x: f64,
    pub max_dev_p: f64,
}

pub fn displacement_conjugation_check(
    c1: f64,
    c2: f64,
    t: &TruncationConfig,
) -> Result<DisplacementCheckReport> {
    let dim = t.mech_dim;
    let x = position(dim);
    let p = momentum(dim);
    let gen = &x * Complex64::new(c1, 0.0) - &p * Complex64::new(c2, 0.0);
    let u = exp_unitary(&gen, -1.0)?; // e^{+i(c1x - c2p)}
    let ux = u.adjoint() * &x * &u;
    let up = u.adjoint() * &p * &u;
    let interior = dim / 2;
    let mut dev_x: f64 = 0.0;
    let mut dev_p: f64 = 0.0;
    for i in 0..interior {
        for j in 0..interior {
            let idx = Complex64::new(if i == j { c2 } else { 0.0 }, 0.0);
            let idp = Complex64::new(if i == j { c1 } else { 0.0 }, 0.0);
            dev_x = dev_x.max((ux[(i, j)] - x[(i, j)] - idx).norm());
            dev_p = dev_p.max((up[(i, j)] - p[(i, j)] - idp).norm());
        }
    }
    Ok(DisplacementCheckReport { max_dev_x: dev_x, max_dev_p: dev_p })
}

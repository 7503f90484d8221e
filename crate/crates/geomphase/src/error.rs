use thiserror::Error;

/// Errors surfaced by gate construction, series evaluation and the oracle.
#[derive(Debug, Error)]
pub enum GateError {
    /// A parameter violates a documented invariant (negative strength,
    /// zero pulses, non-finite angle, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested configuration sits on a singular point of the closed
    /// forms (e.g. phase increment a multiple of 2π in the pulsed series).
    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    /// An operation only defined for specific rescale factors was called
    /// with an unsupported one.
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    /// A matrix that must be Hermitian is not.
    #[error("matrix is not Hermitian (max |A - A†| = {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    /// Population has leaked to the Fock cutoff boundary; results would not
    /// be trustworthy at this truncation.
    #[error("truncation insufficient: boundary population {population:.3e} exceeds {limit:.3e}")]
    TruncationInsufficient { population: f64, limit: f64 },

    /// Step-halving disagreement above tolerance in the Lindblad integrator.
    #[error(
        "integrator did not converge: step-halving residual {residual:.3e} > {tolerance:.3e}; \
         try at least {suggested_steps} steps"
    )]
    ConvergenceFailure {
        residual: f64,
        tolerance: f64,
        suggested_steps: usize,
    },

    /// An internal symmetry check failed (e.g. imaginary residual of a sum
    /// that must be real).
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

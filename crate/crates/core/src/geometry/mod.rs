//! The verifier projectors `Π₀`, `Π₁`, their common invariant decomposition,
//! and the dense spectral oracle for the best acceptance probability.

mod export;
mod jordan;
mod oracle;
mod projectors;

pub use export::decomposition_json;
pub use jordan::{
    jordan_decompose, principal_angle, JordanDecomposition, JordanSubspace,
    CLASSIFICATION_THRESHOLD,
};
pub use oracle::{brute_force_pmax, OracleResult, SPECTRUM_SLACK};
pub use projectors::{apply_pi0, apply_pi1, VerifierProjectors};

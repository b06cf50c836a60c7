//! Simulation of witness-preserving amplification for quantum verifiers.
//!
//! A verifier is a circuit `V` on `n` witness and `m` ancilla wires. The
//! crate builds the projectors `Π₀` (ancillae all zero) and
//! `Π₁ = V†|1⟩⟨1|_out V`, decomposes the space into their common invariant
//! blocks, and decides acceptance by phase estimation of the walk
//! `W = (2Π₁ − I)(2Π₀ − I)` with a median over repeated rounds. The
//! alternating-measurement baseline, exact-phase verification, and witness
//! preparation run on the same simulator.
//!
//! Qubit `k` is bit `k` of a basis index. All numerical code is generic over
//! [`scalar::Real`]; the aliases below fix the common precisions.

pub mod circuit;
pub mod error;
pub mod geometry;
pub mod mw;
pub mod scalar;
pub mod statevector;
pub mod trials;
pub mod walk;
pub mod witness;

pub use error::{Error, Result};

pub type StateVectorF64 = statevector::StateVector<f64>;
pub type StateVectorF32 = statevector::StateVector<f32>;
pub type GateF64 = statevector::Gate<f64>;
pub type GateF32 = statevector::Gate<f32>;
pub type VerifierCircuitF64 = circuit::VerifierCircuit<f64>;
pub type VerifierCircuitF32 = circuit::VerifierCircuit<f32>;
pub type JordanDecompositionF64 = geometry::JordanDecomposition<f64>;
pub type JordanDecompositionF32 = geometry::JordanDecomposition<f32>;

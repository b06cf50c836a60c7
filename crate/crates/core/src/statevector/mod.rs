//! Dense statevector simulation.
//!
//! Qubit `k` is bit `k` of the basis index throughout the crate.

mod gate;
mod ops;
mod qft;
mod state;

pub use gate::{Axis, Gate, GateKind};
pub use ops::{
    apply_circuit, apply_gate, dense_from_map, dense_unitary, measure_register,
    project_register, register_probabilities, register_value, CompiledCircuit, CompiledGate,
    Direction,
};
pub use qft::{inverse_qft, qft, qft_circuit};
pub use state::{StateVector, MAX_DENSE_QUBITS, MAX_STATE_QUBITS};

//! Verifier circuits, promise parameters, file formats, and planted test
//! instances.

mod format;
mod planted;
mod validate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::{CompiledCircuit, Gate};

pub use format::{
    parse_circuit, read_witness, serialize_circuit, serialize_witness, WitnessFile,
};
pub use planted::{planted_instance, PlantedInstance, PlantedKind};
pub use validate::{ValidationReport, Violation, ViolationKind};

/// A verifier `V` on `n` witness wires `[0, n)` followed by `m` ancilla wires
/// `[n, n + m)`. Acceptance means reading `1` on `output_qubit` after `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifierCircuit<T> {
    pub num_witness: usize,
    pub num_ancilla: usize,
    pub output_qubit: usize,
    pub gates: Vec<Gate<T>>,
}

impl<T: Real> VerifierCircuit<T> {
    /// Builds and validates a circuit.
    pub fn new(
        num_witness: usize,
        num_ancilla: usize,
        output_qubit: usize,
        gates: Vec<Gate<T>>,
    ) -> Result<Self> {
        let c = Self {
            num_witness,
            num_ancilla,
            output_qubit,
            gates,
        };
        c.check()?;
        Ok(c)
    }

    /// Total wire count `n + m`.
    pub fn num_qubits(&self) -> usize {
        self.num_witness + self.num_ancilla
    }

    pub fn layout(&self) -> RegisterLayout {
        RegisterLayout {
            num_witness: self.num_witness,
            num_ancilla: self.num_ancilla,
        }
    }

    /// Converts the validation report into an error if the circuit is unusable.
    pub fn check(&self) -> Result<()> {
        self.validate().into_result()
    }

    pub fn compile(&self) -> Result<CompiledCircuit<T>> {
        self.check()?;
        CompiledCircuit::new(&self.gates, self.num_qubits())
    }
}

/// Witness/ancilla split of the verifier register.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub num_witness: usize,
    pub num_ancilla: usize,
}

impl RegisterLayout {
    pub fn num_qubits(&self) -> usize {
        self.num_witness + self.num_ancilla
    }

    /// Bit mask selecting the ancilla wires of a basis index.
    pub fn ancilla_mask(&self) -> usize {
        ((1usize << self.num_ancilla) - 1) << self.num_witness
    }

    pub fn ancilla_wires(&self) -> Vec<usize> {
        (self.num_witness..self.num_qubits()).collect()
    }
}

/// Promise bounds `a > b` and repetition count `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PromiseParameters {
    pub a: f64,
    pub b: f64,
    pub r: usize,
}

/// Smallest promise gap accepted for planning.
pub const MIN_PROMISE_GAP: f64 = 1e-6;

impl PromiseParameters {
    pub fn new(a: f64, b: f64, r: usize) -> Result<Self> {
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::InvalidParameter(format!("a = {a} outside (0, 1]")));
        }
        if !(0.0..1.0).contains(&b) {
            return Err(Error::InvalidParameter(format!("b = {b} outside [0, 1)")));
        }
        if !(a - b >= MIN_PROMISE_GAP) {
            return Err(Error::InvalidParameter(format!(
                "promise gap a - b = {} below {MIN_PROMISE_GAP:e}",
                a - b
            )));
        }
        if r == 0 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        Ok(Self { a, b, r })
    }

    pub fn gap(&self) -> f64 {
        self.a - self.b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promise_parameter_guards() {
        assert!(PromiseParameters::new(0.9, 0.5, 6).is_ok());
        assert!(PromiseParameters::new(0.5, 0.5, 6).is_err());
        assert!(PromiseParameters::new(0.5, 0.4999999, 6).is_err());
        assert!(PromiseParameters::new(1.2, 0.5, 6).is_err());
        assert!(PromiseParameters::new(0.9, 0.5, 0).is_err());
        assert!(PromiseParameters::new(1.0, 0.0, 1).is_ok());
    }

    #[test]
    fn layout_masks() {
        let l = RegisterLayout {
            num_witness: 2,
            num_ancilla: 3,
        };
        assert_eq!(l.ancilla_mask(), 0b11100);
        assert_eq!(l.ancilla_wires(), vec![2, 3, 4]);
    }
}

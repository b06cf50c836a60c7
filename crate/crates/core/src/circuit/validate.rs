use std::fmt;

use super::VerifierCircuit;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::MAX_STATE_QUBITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Malformed structure: bad indices, collisions, non-unitary matrices.
    Structure,
    /// Register exceeds the simulator's memory cap.
    Guard { requested: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Field path, e.g. `gates[3].targets`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Every invariant violation of a circuit, plus non-fatal warnings.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    /// True iff downstream modules can use the circuit.
    pub fn is_usable(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        for v in &self.violations {
            if let ViolationKind::Guard { requested } = v.kind {
                return Err(Error::SizeGuard {
                    what: "verifier register",
                    requested,
                    limit: MAX_STATE_QUBITS,
                });
            }
        }
        if self.violations.is_empty() {
            Ok(())
        } else {
            let joined: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidCircuit(joined.join("; ")))
        }
    }

    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            kind: ViolationKind::Structure,
            path: path.into(),
            message: message.into(),
        });
    }
}

impl<T: Real> VerifierCircuit<T> {
    /// Lists every violated invariant; an empty report means the circuit is usable.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let total = self.num_qubits();
        if self.num_witness == 0 {
            report.push("num_witness_qubits", "must be at least 1");
        }
        if self.num_ancilla == 0 {
            report.push("num_ancilla_qubits", "must be at least 1");
        }
        if total > MAX_STATE_QUBITS {
            report.violations.push(Violation {
                kind: ViolationKind::Guard { requested: total },
                path: "num_witness_qubits + num_ancilla_qubits".into(),
                message: format!("{total} qubits exceed the {MAX_STATE_QUBITS}-qubit cap"),
            });
        }
        if self.output_qubit >= total {
            report.push(
                "output_qubit",
                format!("wire {} outside [0, {total})", self.output_qubit),
            );
        } else if self.output_qubit < self.num_witness {
            report.warnings.push(format!(
                "output_qubit {} is a witness wire; ancilla output expected",
                self.output_qubit
            ));
        }
        for (i, gate) in self.gates.iter().enumerate() {
            if let Err(e) = gate.validate(total) {
                report.push(format!("gates[{i}] ({})", gate.name()), e.to_string());
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::Gate;

    fn circuit(n: usize, m: usize, gates: Vec<Gate<f64>>) -> VerifierCircuit<f64> {
        VerifierCircuit {
            num_witness: n,
            num_ancilla: m,
            output_qubit: n,
            gates,
        }
    }

    #[test]
    fn valid_circuit_has_empty_report() {
        let c = circuit(2, 1, vec![Gate::h(0), Gate::cx(0, 2)]);
        let r = c.validate();
        assert!(r.is_usable());
        assert!(r.violations.is_empty() && r.warnings.is_empty());
    }

    #[test]
    fn control_equal_to_target_is_one_violation() {
        let c = circuit(2, 1, vec![Gate::h(0), Gate::x(1).controlled_by([1])]);
        let r = c.validate();
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].path.starts_with("gates[1]"));
    }

    #[test]
    fn oversized_register_is_guard_violation() {
        let c = circuit(20, 5, vec![]);
        let r = c.validate();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::Guard { requested: 25 });
        assert!(r.into_result().unwrap_err().is_guard());
    }

    #[test]
    fn witness_output_is_warning_only() {
        let mut c = circuit(2, 1, vec![]);
        c.output_qubit = 0;
        let r = c.validate();
        assert!(r.is_usable());
        assert_eq!(r.warnings.len(), 1);
    }
}

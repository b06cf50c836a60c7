use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use super::WalkOperator;
use crate::circuit::VerifierCircuit;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::{
    apply_gate, inverse_qft, measure_register, qft, Gate, StateVector, MAX_STATE_QUBITS,
};

/// One phase-estimation outcome.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseSample {
    pub raw_k: u64,
    /// `raw_k / 2^t`
    pub raw_phi: f64,
    /// `min(raw_phi, 1 − raw_phi)`
    pub folded_phi: f64,
}

impl PhaseSample {
    pub fn from_raw(raw_k: u64, t_bits: usize) -> Self {
        let raw_phi = raw_k as f64 / (1u64 << t_bits) as f64;
        Self {
            raw_k,
            raw_phi,
            folded_phi: fold_phase(raw_phi),
        }
    }
}

/// Maps a phase in `[0, 1)` to its distance from 0 on the circle, in `[0, 1/2]`.
pub fn fold_phase(raw_phi: f64) -> f64 {
    raw_phi.min(1.0 - raw_phi)
}

/// Phase-register wires above a `verifier_qubits`-wide register.
pub fn phase_wires(verifier_qubits: usize, t_bits: usize) -> Vec<usize> {
    (verifier_qubits..verifier_qubits + t_bits).collect()
}

pub(crate) fn check_phase_width(verifier_qubits: usize, t_bits: usize) -> Result<()> {
    if t_bits == 0 || t_bits >= 63 {
        return Err(Error::InvalidParameter(format!("t = {t_bits} phase bits")));
    }
    let total = verifier_qubits + t_bits;
    if total > MAX_STATE_QUBITS {
        return Err(Error::SizeGuard {
            what: "phase estimation register",
            requested: total,
            limit: MAX_STATE_QUBITS,
        });
    }
    Ok(())
}

impl<T: Real> WalkOperator<T> {
    /// The phase-estimation unitary on a state whose phase register sits
    /// directly above the verifier register: Hadamards, controlled walk
    /// powers, then the inverse QFT. No measurement.
    pub fn phase_estimation_unitary(&mut self, state: &mut StateVector<T>, t_bits: usize) -> Result<()> {
        let q = self.layout().num_qubits();
        let wires = phase_wires(q, t_bits);
        for &w in &wires {
            apply_gate(state, &Gate::h(w))?;
        }
        self.controlled_powers(state, q, t_bits, false)?;
        inverse_qft(state, &wires)
    }

    /// Exact inverse of [`Self::phase_estimation_unitary`].
    pub fn inverse_phase_estimation_unitary(
        &mut self,
        state: &mut StateVector<T>,
        t_bits: usize,
    ) -> Result<()> {
        let q = self.layout().num_qubits();
        let wires = phase_wires(q, t_bits);
        qft(state, &wires)?;
        self.controlled_powers(state, q, t_bits, true)?;
        for &w in &wires {
            apply_gate(state, &Gate::h(w))?;
        }
        Ok(())
    }

    /// Inverse of the Hadamard and controlled-power stages alone, mapping
    /// `|φ±⟩ ⊗ 2^{-t/2} Σ_k e^{2πikφ}|k⟩` back to `|φ±⟩|0⟩^t`.
    pub fn unwind_phase_kickback(&mut self, state: &mut StateVector<T>, t_bits: usize) -> Result<()> {
        let q = self.layout().num_qubits();
        self.controlled_powers(state, q, t_bits, true)?;
        for w in phase_wires(q, t_bits) {
            apply_gate(state, &Gate::h(w))?;
        }
        Ok(())
    }

    /// Runs one round of phase estimation of `W` on `verifier_state` with a
    /// fresh `t`-qubit register, measures the register, and leaves the
    /// collapsed verifier state in `verifier_state`.
    pub fn phase_estimate<R: Rng + ?Sized>(
        &mut self,
        verifier_state: &mut StateVector<T>,
        t_bits: usize,
        rng: &mut R,
    ) -> Result<PhaseSample> {
        let q = self.layout().num_qubits();
        if verifier_state.num_qubits() != q {
            return Err(Error::RegisterMismatch {
                expected: q,
                got: verifier_state.num_qubits(),
            });
        }
        check_phase_width(q, t_bits)?;
        let mut full = verifier_state.extend_zero(t_bits)?;
        self.phase_estimation_unitary(&mut full, t_bits)?;
        let k = measure_register(&mut full, &phase_wires(q, t_bits), rng)?;
        let mut collapsed = full.low_slice(q, k)?;
        let norm = collapsed.normalize();
        debug_assert!(norm > T::zero());
        *verifier_state = collapsed;
        Ok(PhaseSample::from_raw(k as u64, t_bits))
    }
}

/// One round of phase estimation of `W = F₁F₀` on `input_state` (the full
/// `n + m` verifier register), which is replaced by its post-measurement
/// state.
pub fn phase_estimate<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    input_state: &mut StateVector<T>,
    t_bits: usize,
    rng: &mut R,
) -> Result<PhaseSample> {
    WalkOperator::new(circuit)?.phase_estimate(input_state, t_bits, rng)
}

/// Distribution over `raw_k` that one round would sample from, without
/// measuring. Used by tests and diagnostics.
pub fn phase_distribution<T: Real>(
    circuit: &VerifierCircuit<T>,
    input_state: &StateVector<T>,
    t_bits: usize,
) -> Result<Vec<f64>> {
    let mut walk = WalkOperator::new(circuit)?;
    let q = circuit.num_qubits();
    check_phase_width(q, t_bits)?;
    let mut full = input_state.extend_zero(t_bits)?;
    walk.phase_estimation_unitary(&mut full, t_bits)?;
    let block = 1usize << q;
    Ok(full
        .amplitudes()
        .chunks(block)
        .map(|c| c.iter().map(|a: &Complex<T>| a.norm_sqr().as_f64()).sum())
        .collect())
}

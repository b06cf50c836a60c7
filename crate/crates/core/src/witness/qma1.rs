use rand::Rng;
use serde::Serialize;

use super::dyadic_numerator;
use crate::circuit::{PromiseParameters, VerifierCircuit};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::StateVector;
use crate::walk::{PhaseSample, QueryCounter, Verdict, WalkOperator};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Qma1Outcome {
    pub verdict: Verdict,
    /// False when `cos²(π·claim) < a` and no phase estimation ran.
    pub gate_passed: bool,
    pub samples: Vec<PhaseSample>,
    pub queries_v: u64,
    pub queries_vdag: u64,
}

/// Exact-phase verification of a claimed `t`-bit angle `j/2^t`.
///
/// Rejects unless `cos²(π·claim) ≥ a`; otherwise runs `params.r` rounds of
/// `t`-bit phase estimation on `|witness⟩|0…0⟩` and accepts iff every outcome
/// is `j` or `2^t − j (mod 2^t)`.
pub fn qma1_verify<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    witness: &StateVector<T>,
    claimed_phi: f64,
    t: usize,
    params: &PromiseParameters,
    rng: &mut R,
) -> Result<Qma1Outcome> {
    let j = dyadic_numerator(claimed_phi, t)?;
    if witness.num_qubits() != circuit.num_witness {
        return Err(Error::RegisterMismatch {
            expected: circuit.num_witness,
            got: witness.num_qubits(),
        });
    }
    if (std::f64::consts::PI * claimed_phi).cos().powi(2) < params.a {
        return Ok(Qma1Outcome {
            verdict: Verdict::Reject,
            gate_passed: false,
            samples: Vec::new(),
            queries_v: 0,
            queries_vdag: 0,
        });
    }
    let modulus = 1u64 << t;
    let mirror = (modulus - j) % modulus;
    let mut walk = WalkOperator::new(circuit)?;
    let mut state = witness.extend_zero(circuit.num_ancilla)?;
    let samples = (0..params.r)
        .map(|_| walk.phase_estimate(&mut state, t, rng))
        .collect::<Result<Vec<_>>>()?;
    let ok = samples.iter().all(|s| s.raw_k == j || s.raw_k == mirror);
    let QueryCounter { v, v_dag } = walk.queries();
    Ok(Qma1Outcome {
        verdict: if ok { Verdict::Accept } else { Verdict::Reject },
        gate_passed: true,
        samples,
        queries_v: v,
        queries_vdag: v_dag,
    })
}

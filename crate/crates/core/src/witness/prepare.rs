use rand::Rng;

use super::{amplify_zero_register, AmplificationSchedule};
use crate::circuit::VerifierCircuit;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::{measure_register, StateVector};
use crate::walk::{fast_amplify, Decision, PrecisionPlan, QueryCounter};

/// Settings for the grid search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessSearch {
    /// Phase-register size used for extraction.
    pub t: usize,
    /// Grid step is `2^{-grid_bits}`; must not exceed `t`.
    pub grid_bits: usize,
    /// Fresh random `alpha` draws per grid point.
    pub max_retries: usize,
    pub schedule: AmplificationSchedule,
}

impl WitnessSearch {
    pub fn new(t: usize) -> Self {
        Self {
            t,
            grid_bits: t,
            max_retries: 8,
            schedule: AmplificationSchedule::default(),
        }
    }

    /// Grid phases in ascending order, from 0 up to and including 1/2.
    pub fn grid(&self) -> Vec<f64> {
        let steps = 1u64 << self.grid_bits;
        (0..=steps / 2).map(|i| i as f64 / steps as f64).collect()
    }
}

/// A witness that passed verification.
#[derive(Clone, Debug)]
pub struct WitnessCandidate<T> {
    pub witness: StateVector<T>,
    /// `cos²(π·grid_phi)`.
    pub estimated_acceptance: f64,
    pub grid_phi: f64,
    /// Filled in by callers that know the true top witness.
    pub fidelity_vs_oracle: Option<f64>,
    /// Extraction attempts across all grid points.
    pub attempts: usize,
    /// Extraction plus verification cost.
    pub queries: QueryCounter,
    pub verification: Decision,
}

/// Scans the phase grid upward from 0. At each point, extracts a random
/// `alpha` against the filter state, amplifies the zero phase register,
/// postselects the ancillae on `|0…0⟩`, and verifies the resulting witness
/// with [`fast_amplify`]. Returns the first verified witness.
pub fn prepare_witness<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    search: &WitnessSearch,
    plan: &PrecisionPlan,
    rng: &mut R,
) -> Result<WitnessCandidate<T>> {
    if search.grid_bits == 0 || search.grid_bits > search.t {
        return Err(Error::InvalidParameter(format!(
            "grid_bits = {} must lie in [1, t = {}]",
            search.grid_bits, search.t
        )));
    }
    let q = circuit.num_qubits();
    let n = circuit.num_witness;
    let ancillae = circuit.layout().ancilla_wires();
    let mut queries = QueryCounter::default();
    let mut attempts = 0;
    for phi in search.grid() {
        for _ in 0..search.max_retries.max(1) {
            attempts += 1;
            let alpha = StateVector::random(q, rng)?;
            let amp = match amplify_zero_register(circuit, phi, search.t, &alpha, rng, &search.schedule) {
                Ok(a) => a,
                Err(Error::ScheduleExhausted { .. }) => break,
                Err(e) => return Err(e),
            };
            queries.v += amp.queries.v;
            queries.v_dag += amp.queries.v_dag;
            let mut verifier = amp.amplified.state.low_slice(q, 0)?;
            verifier.normalize();
            if measure_register(&mut verifier, &ancillae, rng)? != 0 {
                continue;
            }
            let mut witness = verifier.low_slice(n, 0)?;
            witness.normalize();
            let decision = fast_amplify(circuit, &witness, plan, rng)?;
            queries.v += decision.queries_v;
            queries.v_dag += decision.queries_vdag;
            if decision.verdict.is_accept() {
                return Ok(WitnessCandidate {
                    witness,
                    estimated_acceptance: (std::f64::consts::PI * phi).cos().powi(2),
                    grid_phi: phi,
                    fidelity_vs_oracle: None,
                    attempts,
                    queries,
                    verification: decision,
                });
            }
        }
    }
    Err(Error::RetriesExhausted)
}

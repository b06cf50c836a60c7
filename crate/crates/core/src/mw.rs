//! Alternating-measurement amplification: measure `{Π₁, I − Π₁}` and
//! `{Π₀, I − Π₀}` in turn and count how often consecutive outcomes differ.
//!
//! Outcome bit 0 means the state landed in the projector's support, bit 1 in
//! its complement. A single 0 is prepended before counting transitions, so a
//! state that stays in both supports throughout has `z = 0`, and `z` over a
//! single Jordan block with overlap `p` is `Binomial(N, 1 − p)`.

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::circuit::{PromiseParameters, VerifierCircuit};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::{measure_register, CompiledCircuit, Direction, StateVector};
use crate::walk::{QueryCounter, Verdict};

/// Which two-outcome measurement opens the alternating sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FirstMeasurement {
    /// `{Π₁, I − Π₁}` first. The input already lies in `Π₀`, so this wastes
    /// no measurement.
    #[default]
    Pi1,
    Pi0,
}

/// Outcome bits of an alternating sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasurementTrace {
    pub bits: Vec<u8>,
    /// Number of differing neighbours after prepending a 0.
    pub z: usize,
    pub n: usize,
    pub queries_v: u64,
    pub queries_vdag: u64,
}

impl MeasurementTrace {
    /// Builds a trace from raw bits.
    pub fn from_bits(bits: Vec<u8>) -> Self {
        let z = transitions(&bits);
        let n = bits.len();
        Self {
            bits,
            z,
            n,
            queries_v: 0,
            queries_vdag: 0,
        }
    }

    /// `N(a + b)/2`.
    pub fn decision_threshold(&self, params: &PromiseParameters) -> f64 {
        self.n as f64 * (params.a + params.b) / 2.0
    }

    /// Neighbouring pairs that agree, `N − z`.
    pub fn agreements(&self) -> usize {
        self.n - self.z
    }
}

/// Differing neighbours in `0, bits[0], bits[1], …`.
pub fn transitions(bits: &[u8]) -> usize {
    let mut prev = 0u8;
    let mut z = 0;
    for &b in bits {
        if b != prev {
            z += 1;
        }
        prev = b;
    }
    z
}

/// Verdict of the alternating-measurement test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MwDecision {
    pub verdict: Verdict,
    pub z: usize,
    pub n: usize,
    pub decision_threshold: f64,
    pub queries_v: u64,
    pub queries_vdag: u64,
}

/// Accepts iff the agreement count `N − z` strictly exceeds `N(a + b)/2`.
pub fn mw_decide(trace: &MeasurementTrace, params: &PromiseParameters) -> MwDecision {
    let threshold = trace.decision_threshold(params);
    let verdict = if (trace.agreements() as f64) > threshold {
        Verdict::Accept
    } else {
        Verdict::Reject
    };
    MwDecision {
        verdict,
        z: trace.z,
        n: trace.n,
        decision_threshold: threshold,
        queries_v: trace.queries_v,
        queries_vdag: trace.queries_vdag,
    }
}

/// `(1 − p)^z p^{N − z}`, the probability of one particular trace with `z`
/// transitions inside a block of overlap `p`.
pub fn sequence_probability(p: f64, n: usize, z: usize) -> Result<f64> {
    if z > n {
        return Err(Error::InvalidParameter(format!("z = {z} exceeds N = {n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    Ok((1.0 - p).powi(z as i32) * p.powi((n - z) as i32))
}

/// Stateful alternating measurer over one verifier register.
struct Measurer<T> {
    circuit: CompiledCircuit<T>,
    ancilla_mask: usize,
    output_qubit: usize,
    queries: QueryCounter,
}

impl<T: Real> Measurer<T> {
    fn measure_pi1<R: Rng + ?Sized>(&mut self, s: &mut StateVector<T>, rng: &mut R) -> Result<u8> {
        self.circuit.apply(s, Direction::Forward)?;
        let out = measure_register(s, &[self.output_qubit], rng)?;
        self.circuit.apply(s, Direction::Inverse)?;
        self.queries.v += 1;
        self.queries.v_dag += 1;
        Ok(if out == 1 { 0 } else { 1 })
    }

    fn measure_pi0<R: Rng + ?Sized>(&mut self, s: &mut StateVector<T>, rng: &mut R) -> u8 {
        let mask = self.ancilla_mask;
        let inside: f64 = s
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == 0)
            .map(|(_, a)| a.norm_sqr().as_f64())
            .sum();
        let total = s.squared_norm().as_f64();
        let keep_inside = rng.random::<f64>() * total < inside;
        let zero = Complex::new(T::zero(), T::zero());
        for (i, a) in s.amplitudes_mut().iter_mut().enumerate() {
            if (i & mask == 0) != keep_inside {
                *a = zero;
            }
        }
        s.normalize();
        u8::from(!keep_inside)
    }
}

/// Prepares `|witness⟩|0…0⟩` and performs `n` alternating two-outcome
/// measurements starting with `{Π₁, I − Π₁}`. Each `Π₁` measurement costs one
/// `V` and one `V†`. Also returns the final collapsed state.
pub fn alternating_measurements_with_state<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    witness: &StateVector<T>,
    n: usize,
    rng: &mut R,
) -> Result<(MeasurementTrace, StateVector<T>)> {
    alternating_sequence(circuit, witness, n, FirstMeasurement::Pi1, rng)
}

/// [`alternating_measurements_with_state`] with a chosen opening measurement.
pub fn alternating_sequence<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    witness: &StateVector<T>,
    n: usize,
    first: FirstMeasurement,
    rng: &mut R,
) -> Result<(MeasurementTrace, StateVector<T>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if witness.num_qubits() != circuit.num_witness {
        return Err(Error::RegisterMismatch {
            expected: circuit.num_witness,
            got: witness.num_qubits(),
        });
    }
    let mut m = Measurer {
        circuit: circuit.compile()?,
        ancilla_mask: circuit.layout().ancilla_mask(),
        output_qubit: circuit.output_qubit,
        queries: QueryCounter::default(),
    };
    let mut state = witness.extend_zero(circuit.num_ancilla)?;
    state.normalize();
    let mut bits = Vec::with_capacity(n);
    let offset = usize::from(first == FirstMeasurement::Pi0);
    for step in 0..n {
        let bit = if (step + offset) % 2 == 0 {
            m.measure_pi1(&mut state, rng)?
        } else {
            m.measure_pi0(&mut state, rng)
        };
        bits.push(bit);
    }
    let mut trace = MeasurementTrace::from_bits(bits);
    trace.queries_v = m.queries.v;
    trace.queries_vdag = m.queries.v_dag;
    Ok((trace, state))
}

pub fn alternating_measurements<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    witness: &StateVector<T>,
    n: usize,
    rng: &mut R,
) -> Result<MeasurementTrace> {
    alternating_measurements_with_state(circuit, witness, n, rng).map(|(t, _)| t)
}

/// Full baseline test with `N` alternating measurements, `Π₁` first.
pub fn mw_amplify<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    witness: &StateVector<T>,
    params: &PromiseParameters,
    n: usize,
    rng: &mut R,
) -> Result<MwDecision> {
    mw_amplify_from(circuit, witness, params, n, FirstMeasurement::Pi1, rng)
}

pub fn mw_amplify_from<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    witness: &StateVector<T>,
    params: &PromiseParameters,
    n: usize,
    first: FirstMeasurement,
    rng: &mut R,
) -> Result<MwDecision> {
    let (trace, _) = alternating_sequence(circuit, witness, n, first, rng)?;
    Ok(mw_decide(&trace, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::Gate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn transition_count_with_leading_zero() {
        assert_eq!(transitions(&[0, 0, 1, 1, 1, 0, 0, 1, 0, 1]), 5);
        assert_eq!(transitions(&[1]), 1);
        assert_eq!(transitions(&[0, 0, 0]), 0);
        assert_eq!(transitions(&[1, 0, 1, 0]), 4);
    }

    #[test]
    fn decision_rule() {
        let params = PromiseParameters::new(0.9, 0.5, 1).unwrap();
        let all_agree = MeasurementTrace::from_bits(vec![0; 10]);
        assert!(mw_decide(&all_agree, &params).verdict.is_accept());
        let all_differ = MeasurementTrace::from_bits(vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(all_differ.z, 10);
        assert!(!mw_decide(&all_differ, &params).verdict.is_accept());
        // z = 5: five agreements against a threshold of 7.
        let half = MeasurementTrace::from_bits(vec![0, 0, 1, 1, 1, 0, 0, 1, 0, 1]);
        let d = mw_decide(&half, &params);
        assert_eq!(d.decision_threshold, 7.0);
        assert!(!d.verdict.is_accept());
        // Exactly at threshold rejects.
        let params = PromiseParameters::new(0.8, 0.6, 1).unwrap();
        let tie = MeasurementTrace::from_bits(vec![0, 0, 0, 0, 0, 0, 0, 1, 0, 1]);
        assert_eq!(tie.agreements(), 7);
        assert!(!mw_decide(&tie, &params).verdict.is_accept());
    }

    #[test]
    fn sequence_probability_values() {
        assert!((sequence_probability(0.9, 4, 1).unwrap() - 0.0729).abs() < 1e-15);
        assert!((sequence_probability(0.7, 5, 0).unwrap() - 0.7f64.powi(5)).abs() < 1e-15);
        assert_eq!(sequence_probability(1.0, 3, 1).unwrap(), 0.0);
        assert!(sequence_probability(0.5, 3, 4).is_err());
    }

    #[test]
    fn always_accepting_verifier_stays_in_support() {
        let c = VerifierCircuit::<f64>::new(1, 1, 1, vec![Gate::x(1)]).unwrap();
        let w = StateVector::basis(1, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = alternating_measurements(&c, &w, 9, &mut rng).unwrap();
        assert!(t.bits.iter().all(|&b| b == 0));
        assert_eq!(t.z, 0);
        assert_eq!((t.queries_v, t.queries_vdag), (5, 5));
    }

    #[test]
    fn pi0_first_shifts_the_query_pattern() {
        let c = VerifierCircuit::<f64>::new(1, 1, 1, vec![Gate::x(1)]).unwrap();
        let w = StateVector::basis(1, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (t, _) = alternating_sequence(&c, &w, 9, FirstMeasurement::Pi0, &mut rng).unwrap();
        assert_eq!(t.z, 0);
        assert_eq!(t.queries_v, 4);
    }
}

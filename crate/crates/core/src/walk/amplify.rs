use rand::Rng;
use serde::Serialize;

use super::{PhaseSample, PrecisionPlan, WalkOperator};
use crate::circuit::VerifierCircuit;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
        }
    }
}

/// Outcome of median-boosted phase estimation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub samples: Vec<PhaseSample>,
    pub median_folded: f64,
    pub queries_v: u64,
    pub queries_vdag: u64,
    pub plan: PrecisionPlan,
}

/// `(1/2)(2√(ε(1 − ε)))^r`, the chance that the median of `r` samples each
/// wrong with probability `ε` is wrong.
pub fn median_fail_bound(eps: f64, r: usize) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidParameter(format!("eps = {eps} outside (0, 1/2)")));
    }
    Ok(0.5 * (2.0 * (eps * (1.0 - eps)).sqrt()).powi(r as i32))
}

/// Lower middle order statistic. Empty input yields `None`.
pub fn lower_median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(sorted[(sorted.len() - 1) / 2])
}

/// Runs `plan.r` rounds of phase estimation on `|witness⟩|0…0⟩`, carrying the
/// verifier register across rounds, and accepts iff the median folded phase
/// is strictly below `(phi_a + phi_b)/2`.
pub fn fast_amplify<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    witness: &StateVector<T>,
    plan: &PrecisionPlan,
    rng: &mut R,
) -> Result<Decision> {
    if witness.num_qubits() != circuit.num_witness {
        return Err(Error::RegisterMismatch {
            expected: circuit.num_witness,
            got: witness.num_qubits(),
        });
    }
    let mut walk = WalkOperator::new(circuit)?;
    let mut state = witness.extend_zero(circuit.num_ancilla)?;
    let samples = (0..plan.r)
        .map(|_| walk.phase_estimate(&mut state, plan.t_bits, rng))
        .collect::<Result<Vec<_>>>()?;
    let folded: Vec<f64> = samples.iter().map(|s| s.folded_phi).collect();
    let median_folded = lower_median(&folded).ok_or_else(|| {
        Error::InvalidParameter("r must be at least 1".into())
    })?;
    let verdict = if median_folded < plan.threshold() {
        Verdict::Accept
    } else {
        Verdict::Reject
    };
    let q = walk.queries();
    Ok(Decision {
        verdict,
        samples,
        median_folded,
        queries_v: q.v,
        queries_vdag: q.v_dag,
        plan: *plan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_bound_closed_form() {
        let v = median_fail_bound(1.0 / 16.0, 6).unwrap();
        assert!((v - 3375.0 / 524_288.0).abs() < 1e-15);
        assert_eq!(median_fail_bound(1.0 / 16.0, 0).unwrap(), 0.5);
        for r in 1..20 {
            assert!(median_fail_bound(1.0 / 16.0, r).unwrap() <= 0.5f64.powi(r as i32));
        }
        assert!(median_fail_bound(0.5, 3).is_err());
    }

    #[test]
    fn lower_middle_for_even_counts() {
        assert_eq!(lower_median(&[0.4, 0.1, 0.3, 0.2]), Some(0.2));
        assert_eq!(lower_median(&[0.3, 0.1, 0.2]), Some(0.2));
        assert_eq!(lower_median(&[]), None);
    }
}

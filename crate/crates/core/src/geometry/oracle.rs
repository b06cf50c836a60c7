use crate::circuit::VerifierCircuit;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::StateVector;

use super::VerifierProjectors;

/// Slack allowed on eigenvalues of `Π₀Π₁Π₀` outside `[0, 1]` before clamping.
pub const SPECTRUM_SLACK: f64 = 1e-9;

/// Largest acceptance probability over all witnesses, with the witness that
/// attains it.
#[derive(Clone, Debug)]
pub struct OracleResult<T> {
    pub pmax: f64,
    /// Normalized top eigenvector on the `n` witness wires.
    pub top_witness: StateVector<T>,
    /// Full spectrum of `Π₀Π₁Π₀` on the ancilla-zero block, ascending.
    pub spectrum: Vec<f64>,
}

pub(crate) fn clamp_unit(x: f64) -> Result<f64> {
    if !(-SPECTRUM_SLACK..=1.0 + SPECTRUM_SLACK).contains(&x) {
        return Err(Error::Classification {
            eigenvalue: x,
            reason: "acceptance eigenvalue outside [0, 1]".into(),
        });
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Exact `p_max` by dense diagonalisation of `Π₀Π₁Π₀` on the ancilla-zero
/// block (dimension `2^n`).
pub fn brute_force_pmax<T: Real>(circuit: &VerifierCircuit<T>) -> Result<OracleResult<T>> {
    let proj = VerifierProjectors::new(circuit)?;
    // Ancilla wires are the high bits, so the ancilla-zero block is [0, 2^n).
    let dn = 1usize << circuit.num_witness;
    let block = proj.dense_pi1_columns(dn)?;
    let block = block.view((0, 0), (dn, dn)).into_owned();
    let (values, vectors) = T::hermitian_eigen(&block);
    let spectrum = values
        .iter()
        .map(|v| clamp_unit(v.as_f64()))
        .collect::<Result<Vec<_>>>()?;
    let top = dn - 1;
    let mut top_witness =
        StateVector::from_amplitudes(vectors.column(top).iter().copied().collect())?;
    top_witness.normalize();
    Ok(OracleResult {
        pmax: spectrum[top],
        top_witness,
        spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::Gate;

    #[test]
    fn identity_verifier_never_accepts() {
        let c = VerifierCircuit::<f64>::new(2, 1, 2, vec![]).unwrap();
        let r = brute_force_pmax(&c).unwrap();
        assert_eq!(r.pmax, 0.0);
    }

    #[test]
    fn x_on_output_always_accepts() {
        let c = VerifierCircuit::<f64>::new(2, 1, 2, vec![Gate::x(2)]).unwrap();
        let r = brute_force_pmax(&c).unwrap();
        assert!((r.pmax - 1.0).abs() < 1e-12);
        assert!(r.spectrum.iter().all(|p| (p - 1.0).abs() < 1e-12));
    }

    #[test]
    fn controlled_rotation_has_known_top_eigenvalue() {
        // Output rotated by RY(θ) only when the witness qubit is 1.
        let theta: f64 = 1.2;
        let c = VerifierCircuit::new(1, 1, 1, vec![Gate::ry(1, theta).controlled_by([0])])
            .unwrap();
        let r = brute_force_pmax(&c).unwrap();
        assert!((r.pmax - (theta / 2.0).sin().powi(2)).abs() < 1e-12);
        assert!(r.top_witness.amplitudes()[1].norm() > 1.0 - 1e-12);
    }

    #[test]
    fn guard_on_wide_registers() {
        let c = VerifierCircuit::<f64>::new(8, 3, 8, vec![]).unwrap();
        assert!(brute_force_pmax(&c).unwrap_err().is_guard());
    }
}

use num_complex::Complex;

use crate::circuit::VerifierCircuit;
use crate::error::{Error, Result};
use crate::scalar::{cis, Real};
use crate::statevector::StateVector;
use crate::walk::{check_phase_width, QueryCounter, WalkOperator};

/// Slack when checking that a phase is a multiple of `2^{-t}`.
const DYADIC_TOLERANCE: f64 = 1e-12;

/// `2^{-t/2} Σ_k e^{2πikφ}|k⟩` on a `t`-qubit register, `φ = j/2^t`.
#[derive(Clone, Debug)]
pub struct FilterState<T> {
    pub t: usize,
    pub j: u64,
    pub phi: f64,
    pub state: StateVector<T>,
}

/// Numerator `j` with `phi = j/2^t`, or an error if `phi` needs more bits.
pub fn dyadic_numerator(phi: f64, t: usize) -> Result<u64> {
    if t == 0 || t >= 63 {
        return Err(Error::InvalidParameter(format!("t = {t} bits")));
    }
    let scaled = phi * (1u64 << t) as f64;
    let j = scaled.round();
    if !(0.0..1.0).contains(&phi) || (scaled - j).abs() > DYADIC_TOLERANCE * (1u64 << t) as f64 {
        return Err(Error::InvalidParameter(format!(
            "phase {phi} is not a {t}-bit dyadic value in [0, 1)"
        )));
    }
    Ok(j as u64)
}

pub fn make_filter_state<T: Real>(phi: f64, t: usize) -> Result<FilterState<T>> {
    let j = dyadic_numerator(phi, t)?;
    let dim = 1usize << t;
    let amp = T::lit((dim as f64).sqrt().recip());
    let modulus = 1u64 << t;
    let amplitudes = (0..dim as u64)
        .map(|k| {
            // Reduce k·j mod 2^t first so the angle stays exact for large t.
            let turn = ((k * j) % modulus) as f64 / modulus as f64;
            cis(T::lit(2.0 * std::f64::consts::PI * turn)) * amp
        })
        .collect::<Vec<Complex<T>>>();
    Ok(FilterState {
        t,
        j,
        phi,
        state: StateVector::from_amplitudes(amplitudes)?,
    })
}

/// Runs phase estimation backwards from `|alpha⟩ ⊗ |f_φ⟩`.
///
/// Undoes the controlled walk powers and the Hadamards, so an eigenvector of
/// `W` with eigenphase exactly `φ` maps to itself with the phase register in
/// `|0⟩^t`. Returns the `(n + m + t)`-qubit result and the queries spent.
pub fn reverse_pe_extract<T: Real>(
    circuit: &VerifierCircuit<T>,
    alpha: &StateVector<T>,
    phi: f64,
    t: usize,
) -> Result<(StateVector<T>, QueryCounter)> {
    let q = circuit.num_qubits();
    if alpha.num_qubits() != q {
        return Err(Error::RegisterMismatch {
            expected: q,
            got: alpha.num_qubits(),
        });
    }
    check_phase_width(q, t)?;
    let filter = make_filter_state::<T>(phi, t)?;
    let mut state = alpha.tensor(&filter.state)?;
    let mut walk = WalkOperator::new(circuit)?;
    walk.unwind_phase_kickback(&mut state, t)?;
    Ok((state, walk.queries()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::inverse_qft;

    #[test]
    fn zero_phase_is_uniform() {
        let f = make_filter_state::<f64>(0.0, 3).unwrap();
        let a = 1.0 / 8f64.sqrt();
        assert!(f
            .state
            .amplitudes()
            .iter()
            .all(|z| (z.re - a).abs() < 1e-15 && z.im == 0.0));
    }

    #[test]
    fn half_phase_on_one_qubit() {
        let f = make_filter_state::<f64>(0.5, 1).unwrap();
        let a = f.state.amplitudes();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((a[0].re - r).abs() < 1e-15 && (a[1].re + r).abs() < 1e-15);
        assert!(a[1].im.abs() < 1e-15);
    }

    #[test]
    fn inverse_qft_recovers_numerator() {
        for t in 1..=4usize {
            for j in 0..1u64 << t {
                let phi = j as f64 / (1u64 << t) as f64;
                let mut f = make_filter_state::<f64>(phi, t).unwrap();
                assert!((f.state.squared_norm() - 1.0).abs() < 1e-12);
                let wires: Vec<usize> = (0..t).collect();
                inverse_qft(&mut f.state, &wires).unwrap();
                assert!(f.state.amplitudes()[j as usize].norm_sqr() > 1.0 - 1e-10);
            }
        }
    }

    #[test]
    fn non_dyadic_rejected() {
        assert!(make_filter_state::<f64>(0.3, 3).is_err());
        assert!(make_filter_state::<f64>(1.0, 3).is_err());
        assert_eq!(dyadic_numerator(0.375, 3).unwrap(), 3);
    }
}

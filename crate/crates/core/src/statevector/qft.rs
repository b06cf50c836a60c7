use super::gate::Gate;
use super::ops::{apply_circuit, Direction};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Gate sequence of the quantum Fourier transform on `register`, where
/// `register[0]` is the least significant bit of the register value:
/// `|x⟩ -> 2^{-t/2} sum_y e^{2 pi i x y / 2^t} |y⟩`.
pub fn qft_circuit<T: Real>(register: &[usize]) -> Result<Vec<Gate<T>>> {
    for (k, q) in register.iter().enumerate() {
        if register[..k].contains(q) {
            return Err(Error::WireCollision(*q));
        }
    }
    let t = register.len();
    let mut gates = Vec::with_capacity(t * (t + 1) / 2 + t / 2);
    for i in (0..t).rev() {
        gates.push(Gate::h(register[i]));
        for j in (0..i).rev() {
            let angle = T::PI() / T::lit((1u64 << (i - j)) as f64);
            gates.push(Gate::phase(register[i], angle).controlled_by([register[j]]));
        }
    }
    for k in 0..t / 2 {
        gates.push(Gate::swap(register[k], register[t - 1 - k]));
    }
    Ok(gates)
}

/// Applies the inverse Fourier transform on `register`, identity elsewhere.
pub fn inverse_qft<T: Real>(state: &mut StateVector<T>, register: &[usize]) -> Result<()> {
    let gates = qft_circuit(register)?;
    apply_circuit(state, &gates, Direction::Inverse)
}

/// Applies the forward Fourier transform on `register`.
pub fn qft<T: Real>(state: &mut StateVector<T>, register: &[usize]) -> Result<()> {
    let gates = qft_circuit(register)?;
    apply_circuit(state, &gates, Direction::Forward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cis, max_abs_diff, CMatrix};
    use crate::statevector::ops::{dense_unitary, register_probabilities};
    use num_complex::Complex;

    fn dft(t: usize) -> CMatrix<f64> {
        let d = 1usize << t;
        let norm = (d as f64).sqrt().recip();
        CMatrix::from_fn(d, d, |y, x| {
            cis(std::f64::consts::TAU * (x * y) as f64 / d as f64) * norm
        })
    }

    #[test]
    fn gate_construction_matches_dense_dft() {
        for t in 1..=4 {
            let reg: Vec<usize> = (0..t).collect();
            let m = dense_unitary(&qft_circuit::<f64>(&reg).unwrap(), t).unwrap();
            assert!(max_abs_diff(&m, &dft(t)) < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn t1_is_hadamard() {
        let gates = qft_circuit::<f64>(&[0]).unwrap();
        assert_eq!(gates, vec![Gate::h(0)]);
    }

    #[test]
    fn uniform_superposition_maps_to_zero() {
        let t = 4;
        let d = 1usize << t;
        let amp = Complex::new((d as f64).sqrt().recip(), 0.0);
        let mut s = StateVector::from_amplitudes(vec![amp; d]).unwrap();
        inverse_qft(&mut s, &(0..t).collect::<Vec<_>>()).unwrap();
        assert!((s.amplitudes()[0].norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fourier_phase_state_maps_to_basis_state() {
        for t in 1..=4usize {
            let d = 1usize << t;
            for j in 0..d {
                let phi = j as f64 / d as f64;
                let amps = (0..d)
                    .map(|k| cis(std::f64::consts::TAU * k as f64 * phi) / (d as f64).sqrt())
                    .collect();
                let mut s = StateVector::from_amplitudes(amps).unwrap();
                let reg: Vec<usize> = (0..t).collect();
                inverse_qft(&mut s, &reg).unwrap();
                let p = register_probabilities(&s, &reg).unwrap();
                assert!((p[j] - 1.0).abs() < 1e-12, "t={t} j={j}");
            }
        }
    }

    #[test]
    fn acts_only_on_register() {
        // register on qubits {1, 3} of a 4-qubit state; qubits 0, 2 untouched
        let mut s = StateVector::<f64>::basis(4, 0b0101).unwrap();
        qft(&mut s, &[1, 3]).unwrap();
        inverse_qft(&mut s, &[1, 3]).unwrap();
        assert!(s.max_distance(&StateVector::basis(4, 0b0101).unwrap()) < 1e-12);
        assert!(matches!(
            inverse_qft(&mut s, &[1, 1]),
            Err(Error::WireCollision(1))
        ));
    }
}

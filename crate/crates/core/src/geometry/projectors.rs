use num_complex::Complex;

use crate::circuit::{RegisterLayout, VerifierCircuit};
use crate::error::{Error, Result};
use crate::scalar::{adjoint, matmul, CMatrix, Real};
use crate::statevector::{
    CompiledCircuit, Direction, StateVector, MAX_DENSE_QUBITS,
};

/// The two verifier projectors, with `V` precompiled.
///
/// `Π₀` projects the ancilla wires onto `|0…0⟩`; `Π₁ = V† |1⟩⟨1|_out V`
/// projects onto inputs the verifier accepts. Both act on the low `n + m`
/// wires of any state at least that wide.
#[derive(Clone, Debug)]
pub struct VerifierProjectors<T> {
    circuit: CompiledCircuit<T>,
    layout: RegisterLayout,
    output_qubit: usize,
}

impl<T: Real> VerifierProjectors<T> {
    pub fn new(circuit: &VerifierCircuit<T>) -> Result<Self> {
        Ok(Self {
            circuit: circuit.compile()?,
            layout: circuit.layout(),
            output_qubit: circuit.output_qubit,
        })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn output_qubit(&self) -> usize {
        self.output_qubit
    }

    pub fn circuit(&self) -> &CompiledCircuit<T> {
        &self.circuit
    }

    pub fn pi0(&self, state: &mut StateVector<T>) -> Result<()> {
        apply_pi0(state, self.layout)
    }

    pub fn pi1(&self, state: &mut StateVector<T>) -> Result<()> {
        self.circuit.apply(state, Direction::Forward)?;
        let out = 1 << self.output_qubit;
        zero_where(state, out, out);
        self.circuit.apply(state, Direction::Inverse)
    }

    fn check_dense(&self) -> Result<()> {
        let q = self.layout.num_qubits();
        if q > MAX_DENSE_QUBITS {
            return Err(Error::SizeGuard {
                what: "dense projector",
                requested: q,
                limit: MAX_DENSE_QUBITS,
            });
        }
        Ok(())
    }

    /// Dense `Π₁` on the verifier register.
    pub fn dense_pi1(&self) -> Result<CMatrix<T>> {
        self.dense_pi1_columns(1 << self.layout.num_qubits())
    }

    /// Rows and columns `[0, cols)` of the dense `Π₁`.
    pub(crate) fn dense_pi1_columns(&self, cols: usize) -> Result<CMatrix<T>> {
        self.check_dense()?;
        let q = self.layout.num_qubits();
        let out_bit = 1usize << self.output_qubit;
        let accept_rows: Vec<usize> = (0..1usize << q).filter(|k| k & out_bit != 0).collect();
        let zero = Complex::new(T::zero(), T::zero());
        // Columns of V restricted to the accepting output rows.
        let mut sub = CMatrix::from_element(accept_rows.len(), cols, zero);
        for j in 0..cols {
            let mut col = StateVector::basis(q, j)?;
            self.circuit.apply(&mut col, Direction::Forward)?;
            for (r, &k) in accept_rows.iter().enumerate() {
                sub[(r, j)] = col.amplitudes()[k];
            }
        }
        Ok(matmul(&adjoint(&sub), &sub))
    }

    /// Dense `Π₀` on the verifier register.
    pub fn dense_pi0(&self) -> Result<CMatrix<T>> {
        self.check_dense()?;
        let dim = 1usize << self.layout.num_qubits();
        let mask = self.layout.ancilla_mask();
        Ok(CMatrix::from_fn(dim, dim, |r, c| {
            if r == c && r & mask == 0 {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        }))
    }
}

/// Zeroes amplitudes whose `mask` bits differ from `keep`.
pub(crate) fn zero_where<T: Real>(state: &mut StateVector<T>, mask: usize, keep: usize) {
    let zero = Complex::new(T::zero(), T::zero());
    for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
        if i & mask != keep {
            *a = zero;
        }
    }
}

/// `Π₀`: keeps only amplitudes whose ancilla wires are all zero.
pub fn apply_pi0<T: Real>(state: &mut StateVector<T>, layout: RegisterLayout) -> Result<()> {
    if state.num_qubits() < layout.num_qubits() {
        return Err(Error::RegisterMismatch {
            expected: layout.num_qubits(),
            got: state.num_qubits(),
        });
    }
    zero_where(state, layout.ancilla_mask(), 0);
    Ok(())
}

/// `Π₁ = V† |1⟩⟨1|_out V`.
pub fn apply_pi1<T: Real>(state: &mut StateVector<T>, circuit: &VerifierCircuit<T>) -> Result<()> {
    VerifierProjectors::new(circuit)?.pi1(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::Gate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn layout(n: usize, m: usize) -> RegisterLayout {
        RegisterLayout {
            num_witness: n,
            num_ancilla: m,
        }
    }

    #[test]
    fn pi0_fixes_zero_ancilla_and_kills_the_rest() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = StateVector::<f64>::random(2, &mut rng).unwrap();
        let mut s = psi.extend_zero(1).unwrap();
        let before = s.clone();
        apply_pi0(&mut s, layout(2, 1)).unwrap();
        assert_eq!(s, before);

        let one = StateVector::<f64>::basis(1, 1).unwrap();
        let mut s = psi.tensor(&one).unwrap();
        apply_pi0(&mut s, layout(2, 1)).unwrap();
        assert_eq!(s.squared_norm(), 0.0);
    }

    #[test]
    fn pi0_selects_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let psi = StateVector::<f64>::random(2, &mut rng).unwrap();
        let chi = StateVector::<f64>::random(2, &mut rng).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut s = psi.extend_zero(1).unwrap();
        s.scale(Complex::new(r, 0.0));
        s.add_scaled(
            Complex::new(r, 0.0),
            &chi.tensor(&StateVector::basis(1, 1).unwrap()).unwrap(),
        );
        apply_pi0(&mut s, layout(2, 1)).unwrap();
        assert!((s.squared_norm() - 0.5).abs() < 1e-12);
        let mut expected = psi.extend_zero(1).unwrap();
        expected.scale(Complex::new(r, 0.0));
        assert!(s.max_distance(&expected) < 1e-12);
    }

    #[test]
    fn pi1_identity_and_x_verifiers() {
        let id = VerifierCircuit::<f64>::new(1, 1, 1, vec![]).unwrap();
        let mut s = StateVector::basis(2, 0b10).unwrap();
        apply_pi1(&mut s, &id).unwrap();
        assert!((s.squared_norm() - 1.0).abs() < 1e-12);
        let mut s = StateVector::basis(2, 0b00).unwrap();
        apply_pi1(&mut s, &id).unwrap();
        assert!(s.squared_norm() < 1e-12);

        let x = VerifierCircuit::<f64>::new(1, 1, 1, vec![Gate::x(1)]).unwrap();
        let mut s = StateVector::basis(2, 0b00).unwrap();
        apply_pi1(&mut s, &x).unwrap();
        assert!((s.squared_norm() - 1.0).abs() < 1e-12);
        let mut s = StateVector::basis(2, 0b10).unwrap();
        apply_pi1(&mut s, &x).unwrap();
        assert!(s.squared_norm() < 1e-12);
    }

    #[test]
    fn dense_pi1_is_a_projector() {
        let c = VerifierCircuit::<f64>::new(
            2,
            1,
            2,
            vec![Gate::h(0), Gate::ry(2, 0.7).controlled_by([0]), Gate::cx(1, 2)],
        )
        .unwrap();
        let p = VerifierProjectors::new(&c).unwrap();
        let m = p.dense_pi1().unwrap();
        let sq = matmul(&m, &m);
        assert!(crate::scalar::max_abs_diff(&sq, &m) < 1e-12);
    }
}

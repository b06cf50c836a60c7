use num_complex::Complex;

use crate::circuit::VerifierCircuit;
use crate::error::{Error, Result};
use crate::scalar::{adjoint, matmul, max_abs_diff, CMatrix, Real};
use crate::statevector::StateVector;

use super::oracle::clamp_unit;
use super::VerifierProjectors;

/// Eigenvalues of `Π₀Π₁Π₀` within this distance of 0 or 1 are exact.
pub const CLASSIFICATION_THRESHOLD: f64 = 1e-10;

/// Tolerance when labelling the complement of the ancilla-zero block.
const COMPLEMENT_TOLERANCE: f64 = 1e-7;

/// `arccos(√p) / π`, the principal angle in units of `π`.
pub fn principal_angle(p: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    Ok(p.clamp(0.0, 1.0).sqrt().acos() / std::f64::consts::PI)
}

/// One block of the common invariant decomposition of `Π₀` and `Π₁`.
#[derive(Clone, Debug)]
pub enum JordanSubspace<T> {
    /// `Π₀v = v`, `Π₀v⊥ = 0`, `Π₁w = w`, `Π₁w⊥ = 0`, `⟨v|w⟩ = √p ≥ 0`.
    TwoDim {
        v: StateVector<T>,
        v_perp: StateVector<T>,
        w: StateVector<T>,
        w_perp: StateVector<T>,
        p: f64,
        phi: f64,
    },
    /// `Π₁u = b·u`, `Π₀u = c·u`.
    OneDim { vector: StateVector<T>, b: u8, c: u8 },
}

impl<T: Real> JordanSubspace<T> {
    pub fn is_two_dim(&self) -> bool {
        matches!(self, JordanSubspace::TwoDim { .. })
    }

    /// Orthonormal basis vectors contributed to the decomposition.
    pub fn vectors(&self) -> Vec<&StateVector<T>> {
        match self {
            JordanSubspace::TwoDim { v, v_perp, .. } => vec![v, v_perp],
            JordanSubspace::OneDim { vector, .. } => vec![vector],
        }
    }

    /// Eigenvectors `(v ∓ i v⊥)/√2` of `W = F₁F₀` with eigenvalues `e^{±i2πφ}`.
    /// `None` for one-dimensional subspaces.
    pub fn walk_eigenvectors(&self) -> Option<(StateVector<T>, StateVector<T>)> {
        let JordanSubspace::TwoDim { v, v_perp, .. } = self else {
            return None;
        };
        let s = T::lit(std::f64::consts::FRAC_1_SQRT_2);
        let mut plus = v.clone();
        plus.scale(Complex::new(s, T::zero()));
        let mut minus = plus.clone();
        plus.add_scaled(Complex::new(T::zero(), -s), v_perp);
        minus.add_scaled(Complex::new(T::zero(), s), v_perp);
        Some((plus, minus))
    }

    /// Eigenvalue of `W` on a one-dimensional subspace.
    pub fn walk_sign(&self) -> Option<i8> {
        match self {
            JordanSubspace::OneDim { b, c, .. } => Some(if b == c { 1 } else { -1 }),
            JordanSubspace::TwoDim { .. } => None,
        }
    }
}

/// Orthogonal split of the verifier space into blocks invariant under both
/// projectors.
#[derive(Clone, Debug)]
pub struct JordanDecomposition<T> {
    pub subspaces: Vec<JordanSubspace<T>>,
    pub total_dimension: usize,
}

impl<T: Real> JordanDecomposition<T> {
    pub fn two_dim(&self) -> impl Iterator<Item = &JordanSubspace<T>> {
        self.subspaces.iter().filter(|s| s.is_two_dim())
    }

    pub fn basis_len(&self) -> usize {
        self.subspaces.iter().map(|s| s.vectors().len()).sum()
    }

    /// Largest acceptance probability carried by a `Π₀`-supported vector.
    pub fn max_acceptance(&self) -> f64 {
        self.subspaces
            .iter()
            .map(|s| match s {
                JordanSubspace::TwoDim { p, .. } => *p,
                JordanSubspace::OneDim { b, c: 1, .. } => f64::from(*b),
                JordanSubspace::OneDim { .. } => 0.0,
            })
            .fold(0.0, f64::max)
    }

    /// Matrix whose columns are all emitted basis vectors.
    pub fn basis_matrix(&self) -> CMatrix<T> {
        let cols: Vec<&StateVector<T>> = self.subspaces.iter().flat_map(|s| s.vectors()).collect();
        CMatrix::from_fn(self.total_dimension, cols.len(), |r, c| cols[c].amplitudes()[r])
    }

    /// `max |B†B − I|` over the emitted basis.
    pub fn gram_deviation(&self) -> f64 {
        let b = self.basis_matrix();
        let gram = matmul(&adjoint(&b), &b);
        max_abs_diff(&gram, &crate::scalar::identity(b.ncols())).as_f64()
    }

    /// `(Π₀, Π₁)` rebuilt from the subspace data.
    pub fn reconstruct(&self) -> (CMatrix<T>, CMatrix<T>) {
        let d = self.total_dimension;
        let zero = Complex::new(T::zero(), T::zero());
        let mut p0 = CMatrix::from_element(d, d, zero);
        let mut p1 = CMatrix::from_element(d, d, zero);
        let add = |m: &mut CMatrix<T>, x: &StateVector<T>| {
            let a = x.amplitudes();
            for c in 0..d {
                let ac = a[c].conj();
                for r in 0..d {
                    m[(r, c)] += a[r] * ac;
                }
            }
        };
        for s in &self.subspaces {
            match s {
                JordanSubspace::TwoDim { v, w, .. } => {
                    add(&mut p0, v);
                    add(&mut p1, w);
                }
                JordanSubspace::OneDim { vector, b, c } => {
                    if *c == 1 {
                        add(&mut p0, vector);
                    }
                    if *b == 1 {
                        add(&mut p1, vector);
                    }
                }
            }
        }
        (p0, p1)
    }
}

fn embed<T: Real>(num_qubits: usize, offset: usize, column: impl Iterator<Item = Complex<T>>) -> StateVector<T> {
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << num_qubits];
    for (k, a) in column.enumerate() {
        amps[offset + k] = a;
    }
    StateVector::from_amplitudes(amps).expect("power-of-two length")
}

fn combine<T: Real>(a: &StateVector<T>, x: f64, b: &StateVector<T>, y: f64) -> StateVector<T> {
    let mut out = a.clone();
    out.scale(Complex::new(T::lit(x), T::zero()));
    out.add_scaled(Complex::new(T::lit(y), T::zero()), b);
    out
}

/// Computes the invariant decomposition from the eigenpairs of `Π₀Π₁Π₀`.
///
/// Vectors in the `Π₀` support come straight from the eigensolver. The
/// remaining one-dimensional vectors live in the ancilla-nonzero block, where
/// each `v⊥` is an eigenvector of the compressed `Π₁` with eigenvalue `1 − p`;
/// they are shifted to eigenvalue 2 so that the leftover eigenvalues are
/// exactly the labels `b ∈ {0, 1}`.
pub fn jordan_decompose<T: Real>(circuit: &VerifierCircuit<T>) -> Result<JordanDecomposition<T>> {
    let proj = VerifierProjectors::new(circuit)?;
    let q = circuit.num_qubits();
    let dim = 1usize << q;
    let dn = 1usize << circuit.num_witness;
    let pi1 = proj.dense_pi1()?;

    let block = pi1.view((0, 0), (dn, dn)).into_owned();
    let (values, vectors) = T::hermitian_eigen(&block);

    let mut subspaces = Vec::with_capacity(dim);
    let mut perps: Vec<(StateVector<T>, f64)> = Vec::new();
    for (k, value) in values.iter().enumerate() {
        let p = clamp_unit(value.as_f64())?;
        let v = embed(q, 0, vectors.column(k).iter().copied());
        if p > 1.0 - CLASSIFICATION_THRESHOLD {
            subspaces.push(JordanSubspace::OneDim { vector: v, b: 1, c: 1 });
        } else if p < CLASSIFICATION_THRESHOLD {
            subspaces.push(JordanSubspace::OneDim { vector: v, b: 0, c: 1 });
        } else {
            let mut w = v.clone();
            proj.pi1(&mut w)?;
            let norm = w.normalize().as_f64();
            // ⟨v|w⟩ = ⟨v|Π₁|v⟩/‖Π₁v‖ is real and positive by construction.
            debug_assert!((norm * norm - p).abs() < 1e-8);
            let sp = p.sqrt();
            let sq = (1.0 - p).sqrt();
            let v_perp = combine(&w, 1.0 / sq, &v, -sp / sq);
            let w_perp = combine(&v, 1.0 / sq, &w, -sp / sq);
            perps.push((v_perp.clone(), p));
            subspaces.push(JordanSubspace::TwoDim {
                v,
                v_perp,
                w,
                w_perp,
                p,
                phi: principal_angle(p)?,
            });
        }
    }

    let rest = dim - dn;
    if rest > 0 {
        let mut k = pi1.view((dn, dn), (rest, rest)).into_owned();
        for (vp, p) in &perps {
            let a = &vp.amplitudes()[dn..];
            let shift = T::lit(1.0 + p);
            for c in 0..rest {
                let ac = a[c].conj() * shift;
                for r in 0..rest {
                    k[(r, c)] += a[r] * ac;
                }
            }
        }
        let (values, vectors) = T::hermitian_eigen(&k);
        let mut shifted = 0;
        for (j, value) in values.iter().enumerate() {
            let x = value.as_f64();
            let b = if (x - 2.0).abs() < COMPLEMENT_TOLERANCE {
                shifted += 1;
                continue;
            } else if (x - 1.0).abs() < COMPLEMENT_TOLERANCE {
                1
            } else if x.abs() < COMPLEMENT_TOLERANCE {
                0
            } else {
                return Err(Error::Classification {
                    eigenvalue: x,
                    reason: "ancilla-nonzero vector is not a Π₁ eigenvector".into(),
                });
            };
            let u = embed(q, dn, vectors.column(j).iter().copied());
            subspaces.push(JordanSubspace::OneDim { vector: u, b, c: 0 });
        }
        if shifted != perps.len() {
            return Err(Error::Classification {
                eigenvalue: 2.0,
                reason: format!(
                    "{} rotation partners found for {} two-dimensional subspaces",
                    shifted,
                    perps.len()
                ),
            });
        }
    }

    Ok(JordanDecomposition {
        subspaces,
        total_dimension: dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::Gate;

    #[test]
    fn principal_angle_endpoints() {
        assert_eq!(principal_angle(1.0).unwrap(), 0.0);
        assert!((principal_angle(0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((principal_angle(0.5).unwrap() - 0.25).abs() < 1e-15);
        assert!(principal_angle(1.0 + 1e-13).is_ok());
        assert!(principal_angle(1.1).is_err());
        assert!(principal_angle(-0.01).is_err());
    }

    fn rotation_instance(theta: f64) -> VerifierCircuit<f64> {
        VerifierCircuit::new(1, 1, 1, vec![Gate::ry(1, theta).controlled_by([0])]).unwrap()
    }

    #[test]
    fn single_rotation_gives_one_two_dim_block() {
        let d = jordan_decompose(&rotation_instance(std::f64::consts::FRAC_PI_2)).unwrap();
        assert_eq!(d.basis_len(), 4);
        let two: Vec<_> = d.two_dim().collect();
        assert_eq!(two.len(), 1);
        if let JordanSubspace::TwoDim { p, phi, v, w, .. } = two[0] {
            assert!((p - 0.5).abs() < 1e-12);
            assert!((phi - 0.25).abs() < 1e-12);
            let ov = v.inner(w);
            assert!(ov.im.abs() < 1e-12 && ov.re > 0.0);
        }
        assert!(d.gram_deviation() < 1e-10);
    }

    #[test]
    fn commuting_projectors_give_only_lines() {
        let c = VerifierCircuit::<f64>::new(2, 1, 2, vec![Gate::h(0), Gate::cx(0, 2)]).unwrap();
        let d = jordan_decompose(&c).unwrap();
        assert_eq!(d.two_dim().count(), 0);
        assert_eq!(d.basis_len(), 8);
    }

    #[test]
    fn reconstruction_matches_direct_projectors() {
        let c = VerifierCircuit::<f64>::new(
            2,
            2,
            3,
            vec![
                Gate::h(0),
                Gate::ry(2, 0.4).controlled_by([0]),
                Gate::cx(1, 3),
                Gate::rx(3, 1.3).controlled_by([2]),
                Gate::h(2),
            ],
        )
        .unwrap();
        let d = jordan_decompose(&c).unwrap();
        let proj = VerifierProjectors::new(&c).unwrap();
        let (p0, p1) = d.reconstruct();
        assert!(max_abs_diff(&p0, &proj.dense_pi0().unwrap()) < 1e-8);
        assert!(max_abs_diff(&p1, &proj.dense_pi1().unwrap()) < 1e-8);
        assert_eq!(d.basis_len(), 16);
    }
}

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hard cap on statevector width.
pub const MAX_STATE_QUBITS: usize = 24;

/// Hard cap on qubit count for dense matrix construction.
pub const MAX_DENSE_QUBITS: usize = 10;

/// Dense amplitude vector over `2^q` computational basis states.
///
/// Qubit `k` is bit `k` of the basis index (little-endian): the amplitude of
/// `|q_{n-1} ... q_1 q_0⟩` lives at index `sum_k q_k 2^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector<T> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

pub(crate) fn check_width(num_qubits: usize) -> Result<()> {
    if num_qubits > MAX_STATE_QUBITS {
        return Err(Error::SizeGuard {
            what: "statevector",
            requested: num_qubits,
            limit: MAX_STATE_QUBITS,
        });
    }
    Ok(())
}

impl<T: Real> StateVector<T> {
    /// `|0...0⟩` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_width(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                index,
                num_qubits,
            });
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); dim];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "amplitude count {dim} is not a power of two"
            )));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        check_width(num_qubits)?;
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Haar-random normalized state.
    pub fn random<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<Self> {
        check_width(num_qubits)?;
        let amplitudes = (0..1usize << num_qubits)
            .map(|_| Complex::new(T::lit(standard_normal(rng)), T::lit(standard_normal(rng))))
            .collect();
        let mut s = Self {
            num_qubits,
            amplitudes,
        };
        s.normalize();
        Ok(s)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    #[inline]
    pub fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    /// Sum of `|amplitude|^2`.
    pub fn squared_norm(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Rescales to unit norm. Returns the norm before rescaling; a zero vector
    /// is left untouched.
    pub fn normalize(&mut self) -> T {
        let norm = self.squared_norm().sqrt();
        if norm > T::zero() {
            let inv = T::one() / norm;
            self.amplitudes.iter_mut().for_each(|a| *a *= inv);
        }
        norm
    }

    pub fn scale(&mut self, factor: Complex<T>) {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Complex<T> {
        debug_assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            })
    }

    /// `|⟨self|other⟩|^2`
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    /// Largest per-amplitude distance to `other`.
    pub fn max_distance(&self, other: &Self) -> T {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// `self - other` amplitude-wise.
    pub fn sub(&self, other: &Self) -> Self {
        Self {
            num_qubits: self.num_qubits,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }

    /// `self + factor * other`, in place.
    pub fn add_scaled(&mut self, factor: Complex<T>, other: &Self) {
        self.amplitudes
            .iter_mut()
            .zip(&other.amplitudes)
            .for_each(|(a, b)| *a += factor * b);
    }

    /// Tensor product with `high` placed on the qubits above this register.
    pub fn tensor(&self, high: &Self) -> Result<Self> {
        let num_qubits = self.num_qubits + high.num_qubits;
        check_width(num_qubits)?;
        let mut amplitudes = Vec::with_capacity(1 << num_qubits);
        for h in &high.amplitudes {
            amplitudes.extend(self.amplitudes.iter().map(|l| *l * h));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Amplitudes of the low `low_qubits` qubits for a fixed value of the
    /// remaining high qubits (unnormalized slice of the state).
    pub fn low_slice(&self, low_qubits: usize, high_value: usize) -> Result<Self> {
        if low_qubits > self.num_qubits {
            return Err(Error::RegisterMismatch {
                expected: self.num_qubits,
                got: low_qubits,
            });
        }
        let block = 1usize << low_qubits;
        let start = high_value * block;
        if start + block > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: high_value,
                num_qubits: self.num_qubits - low_qubits,
            });
        }
        Ok(Self {
            num_qubits: low_qubits,
            amplitudes: self.amplitudes[start..start + block].to_vec(),
        })
    }

    /// Embeds the state as the low register of a wider state whose extra high
    /// qubits are all `|0⟩`.
    pub fn extend_zero(&self, extra_qubits: usize) -> Result<Self> {
        let num_qubits = self.num_qubits + extra_qubits;
        check_width(num_qubits)?;
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << num_qubits];
        amplitudes[..self.dim()].copy_from_slice(&self.amplitudes);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Converts to another scalar precision.
    pub fn cast<U: Real>(&self) -> StateVector<U> {
        StateVector {
            num_qubits: self.num_qubits,
            amplitudes: self
                .amplitudes
                .iter()
                .map(|a| Complex::new(U::lit(a.re.as_f64()), U::lit(a.im.as_f64())))
                .collect(),
        }
    }
}

// Box-Muller.
fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_and_guard() {
        let s = StateVector::<f64>::basis(3, 5).unwrap();
        assert_eq!(s.dim(), 8);
        assert_eq!(s.amplitudes()[5].re, 1.0);
        assert!(StateVector::<f64>::zero(MAX_STATE_QUBITS + 1).unwrap_err().is_guard());
        assert!(StateVector::<f64>::basis(2, 4).is_err());
    }

    #[test]
    fn random_state_is_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = StateVector::<f64>::random(5, &mut rng).unwrap();
        assert!((s.squared_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_places_high_register_above() {
        let low = StateVector::<f64>::basis(2, 1).unwrap();
        let high = StateVector::<f64>::basis(1, 1).unwrap();
        let joint = low.tensor(&high).unwrap();
        assert_eq!(joint.num_qubits(), 3);
        assert_eq!(joint.amplitudes()[0b101].re, 1.0);
        let back = joint.low_slice(2, 1).unwrap();
        assert_eq!(back, low);
    }

    #[test]
    fn from_amplitudes_rejects_bad_length() {
        let v = vec![Complex::new(1.0f64, 0.0); 3];
        assert!(StateVector::from_amplitudes(v).is_err());
    }
}

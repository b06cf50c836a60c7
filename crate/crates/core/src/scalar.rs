//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All state and matrix code is written against [`Real`] so that the same
//! simulator runs in `f64` (the default everywhere tolerances matter) or in
//! `f32` for quick low-precision sweeps.

use std::fmt::{Debug, Display};

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

/// Dense complex matrix over the scalar type.
pub type CMatrix<T> = DMatrix<Complex<T>>;

/// Floating-point scalar usable by the simulator.
pub trait Real:
    Float + FloatConst + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
    /// Eigen-decomposition of a Hermitian matrix.
    ///
    /// Returns eigenvalues in ascending order together with the matrix whose
    /// columns are the matching orthonormal eigenvectors.
    fn hermitian_eigen(matrix: &CMatrix<Self>) -> (Vec<Self>, CMatrix<Self>);

    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self;

    fn as_f64(self) -> f64;
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            fn hermitian_eigen(matrix: &CMatrix<Self>) -> (Vec<Self>, CMatrix<Self>) {
                let eig = nalgebra::linalg::SymmetricEigen::new(matrix.clone());
                let n = eig.eigenvalues.len();
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
                let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
                let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
                (values, vectors)
            }

            #[inline]
            fn lit(x: f64) -> Self {
                x as $t
            }

            #[inline]
            fn as_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

/// `e^{i theta}`
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Conjugate transpose.
pub fn adjoint<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    CMatrix::from_fn(m.ncols(), m.nrows(), |r, c| m[(c, r)].conj())
}

/// Dense product `a * b`.
pub fn matmul<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    assert_eq!(a.ncols(), b.nrows(), "matmul shape mismatch");
    let mut out = CMatrix::from_element(a.nrows(), b.ncols(), Complex::new(T::zero(), T::zero()));
    for j in 0..b.ncols() {
        for k in 0..a.ncols() {
            let bkj = b[(k, j)];
            if bkj.re == T::zero() && bkj.im == T::zero() {
                continue;
            }
            for i in 0..a.nrows() {
                out[(i, j)] += a[(i, k)] * bkj;
            }
        }
    }
    out
}

/// `n x n` identity.
pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex::new(T::one(), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

/// Largest entry-wise modulus of `a - b`.
pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).norm())
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_sorted_and_orthonormal() {
        let i = Complex::new(0.0, 1.0);
        let one = Complex::new(1.0, 0.0);
        // Pauli-Y plus 2I: eigenvalues 1 and 3.
        let m = CMatrix::<f64>::from_row_slice(2, 2, &[one * 2.0, -i, i, one * 2.0]);
        let (vals, vecs) = f64::hermitian_eigen(&m);
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
        let gram = matmul(&adjoint(&vecs), &vecs);
        assert!(max_abs_diff(&gram, &CMatrix::identity(2, 2)) < 1e-12);
    }

    #[test]
    fn eigen_runs_in_single_precision() {
        let m = CMatrix::<f32>::from_diagonal_element(3, 3, Complex::new(0.5, 0.0));
        let (vals, _) = f32::hermitian_eigen(&m);
        assert!(vals.iter().all(|v| (v - 0.5).abs() < 1e-6));
    }
}

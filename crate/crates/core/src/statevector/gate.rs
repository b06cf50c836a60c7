use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{adjoint, cis, identity, matmul, CMatrix, Real};

/// Rotation axis for [`GateKind::Rotation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind<T> {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    /// Targets are `[control, target]`.
    CX,
    CZ,
    Swap,
    /// `exp(-i angle/2 sigma_axis)`
    Rotation(Axis, T),
    /// `diag(1, e^{i angle})`
    Phase(T),
    /// Explicit 2x2 or 4x4 unitary on the targets, little-endian in target order.
    Unitary(CMatrix<T>),
}

/// A gate acting on `targets`, applied only where every `controls` qubit is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate<T> {
    pub kind: GateKind<T>,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
}

pub(crate) fn unitarity_tolerance<T: Real>() -> f64 {
    (T::epsilon().as_f64() * 100.0).max(1e-12)
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

impl<T: Real> Gate<T> {
    pub fn new(kind: GateKind<T>, targets: Vec<usize>) -> Self {
        Self {
            kind,
            targets,
            controls: Vec::new(),
        }
    }

    pub fn h(q: usize) -> Self {
        Self::new(GateKind::H, vec![q])
    }
    pub fn x(q: usize) -> Self {
        Self::new(GateKind::X, vec![q])
    }
    pub fn y(q: usize) -> Self {
        Self::new(GateKind::Y, vec![q])
    }
    pub fn z(q: usize) -> Self {
        Self::new(GateKind::Z, vec![q])
    }
    pub fn cx(control: usize, target: usize) -> Self {
        Self::new(GateKind::CX, vec![control, target])
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Self::new(GateKind::CZ, vec![a, b])
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::Swap, vec![a, b])
    }
    pub fn rx(q: usize, angle: T) -> Self {
        Self::new(GateKind::Rotation(Axis::X, angle), vec![q])
    }
    pub fn ry(q: usize, angle: T) -> Self {
        Self::new(GateKind::Rotation(Axis::Y, angle), vec![q])
    }
    pub fn rz(q: usize, angle: T) -> Self {
        Self::new(GateKind::Rotation(Axis::Z, angle), vec![q])
    }
    pub fn phase(q: usize, angle: T) -> Self {
        Self::new(GateKind::Phase(angle), vec![q])
    }
    pub fn unitary(matrix: CMatrix<T>, targets: Vec<usize>) -> Self {
        Self::new(GateKind::Unitary(matrix), targets)
    }

    /// Adds control wires.
    pub fn controlled_by(mut self, controls: impl IntoIterator<Item = usize>) -> Self {
        self.controls.extend(controls);
        self
    }

    /// Name used in circuit files.
    pub fn name(&self) -> &'static str {
        match &self.kind {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::CX => "CX",
            GateKind::CZ => "CZ",
            GateKind::Swap => "SWAP",
            GateKind::Rotation(Axis::X, _) => "RX",
            GateKind::Rotation(Axis::Y, _) => "RY",
            GateKind::Rotation(Axis::Z, _) => "RZ",
            GateKind::Phase(_) => "P",
            GateKind::Unitary(_) => "U",
        }
    }

    /// Number of target wires this kind acts on.
    pub fn arity(&self) -> usize {
        match &self.kind {
            GateKind::CX | GateKind::CZ | GateKind::Swap => 2,
            GateKind::Unitary(m) if m.nrows() == 4 => 2,
            _ => 1,
        }
    }

    /// The target-space matrix (2x2 or 4x4), without controls.
    pub fn matrix(&self) -> CMatrix<T> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let o = c::<T>(0.0, 0.0);
        let l = c::<T>(1.0, 0.0);
        let m2 = |a, b, cc, d| CMatrix::from_row_slice(2, 2, &[a, b, cc, d]);
        match &self.kind {
            GateKind::H => m2(c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)),
            GateKind::X => m2(o, l, l, o),
            GateKind::Y => m2(o, c(0.0, -1.0), c(0.0, 1.0), o),
            GateKind::Z => m2(l, o, o, -l),
            GateKind::S => m2(l, o, o, c(0.0, 1.0)),
            GateKind::Sdg => m2(l, o, o, c(0.0, -1.0)),
            GateKind::T => m2(l, o, o, c(s, s)),
            GateKind::Tdg => m2(l, o, o, c(s, -s)),
            GateKind::CX => {
                // index = control + 2*target
                let mut m = identity(4);
                m.swap_rows(1, 3);
                m
            }
            GateKind::CZ => {
                let mut m = identity(4);
                m[(3, 3)] = -l;
                m
            }
            GateKind::Swap => {
                let mut m = identity(4);
                m.swap_rows(1, 2);
                m
            }
            GateKind::Rotation(axis, angle) => {
                let half = *angle / T::lit(2.0);
                let (cs, sn) = (half.cos(), half.sin());
                let re = |x: T| Complex::new(x, T::zero());
                let im = |x: T| Complex::new(T::zero(), x);
                match axis {
                    Axis::X => m2(re(cs), im(-sn), im(-sn), re(cs)),
                    Axis::Y => m2(re(cs), re(-sn), re(sn), re(cs)),
                    Axis::Z => m2(cis(-half), o, o, cis(half)),
                }
            }
            GateKind::Phase(angle) => m2(l, o, o, cis(*angle)),
            GateKind::Unitary(m) => m.clone(),
        }
    }

    /// The inverse gate.
    pub fn adjoint(&self) -> Self {
        let kind = match &self.kind {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::Rotation(axis, angle) => GateKind::Rotation(*axis, -*angle),
            GateKind::Phase(angle) => GateKind::Phase(-*angle),
            GateKind::Unitary(m) => GateKind::Unitary(adjoint(m)),
            other => other.clone(),
        };
        Self {
            kind,
            targets: self.targets.clone(),
            controls: self.controls.clone(),
        }
    }

    /// The same gate at another precision.
    pub fn cast<U: Real>(&self) -> Gate<U> {
        let kind = match &self.kind {
            GateKind::H => GateKind::H,
            GateKind::X => GateKind::X,
            GateKind::Y => GateKind::Y,
            GateKind::Z => GateKind::Z,
            GateKind::S => GateKind::S,
            GateKind::Sdg => GateKind::Sdg,
            GateKind::T => GateKind::T,
            GateKind::Tdg => GateKind::Tdg,
            GateKind::CX => GateKind::CX,
            GateKind::CZ => GateKind::CZ,
            GateKind::Swap => GateKind::Swap,
            GateKind::Rotation(axis, angle) => GateKind::Rotation(*axis, U::lit(angle.as_f64())),
            GateKind::Phase(angle) => GateKind::Phase(U::lit(angle.as_f64())),
            GateKind::Unitary(m) => GateKind::Unitary(
                m.map(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()))),
            ),
        };
        Gate {
            kind,
            targets: self.targets.clone(),
            controls: self.controls.clone(),
        }
    }

    /// Checks wire ranges, disjointness, arity, and unitarity of explicit matrices.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let arity = self.arity();
        if let GateKind::Unitary(m) = &self.kind {
            if !(m.nrows() == m.ncols() && (m.nrows() == 2 || m.nrows() == 4)) {
                return Err(Error::GateArity {
                    name: "U".into(),
                    expected: "a 2x2 or 4x4 matrix".into(),
                    got: format!("{}x{}", m.nrows(), m.ncols()),
                });
            }
            let dev = crate::scalar::max_abs_diff(
                &matmul(&adjoint(m), m),
                &identity(m.nrows()),
            )
            .as_f64();
            if !(dev <= unitarity_tolerance::<T>()) {
                return Err(Error::NonUnitary { deviation: dev });
            }
        }
        if self.targets.len() != arity {
            return Err(Error::GateArity {
                name: self.name().into(),
                expected: format!("{arity} target(s)"),
                got: format!("{}", self.targets.len()),
            });
        }
        let mut seen: Vec<usize> = Vec::with_capacity(self.targets.len() + self.controls.len());
        for &q in self.targets.iter().chain(&self.controls) {
            if q >= num_qubits {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
            if seen.contains(&q) {
                return Err(Error::WireCollision(q));
            }
            seen.push(q);
        }
        Ok(())
    }

    /// Largest wire index touched, if any.
    pub fn max_wire(&self) -> Option<usize> {
        self.targets.iter().chain(&self.controls).copied().max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::max_abs_diff;

    #[test]
    fn named_gates_are_unitary() {
        let gates: Vec<Gate<f64>> = vec![
            Gate::h(0),
            Gate::x(0),
            Gate::y(0),
            Gate::z(0),
            Gate::new(GateKind::S, vec![0]),
            Gate::new(GateKind::T, vec![0]),
            Gate::cx(0, 1),
            Gate::cz(0, 1),
            Gate::swap(0, 1),
            Gate::rx(0, 0.3),
            Gate::ry(0, 1.1),
            Gate::rz(0, -2.0),
            Gate::phase(0, 0.7),
        ];
        for g in gates {
            let m = g.matrix();
            let n = m.nrows();
            assert!(max_abs_diff(&matmul(&adjoint(&m), &m), &identity(n)) < 1e-15);
            let prod = matmul(&g.adjoint().matrix(), &m);
            assert!(max_abs_diff(&prod, &identity(n)) < 1e-15);
        }
    }

    #[test]
    fn validation_catches_bad_wires() {
        assert!(matches!(
            Gate::<f64>::x(3).validate(3),
            Err(Error::IndexOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            Gate::<f64>::x(1).controlled_by([1]).validate(3),
            Err(Error::WireCollision(1))
        ));
        assert!(Gate::<f64>::cx(0, 2).validate(3).is_ok());
    }

    #[test]
    fn non_unitary_matrix_rejected() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(
            Gate::<f64>::unitary(m, vec![0]).validate(1),
            Err(Error::NonUnitary { .. })
        ));
    }
}

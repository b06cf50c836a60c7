use num_complex::Complex;
use rand::Rng;

use super::gate::Gate;
use super::state::{StateVector, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};
use crate::scalar::{CMatrix, Real};

/// Order in which a gate sequence is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Gates in order.
    Forward,
    /// Adjoint gates in reverse order.
    Inverse,
}

/// A gate lowered to a flat matrix and bit masks, ready for repeated use.
#[derive(Clone, Debug)]
pub struct CompiledGate<T> {
    matrix: [Complex<T>; 16],
    arity: usize,
    targets: [usize; 2],
    control_mask: usize,
    diagonal: bool,
}

impl<T: Real> CompiledGate<T> {
    pub fn new(gate: &Gate<T>) -> Self {
        let m = gate.matrix();
        let n = m.nrows();
        let zero = Complex::new(T::zero(), T::zero());
        let mut matrix = [zero; 16];
        let mut diagonal = true;
        for r in 0..n {
            for c in 0..n {
                matrix[r * n + c] = m[(r, c)];
                if r != c && m[(r, c)] != zero {
                    diagonal = false;
                }
            }
        }
        let arity = gate.arity();
        let targets = [gate.targets[0], *gate.targets.get(1).unwrap_or(&0)];
        let control_mask = gate.controls.iter().fold(0usize, |acc, &q| acc | (1 << q));
        Self {
            matrix,
            arity,
            targets,
            control_mask,
            diagonal,
        }
    }

    pub fn apply(&self, amps: &mut [Complex<T>]) {
        if self.arity == 1 {
            self.apply1(amps)
        } else {
            self.apply2(amps)
        }
    }

    fn apply1(&self, amps: &mut [Complex<T>]) {
        let bit = 1usize << self.targets[0];
        let cm = self.control_mask;
        let [m00, m01, m10, m11] = [self.matrix[0], self.matrix[1], self.matrix[2], self.matrix[3]];
        let dim = amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + bit {
                if i & cm != cm {
                    continue;
                }
                let j = i | bit;
                if self.diagonal {
                    amps[i] = m00 * amps[i];
                    amps[j] = m11 * amps[j];
                } else {
                    let (a, b) = (amps[i], amps[j]);
                    amps[i] = m00 * a + m01 * b;
                    amps[j] = m10 * a + m11 * b;
                }
            }
            base += bit << 1;
        }
    }

    fn apply2(&self, amps: &mut [Complex<T>]) {
        let b0 = 1usize << self.targets[0];
        let b1 = 1usize << self.targets[1];
        let cm = self.control_mask;
        let m = &self.matrix;
        let zero = Complex::new(T::zero(), T::zero());
        for i in 0..amps.len() {
            if i & (b0 | b1) != 0 || i & cm != cm {
                continue;
            }
            let idx = [i, i | b0, i | b1, i | b0 | b1];
            let v = [amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]];
            for r in 0..4 {
                let mut acc = zero;
                for c in 0..4 {
                    acc += m[r * 4 + c] * v[c];
                }
                amps[idx[r]] = acc;
            }
        }
    }
}

/// A validated gate sequence with forward and inverse forms precompiled.
#[derive(Clone, Debug)]
pub struct CompiledCircuit<T> {
    num_qubits: usize,
    forward: Vec<CompiledGate<T>>,
    inverse: Vec<CompiledGate<T>>,
}

impl<T: Real> CompiledCircuit<T> {
    pub fn new(gates: &[Gate<T>], num_qubits: usize) -> Result<Self> {
        for g in gates {
            g.validate(num_qubits)?;
        }
        Ok(Self {
            num_qubits,
            forward: gates.iter().map(CompiledGate::new).collect(),
            inverse: gates
                .iter()
                .rev()
                .map(|g| CompiledGate::new(&g.adjoint()))
                .collect(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Applies to the low `num_qubits` wires of a state at least that wide.
    pub fn apply(&self, state: &mut StateVector<T>, direction: Direction) -> Result<()> {
        if state.num_qubits() < self.num_qubits {
            return Err(Error::RegisterMismatch {
                expected: self.num_qubits,
                got: state.num_qubits(),
            });
        }
        self.apply_raw(state.amplitudes_mut(), direction);
        Ok(())
    }

    pub(crate) fn apply_raw(&self, amps: &mut [Complex<T>], direction: Direction) {
        let gates = match direction {
            Direction::Forward => &self.forward,
            Direction::Inverse => &self.inverse,
        };
        for g in gates {
            g.apply(amps);
        }
    }
}

/// Applies a single gate in place.
pub fn apply_gate<T: Real>(state: &mut StateVector<T>, gate: &Gate<T>) -> Result<()> {
    gate.validate(state.num_qubits())?;
    CompiledGate::new(gate).apply(state.amplitudes_mut());
    Ok(())
}

/// Applies a gate sequence in place. The circuit may address fewer wires than
/// the state holds; extra wires are untouched.
pub fn apply_circuit<T: Real>(
    state: &mut StateVector<T>,
    gates: &[Gate<T>],
    direction: Direction,
) -> Result<()> {
    CompiledCircuit::new(gates, state.num_qubits())?.apply(state, direction)
}

/// Dense `2^q x 2^q` matrix of a gate sequence.
pub fn dense_unitary<T: Real>(gates: &[Gate<T>], num_qubits: usize) -> Result<CMatrix<T>> {
    if num_qubits > MAX_DENSE_QUBITS {
        return Err(Error::SizeGuard {
            what: "dense matrix",
            requested: num_qubits,
            limit: MAX_DENSE_QUBITS,
        });
    }
    let circuit = CompiledCircuit::new(gates, num_qubits)?;
    dense_from_map(num_qubits, |s| circuit.apply(s, Direction::Forward))
}

/// Dense matrix of a linear map given by its action on states: column `j` is
/// the image of basis state `j`.
pub fn dense_from_map<T: Real>(
    num_qubits: usize,
    mut map: impl FnMut(&mut StateVector<T>) -> Result<()>,
) -> Result<CMatrix<T>> {
    if num_qubits > MAX_DENSE_QUBITS {
        return Err(Error::SizeGuard {
            what: "dense matrix",
            requested: num_qubits,
            limit: MAX_DENSE_QUBITS,
        });
    }
    let dim = 1usize << num_qubits;
    let mut out = CMatrix::from_element(dim, dim, Complex::new(T::zero(), T::zero()));
    for j in 0..dim {
        let mut col = StateVector::basis(num_qubits, j)?;
        map(&mut col)?;
        for (i, a) in col.amplitudes().iter().enumerate() {
            out[(i, j)] = *a;
        }
    }
    Ok(out)
}

fn check_register(qubits: &[usize], num_qubits: usize) -> Result<()> {
    for (k, &q) in qubits.iter().enumerate() {
        if q >= num_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                num_qubits,
            });
        }
        if qubits[..k].contains(&q) {
            return Err(Error::WireCollision(q));
        }
    }
    Ok(())
}

/// Reads the value of `qubits` (bit `k` of the result is `qubits[k]`) from a
/// basis index.
#[inline]
pub fn register_value(index: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &q)| acc | (((index >> q) & 1) << k))
}

/// Outcome distribution of measuring `qubits`, indexed by register value.
pub fn register_probabilities<T: Real>(
    state: &StateVector<T>,
    qubits: &[usize],
) -> Result<Vec<f64>> {
    check_register(qubits, state.num_qubits())?;
    let mut probs = vec![0.0; 1 << qubits.len()];
    for (i, a) in state.amplitudes().iter().enumerate() {
        probs[register_value(i, qubits)] += a.norm_sqr().as_f64();
    }
    Ok(probs)
}

/// Zeroes every amplitude whose `qubits` do not read `outcome`. Returns the
/// squared norm of what remains.
pub fn project_register<T: Real>(
    state: &mut StateVector<T>,
    qubits: &[usize],
    outcome: usize,
) -> Result<T> {
    check_register(qubits, state.num_qubits())?;
    let mut kept = T::zero();
    for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
        if register_value(i, qubits) == outcome {
            kept += a.norm_sqr();
        } else {
            *a = Complex::new(T::zero(), T::zero());
        }
    }
    Ok(kept)
}

/// Projective measurement of `qubits` in the computational basis.
///
/// Samples an outcome with Born probabilities, collapses `state` in place, and
/// renormalizes it. Bit `k` of the returned value is the reading of `qubits[k]`.
pub fn measure_register<T: Real, R: Rng + ?Sized>(
    state: &mut StateVector<T>,
    qubits: &[usize],
    rng: &mut R,
) -> Result<usize> {
    let probs = register_probabilities(state, qubits)?;
    let total: f64 = probs.iter().sum();
    let outcome = sample_index(&probs, total, rng);
    let kept = project_register(state, qubits, outcome)?;
    debug_assert!(kept > T::zero(), "zero-probability branch selected");
    state.scale(Complex::new(T::one() / kept.sqrt(), T::zero()));
    Ok(outcome)
}

/// Index drawn from unnormalized weights; never returns a zero-weight entry
/// unless every weight is zero.
fn sample_index<R: Rng + ?Sized>(weights: &[f64], total: f64, rng: &mut R) -> usize {
    let x = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (k, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last_nonzero = k;
        if x < acc {
            return k;
        }
    }
    last_nonzero
}

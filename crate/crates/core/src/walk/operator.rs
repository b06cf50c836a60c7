use num_complex::Complex;

use crate::circuit::{RegisterLayout, VerifierCircuit};
use crate::error::{Error, Result};
use crate::geometry::VerifierProjectors;
use crate::scalar::Real;
use crate::statevector::{Direction, StateVector};

/// Which reflection to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reflection {
    /// `F₀ = 2Π₀ − I`.
    F0,
    /// `F₁ = V†(2|1⟩⟨1|_out − I)V`.
    F1,
}

/// Number of verifier evaluations, forward and adjoint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryCounter {
    pub v: u64,
    pub v_dag: u64,
}

impl QueryCounter {
    fn charge(&mut self, uses: u64) {
        self.v += uses;
        self.v_dag += uses;
    }
}

/// The walk `W = F₁F₀` on the low `n + m` wires of a state, with query
/// accounting. Every `F₁` costs one `V` and one `V†`.
#[derive(Clone, Debug)]
pub struct WalkOperator<T> {
    proj: VerifierProjectors<T>,
    queries: QueryCounter,
}

impl<T: Real> WalkOperator<T> {
    pub fn new(circuit: &VerifierCircuit<T>) -> Result<Self> {
        Ok(Self {
            proj: VerifierProjectors::new(circuit)?,
            queries: QueryCounter::default(),
        })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.proj.layout()
    }

    pub fn queries(&self) -> QueryCounter {
        self.queries
    }

    pub fn reset_queries(&mut self) {
        self.queries = QueryCounter::default();
    }

    fn block_len(&self) -> usize {
        1 << self.layout().num_qubits()
    }

    fn negate_where(block: &mut [Complex<T>], mask: usize, value: usize) {
        for (i, a) in block.iter_mut().enumerate() {
            if i & mask == value {
                *a = -*a;
            }
        }
    }

    fn f0_block(&self, block: &mut [Complex<T>]) {
        let mask = self.layout().ancilla_mask();
        for (i, a) in block.iter_mut().enumerate() {
            if i & mask != 0 {
                *a = -*a;
            }
        }
    }

    fn f1_block(&self, block: &mut [Complex<T>]) {
        let circuit = self.proj.circuit();
        circuit.apply_raw(block, Direction::Forward);
        // 2|1⟩⟨1| − I negates the output-0 half.
        Self::negate_where(block, 1 << self.proj.output_qubit(), 0);
        circuit.apply_raw(block, Direction::Inverse);
    }

    fn walk_block(&self, block: &mut [Complex<T>], reps: u64, inverse: bool) {
        for _ in 0..reps {
            if inverse {
                self.f1_block(block);
                self.f0_block(block);
            } else {
                self.f0_block(block);
                self.f1_block(block);
            }
        }
    }

    /// Checks the control wire and returns its position relative to the
    /// verifier register, if any.
    fn control_bit(&self, state: &StateVector<T>, control: Option<usize>) -> Result<Option<usize>> {
        let q = self.layout().num_qubits();
        if state.num_qubits() < q {
            return Err(Error::RegisterMismatch {
                expected: q,
                got: state.num_qubits(),
            });
        }
        match control {
            None => Ok(None),
            Some(c) if c < q => Err(Error::WireCollision(c)),
            Some(c) if c >= state.num_qubits() => Err(Error::IndexOutOfRange {
                index: c,
                num_qubits: state.num_qubits(),
            }),
            Some(c) => Ok(Some(c - q)),
        }
    }

    /// Runs `f` on every verifier-register block whose high index has all of
    /// `high_mask` set.
    fn for_blocks(&self, state: &mut StateVector<T>, high_mask: usize, mut f: impl FnMut(&mut [Complex<T>])) {
        let len = self.block_len();
        for (h, block) in state.amplitudes_mut().chunks_mut(len).enumerate() {
            if h & high_mask == high_mask {
                f(block);
            }
        }
    }

    /// Applies `F₀` or `F₁`, optionally controlled on a wire outside the
    /// verifier register. The controlled form is exactly `diag(I, F)`.
    pub fn apply_reflection(
        &mut self,
        state: &mut StateVector<T>,
        which: Reflection,
        control: Option<usize>,
    ) -> Result<()> {
        let mask = self.control_bit(state, control)?.map_or(0, |b| 1 << b);
        match which {
            Reflection::F0 => self.for_blocks(state, mask, |b| self.f0_block(b)),
            Reflection::F1 => {
                self.for_blocks(state, mask, |b| self.f1_block(b));
                self.queries.charge(1);
            }
        }
        Ok(())
    }

    /// Applies `W^repetitions`, optionally controlled.
    pub fn apply_walk(
        &mut self,
        state: &mut StateVector<T>,
        control: Option<usize>,
        repetitions: u64,
    ) -> Result<()> {
        let mask = self.control_bit(state, control)?.map_or(0, |b| 1 << b);
        self.for_blocks(state, mask, |b| self.walk_block(b, repetitions, false));
        self.queries.charge(repetitions);
        Ok(())
    }

    /// Applies `W^{-repetitions} = (F₀F₁)^repetitions`, optionally controlled.
    pub fn apply_walk_inverse(
        &mut self,
        state: &mut StateVector<T>,
        control: Option<usize>,
        repetitions: u64,
    ) -> Result<()> {
        let mask = self.control_bit(state, control)?.map_or(0, |b| 1 << b);
        self.for_blocks(state, mask, |b| self.walk_block(b, repetitions, true));
        self.queries.charge(repetitions);
        Ok(())
    }

    /// Controlled powers of phase estimation: wire `first + k` controls
    /// `W^{±2^k}` for `k < t`. Costs `2^t − 1` walk steps.
    pub(crate) fn controlled_powers(
        &mut self,
        state: &mut StateVector<T>,
        first: usize,
        t: usize,
        inverse: bool,
    ) -> Result<()> {
        for k in 0..t {
            let reps = 1u64 << k;
            if inverse {
                self.apply_walk_inverse(state, Some(first + k), reps)?;
            } else {
                self.apply_walk(state, Some(first + k), reps)?;
            }
        }
        Ok(())
    }
}

/// `F₀` or `F₁` on `state`, optionally controlled.
pub fn apply_reflection<T: Real>(
    state: &mut StateVector<T>,
    which: Reflection,
    circuit: &VerifierCircuit<T>,
    control: Option<usize>,
) -> Result<()> {
    WalkOperator::new(circuit)?.apply_reflection(state, which, control)
}

/// `(F₁F₀)^repetitions` on `state`, optionally controlled. Returns the
/// queries spent.
pub fn apply_walk<T: Real>(
    state: &mut StateVector<T>,
    circuit: &VerifierCircuit<T>,
    control: Option<usize>,
    repetitions: u64,
) -> Result<QueryCounter> {
    let mut w = WalkOperator::new(circuit)?;
    w.apply_walk(state, control, repetitions)?;
    Ok(w.queries())
}

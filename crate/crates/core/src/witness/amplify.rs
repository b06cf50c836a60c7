use num_complex::Complex;
use rand::Rng;

use crate::circuit::VerifierCircuit;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::StateVector;
use crate::walk::QueryCounter;

use super::reverse_pe_extract;

/// Exponential guessing schedule for amplitude amplification with an unknown
/// marked amplitude. Each try draws an iteration count uniformly from
/// `[0, m)`, starting at `m = 1`, and grows `m` by `growth` after a miss.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplificationSchedule {
    pub growth: f64,
    /// Cap on `m`; `None` means `√dim` of the amplified space.
    pub max_multiplier: Option<f64>,
    /// Budget across all tries; a try costs its iteration count, at least 1.
    /// `None` means `8√dim`, at least 16.
    pub max_iterations: Option<u64>,
}

impl Default for AmplificationSchedule {
    fn default() -> Self {
        Self {
            growth: 1.2,
            max_multiplier: None,
            max_iterations: None,
        }
    }
}

/// Result of a successful amplification.
#[derive(Clone, Debug)]
pub struct AmplifiedState<T> {
    /// State after the verifying measurement, collapsed onto the marked space.
    pub state: StateVector<T>,
    /// Marked-space probability just before the verifying measurement.
    pub marked_probability: f64,
    /// Grover iterations used by the successful try.
    pub iterations: u64,
    /// Grover iterations summed over every try.
    pub total_iterations: u64,
    pub tries: u64,
}

fn marked_probability<T: Real>(state: &StateVector<T>, mask: usize) -> f64 {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| i & mask == 0)
        .map(|(_, a)| a.norm_sqr().as_f64())
        .sum()
}

/// Applies `k` Grover iterations `(2|s⟩⟨s| − I)(I − 2P)` in place, where `P`
/// marks basis states whose `mask` bits are all zero and `|s⟩ = prepared`.
pub fn grover_iterate<T: Real>(
    state: &mut StateVector<T>,
    prepared: &StateVector<T>,
    mask: usize,
    k: u64,
) {
    for _ in 0..k {
        for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
            if i & mask == 0 {
                *a = -*a;
            }
        }
        let overlap = prepared.inner(state);
        state.scale(Complex::new(-T::one(), T::zero()));
        state.add_scaled(overlap * T::lit(2.0), prepared);
    }
}

/// Amplifies the `mask`-zero component of `prepared` by exponential guessing,
/// verifying each guess with a measurement of the marked space.
pub fn amplify_marked<T: Real, R: Rng + ?Sized>(
    prepared: &StateVector<T>,
    mask: usize,
    schedule: &AmplificationSchedule,
    rng: &mut R,
) -> Result<AmplifiedState<T>> {
    if !(schedule.growth > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "schedule growth {} must exceed 1",
            schedule.growth
        )));
    }
    let cap = schedule
        .max_multiplier
        .unwrap_or_else(|| (prepared.dim() as f64).sqrt())
        .max(1.0);
    let budget = schedule
        .max_iterations
        .unwrap_or_else(|| ((8.0 * (prepared.dim() as f64).sqrt()).ceil() as u64).max(16));
    let mut m = 1.0f64;
    let mut total = 0u64;
    // Budget charge: every try costs at least one unit so the loop ends.
    let mut spent = 0u64;
    let mut tries = 0u64;
    loop {
        let k = if tries == 0 {
            0
        } else {
            rng.random_range(0..m.ceil() as u64)
        };
        if spent + k.max(1) > budget {
            return Err(Error::ScheduleExhausted { iterations: total });
        }
        spent += k.max(1);
        total += k;
        tries += 1;
        let mut state = prepared.clone();
        grover_iterate(&mut state, prepared, mask, k);
        let p = marked_probability(&state, mask);
        if rng.random::<f64>() < p {
            for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
                if i & mask != 0 {
                    *a = Complex::new(T::zero(), T::zero());
                }
            }
            state.normalize();
            return Ok(AmplifiedState {
                state,
                marked_probability: p,
                iterations: k,
                total_iterations: total,
                tries,
            });
        }
        m = (m * schedule.growth).min(cap);
    }
}

/// Output of [`amplify_zero_register`].
#[derive(Clone, Debug)]
pub struct ZeroRegisterAmplification<T> {
    pub amplified: AmplifiedState<T>,
    /// Zero-register probability of the unamplified extraction.
    pub initial_probability: f64,
    /// Algorithmic cost: one extraction plus, per Grover iteration, one
    /// extraction and one inverse extraction.
    pub queries: QueryCounter,
}

/// Extracts `|alpha⟩` against the filter for `phi` and amplifies the
/// component whose phase register reads `0^t`.
pub fn amplify_zero_register<T: Real, R: Rng + ?Sized>(
    circuit: &VerifierCircuit<T>,
    phi: f64,
    t: usize,
    alpha: &StateVector<T>,
    rng: &mut R,
    schedule: &AmplificationSchedule,
) -> Result<ZeroRegisterAmplification<T>> {
    let (prepared, per_extraction) = reverse_pe_extract(circuit, alpha, phi, t)?;
    let q = circuit.num_qubits();
    let mask = ((1usize << t) - 1) << q;
    let initial_probability = marked_probability(&prepared, mask);
    let amplified = amplify_marked(&prepared, mask, schedule, rng)?;
    let uses = per_extraction.v * (1 + 2 * amplified.total_iterations);
    Ok(ZeroRegisterAmplification {
        amplified,
        initial_probability,
        queries: QueryCounter { v: uses, v_dag: uses },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn toy(overlap_sq: f64) -> StateVector<f64> {
        // One qubit: |0⟩ is marked.
        let a = overlap_sq.sqrt();
        StateVector::from_amplitudes(vec![
            Complex::new(a, 0.0),
            Complex::new((1.0 - overlap_sq).sqrt(), 0.0),
        ])
        .unwrap()
    }

    #[test]
    fn one_iteration_from_a_quarter() {
        let s = toy(0.25);
        let mut x = s.clone();
        grover_iterate(&mut x, &s, 1, 1);
        assert!(x.amplitudes()[0].norm_sqr() >= 0.98);
        assert!((x.squared_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn large_overlap_needs_no_iterations() {
        let s = toy(0.995);
        let mut hits = 0;
        for seed in 0..200 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = amplify_marked(&s, 1, &AmplificationSchedule::default(), &mut rng).unwrap();
            if r.tries == 1 {
                assert_eq!(r.iterations, 0);
                hits += 1;
            }
        }
        assert!(hits >= 195);
    }

    #[test]
    fn orthogonal_state_exhausts() {
        let s = toy(0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let schedule = AmplificationSchedule {
            max_iterations: Some(200),
            ..Default::default()
        };
        assert!(matches!(
            amplify_marked(&s, 1, &schedule, &mut rng),
            Err(Error::ScheduleExhausted { .. })
        ));
    }
}

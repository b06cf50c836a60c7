use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VerifierCircuit;
use crate::error::{Error, Result};
use crate::geometry::brute_force_pmax;
use crate::scalar::Real;
use crate::statevector::{apply_circuit, Direction, Gate, StateVector};

/// Family of verifier circuits with a known acceptance spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PlantedKind {
    /// One designated witness basis state accepted with `cos²(π·phi)`, every
    /// other basis state rejected with certainty. Requires `0 < phi < 1/2`.
    DyadicPhase { phi: f64 },
    /// Random rotation layers with entangling CX gates; `p_max` from the oracle.
    UniformRandom { depth: usize },
    /// A witness-only unitary followed by a CX copying witness wire 0 onto the
    /// output, so both projectors commute and `p_max = 1`.
    Commuting,
    /// The dyadic construction with acceptance `b − margin`.
    NoInstance { b: f64, margin: f64 },
}

impl PlantedKind {
    /// `NoInstance` with the default margin of 0.05.
    pub fn no_instance(b: f64) -> Self {
        PlantedKind::NoInstance { b, margin: 0.05 }
    }
}

/// A verifier together with its exact best acceptance probability.
#[derive(Clone, Debug)]
pub struct PlantedInstance<T> {
    pub circuit: VerifierCircuit<T>,
    pub known_pmax: f64,
    /// A witness on the `n` witness wires achieving `known_pmax`.
    pub known_top_witness: StateVector<T>,
    pub is_yes_instance: bool,
    /// Principal angle of the top block, when the construction fixes it.
    pub phi: Option<f64>,
}

/// Builds an instance of `kind` on `num_witness + num_ancilla` wires. The
/// output is the first ancilla wire.
pub fn planted_instance<T: Real>(
    kind: PlantedKind,
    num_witness: usize,
    num_ancilla: usize,
    seed: u64,
) -> Result<PlantedInstance<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = num_witness;
    match kind {
        PlantedKind::DyadicPhase { phi } => {
            if !(phi > 0.0 && phi < 0.5) {
                return Err(Error::InvalidParameter(format!(
                    "dyadic phase {phi} outside (0, 1/2)"
                )));
            }
            phase_instance(num_witness, num_ancilla, phi, true, &mut rng)
        }
        PlantedKind::NoInstance { b, margin } => {
            let p = b - margin;
            if !(0.0..1.0).contains(&p) || !(margin > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "no-instance acceptance b - margin = {p} unreachable"
                )));
            }
            let phi = p.sqrt().acos() / std::f64::consts::PI;
            phase_instance(num_witness, num_ancilla, phi, false, &mut rng)
        }
        PlantedKind::Commuting => {
            let mut gates = random_layers::<T>(&(0..num_witness).collect::<Vec<_>>(), 2, &mut rng);
            let scramble = gates.clone();
            gates.push(Gate::cx(0, out));
            let circuit = VerifierCircuit::new(num_witness, num_ancilla, out, gates)?;
            // U† |…01⟩: the preimage of witness wire 0 reading 1.
            let mut top = StateVector::basis(num_witness, 1)?;
            apply_circuit(&mut top, &scramble, Direction::Inverse)?;
            Ok(PlantedInstance {
                circuit,
                known_pmax: 1.0,
                known_top_witness: top,
                is_yes_instance: true,
                phi: Some(0.0),
            })
        }
        PlantedKind::UniformRandom { depth } => {
            let wires: Vec<usize> = (0..num_witness + num_ancilla).collect();
            let gates = random_layers::<T>(&wires, depth.max(1), &mut rng);
            let circuit = VerifierCircuit::new(num_witness, num_ancilla, out, gates)?;
            let oracle = brute_force_pmax(&circuit)?;
            Ok(PlantedInstance {
                circuit,
                known_pmax: oracle.pmax,
                known_top_witness: oracle.top_witness,
                is_yes_instance: oracle.pmax >= 0.5,
                phi: Some(oracle.pmax.sqrt().acos() / std::f64::consts::PI),
            })
        }
    }
}

fn phase_instance<T: Real>(
    num_witness: usize,
    num_ancilla: usize,
    phi: f64,
    is_yes: bool,
    rng: &mut ChaCha8Rng,
) -> Result<PlantedInstance<T>> {
    let out = num_witness;
    let designated = rng.random_range(0..1usize << num_witness);
    let flips: Vec<Gate<T>> = (0..num_witness)
        .filter(|q| designated >> q & 1 == 0)
        .map(Gate::x)
        .collect();
    let controls: Vec<usize> = (0..num_witness).collect();
    let angle = T::lit(2.0 * std::f64::consts::PI * phi);
    let mut gates = flips.clone();
    gates.push(Gate::x(out).controlled_by(controls.clone()));
    // RY(2πφ)|1⟩ reads 1 with probability cos²(πφ).
    gates.push(Gate::ry(out, angle).controlled_by(controls));
    gates.extend(flips);
    let circuit = VerifierCircuit::new(num_witness, num_ancilla, out, gates)?;
    Ok(PlantedInstance {
        circuit,
        known_pmax: (std::f64::consts::PI * phi).cos().powi(2),
        known_top_witness: StateVector::basis(num_witness, designated)?,
        is_yes_instance: is_yes,
        phi: Some(phi),
    })
}

/// `depth` layers of random single-qubit rotations on `wires`, each followed
/// by a CX between a random ordered pair.
fn random_layers<T: Real>(wires: &[usize], depth: usize, rng: &mut ChaCha8Rng) -> Vec<Gate<T>> {
    let mut gates = Vec::new();
    for _ in 0..depth {
        for &q in wires {
            let angle = T::lit(rng.random_range(0.0..std::f64::consts::TAU));
            gates.push(match rng.random_range(0..3) {
                0 => Gate::rx(q, angle),
                1 => Gate::ry(q, angle),
                _ => Gate::rz(q, angle),
            });
            gates.push(Gate::ry(q, T::lit(rng.random_range(0.0..std::f64::consts::TAU))));
        }
        if wires.len() >= 2 {
            let a = rng.random_range(0..wires.len());
            let mut b = rng.random_range(0..wires.len() - 1);
            if b >= a {
                b += 1;
            }
            gates.push(Gate::cx(wires[a], wires[b]));
        }
    }
    gates
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::jordan_decompose;

    #[test]
    fn dyadic_quarter_has_half_acceptance() {
        let inst =
            planted_instance::<f64>(PlantedKind::DyadicPhase { phi: 0.25 }, 2, 1, 3).unwrap();
        assert!((inst.known_pmax - 0.5).abs() < 1e-15);
        let oracle = brute_force_pmax(&inst.circuit).unwrap();
        assert!((oracle.pmax - 0.5).abs() < 1e-10);
        assert!(oracle.top_witness.fidelity(&inst.known_top_witness) > 1.0 - 1e-10);
    }

    #[test]
    fn dyadic_eighth_single_rotation_block() {
        let inst =
            planted_instance::<f64>(PlantedKind::DyadicPhase { phi: 0.125 }, 2, 2, 9).unwrap();
        assert!((inst.known_pmax - 0.853_553_390_6).abs() < 1e-10);
        let d = jordan_decompose(&inst.circuit).unwrap();
        let two: Vec<_> = d.two_dim().collect();
        assert_eq!(two.len(), 1);
        if let crate::geometry::JordanSubspace::TwoDim { phi, .. } = two[0] {
            assert!((phi - 0.125).abs() < 1e-12);
        }
    }

    #[test]
    fn commuting_and_no_instances() {
        let c = planted_instance::<f64>(PlantedKind::Commuting, 2, 1, 5).unwrap();
        assert_eq!(jordan_decompose(&c.circuit).unwrap().two_dim().count(), 0);
        assert!((brute_force_pmax(&c.circuit).unwrap().pmax - 1.0).abs() < 1e-10);

        let no = planted_instance::<f64>(PlantedKind::no_instance(0.5), 2, 1, 5).unwrap();
        assert!(no.known_pmax <= 0.5);
        assert!(!no.is_yes_instance);
        assert!((brute_force_pmax(&no.circuit).unwrap().pmax - no.known_pmax).abs() < 1e-10);
    }

    #[test]
    fn unreachable_parameters_rejected() {
        assert!(planted_instance::<f64>(PlantedKind::DyadicPhase { phi: 0.5 }, 1, 1, 0).is_err());
        assert!(planted_instance::<f64>(PlantedKind::no_instance(0.01), 1, 1, 0).is_err());
    }
}

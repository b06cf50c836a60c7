use qma_amp::circuit::{planted_instance, PlantedKind, PromiseParameters};
use qma_amp::geometry::jordan_decompose;
use qma_amp::walk::{plan_precision, DEFAULT_EPS_PE};
use qma_amp::witness::{prepare_witness, qma1_verify, reverse_pe_extract, WitnessSearch};
use qma_amp::StateVectorF64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn eighth(seed: u64) -> qma_amp::circuit::PlantedInstance<f64> {
    planted_instance(PlantedKind::DyadicPhase { phi: 0.125 }, 1, 1, seed).unwrap()
}

#[test]
fn filter_round_trip_on_walk_eigenvector() {
    let inst = eighth(0);
    let d = jordan_decompose(&inst.circuit).unwrap();
    let (plus, _) = d.two_dim().next().unwrap().walk_eigenvectors().unwrap();
    let (out, _) = reverse_pe_extract(&inst.circuit, &plus, 0.125, 3).unwrap();
    let expected = plus.extend_zero(3).unwrap();
    assert!(out.fidelity(&expected) > 1.0 - 1e-9);
}

#[test]
fn random_alpha_overlap_is_preserved() {
    let inst = eighth(1);
    let d = jordan_decompose(&inst.circuit).unwrap();
    let (plus, _) = d.two_dim().next().unwrap().walk_eigenvectors().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let alpha = StateVectorF64::random(2, &mut rng).unwrap();
    let (out, _) = reverse_pe_extract(&inst.circuit, &alpha, 0.125, 3).unwrap();
    let zero_part = out.low_slice(2, 0).unwrap();
    let a = plus.inner(&zero_part).norm_sqr();
    assert!((a - plus.inner(&alpha).norm_sqr()).abs() < 1e-9);
}

#[test]
fn prepare_recovers_top_witness() {
    let inst = eighth(3);
    let params = PromiseParameters::new(0.85, 0.5, 6).unwrap();
    let plan = plan_precision(&params, DEFAULT_EPS_PE).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let c = prepare_witness(&inst.circuit, &WitnessSearch::new(3), &plan, &mut rng).unwrap();
    assert_eq!(c.grid_phi, 0.125);
    assert!(c.witness.fidelity(&inst.known_top_witness) > 0.99);
}

#[test]
fn qma1_accepts_exact_claim() {
    let inst = eighth(5);
    let params = PromiseParameters::new(0.8, 0.5, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let o = qma1_verify(&inst.circuit, &inst.known_top_witness, 0.125, 3, &params, &mut rng)
            .unwrap();
        assert!(o.verdict.is_accept());
    }
    let o = qma1_verify(&inst.circuit, &inst.known_top_witness, 0.25, 3, &params, &mut rng).unwrap();
    assert!(!o.gate_passed && !o.verdict.is_accept());
}

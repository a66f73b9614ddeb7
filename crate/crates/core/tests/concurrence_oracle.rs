//! Concurrence against the textbook route: square roots of the eigenvalues
//! of the non-Hermitian `R = ρ ρ̃`, taken from a complex Schur form.

use entbound::quantum::{concurrence, kron, pauli, random_mixed_state, random_pure_state, random_unitary, TwoQubitState};
use entbound::rng;
use nalgebra::Schur;

fn oracle(rho: &TwoQubitState) -> f64 {
    let yy = kron(&pauli(2), &pauli(2));
    let r = rho.matrix() * yy * rho.matrix().conjugate() * yy;
    let mut l: Vec<f64> = Schur::new(r).unpack().1.diagonal().iter().map(|z| z.re.max(0.0).sqrt()).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

#[test]
fn werner_state() {
    let rho = TwoQubitState::werner(0.5).unwrap();
    assert!((oracle(&rho) - 0.25).abs() < 1e-9);
    assert!((concurrence(&rho).unwrap() - 0.25).abs() < 1e-12);
    for k in 0..=20 {
        let p = k as f64 / 20.0;
        let expected = ((3.0 * p - 1.0) / 2.0).max(0.0);
        assert!((concurrence(&TwoQubitState::werner(p).unwrap()).unwrap() - expected).abs() < 1e-12, "p={p}");
    }
}

#[test]
fn random_mixed_states_match_oracle() {
    let mut r = rng::stream(3, 0);
    for _ in 0..500 {
        let rho = random_mixed_state(&mut r);
        let (c, o) = (concurrence(&rho).unwrap(), oracle(&rho));
        assert!((c - o).abs() < 1e-7, "{c} vs {o}");
    }
}

#[test]
fn random_pure_states_match_oracle_and_are_invariant() {
    let mut r = rng::stream(3, 1);
    for _ in 0..200 {
        let rho = random_pure_state(&mut r);
        let c = concurrence(&rho).unwrap();
        assert!((c - oracle(&rho)).abs() < 1e-6);
        let rotated = rho.locally_rotated(&random_unitary(&mut r), &random_unitary(&mut r)).unwrap();
        assert!((c - concurrence(&rotated).unwrap()).abs() < 1e-9);
    }
}

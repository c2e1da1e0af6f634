use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use braidlab::entanglement::{
    density_matrix, entanglement_entropy, is_decomposable, partial_trace, random_product_state,
    random_two_qubit_state, shannon_entropy, ProbabilityVector, Subsystem,
};
use braidlab::gates::{apply_gate, PureState};
use braidlab::linalg::{cis, hermitian_eigen, ComplexMatrix};
use braidlab::Complex64;

fn local_unitary(a: f64, b: f64, c: f64) -> ComplexMatrix {
    let (s, co) = a.sin_cos();
    ComplexMatrix::from_rows(&[[cis(b) * co, -cis(-c) * s], [cis(c) * s, cis(-b) * co]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_states_are_normalized(seed in any::<u64>()) {
        let s = random_two_qubit_state(&mut ChaCha8Rng::seed_from_u64(seed));
        let norm: f64 = s.amplitudes().iter().map(Complex64::norm_sqr).sum();
        prop_assert!((norm - 1.0).abs() < 1e-14);
    }

    #[test]
    fn partial_traces_are_unit_trace_and_positive(seed in any::<u64>()) {
        let s = random_two_qubit_state(&mut ChaCha8Rng::seed_from_u64(seed));
        let rho = density_matrix(&s);
        for keep in [Subsystem::First, Subsystem::Second] {
            let r = partial_trace(&rho, keep).unwrap();
            let tr = r.matrix().trace().unwrap();
            prop_assert!((tr - Complex64::new(1.0, 0.0)).norm() < 1e-14);
            let eig = hermitian_eigen(r.matrix()).unwrap();
            prop_assert!(eig.values.iter().all(|&l| l > -1e-14));
        }
    }

    #[test]
    fn reduced_spectra_agree(seed in any::<u64>()) {
        let s = random_two_qubit_state(&mut ChaCha8Rng::seed_from_u64(seed));
        let rho = density_matrix(&s);
        let a = hermitian_eigen(partial_trace(&rho, Subsystem::First).unwrap().matrix()).unwrap().values;
        let b = hermitian_eigen(partial_trace(&rho, Subsystem::Second).unwrap().matrix()).unwrap().values;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_is_invariant_under_local_unitaries(
        seed in any::<u64>(),
        angles in prop::array::uniform6(-3.0..3.0f64),
    ) {
        let s = random_two_qubit_state(&mut ChaCha8Rng::seed_from_u64(seed));
        let u = local_unitary(angles[0], angles[1], angles[2]).kron(&local_unitary(angles[3], angles[4], angles[5]));
        let t = apply_gate(&u, &s).unwrap().state;
        let (e1, e2) = (entanglement_entropy(&s).unwrap(), entanglement_entropy(&t).unwrap());
        prop_assert!((e1 - e2).abs() < 1e-10, "{e1} vs {e2}");
        prop_assert!((0.0..=1.0 + 1e-12).contains(&e1));
    }

    #[test]
    fn product_states_are_decomposable_with_zero_entropy(seed in any::<u64>()) {
        let s = random_product_state(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(is_decomposable(&s, 1e-8).decomposable);
        prop_assert!(entanglement_entropy(&s).unwrap() < 1e-8);
    }

    #[test]
    fn shannon_entropy_is_symmetric_and_bounded_by_uniform(w in prop::collection::vec(0.0..1.0f64, 2..9), rot in 0usize..8) {
        let total: f64 = w.iter().sum();
        prop_assume!(total > 1e-6);
        let p: Vec<f64> = w.iter().map(|x| x / total).collect();
        let mut q = p.clone();
        q.rotate_left(rot % p.len());
        q.reverse();
        let hp = shannon_entropy(&ProbabilityVector::new(p.clone()).unwrap());
        let hq = shannon_entropy(&ProbabilityVector::new(q).unwrap());
        prop_assert!((hp - hq).abs() < 1e-12);
        prop_assert!(hp <= (p.len() as f64).log2() + 1e-12);
    }
}

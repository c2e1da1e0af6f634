use proptest::prelude::*;

use braidlab::kaon::{
    entropy_pair, entropy_pair_diagonal_reading, entropy_single, horodecki_M, lambda_from_eta,
    rho_mixture, violation_threshold, ContaminatedSource, KaonMixture,
};
use braidlab::linalg::hermitian_eigen;
use braidlab::Complex64;

fn mixture(re: f64, im: f64, lambda: f64) -> KaonMixture {
    KaonMixture::new(Complex64::new(re, im), lambda).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mixture_is_a_density_matrix(re in -3.0..3.0f64, im in -3.0..3.0f64, lambda in 0.0..=1.0f64) {
        let rho = rho_mixture(&mixture(re, im, lambda)).unwrap();
        let tr = rho.matrix().trace().unwrap();
        prop_assert!((tr.re - 1.0).abs() < 1e-13 && tr.im.abs() < 1e-13);
        let eig = hermitian_eigen(rho.matrix()).unwrap();
        prop_assert!(eig.values.iter().all(|&l| l > -1e-13), "{:?}", eig.values);
    }

    #[test]
    fn horodecki_quantity_is_monotone_above_one_half(
        re in -3.0..3.0f64,
        im in -3.0..3.0f64,
        a in 0.5..=1.0f64,
        b in 0.5..=1.0f64,
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(horodecki_M(&mixture(re, im, lo)) <= horodecki_M(&mixture(re, im, hi)) + 1e-15);
    }

    #[test]
    fn no_violation_at_or_below_one_half(re in -3.0..3.0f64, im in -3.0..3.0f64, lambda in 0.0..=0.5f64) {
        prop_assert!(horodecki_M(&mixture(re, im, lambda)) <= 1.0 + 1e-15);
    }

    #[test]
    fn derived_threshold_brackets_the_violation(re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let eps = Complex64::new(re, im);
        let th = violation_threshold(eps);
        prop_assert!((0.5..=1.0).contains(&th.derived_lambda));
        if th.derived_lambda < 1.0 {
            prop_assert!(horodecki_M(&mixture(re, im, th.derived_lambda)) > 1.0);
            prop_assert!(horodecki_M(&mixture(re, im, th.derived_lambda - 1e-9)) <= 1.0);
            prop_assert!((th.derived_lambda - th.analytic_lambda).abs() < 1e-9);
        }
    }

    #[test]
    fn lambda_and_eta_are_inverse(eta in 0.0..=0.5f64) {
        let lambda = lambda_from_eta(eta).unwrap();
        prop_assert!(((1.0 - lambda) / 2.0 - eta).abs() < 1e-15);
    }

    #[test]
    fn source_entropies_are_finite_and_nonnegative(alpha in 0.0..=1.0f64, v in 0.0..=1.0f64) {
        let s = ContaminatedSource::new(alpha, v).unwrap();
        for e in [entropy_pair(&s), entropy_pair_diagonal_reading(&s), entropy_single(&s)] {
            prop_assert!(e.is_finite() && e >= 0.0, "{e}");
        }
    }
}

#[test]
fn eta_outside_range_is_rejected() {
    assert!(lambda_from_eta(-1e-3).is_err());
    assert!(lambda_from_eta(0.6).is_err());
}

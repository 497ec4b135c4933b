use proptest::prelude::*;
use sepfid_core::random::{local_unitary, random_density, random_pure_state, stream_rng};
use sepfid_core::two_qubit::{e_ge_from_concurrence, f_sep_from_concurrence};
use sepfid_core::{
    concurrence, concurrence_spectral, e_ge_pure, e_ge_two_qubit, two_qubit_report, LambdaOptions,
    SubsystemSignature,
};

fn qq() -> SubsystemSignature {
    SubsystemSignature::new(vec![2, 2]).unwrap()
}

#[test]
fn closed_forms_monotone_in_concurrence() {
    let mut prev = e_ge_from_concurrence(0.0);
    assert!(prev.abs() <= 1e-15);
    for k in 1..=100 {
        let c = k as f64 / 100.0;
        let e = e_ge_from_concurrence(c);
        assert!(e >= prev);
        assert!((e + f_sep_from_concurrence(c) - 1.0).abs() <= 1e-15);
        prev = e;
    }
    assert!((prev - 0.5).abs() <= 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn local_unitary_invariance(seed in any::<u64>(), rank in 1usize..=4) {
        let mut rng = stream_rng(seed, 0);
        let rho = random_density(&mut rng, &qq(), rank);
        let u = local_unitary(&mut rng, &qq());
        let a = concurrence(&rho).unwrap();
        let b = concurrence(&rho.conjugate_by(&u).unwrap()).unwrap();
        prop_assert!((a - b).abs() <= 1e-9);
    }

    #[test]
    fn pure_states_match_product_search(seed in any::<u64>()) {
        let psi = random_pure_state(&mut stream_rng(seed, 0), &qq());
        let a = e_ge_two_qubit(&psi.to_density()).unwrap();
        let b = e_ge_pure(&psi, &LambdaOptions::default()).value;
        prop_assert!((a - b).abs() <= 1e-8);
    }

    #[test]
    fn routes_agree_on_full_rank(seed in any::<u64>()) {
        let rho = random_density(&mut stream_rng(seed, 0), &qq(), 4);
        let a = concurrence(&rho).unwrap();
        let b = concurrence_spectral(&rho).unwrap();
        prop_assert!((a - b).abs() <= 1e-8);
    }

    #[test]
    fn report_identities(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = random_density(&mut stream_rng(seed, 0), &qq(), rank);
        let r = two_qubit_report(&rho).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.concurrence));
        prop_assert!(r.e_ge + r.f_sep == 1.0);
        prop_assert!((r.e_b - 2.0 * (1.0 - r.f_sep.sqrt())).abs() <= 1e-15);
    }
}

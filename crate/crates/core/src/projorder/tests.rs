use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::projection::{self, Projection};
use crate::random;
use crate::tolerance::ToleranceConfig;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn tuple(seed: u64) -> Vec<Projection> {
    let mut rng = random::rng(seed);
    let n = rng.random_range(2..=16);
    let k = rng.random_range(2..=4);
    random::meet_instance(&mut rng, n, k)
}

fn pair(seed: u64, max_dim: usize) -> (Projection, Projection) {
    let mut rng = random::rng(seed);
    let n = rng.random_range(2..=max_dim);
    let ps = random::meet_instance(&mut rng, n, 2);
    (ps[0].clone(), ps[1].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn spectral_meet_matches_oracle(seed in any::<u64>()) {
        let ps = tuple(seed);
        let a = meet_spectral(&ps, &cfg()).unwrap();
        let b = meet_nullspace(&ps, &cfg()).unwrap();
        prop_assert!(a.distance(&b) <= 1e-8, "distance {}", a.distance(&b));
    }

    #[test]
    fn join_matches_span(seed in any::<u64>()) {
        let ps = tuple(seed);
        let a = join(&ps, &cfg()).unwrap();
        let b = join_span(&ps, &cfg()).unwrap();
        prop_assert!(a.distance(&b) <= 1e-8);
    }

    #[test]
    fn spectrum_identities(seed in any::<u64>()) {
        let (p, q) = pair(seed, 16);
        let r = spectrum_identity_report(&p, &q, &cfg()).unwrap();
        prop_assert!(r.norm_chain_discrepancy <= 1e-9);
        prop_assert!(r.max_discrepancy <= 1e-7, "{:?}", r);
    }

    #[test]
    fn norm_test_in_both_directions(seed in any::<u64>()) {
        let ps = tuple(seed);
        let meet = meet_nullspace(&ps, &cfg()).unwrap();
        let chk = glb_norm_check(&ps, &meet, &cfg()).unwrap();
        prop_assert!(chk.is_glb && chk.norm < 1.0 - 1e-8);
        if !meet.is_zero() {
            // drop one basis direction of the meet
            let k = meet.rank() - 1;
            let basis = meet.range_basis().columns(0, k).into_owned();
            let r = Projection::from_orthonormal_basis(&basis).unwrap();
            let chk = glb_norm_check(&ps, &r, &cfg()).unwrap();
            prop_assert!(chk.below_all && chk.norm >= 1.0 - 1e-8 && !chk.is_glb);
        }
    }

    #[test]
    fn criterion_agrees_with_meet(seed in any::<u64>()) {
        let ps = tuple(seed);
        let rep = glb_criterion(&ps, &cfg()).unwrap();
        prop_assert_eq!(rep.criterion_holds, rep.sup_sigma_excl_one < 1.0 - cfg().eig_cluster);
        prop_assert!((rep.norm_gap * rep.norm_gap - rep.sup_sigma_excl_one).abs() <= 1e-8);
    }

    #[test]
    fn separativity_on_noncomparable_pairs(seed in any::<u64>()) {
        let (p, q) = pair(seed, 8);
        prop_assume!(!leq(&p, &q, &cfg()).unwrap());
        let w = separativity_witness(&p, &q, &cfg()).unwrap();
        prop_assert!(check_witness(&p, &q, &w, &cfg()).unwrap().all());
    }

    #[test]
    fn nonzero_meet_agrees_with_norm(seed in any::<u64>()) {
        let (p, q) = pair(seed, 10);
        prop_assert!(nonzero_meet_check(&p, &q, &cfg()).unwrap().agrees);
    }

    #[test]
    fn leq_is_a_partial_order(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let n = rng.random_range(3..=10);
        let a = random::proper_projection(&mut rng, n);
        let b = random::projection_containing(&mut rng, a.range_basis(), 1.min(n - a.rank()));
        let c = random::projection_containing(&mut rng, b.range_basis(), 1.min(n - b.rank()));
        prop_assert!(leq(&a, &a, &cfg()).unwrap());
        prop_assert!(leq(&a, &b, &cfg()).unwrap() && leq(&b, &c, &cfg()).unwrap());
        prop_assert!(leq(&a, &c, &cfg()).unwrap());
        if leq(&b, &a, &cfg()).unwrap() {
            prop_assert!(a.distance(&b) <= 1e-7);
        }
    }

    #[test]
    fn states_on_common_vectors_are_centred(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let n = rng.random_range(2..=10);
        let ps = random::tuple_with_common(&mut rng, n, 3, 1);
        let v = ps[0].range_basis().column(0).into_owned();
        let meet = meet_nullspace(&ps, &cfg()).unwrap();
        let u = meet.range_basis().column(0).into_owned();
        let rho = DensityState::pure(&u).unwrap();
        let r = state_centred_check(&rho, &ps).unwrap();
        prop_assert!(r.all_one && r.consistent);
        let rho = DensityState::pure(&v).unwrap();
        prop_assert!(state_centred_check(&rho, &ps).unwrap().consistent);
    }
}

#[test]
fn commuting_family_meet_is_product() {
    let mut rng = random::rng(5);
    let ps = random::commuting_family(&mut rng, 6, 3);
    let m = meet_spectral(&ps, &cfg()).unwrap();
    let prod = projection::product(&ps);
    assert!((m.matrix() - prod).norm() < 1e-10);
}

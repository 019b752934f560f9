mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toricmld::exactmath::{rat, rat_int};
use toricmld::mld::verify_result;
use toricmld::witness::{check_eps_delta, find_witness};
use toricmld::{
    generic_fiber, mld, mld_bruteforce, mld_cyclic, validate, Lattice, Rat, ToricVariety,
};

fn one() -> Rat {
    rat(1, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_equivalence(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::random_variety(&mut rng, d, 60, 2);
        let fast = mld(&x).unwrap();
        match mld_bruteforce(&x, &one(), 2_000_000) {
            Ok(slow) => prop_assert!(fast.agrees_with(&slow), "{:?} vs {:?}", fast, slow),
            Err(toricmld::Error::TooLarge(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn witness_certificate(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::random_variety(&mut rng, d, 200, 3);
        let res = mld(&x).unwrap();
        prop_assert!(verify_result(&x, &res).unwrap());
        prop_assert!(res.value > Rat::from_integer(0.into()));
    }

    #[test]
    fn unimodular_invariance(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::random_variety(&mut rng, d, 200, 3);
        let u = common::random_unimodular(&mut rng, d);
        let y = x.transform(&u).unwrap();
        prop_assert_eq!(mld(&x).unwrap().value, mld(&y).unwrap().value);
    }

    #[test]
    fn finer_lattice_lowers_mld(seed in any::<u64>(), d in 1usize..=3, q in 2i64..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::random_variety(&mut rng, d, 40, 2);
        let extra: Vec<Rat> = (0..d).map(|_| rat(rand::Rng::gen_range(&mut rng, 0..q), q)).collect();
        let mut gens = x.lattice().basis().row_vecs();
        gens.push(extra);
        let finer = Lattice::from_generators(d, &gens).unwrap();
        // ℓ is unchanged only if every ray stays primitive
        let same_rays = x.fan().rays().iter().all(|r| finer.is_primitive(r).unwrap());
        prop_assume!(same_rays);
        let y = ToricVariety::new(finer, x.fan().clone()).unwrap();
        prop_assert!(mld(&y).unwrap().value <= mld(&x).unwrap().value);
    }

    #[test]
    fn log_discrepancy_is_homogeneous(seed in any::<u64>(), d in 1usize..=4, k in 1i64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::random_variety(&mut rng, d, 200, 3);
        for r in x.fan().rays() {
            prop_assert_eq!(x.log_discrepancy(r).unwrap().value().cloned(), Some(one()));
        }
        let w = mld(&x).unwrap().witness;
        let kw: Vec<Rat> = w.iter().map(|c| c * rat_int(k)).collect();
        let a = x.log_discrepancy(&w).unwrap().value().unwrap().clone();
        let b = x.log_discrepancy(&kw).unwrap().value().unwrap().clone();
        prop_assert_eq!(b, a * rat_int(k));
    }

    #[test]
    fn two_over_r(r in 2i64..400) {
        prop_assert_eq!(mld_cyclic(r, &[1, 1]).unwrap(), rat(2, r));
    }

    #[test]
    fn construction_validates(seed in any::<u64>(), m in 1usize..=2, n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(mfs) = common::random_standard_mfs(&mut rng, m, n, 300) {
            let report = validate(&mfs);
            prop_assert!(report.overall, "{:?}", report.failed());
            let fiber = generic_fiber(&mfs).unwrap();
            let total: Rat = fiber.barycentric_of_origin.iter().sum();
            prop_assert_eq!(total, one());
            prop_assert!(mld(&fiber.z).unwrap().value >= mld(mfs.x()).unwrap().value);
        }
    }

    #[test]
    fn eps_delta_and_witness(seed in any::<u64>(), m in 1usize..=2, n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(mfs) = common::random_standard_mfs(&mut rng, m, n, 300) {
            let cert = check_eps_delta(&mfs).unwrap();
            prop_assert!(cert.holds);
            let delta = cert.mld_y.value.clone();
            let report = find_witness(&mfs, &delta).unwrap();
            prop_assert!(report.bound_satisfied);
            prop_assert!(mfs.x().lattice().contains(&report.q).unwrap());
            prop_assert_eq!(
                mfs.x().log_discrepancy(&report.q).unwrap().value().cloned(),
                Some(report.ld_q.clone())
            );
        }
    }
}

use std::path::Path;

use proptest::prelude::*;

use amalgams::amalgam::{check_iso, oracle_isomorphic};
use amalgams::catalog;
use amalgams::classify::{amalgam_of, classify, cocycle_of};
use amalgams::coefficients::coefficient_system_of;
use amalgams::cohomology::{h1, Cochains};
use amalgams::interface::{amalgam_to_json, read_amalgam_str};
use amalgams::Budgets;

const SMALL: [&str; 7] = [
    "trivial-edge",
    "trivial-triangle",
    "cyclic-edge",
    "cyclic-chain",
    "dihedral-klein",
    "dihedral-quaternion",
    "fano",
];

fn fixture(name: &str) -> amalgams::amalgam::Amalgam {
    catalog::fixtures().into_iter().find(|(n, _)| *n == name).unwrap().1
}

#[test]
fn fixture_files_match_catalog() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for (name, g) in catalog::fixtures() {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(text, amalgam_to_json(&g) + "\n", "{name}");
    }
    let g = catalog::linear_flag_amalgam(4, Budgets::default().max_order).unwrap();
    let text = std::fs::read_to_string(dir.join("sl4-2.json")).unwrap();
    assert_eq!(text, amalgam_to_json(&g) + "\n");
}

#[test]
fn representatives_pairwise_non_isomorphic() {
    let b = Budgets::default();
    for name in SMALL {
        let cl = classify(&fixture(name), &b).unwrap();
        let reps = cl.representatives();
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                let oracle = oracle_isomorphic(&reps[i], &reps[j], &b).unwrap();
                assert_eq!(oracle.is_some(), i == j, "{name} {i} {j}");
                if let Some(iso) = oracle {
                    check_iso(&reps[i], &reps[j], &iso).unwrap();
                }
            }
        }
    }
}

#[test]
fn every_cocycle_locates_to_its_class() {
    let b = Budgets::default();
    for name in SMALL {
        let g0 = fixture(name);
        let cl = classify(&g0, &b).unwrap();
        let h = cl.cohomology();
        for (i, z) in h.cocycles().iter().enumerate() {
            let g = amalgam_of(z, &g0, cl.system()).unwrap();
            let (class, iso) = cl.locate(&g).unwrap();
            assert_eq!(class, h.class_of_index(i), "{name}");
            check_iso(&g, &cl.representatives()[class], &iso).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cocycle_amalgams_survive_json(which in 0usize..13, pick in any::<prop::sample::Index>()) {
        let (_, g0) = catalog::fixtures().swap_remove(which);
        let b = Budgets::default();
        let sys = coefficient_system_of(&g0, &b).unwrap();
        let h = h1(&sys, &b).unwrap();
        let z = pick.get(h.cocycles());
        let g = amalgam_of(z, &g0, &sys).unwrap();
        let back = read_amalgam_str(&amalgam_to_json(&g), b.max_order).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(&cocycle_of(&back, &g0, &sys).unwrap(), z);
    }

    #[test]
    fn acted_cocycles_stay_in_class(which in 0usize..13, seed in any::<u64>()) {
        use rand::SeedableRng;
        let (_, g0) = catalog::fixtures().swap_remove(which);
        let b = Budgets::default();
        let sys = coefficient_system_of(&g0, &b).unwrap();
        let c = Cochains::new(&sys);
        let h = h1(&sys, &b).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let z = &h.cocycles()[(seed as usize) % h.cocycles().len()];
        let f = c.random0(&mut rng);
        prop_assert_eq!(h.class_of(&c.act(z, &f)), h.class_of(z));
    }
}

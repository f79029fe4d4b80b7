use std::collections::BTreeSet;

use proptest::prelude::*;

use embedkit::lattice_cone::LatticeVector;
use embedkit::parabolic::{
    ce_finite_g_orbits, ce_orbit_subdiagrams, ce_smooth, sigma_cone, ParabolicData,
};
use embedkit::root_system::{GroupType, DEFAULT_ORBIT_CAP};

const GROUPS: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "A1xA1", "A2xB2",
];

fn g(s: &str) -> GroupType {
    s.parse().unwrap()
}

fn data(s: &str, levi: &[usize]) -> ParabolicData {
    ParabolicData::new(g(s), levi.iter().copied().collect()).unwrap()
}

#[test]
fn spec_examples() {
    let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<usize>>();
    assert_eq!(
        ce_orbit_subdiagrams(&data("A1", &[])),
        vec![set(&[]), set(&[1])]
    );
    assert_eq!(ce_orbit_subdiagrams(&data("A2", &[])).len(), 4);
    assert_eq!(
        ce_orbit_subdiagrams(&data("A2", &[1])),
        vec![set(&[]), set(&[2]), set(&[1, 2])]
    );
    let lv = |v: &[i64]| LatticeVector::from_i64(v);
    assert_eq!(
        sigma_cone(&data("A1", &[]), DEFAULT_ORBIT_CAP)
            .unwrap()
            .rays(),
        vec![lv(&[1])]
    );
    assert!(!sigma_cone(&data("A1", &[1]), DEFAULT_ORBIT_CAP)
        .unwrap()
        .is_pointed());
    assert_eq!(
        sigma_cone(&data("A2", &[1]), DEFAULT_ORBIT_CAP)
            .unwrap()
            .rays(),
        vec![lv(&[-1, 1]), lv(&[1, 0])]
    );
    assert!(ce_smooth(&data("A2", &[1])));
    assert!(!ce_smooth(&data("A2", &[])));
    assert!(ce_smooth(&data("A1", &[1])));
    assert!(ce_finite_g_orbits(&data("A1", &[])));
    assert!(!ce_finite_g_orbits(&data("A2", &[1])));
    assert!(ce_finite_g_orbits(&data("A2xA1", &[1, 2])));
    assert!(sigma_cone(&data("A4", &[1, 2, 3, 4]), 5).is_err());
}

#[test]
fn extreme_levis() {
    for &s in GROUPS {
        let r = g(s).semisimple_rank();
        let all: Vec<usize> = (1..=r).collect();
        assert_eq!(ce_orbit_subdiagrams(&data(s, &[])).len(), 1 << r, "{s}");
        assert_eq!(
            ce_orbit_subdiagrams(&data(s, &all)),
            vec![BTreeSet::new()],
            "{s}"
        );
        assert!(ce_finite_g_orbits(&data(s, &[])), "{s}");

        let chamber = sigma_cone(&data(s, &[]), DEFAULT_ORBIT_CAP).unwrap();
        let units: Vec<LatticeVector> = (0..r)
            .map(|i| {
                LatticeVector::from_i64(&(0..r).map(|j| i64::from(i == j)).collect::<Vec<_>>())
            })
            .collect();
        assert_eq!(
            chamber.facet_normals(),
            units.iter().rev().cloned().collect::<Vec<_>>(),
            "{s}"
        );
        let whole = sigma_cone(&data(s, &all), DEFAULT_ORBIT_CAP).unwrap();
        assert!(
            whole.is_solid() && whole.facet_normals().is_empty() && whole.lineality().len() == r,
            "{s}"
        );
    }
}

fn group_and_two_levis() -> impl Strategy<Value = (&'static str, BTreeSet<usize>, BTreeSet<usize>)>
{
    prop::sample::select(GROUPS).prop_flat_map(|s| {
        let r = g(s).semisimple_rank();
        let subset = move || prop::collection::btree_set(1..=r, 0..=r);
        (Just(s), subset(), subset())
    })
}

proptest! {
    #[test]
    fn larger_levis_have_fewer_orbits((s, a, b) in group_and_two_levis()) {
        let small: BTreeSet<usize> = a.intersection(&b).copied().collect();
        let big = ce_orbit_subdiagrams(&ParabolicData::new(g(s), a.clone()).unwrap());
        let few = ce_orbit_subdiagrams(&ParabolicData::new(g(s), small).unwrap());
        prop_assert!(big.iter().all(|x| few.contains(x)));
        prop_assert!(big.contains(&BTreeSet::new()));
    }

    #[test]
    fn sigma_contains_the_chamber((s, a, _b) in group_and_two_levis()) {
        let d = ParabolicData::new(g(s), a).unwrap();
        let chamber = sigma_cone(&ParabolicData::new(g(s), BTreeSet::new()).unwrap(), DEFAULT_ORBIT_CAP).unwrap();
        let sigma = sigma_cone(&d, DEFAULT_ORBIT_CAP).unwrap();
        prop_assert!(chamber.rays().iter().all(|r| sigma.contains(r)));
        prop_assert!(sigma.is_solid());
    }
}

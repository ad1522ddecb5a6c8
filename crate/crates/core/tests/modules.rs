use annfit::grouprings::{FiniteAbelianGroup, IntElement};
use annfit::linalg::IntGrMatrix;
use annfit::modules::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GUARD: u32 = DEFAULT_GUARD;

fn corpus(seed: u64, per_group: usize) -> Vec<(PresentedModule, ConcreteModule)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for l in [2u64, 3] {
        for g in small_groups(12) {
            for _ in 0..per_group {
                out.push(random_presented_module(&g, l, 6, &mut rng).unwrap());
            }
        }
    }
    out
}

#[test]
fn fitting_between_annihilator_powers() {
    for (pm, m) in corpus(1, 2) {
        assert!(fitting_in_annihilator(&pm, GUARD).unwrap(), "{m:?}");
        assert!(annihilator_power_in_fitting(&pm, GUARD).unwrap(), "{m:?}");
    }
}

#[test]
fn fitting_presentation_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (pm, m) in corpus(2, 1) {
        assert!(presentation_independence(&pm, GUARD, &mut rng).unwrap(), "{m:?}");
    }
}

#[test]
fn fitting_surjection_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (_, m) in corpus(3, 1) {
        assert!(surjection_monotonicity(&m, GUARD, &mut rng).unwrap(), "{m:?}");
    }
}

#[test]
fn duality_laws() {
    for (_, m) in corpus(4, 1) {
        let d = duality(&m, GUARD).unwrap();
        assert!(d.passed(), "{m:?} {d:?}");
        assert_eq!(d.fitting.is_some(), m.group().sylow_is_cyclic(m.prime()));
    }
}

#[test]
fn annihilator_matches_oracle() {
    let mut checked = 0;
    for (_, m) in corpus(5, 1) {
        if let Some(ok) = oracle_agreement(&m, GUARD).unwrap() {
            assert!(ok, "{m:?}");
            checked += 1;
        }
    }
    assert!(checked > 5);
}

#[test]
fn fitting_of_cyclic_module_is_annihilator() {
    // R/(r): the single column of relations generates both ideals.
    let g = FiniteAbelianGroup::cyclic(2);
    let rows = vec![
        vec![IntElement::from_ints(&g, &[4, 0])],
        vec![IntElement::from_ints(&g, &[-3, 1])],
    ];
    let pm = PresentedModule::new(2, IntGrMatrix::from_int_rows(&g, rows).unwrap()).unwrap();
    let m = pm.realize().unwrap();
    let n = fitting_precision(1, m.exponent(), GUARD);
    let f = fitting_ideal(&pm, n, GUARD).unwrap();
    let a = annihilator(&m, n, GUARD).unwrap();
    assert!(f.same_ideal(&a).unwrap());
    assert!(a.contains(&IntElement::from_ints(&g, &[1, 1])).unwrap());
}

#[test]
fn zero_module_has_unit_ideals() {
    let g = FiniteAbelianGroup::cyclic(3);
    let pm = PresentedModule::new(3, IntGrMatrix::identity(&g, &annfit::grouprings::Integers, 2)).unwrap();
    let f = fitting_ideal(&pm, 10, GUARD).unwrap();
    assert!(f.is_unit_ideal());
    let a = annihilator(&pm.realize().unwrap(), 10, GUARD).unwrap();
    assert!(a.is_unit_ideal());
}

#[test]
fn min_generators_examples() {
    let g = FiniteAbelianGroup::trivial();
    let m = ConcreteModule::trivial_cyclic(3, &g, 1);
    assert_eq!(min_generators(&m), 1);
    assert_eq!(min_generators(&m.direct_sum(&m).unwrap()), 2);
    let w = annfit::complexes::augmentation_kernel_module(3).unwrap();
    assert_eq!(min_generators(&w), 2);
}

use annfit::complexes::*;
use annfit::grouprings::{det_class_equals, DetClass, FiniteAbelianGroup, IntElement, RatElement};
use annfit::linalg::{IntGrMatrix, SolveChoice};
use annfit::modules::annihilator;
use annfit::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c2() -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(2)
}

fn el(g: &FiniteAbelianGroup, c: &[i64]) -> IntElement {
    IntElement::from_ints(g, c)
}

fn scalar_complex(l: u64, n: i64) -> PerfectComplex {
    let g = FiniteAbelianGroup::trivial();
    let d = IntGrMatrix::from_int_rows(&g, vec![vec![el(&g, &[n])]]).unwrap();
    PerfectComplex::two_term(l, d).unwrap()
}

fn class(g: &FiniteAbelianGroup, l: u64, c: &[(i64, i64)]) -> DetClass {
    DetClass::new(RatElement::from_ratios(g, c), l).unwrap()
}

fn c2_cone() -> PerfectComplex {
    let g = c2();
    let spec = ConeSpec::diagonal(2, &g, 1, 1, el(&g, &[3, 0]), el(&g, &[3, 0]));
    generate_cone(&spec, 0).unwrap()
}

fn trivial_cone() -> (ConeSpec, PerfectComplex) {
    let g = FiniteAbelianGroup::trivial();
    let spec = ConeSpec::diagonal(2, &g, 1, 1, el(&g, &[3]), el(&g, &[5]));
    let c = generate_cone(&spec, 0).unwrap();
    (spec, c)
}

#[test]
fn validate_multiplication_by_two() {
    let c = scalar_complex(2, 2);
    let diag = validate_complex(&c, true).unwrap();
    assert_eq!(diag.homology[0].module.factors(), &[1]);
    assert!(diag.homology[1].module.is_zero());
    assert!(diag.l_power.iter().all(|&b| b));
}

#[test]
fn validate_rejects_non_complex() {
    let g = FiniteAbelianGroup::trivial();
    let one = IntGrMatrix::from_int_rows(&g, vec![vec![el(&g, &[1])]]).unwrap();
    let r = PerfectComplex::new(2, g, vec![1, 1, 1], vec![one.clone(), one]);
    assert!(matches!(r, Err(Error::NotAComplex(_))));
}

#[test]
fn validate_rejects_infinite_homology() {
    let c = scalar_complex(2, 0);
    assert!(matches!(validate_complex(&c, false), Err(Error::NotFinite)));
}

#[test]
fn homology_of_scalar_two() {
    let h = homology(&scalar_complex(2, 2)).unwrap();
    assert_eq!(h.h0().factors(), &[1]);
    assert!(h.h1().is_zero());
    assert_eq!(h.m0, 1);
}

#[test]
fn homology_of_c2_cone() {
    let c = c2_cone();
    assert_eq!(c.d(2).get(1, 0), &el(&c2(), &[-2, 0]));
    assert_eq!(c.d(1).get(0, 0), &el(&c2(), &[-2, 0]));
    let h = homology(&c).unwrap();
    assert_eq!(h.h0().abelian_invariants(), vec![1, 1]);
    assert_eq!(h.h1().abelian_invariants(), vec![1, 1]);
    assert_eq!((h.m0, h.m1), (1, 1));
}

#[test]
fn homology_of_identity_is_zero() {
    let h = homology(&scalar_complex(3, 1)).unwrap();
    assert!(h.h0().is_zero() && h.h1().is_zero());
}

#[test]
fn truncate_pads_two_term() {
    let c = scalar_complex(2, 2);
    let t = truncate(&c).unwrap();
    assert_eq!(t.ranks(), &[1, 1, 0]);
    assert_eq!(t.d(1), c.d(1));
}

#[test]
fn truncate_fixes_three_term() {
    let c = c2_cone();
    assert_eq!(truncate(&c).unwrap(), c);
}

#[test]
fn truncate_strips_acyclic_top() {
    let c = c2_cone();
    let g = c2();
    let longer = c.attach_acyclic(&el(&g, &[1, 2])).unwrap();
    assert_eq!(longer.length(), 3);
    let t = truncate(&longer).unwrap();
    assert_eq!(t.length(), 2);
    let (a, b) = (homology(&c).unwrap(), homology(&t).unwrap());
    assert_eq!(a.h0().abelian_invariants(), b.h0().abelian_invariants());
    assert_eq!(a.h1().abelian_invariants(), b.h1().abelian_invariants());
    assert!(det_class_equals(&det_class(&c).unwrap(), &det_class(&longer).unwrap()).unwrap());
}

#[test]
fn dualize_swaps_degrees() {
    let c = truncate(&scalar_complex(2, 2)).unwrap();
    let d = dualize(&c).unwrap();
    assert_eq!(d.ranks(), &[0, 1, 1]);
    let h = homology(&d).unwrap();
    assert!(h.h0().is_zero());
    assert_eq!(h.h1().factors(), &[1]);
}

#[test]
fn dualize_applies_tau() {
    let g = FiniteAbelianGroup::cyclic(4);
    let x = el(&g, &[0, 1, 0, 0]);
    let d = IntGrMatrix::from_int_rows(&g, vec![vec![x]]).unwrap();
    let c = truncate(&PerfectComplex::two_term(2, d).unwrap()).unwrap();
    let dual = dualize(&c).unwrap();
    assert_eq!(dual.d(2).get(0, 0), &el(&g, &[0, 0, 0, 1]));
}

#[test]
fn dualize_cone_homology_is_dual() {
    let c = c2_cone();
    let h = homology(&c).unwrap();
    let hd = homology(&dualize(&c).unwrap()).unwrap();
    let pairs = [
        (hd.h0().clone(), h.h1().pontryagin_dual()),
        (hd.h1(), h.h0().pontryagin_dual()),
    ];
    for (a, b) in pairs {
        assert_eq!(a.abelian_invariants(), b.abelian_invariants());
        let (ia, ib) = (annihilator(&a, 12, 8).unwrap(), annihilator(&b, 12, 8).unwrap());
        assert!(ia.same_ideal(&ib).unwrap());
    }
}

#[test]
fn det_class_of_scalar() {
    let g = FiniteAbelianGroup::trivial();
    let d = det_class(&scalar_complex(3, 3)).unwrap();
    assert!(det_class_equals(&d, &class(&g, 3, &[(1, 3)])).unwrap());
    assert!(!det_class_equals(&d, &class(&g, 3, &[(1, 1)])).unwrap());
}

#[test]
fn det_class_three_plus_g() {
    let g = c2();
    let d = IntGrMatrix::from_int_rows(&g, vec![vec![el(&g, &[3, 1])]]).unwrap();
    let c = PerfectComplex::two_term(2, d).unwrap();
    let h = homology(&c).unwrap();
    assert_eq!(h.h0().log_order(), 3);
    let x = det_class(&c).unwrap();
    let inv = RatElement::from_ratios(&g, &[(3, 8), (-1, 8)]);
    assert!(det_class_equals(&x, &DetClass::new(inv, 2).unwrap()).unwrap());
}

#[test]
fn det_class_of_trivial_cone() {
    let (spec, c) = trivial_cone();
    let g = FiniteAbelianGroup::trivial();
    let x = det_class(&c).unwrap();
    assert!(det_class_equals(&x, &class(&g, 2, &[(1, 2)])).unwrap());
    assert!(det_class_equals(&x, &spec.expected_class().unwrap()).unwrap());
    assert!(!det_class_equals(&x, &class(&g, 2, &[(2, 1)])).unwrap());
}

#[test]
fn cone_with_equal_twists_is_trivial() {
    let x = det_class(&c2_cone()).unwrap();
    assert!(x.is_trivial());
}

#[test]
fn cone_rejects_trivial_twist() {
    let g = c2();
    let spec = ConeSpec::diagonal(2, &g, 1, 1, el(&g, &[1, 0]), el(&g, &[1, 0]));
    assert!(matches!(generate_cone(&spec, 0), Err(Error::NotInvertible)));
}

#[test]
fn seeded_cone_keeps_class() {
    let g = FiniteAbelianGroup::cyclic(3);
    let spec = ConeSpec::diagonal(3, &g, 2, 2, el(&g, &[4, 3, 0]), el(&g, &[4, 0, 3]));
    let plain = det_class(&generate_cone(&spec, 0).unwrap()).unwrap();
    for seed in 1..4 {
        let c = generate_cone(&spec, seed).unwrap();
        assert!(det_class_equals(&det_class(&c).unwrap(), &plain).unwrap());
    }
    assert!(det_class_equals(&plain, &spec.expected_class().unwrap()).unwrap());
}

#[test]
fn randomized_splittings_agree() {
    let g = c2();
    let spec = ConeSpec::diagonal(2, &g, 2, 1, el(&g, &[1, 2]), el(&g, &[3, 4]));
    let c = generate_cone(&spec, 7).unwrap();
    let base = det_class(&c).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let x = det_class_with(&c, SolveChoice::Randomized(&mut rng)).unwrap();
        assert!(det_class_equals(&x, &base).unwrap());
    }
}

#[test]
fn verify_scalar_four() {
    let r = verify_theorem_2_4(&scalar_complex(2, 4), 8).unwrap();
    assert!(r.passed);
    assert_eq!(r.homology.m0, 1);
    assert!(r.checks.iter().any(|c| c.direction == 0));
}

#[test]
fn verify_trivial_cone() {
    let (_, c) = trivial_cone();
    let r = verify_theorem_2_4(&c, 8).unwrap();
    assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
    assert_eq!(r.chain_verdict, Some(true));
    assert!(r.checks.iter().any(|c| c.direction == 1));
}

#[test]
fn reversed_orientation_fails() {
    // Opposite orientation: det^{-1} t_1 = (1/2) 2 = 1, which is not in (4).
    let (_, c) = trivial_cone();
    let flipped = det_class(&c).unwrap().inverse();
    let h = homology(&c).unwrap();
    let ann0 = annihilator(h.h0(), 12, 8).unwrap();
    let t1 = el(&FiniteAbelianGroup::trivial(), &[2]);
    let y = flipped.inverse().rep().mul_ref(&t1.to_rational());
    assert!(!ann0.contains_rational(&y).unwrap());
}

#[test]
fn verify_c2_cone() {
    let r = verify_theorem_2_4(&c2_cone(), 8).unwrap();
    assert!(r.passed);
    assert!(r.det_class.is_trivial());
    assert!(r.checks.iter().any(|c| c.target == TargetIdeal::Fitting));
}

#[test]
fn verify_random_cones() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (l, n) in [(2u64, 2u64), (3, 3), (2, 4), (3, 1)] {
        let g = FiniteAbelianGroup::cyclic(n);
        for t in 0..3 {
            let spec = random_cone_spec(&g, l, 3, 2, &mut rng);
            let c = generate_cone(&spec, t + 1).unwrap();
            let r = verify_theorem_2_4(&c, 8).unwrap();
            assert!(r.passed, "l={l} n={n} {:?}", r.failures().collect::<Vec<_>>());
            assert!(det_class_equals(&r.det_class, &spec.expected_class().unwrap()).unwrap());
        }
    }
}

#[test]
fn prop28_l3() {
    let r = prop_2_8_witness(3, 8).unwrap();
    assert_eq!((r.fitting_valuation, r.dual_fitting_valuation), (2, 1));
    assert!(r.annihilator_duality);
    assert!(!r.fitting_duality);
}

#[test]
fn prop28_l5() {
    let r = prop_2_8_witness(5, 8).unwrap();
    assert!(r.as_expected(), "{r:?}");
}

use std::collections::BTreeSet;

use annfit::complexes::*;
use annfit::grouprings::*;
use annfit::io::{parse_element, parse_json, to_canonical_string, AnyElement};
use annfit::linalg::*;
use annfit::modules::*;
use annfit::stickelberger::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GROUPS: &[&str] = &["1", "C2", "C3", "C4", "C2xC2", "C5", "C6"];

fn group() -> impl Strategy<Value = FiniteAbelianGroup> {
    prop::sample::select(GROUPS).prop_map(|s| FiniteAbelianGroup::parse(s).unwrap())
}

fn element_of(g: &FiniteAbelianGroup, bound: i64) -> impl Strategy<Value = IntElement> {
    let g = g.clone();
    prop::collection::vec(-bound..=bound, g.order()).prop_map(move |c| IntElement::from_ints(&g, &c))
}

fn triple() -> impl Strategy<Value = (IntElement, IntElement, IntElement)> {
    group().prop_flat_map(|g| (element_of(&g, 5), element_of(&g, 5), element_of(&g, 5)))
}

fn int_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntegerMatrix::from_i64(&rows))
    })
}

fn gr_matrix(g: &FiniteAbelianGroup, rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntGrMatrix> {
    let g2 = g.clone();
    prop::collection::vec(prop::collection::vec(element_of(g, bound), cols), rows)
        .prop_map(move |entries| IntGrMatrix::from_int_rows(&g2, entries).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((x, y, z) in triple()) {
        prop_assert_eq!(x.mul_ref(&y), y.mul_ref(&x));
        prop_assert_eq!(x.mul_ref(&y).mul_ref(&z), x.mul_ref(&y.mul_ref(&z)));
        prop_assert_eq!(x.mul_ref(&y.add_ref(&z)), x.mul_ref(&y).add_ref(&x.mul_ref(&z)));
        let one = IntElement::one(x.group(), &Integers);
        prop_assert_eq!(x.mul_ref(&one), x.clone());
        prop_assert_eq!(x.augmentation() * y.augmentation(), x.mul_ref(&y).augmentation());
    }

    #[test]
    fn tau_is_an_involutive_automorphism((x, y, _) in triple()) {
        prop_assert_eq!(x.mul_ref(&y).tau(), x.tau().mul_ref(&y.tau()));
        prop_assert_eq!(x.add_ref(&y).tau(), x.tau().add_ref(&y.tau()));
        prop_assert_eq!(x.tau().tau(), x.clone());
        prop_assert_eq!(x.tau().augmentation(), x.augmentation());
    }

    #[test]
    fn characters_are_ring_homomorphisms((x, y, _) in triple(), pick in any::<prop::sample::Index>()) {
        let g = x.group().clone();
        let chars = CharacterSpec::all(&g);
        let chi = &chars[pick.index(chars.len())];
        let (xr, yr) = (x.to_rational(), y.to_rational());
        let cx = evaluate_character(&xr, chi);
        let cy = evaluate_character(&yr, chi);
        prop_assert_eq!(evaluate_character(&xr.mul_ref(&yr), chi), cx.mul(&cy));
        prop_assert_eq!(evaluate_character(&xr.add_ref(&yr), chi), cx.add(&cy));
        let one = RatElement::one(&g, &Rationals);
        prop_assert_eq!(evaluate_character(&one, chi), CyclotomicValue::constant(g.exponent(), BigRational::one()));
    }

    #[test]
    fn integral_units_are_closed_under_inverse((x, _, _) in triple(), l in prop::sample::select(vec![2u64, 3, 5])) {
        let xr = x.to_rational();
        if xr.is_invertible() && xr.is_integral_unit(l).unwrap() {
            prop_assert!(xr.inverse().unwrap().is_integral_unit(l).unwrap());
        }
    }

    #[test]
    fn det_class_equality_is_an_equivalence(
        (x, y, z) in triple(),
        l in prop::sample::select(vec![2u64, 3]),
        e in 0u32..3,
    ) {
        let g = x.group().clone();
        let lx = |v: &IntElement| {
            IntElement::one(&g, &Integers).add_ref(&v.scale(&BigInt::from(l))).to_rational()
        };
        let base = IntElement::scalar(&g, &Integers, BigInt::from(l).pow(e))
            .add_ref(&x.scale(&BigInt::from(l).pow(e + 1)))
            .to_rational();
        prop_assume!(base.is_invertible());
        let a = DetClass::new(base.clone(), l).unwrap();
        let b = DetClass::new(base.mul_ref(&lx(&y)), l).unwrap();
        let c = DetClass::new(base.mul_ref(&lx(&z)), l).unwrap();
        let other = DetClass::new(base.scale(&BigRational::from_integer(l.into())), l).unwrap();
        prop_assert!(det_class_equals(&a, &a).unwrap());
        prop_assert_eq!(det_class_equals(&a, &b).unwrap(), det_class_equals(&b, &a).unwrap());
        prop_assert!(det_class_equals(&a, &b).unwrap() && det_class_equals(&b, &c).unwrap());
        prop_assert!(det_class_equals(&a, &c).unwrap());
        prop_assert!(!det_class_equals(&a, &other).unwrap());
        prop_assert_eq!(det_class_equals(&b, &other).unwrap(), det_class_equals(&other, &b).unwrap());
    }
}

fn minors_gcd(a: &IntegerMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(a.rows(), k) {
        for cols in subsets(a.cols(), k) {
            g = g.gcd(&a.select_rows(&rows).select_cols(&cols).det());
        }
    }
    g
}

/// All `sum c_i r_i mod l^n`.
fn span(rows: &[Vec<BigInt>], cols: usize, modulus: u64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    out.insert(vec![0u64; cols]);
    for r in rows {
        let r: Vec<u64> = r
            .iter()
            .map(|x| x.mod_floor(&BigInt::from(modulus)).try_into().unwrap())
            .collect();
        let current: Vec<Vec<u64>> = out.iter().cloned().collect();
        for v in current {
            let mut w = v.clone();
            for _ in 1..modulus {
                for (wi, ri) in w.iter_mut().zip(&r) {
                    *wi = (*wi + ri) % modulus;
                }
                out.insert(w.clone());
            }
        }
    }
    out
}

fn residue_rows(max: usize) -> impl Strategy<Value = ((u64, u32), Vec<Vec<BigInt>>)> {
    prop::sample::select(vec![(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]).prop_flat_map(move |(l, n)| {
        let m = l.pow(n) as i64;
        (
            Just((l, n)),
            prop::collection::vec(prop::collection::vec((0..m).prop_map(BigInt::from), 3), 1..=max),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_exact(a in int_matrix(3, 4, 6)) {
        let s = smith_normal_form(&a);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let expected = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.get(i, j), &expected);
            }
        }
        prop_assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(a.cols()));
        let r = s.rank;
        prop_assert_eq!(r, a.rank());
        if r > 0 {
            let prod: BigInt = s.invariant_factors().iter().product();
            prop_assert_eq!(prod.abs(), minors_gcd(&a, r));
        }
        prop_assert!(s.invariant_factors().windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn howell_is_canonical(((l, n), a) in residue_rows(3), t in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 4)) {
        let m = l.pow(n);
        // b = a combined with random rows, plus a permutation.
        let mut b: Vec<Vec<BigInt>> = t
            .iter()
            .map(|c| (0..3).map(|j| a.iter().zip(c).map(|(r, &ci)| &r[j] * ci).sum()).collect())
            .collect();
        b.extend(a.iter().rev().cloned());
        let (ha, hb) = (howell_form(&a, 3, l, n), howell_form(&b, 3, l, n));
        let (sa, sb) = (span(&a, 3, m), span(&b, 3, m));
        prop_assert_eq!(&sa, &sb);
        prop_assert_eq!(ha.rows(), hb.rows());
        prop_assert_eq!(span(ha.rows(), 3, m), sa);
    }

    #[test]
    fn howell_distinguishes_spans(((l, n), a) in residue_rows(3), b in prop::collection::vec(prop::collection::vec(0i64..8, 3), 1..=3)) {
        let b: Vec<Vec<BigInt>> = b.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let m = l.pow(n);
        let same_span = span(&a, 3, m) == span(&b, 3, m);
        prop_assert_eq!(same_span, howell_form(&a, 3, l, n).rows() == howell_form(&b, 3, l, n).rows());
    }
}

fn small_group() -> impl Strategy<Value = FiniteAbelianGroup> {
    prop::sample::select(&["1", "C2", "C3", "C4", "C2xC2"][..]).prop_map(|s| FiniteAbelianGroup::parse(s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn berkowitz_matches_cofactor((a, _) in (small_group(), 1usize..=4).prop_flat_map(|(g, k)| (gr_matrix(&g, k, k, 3), Just(k)))) {
        prop_assert_eq!(a.det(), a.det_cofactor());
    }

    #[test]
    fn solve_is_exact_or_certified(
        (a, x, b) in (small_group(), 1usize..=3, 1usize..=3).prop_flat_map(|(g, r, c)| {
            (gr_matrix(&g, r, c, 2), gr_matrix(&g, c, 1, 2), gr_matrix(&g, r, 1, 2))
        }),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ar = a.to_rational();
        let ax = a.mul(&x).to_rational();
        let sol = equivariant_solve(&ar, &ax, SolveChoice::Randomized(&mut rng));
        prop_assert!(sol.is_some());
        prop_assert_eq!(ar.mul(&sol.unwrap()), ax);

        let br = b.to_rational();
        match equivariant_solve(&ar, &br, SolveChoice::Canonical) {
            Some(y) => prop_assert_eq!(ar.mul(&y), br),
            None => {
                let ea = a.expand_integer();
                prop_assert!(ea.hstack(&b.expand_integer()).rank() > ea.rank());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn module_ideal_relations(gi in 0usize..5, l in prop::sample::select(vec![2u64, 3]), seed in any::<u64>()) {
        let g = FiniteAbelianGroup::parse(["C2", "C3", "C4", "C2xC2", "C6"][gi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pm, m) = random_presented_module(&g, l, 4, &mut rng).unwrap();
        prop_assert!(fitting_in_annihilator(&pm, 8).unwrap());
        prop_assert!(annihilator_power_in_fitting(&pm, 8).unwrap());
        prop_assert!(presentation_independence(&pm, 8, &mut rng).unwrap());
        prop_assert!(surjection_monotonicity(&m, 8, &mut rng).unwrap());
        prop_assert!(duality(&m, 8).unwrap().passed());
        prop_assert_ne!(oracle_agreement(&m, 8).unwrap(), Some(false));
    }
}

/// `v_l` of the norm of `x`, i.e. `log_l |Z_l[G] / x|`.
fn log_coker(x: &IntElement, l: u64) -> u32 {
    let m = IntGrMatrix::from_int_rows(x.group(), vec![vec![x.clone()]]).unwrap();
    let mut d = m.expand_integer().det().abs();
    let mut v = 0;
    let l = BigInt::from(l);
    while !d.is_zero() && (&d % &l).is_zero() {
        d /= &l;
        v += 1;
    }
    v
}

fn cone_case() -> impl Strategy<Value = (ConeSpec, PerfectComplex)> {
    (0usize..5, prop::sample::select(vec![2u64, 3]), any::<u64>()).prop_map(|(gi, l, seed)| {
        let g = FiniteAbelianGroup::parse(["C2", "C3", "C4", "C6", "C2xC2"][gi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_cone_spec(&g, l, 3, 2, &mut rng);
        let c = generate_cone(&spec, seed).unwrap();
        (spec, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cones_are_complexes_with_expected_size((spec, c) in cone_case()) {
        for i in 2..=c.length() {
            prop_assert!(c.d(i - 1).mul(c.d(i)).is_zero());
        }
        let h = homology(&c).unwrap();
        let one = IntElement::one(&spec.group, &Integers);
        let c1 = spec.b1 as i64 * log_coker(&one.sub_ref(&spec.u1), spec.l) as i64;
        let c0 = spec.b0 as i64 * log_coker(&one.sub_ref(&spec.u0), spec.l) as i64;
        let (h0, h1) = (h.h0().log_order() as i64, h.h1().log_order() as i64);
        // Euler characteristic of the long exact sequence for 1 - alpha.
        prop_assert_eq!(h0 - h1, c0 - c1);
        if spec.d.is_zero() {
            prop_assert_eq!(h0 + h1, c0 + c1);
        }
    }

    #[test]
    fn det_class_laws((spec, c) in cone_case(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = det_class(&c).unwrap();
        let a = det_class_with(&c, SolveChoice::Randomized(&mut rng)).unwrap();
        prop_assert!(det_class_equals(&a, &base).unwrap());
        let t = truncate(&c).unwrap();
        prop_assert!(det_class_equals(&det_class(&t).unwrap(), &base).unwrap());
        let dual = det_class(&dualize(&t).unwrap()).unwrap();
        prop_assert!(det_class_equals(&dual, &base.tau().inverse()).unwrap());
        prop_assert!(det_class_equals(&base, &spec.expected_class().unwrap()).unwrap());
    }

    #[test]
    fn verifier_accepts_cones((_, c) in cone_case()) {
        let r = verify_theorem_2_4(&c, 8).unwrap();
        prop_assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
    }
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bernoulli_polynomial_identities(x in rational(), n in 1usize..=8) {
        let t = BernoulliTable::new(n);
        let one = BigRational::one();
        // B_n(x + 1) - B_n(x) = n x^{n-1}
        let diff = t.polynomial(n, &(&x + &one)) - t.polynomial(n, &x);
        prop_assert_eq!(diff, BigRational::from_integer(n.into()) * num_traits::pow(x.clone(), n - 1));
        // B_n(1 - x) = (-1)^n B_n(x)
        let sign = if n % 2 == 0 { one.clone() } else { -one };
        prop_assert_eq!(t.polynomial(n, &(BigRational::one() - &x)), sign * t.polynomial(n, &x));
    }

    #[test]
    fn partial_zeta_is_periodic(f in 1u64..=30, a in -60i64..=60, n in 2usize..=5) {
        let shifted = partial_zeta(f, a + f as i64, n);
        match partial_zeta(f, a, n) {
            Ok(z) => prop_assert_eq!(shifted.unwrap(), z),
            Err(_) => prop_assert!(shifted.is_err()),
        }
    }

    #[test]
    fn theta_characters_hold(f in 1u64..=40, n in 2usize..=4, real in any::<bool>()) {
        let k = if real && f > 2 { AbelianFieldSpec::real_subfield(f) } else { AbelianFieldSpec::cyclotomic(f) };
        let t = theta_element(&k, n).unwrap();
        prop_assert!(character_checks(&t).unwrap().iter().all(CharacterCheck::passed));
    }

    #[test]
    fn element_text_round_trip((x, _, _) in triple(), den in 1i64..=6, domain in 0u8..3) {
        let text = match domain {
            0 => to_canonical_string(&AnyElement::Int(x.clone()).to_json()),
            1 => to_canonical_string(&AnyElement::Residue(x.reduce(3, 2)).to_json()),
            _ => {
                let r = x.to_rational().scale(&BigRational::new(1.into(), den.into()));
                to_canonical_string(&AnyElement::Rat(r).to_json())
            }
        };
        let back = parse_element(&parse_json(&text).unwrap(), "element").unwrap();
        prop_assert_eq!(to_canonical_string(&back.to_json()), text);
    }
}

use annfit::complexes::{generate_cone, random_cone_spec, PerfectComplex};
use annfit::grouprings::FiniteAbelianGroup;
use annfit::io::*;
use annfit::modules::{annihilator, random_presented_module};
use annfit::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cone(seed: u64) -> PerfectComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
    let spec = random_cone_spec(&g, 3, 2, 2, &mut rng);
    generate_cone(&spec, seed).unwrap()
}

#[test]
fn complex_round_trip_is_byte_identical() {
    for seed in 0..5 {
        let c = cone(seed);
        let text = to_canonical_string(&complex_to_json(&c));
        let back = read_complex(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_canonical_string(&complex_to_json(&back)), text);
    }
}

#[test]
fn complex_is_revalidated() {
    let text = "{\"group\":[],\"l\":2,\"ranks\":[1,1,1],\"differentials\":[\
        {\"rows\":1,\"cols\":1,\"entries\":[[{\"group\":[],\"domain\":\"int\",\"coeffs\":[1]}]]},\
        {\"rows\":1,\"cols\":1,\"entries\":[[{\"group\":[],\"domain\":\"int\",\"coeffs\":[1]}]]}]}";
    assert!(matches!(read_complex(text), Err(Error::NotAComplex(_))));
}

#[test]
fn matrix_entry_errors_name_the_path() {
    let text = "{\"group\":[2],\"l\":2,\"ranks\":[1,1],\"differentials\":[\
        {\"rows\":1,\"cols\":1,\"entries\":[[{\"group\":[2],\"domain\":\"int\",\"coeffs\":[1]}]]}]}";
    match read_complex(text) {
        Err(Error::Parse(e)) => assert_eq!(e.field, "complex.differentials[0].entries[0][0].coeffs"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn module_and_ideal_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = FiniteAbelianGroup::cyclic(6);
    for _ in 0..5 {
        let (_, m) = random_presented_module(&g, 3, 4, &mut rng).unwrap();
        let text = to_canonical_string(&module_to_json(&m));
        let back = read_module(&text).unwrap();
        assert_eq!(to_canonical_string(&module_to_json(&back)), text);

        let ann = annihilator(&m, 12, 8).unwrap();
        let text = to_canonical_string(&ideal_to_json(&ann));
        let parsed = parse_ideal(&parse_json(&text).unwrap()).unwrap();
        assert_eq!(to_canonical_string(&ideal_to_json(&parsed)), text);
        assert!(parsed.same_ideal(&ann).unwrap());
    }
}

#[test]
fn unknown_keys_rejected() {
    let text = "{\"l\":2,\"group\":[],\"factors\":[],\"actions\":[],\"extra\":1}";
    match read_module(text) {
        Err(Error::Parse(e)) => assert_eq!(e.field, "module.extra"),
        other => panic!("{other:?}"),
    }
}

use proptest::prelude::*;
use ratlin::fixtures;
use ratlin::minbases::{minimal_basis, Side};
use ratlin_cli::schema::{
    json_rat_matrix, rat_matrix, BasisFile, JsonMatrix, PencilFile, PsmFile,
};

#[test]
fn system_matrix_round_trip() {
    for p in [fixtures::first_example(), fixtures::second_example()] {
        let text = serde_json::to_string(&PsmFile::of(&p)).unwrap();
        let back: PsmFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.system().unwrap(), p);
    }
}

#[test]
fn pencil_round_trip() {
    let p = fixtures::l_eps_eta(2, 1);
    let l = ratlin::verify::LinearPsm::from_system(&p).unwrap();
    let text = serde_json::to_string(&PencilFile::of(&l.pencil, None)).unwrap();
    let back: PencilFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.pencil().unwrap(), l.pencil);
}

#[test]
fn basis_round_trip_and_index_check() {
    let g = fixtures::g_example5();
    let b = minimal_basis(&g, Side::Right);
    let file = BasisFile::of(&b);
    let back: BasisFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
    assert_eq!(back.value().unwrap().basis, b.basis);
    let mut wrong = file.clone();
    wrong.indices = vec![3];
    assert!(wrong.value().is_err());
}

#[test]
fn integers_and_strings_both_parse() {
    let a: JsonMatrix = serde_json::from_str(r#"[[[1, "1/2"], {"num": [1], "den": [0, 1]}]]"#).unwrap();
    let b: JsonMatrix = serde_json::from_str(r#"[[["1", "1/2"], {"num": ["1"], "den": ["0", "1"]}]]"#).unwrap();
    assert_eq!(rat_matrix(&a).unwrap(), rat_matrix(&b).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn rational_matrix_round_trip(seed in any::<u64>()) {
        let g = fixtures::random_bounded(&mut fixtures::rng(seed), 2, 3, 2, 4);
        let text = serde_json::to_string(&json_rat_matrix(&g)).unwrap();
        let back: JsonMatrix = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(rat_matrix(&back).unwrap(), g);
    }
}

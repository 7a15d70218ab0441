//! parse(serialize(x)) = x, byte-identical text, and faithful rebuilding of
//! the in-memory filtered complex.

use obstruct_cli::commands::{fixture, gersten};
use obstruct_cli::format::{InstanceFile, Metadata};
use obstruct_core::filtcomplex::FilteredComplex;
use obstruct_core::fixtures::{self, random_filtered, RandomShape, NAMES};
use proptest::prelude::*;

fn same_filtered(a: &FilteredComplex, b: &FilteredComplex) -> bool {
    let (ca, cb) = (a.complex(), b.complex());
    a.p_min() == b.p_min()
        && a.p_max() == b.p_max()
        && ca.lo() == cb.lo()
        && ca.groups() == cb.groups()
        && ca.differentials().iter().zip(cb.differentials()).all(|(x, y)| x.matrix() == y.matrix())
        && a.levels() == b.levels()
}

fn check_text(file: &InstanceFile) {
    let text = file.to_text();
    let parsed = InstanceFile::parse(&text).expect("own output parses");
    assert_eq!(&parsed, file);
    assert_eq!(parsed.to_text(), text);
}

fn check_rebuild(file: &InstanceFile) {
    let inst = file.build().expect("own output builds");
    let again = InstanceFile::new(inst.metadata.clone(), &inst.filtered, inst.layer.as_ref().map(|(m, r)| (m, r)));
    assert_eq!(&again, file);
}

#[test]
fn fixtures_round_trip() {
    for name in NAMES {
        let file = fixture(name).unwrap();
        check_text(&file);
        check_rebuild(&file);
        let fx = fixtures::named(name).unwrap();
        assert!(same_filtered(&file.build().unwrap().filtered, &fx.filtered), "{name}");
    }
}

#[test]
fn gersten_instances_round_trip() {
    for (space, q, n, bound, mod2, pair) in [
        ("projective_line", 3, 1, 3, false, false),
        ("projective_line", 5, 2, 2, false, true),
        ("affine_line", 3, 2, 2, true, false),
        ("affine_line", 7, 0, 1, false, false),
    ] {
        let file = gersten(space, q, n, bound, mod2, pair).unwrap();
        check_text(&file);
        check_rebuild(&file);
    }
}

#[test]
fn hand_written_file_reaches_a_fixed_point() {
    let text = std::fs::read_to_string(format!("{}/tests/corpus/valid.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let file = InstanceFile::parse(&text).unwrap();
    check_text(&file);
    check_rebuild(&file);
}

#[test]
fn integers_beyond_64_bits_survive() {
    let text = fixture("z4").unwrap().to_text().replacen("\"entries\": [4]", "\"entries\": [340282366920938463463374607431768211456]", 1);
    let file = InstanceFile::parse(&text).unwrap();
    assert_eq!(file.to_text(), text);
    assert!(text.contains("340282366920938463463374607431768211456"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_instances_round_trip(seed in any::<u64>(), d in proptest::option::of(-3i64..4), s in proptest::option::of(0i64..4)) {
        let f = random_filtered(&mut fixtures::rng(seed), RandomShape::default());
        let md = Metadata { name: Some(format!("random {seed}")), d, s, twist: Some("O(1)".to_string()) };
        let file = InstanceFile::new(md, &f, None);
        check_text(&file);
        let built = file.build().unwrap();
        prop_assert!(same_filtered(&built.filtered, &f));
        let again = InstanceFile::new(built.metadata.clone(), &built.filtered, None);
        prop_assert_eq!(again, file);
    }
}

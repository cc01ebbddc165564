use std::fs;
use std::path::PathBuf;

use ballspace::symbolic::{nest_verdict, prefix_consistency, prefix_nested, NestDescriptor};
use ballspace::{Config, Execution, FiniteBallSpace, Property};
use proptest::prelude::*;
use serde_json::Value;

fn fixture_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "fixtures"].iter().collect()
}

fn load(name: &str) -> String {
    fs::read_to_string(fixture_dir().join(name)).unwrap()
}

#[test]
fn every_fixture_is_json() {
    let mut count = 0;
    for entry in fs::read_dir(fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        serde_json::from_str::<Value>(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        count += 1;
    }
    assert!(count >= 10);
}

#[test]
fn witness_space_round_trips() {
    let s: FiniteBallSpace = serde_json::from_str(&load("witness_space.json")).unwrap();
    let back: FiniteBallSpace = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
    let r = s.classify(&Config::default()).unwrap();
    assert!(!r.s2c && !r.s3c && !r.s4c);
    assert!(r.witness(Property::S2c).is_some());
}

#[test]
fn nest_fixtures_decode_to_known_verdicts() {
    let cases = [
        ("nest_final_segments.json", true),
        ("nest_prime_gap_union.json", true),
        ("nest_lex_all_ones.json", true),
        ("nest_lex_eventually_zero.json", false),
    ];
    for (name, empty) in cases {
        let d: NestDescriptor = serde_json::from_str(&load(name)).unwrap();
        assert_eq!(nest_verdict(&d).unwrap().empty, empty, "{name}");
        let back: NestDescriptor = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}

fn pair() -> impl Strategy<Value = (i64, i64)> {
    (-3i64..=3, 1i64..=3)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn lex_nests_are_nested_and_consistent(
        prefix in proptest::collection::vec(pair(), 0..4),
        period in proptest::collection::vec(pair(), 1..3),
    ) {
        let d = NestDescriptor::lex(&prefix, &period);
        prop_assert!(prefix_nested(&d, 24, Execution::Sequential).unwrap());
        let v = nest_verdict(&d).unwrap();
        prop_assert_eq!(v.empty, period.iter().any(|&(n, _)| n != 0));
        prop_assert!(prefix_consistency(&d, 24, Execution::Sequential).unwrap().consistent);
    }
}

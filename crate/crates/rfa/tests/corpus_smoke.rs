//! Runs the checked-in fuzz corpus seeds through the same assertions the
//! fuzz targets make, so the invariants are exercised on every test run
//! even without a fuzzing toolchain.

use std::fs;
use std::path::PathBuf;

use rfa::core::Alphabet;
use rfa::io::{emit_machine, parse_machine};
use rfa::regex::{to_dfa, Regex};
use rfa::sim::run_one_way;

fn corpus_dir(target: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target)
}

#[test]
fn machine_seeds_parse_validate_and_round_trip() {
    let dir = corpus_dir("parse_machine");
    let mut count = 0;
    for entry in fs::read_dir(&dir).expect("corpus directory present") {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let machine = parse_machine(&text)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        rfa::core::validate(&machine).unwrap();
        let emitted = emit_machine(&machine).unwrap();
        assert_eq!(
            parse_machine(&emitted).unwrap(),
            machine,
            "{}: round trip",
            path.display()
        );
        for input in ["", "a", "ab", "bba"] {
            let _ = rfa::sim::accepts(&machine, input);
        }
        count += 1;
    }
    assert!(count >= 8, "corpus has {count} machine seeds");
}

#[test]
fn regex_seeds_agree_across_both_matchers() {
    let dir = corpus_dir("parse_regex");
    let alphabet = Alphabet::new(vec!['a', 'b']).unwrap();
    let mut count = 0;
    for entry in fs::read_dir(&dir).expect("corpus directory present") {
        let path = entry.unwrap().path();
        let pattern = fs::read_to_string(&path).unwrap();
        let re = Regex::parse(&pattern)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let dfa = to_dfa(&re, &alphabet);
        for input in ["", "a", "b", "ab", "ba", "aab", "abab", "abba"] {
            assert_eq!(
                re.matches(input),
                run_one_way(&dfa, input, 0).unwrap().verdict.is_accept(),
                "{} on {input:?}",
                path.display()
            );
        }
        count += 1;
    }
    assert!(count >= 5, "corpus has {count} regex seeds");
}

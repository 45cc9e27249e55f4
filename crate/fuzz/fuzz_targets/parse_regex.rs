#![no_main]

//! Fuzzes the regex parser and the two membership routes behind it: the
//! derivative matcher and the compiled DFA must agree on short strings.

use libfuzzer_sys::fuzz_target;

use rfa::core::Alphabet;
use rfa::regex::{to_dfa, Regex};
use rfa::sim::run_one_way;

fuzz_target!(|data: &[u8]| {
    let Ok(pattern) = std::str::from_utf8(data) else {
        return;
    };
    if pattern.len() > 64 {
        return;
    }
    let Ok(re) = Regex::parse(pattern) else {
        return;
    };
    let alphabet = Alphabet::new(vec!['a', 'b']).unwrap();
    let dfa = to_dfa(&re, &alphabet);
    for input in ["", "a", "b", "ab", "ba", "aab", "abab"] {
        let by_derivative = re.matches(input);
        let by_dfa = run_one_way(&dfa, input, 0).unwrap().verdict.is_accept();
        assert_eq!(by_derivative, by_dfa, "matcher split on {input:?}");
    }
});

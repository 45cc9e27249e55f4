#![no_main]

//! Fuzzes the machine-file parser. A successful parse must survive
//! validation without panicking, re-emit canonically, and re-parse to the
//! same machine; any divergence is a crash for the fuzzer to report.

use libfuzzer_sys::fuzz_target;

use rfa::io::{emit_machine, parse_machine};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(machine) = parse_machine(text) else {
        return;
    };
    // structural sanity of everything the parser accepts
    let _ = rfa::core::validate(&machine);
    let emitted = emit_machine(&machine).expect("parsed machines serialize");
    let reparsed = parse_machine(&emitted).expect("canonical text parses");
    assert_eq!(reparsed, machine, "round trip changed the machine");
    // short simulations must terminate (loop detection) and not panic
    for input in ["", "a", "ab", "bba"] {
        let _ = rfa::sim::accepts(&machine, input);
    }
});

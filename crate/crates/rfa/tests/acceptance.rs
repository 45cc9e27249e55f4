//! Acceptance suite: every verification contract of the library, one test
//! per criterion, each printing a PASS line (visible with `--nocapture`).
//!
//! Run with: cargo test -p rfa --test acceptance -- --nocapture

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use rfa::analysis::{
    bounded_equiv, exact_equiv, pin_falsify, search_model, strings_up_to, LanguageOracle,
    SearchClass, SearchOutcome, SearchParams,
};
use rfa::core::{
    validate, validate_one_way, validate_sweeping, AcceptanceMode, Alphabet, Machine,
    OneWayClass, OneWayMachine, SweepingClass, SweepingMachine,
};
use rfa::io::{emit_machine, parse_machine, to_dot};
use rfa::sim::{accepts, run_one_way, run_sweeping, Verdict};
use rfa::transforms::{
    both_sides_to_one_side, dfa_minimize, srfa_to_mrfa, srfa_to_three_pass,
    srfa_to_two_pass_both_sides, sweeping_to_one_way, to_dfa, unary_mrfa_to_srfa,
};
use rfa::witnesses::{default_suite, witness, WitnessSpec};

fn sweeping_witnesses() -> Vec<WitnessSpec> {
    default_suite()
        .into_iter()
        .filter(|w| matches!(w.machine, Machine::Sweeping(_)))
        .collect()
}

fn mrfa_witnesses() -> Vec<WitnessSpec> {
    default_suite()
        .into_iter()
        .filter(|w| match &w.machine {
            Machine::OneWay(m) => m.declared_class == OneWayClass::Mrfa,
            _ => false,
        })
        .collect()
}

fn as_sweeping(w: &WitnessSpec) -> &SweepingMachine {
    match &w.machine {
        Machine::Sweeping(m) => m,
        _ => panic!("expected sweeping witness"),
    }
}

fn normalized(m: &SweepingMachine) -> SweepingMachine {
    if m.acceptance_mode == AcceptanceMode::BothSides {
        both_sides_to_one_side(m).unwrap()
    } else {
        m.clone()
    }
}

#[test]
fn c01_witness_fidelity() {
    for w in default_suite() {
        let reference = Machine::OneWay(w.reference_dfa());
        let exact = exact_equiv(&w.machine, &reference).unwrap();
        assert!(
            exact.equivalent,
            "{}: differs from reference at {:?}",
            w.name, exact.counterexample
        );
        let bounded = bounded_equiv(&w.machine, &reference, 12).unwrap();
        assert!(bounded.equivalent, "{}: bounded disagreement", w.name);
    }
    println!("criterion 1 (witness fidelity): PASS");
}

#[test]
fn c02_both_sides_elimination() {
    let mut checked = 0;
    for w in sweeping_witnesses() {
        let m = as_sweeping(&w);
        if m.acceptance_mode != AcceptanceMode::BothSides {
            continue;
        }
        checked += 1;
        let out = both_sides_to_one_side(m).unwrap();
        // exact count: new forward states are exactly the accepting
        // backward states
        assert_eq!(
            out.plus_states.len(),
            m.plus_states.len() + m.accepting_minus.len(),
            "{}: forward state count",
            w.name
        );
        // language preservation, simulated directly on both machines and
        // checked exactly against the independent reference
        let bounded = bounded_equiv(&w.machine, &Machine::Sweeping(out.clone()), 12).unwrap();
        assert!(bounded.equivalent, "{}: {:?}", w.name, bounded.counterexample);
        let exact = exact_equiv(
            &Machine::Sweeping(out),
            &Machine::OneWay(w.reference_dfa()),
        )
        .unwrap();
        assert!(exact.equivalent, "{}: {:?}", w.name, exact.counterexample);
    }
    assert!(checked >= 2, "both-sides witnesses present");
    println!("criterion 2 (acceptance-side elimination): PASS");
}

/// Direct two-sweep oracle: where does the machine's first pass over `s`
/// end, and for every backward state, where does the double sweep from the
/// last symbol end. Steps the transition tables directly, independently of
/// the behavior-composition machinery under test.
fn first_pass_end(m: &SweepingMachine, symbols: &[usize]) -> Option<usize> {
    let mut p = m.left_from_initial?;
    for &s in symbols {
        p = m.delta_plus[s][p]?;
    }
    Some(p)
}

fn double_sweep(m: &SweepingMachine, symbols: &[usize], q: usize) -> Option<usize> {
    let mut cur = q;
    for &s in symbols.iter().rev() {
        cur = m.delta_minus[s][cur]?;
    }
    let mut p = m.delta_left[cur]?;
    for &s in symbols {
        p = m.delta_plus[s][p]?;
    }
    Some(p)
}

/// Renders a behavior pair the way the construction names its states.
fn pair_name(m: &SweepingMachine, p: usize, f: &[(usize, usize)]) -> String {
    let body = f
        .iter()
        .map(|(q, t)| format!("{}→{}", m.minus_states[*q], m.plus_states[*t]))
        .collect::<Vec<_>>()
        .join(",");
    format!("({},{{{}}})", m.plus_states[p], body)
}

#[test]
fn c03_srfa_to_mrfa() {
    for w in sweeping_witnesses() {
        let m = normalized(as_sweeping(&w));
        let mrfa = srfa_to_mrfa(&m).unwrap();

        // (a) the construction yields a reversible machine
        let report = validate_one_way(&mrfa).unwrap();
        assert!(report.is_empty(), "{}: {:?}", w.name, report.violations);
        assert_eq!(mrfa.declared_class, OneWayClass::Mrfa);

        // (b) exact language equivalence
        let exact = exact_equiv(&w.machine, &Machine::OneWay(mrfa.clone())).unwrap();
        assert!(exact.equivalent, "{}: {:?}", w.name, exact.counterexample);

        // (d) reachability matches the independent two-sweep oracle
        for s in strings_up_to(&m.alphabet, 8) {
            let symbols = m.alphabet.encode(&s).unwrap();
            let mut reached = BTreeSet::new();
            for &q0 in &mrfa.initials {
                let t = run_one_way(&mrfa, &s, q0).unwrap();
                if t.configurations.len() == s.chars().count() + 1 {
                    reached.insert(t.configurations.last().unwrap().state.clone());
                }
            }
            let mut expected = BTreeSet::new();
            if let Some(p_end) = first_pass_end(&m, &symbols) {
                let total: Vec<(usize, usize)> = (0..m.minus_states.len())
                    .filter_map(|q| double_sweep(&m, &symbols, q).map(|t| (q, t)))
                    .collect();
                for mask in 0u32..(1 << total.len()) {
                    let f: Vec<(usize, usize)> = total
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, pair)| *pair)
                        .collect();
                    if f.iter().any(|(_, t)| *t == p_end) {
                        continue; // p ∈ Im f is not a state
                    }
                    expected.insert(pair_name(&m, p_end, &f));
                }
            }
            assert_eq!(reached, expected, "{} on {:?}", w.name, s);
        }
    }

    // (c) exact counts for the (aa)* ∪ {a} machine
    let w = witness("even-or-a", None).unwrap();
    let mrfa = srfa_to_mrfa(as_sweeping(&w)).unwrap();
    assert_eq!(mrfa.states.len(), 6, "full state space");
    assert_eq!(mrfa.initials.len(), 2, "left-turn restrictions");

    println!("criterion 3 (sweeping to multi-initial construction): PASS");
}

#[test]
fn c04_three_pass_normal_form() {
    for w in sweeping_witnesses() {
        let input = as_sweeping(&w);
        let norm = normalized(input);
        let three = srfa_to_three_pass(input).unwrap();
        let two = srfa_to_two_pass_both_sides(input).unwrap();

        let report = validate_sweeping(&three).unwrap();
        assert!(report.is_empty(), "{}: {:?}", w.name, report.violations);
        assert!(validate_sweeping(&two).unwrap().is_empty(), "{}", w.name);

        let exact = exact_equiv(&w.machine, &Machine::Sweeping(three.clone())).unwrap();
        assert!(exact.equivalent, "{}: {:?}", w.name, exact.counterexample);

        for s in strings_up_to(&three.alphabet, 10) {
            let reference = accepts(&w.machine, &s).unwrap();
            let t3 = run_sweeping(&three, &s).unwrap();
            assert_eq!(t3.verdict.is_accept(), reference, "{} three-pass {s:?}", w.name);
            assert!(t3.pass_count <= 3, "{} {s:?}: {} passes", w.name, t3.pass_count);
            let t2 = run_sweeping(&two, &s).unwrap();
            assert_eq!(t2.verdict.is_accept(), reference, "{} two-pass {s:?}", w.name);
            assert!(t2.pass_count <= 2, "{} {s:?}: {} passes", w.name, t2.pass_count);
        }

        // state-space bounds in terms of the (normalized) input sizes
        let np = norm.plus_states.len();
        let nm = norm.minus_states.len();
        let pi = rfa::funcmath::count_partial_injections(nm, np) as usize;
        assert!(three.plus_states.len() <= np * pi + (1usize << nm), "{}", w.name);
        assert!(three.minus_states.len() <= pi * (1usize << nm), "{}", w.name);
    }
    println!("criterion 4 (three-pass normal form): PASS");
}

#[test]
fn c05_unary_mrfa_to_srfa() {
    // the catalog two-initial machine for (aa)* ∪ {a}
    let w = witness("even-or-a-mrfa", None).unwrap();
    let Machine::OneWay(m) = &w.machine else { panic!() };
    let out = unary_mrfa_to_srfa(m).unwrap();
    assert_eq!(out.acceptance_mode, AcceptanceMode::BothSides);
    assert_eq!(out.declared_class, SweepingClass::SRfa);
    assert!(validate_sweeping(&out).unwrap().is_empty());
    let exact = exact_equiv(&w.machine, &Machine::Sweeping(out.clone())).unwrap();
    assert!(exact.equivalent, "{:?}", exact.counterexample);
    let bounded = bounded_equiv(&w.machine, &Machine::Sweeping(out), 30).unwrap();
    assert!(bounded.equivalent, "{:?}", bounded.counterexample);

    // three initial states mixing cycle lengths 2 and 3 with a finite part:
    // (aa)* ∪ a(aaa)* ∪ {aa}
    let mixed = OneWayMachine {
        alphabet: Alphabet::new(vec!['a']).unwrap(),
        states: vec![
            "g0".into(),
            "g1".into(),
            "h0".into(),
            "h1".into(),
            "h2".into(),
            "j0".into(),
            "j1".into(),
            "j2".into(),
        ],
        initials: BTreeSet::from([0, 2, 5]),
        transitions: vec![vec![
            Some(1),
            Some(0),
            Some(3),
            Some(4),
            Some(2),
            Some(6),
            Some(7),
            None,
        ]],
        accepting: BTreeSet::from([0, 3, 7]),
        declared_class: OneWayClass::Mrfa,
    };
    assert!(validate_one_way(&mixed).unwrap().is_empty());
    let out = unary_mrfa_to_srfa(&mixed).unwrap();
    assert!(validate_sweeping(&out).unwrap().is_empty());
    // the merged cycle has lcm(2, 3) = 6 states
    assert_eq!(out.plus_states.len(), 6);
    let exact = exact_equiv(&Machine::OneWay(mixed.clone()), &Machine::Sweeping(out.clone()))
        .unwrap();
    assert!(exact.equivalent, "{:?}", exact.counterexample);
    let bounded = bounded_equiv(&Machine::OneWay(mixed.clone()), &Machine::Sweeping(out), 30)
        .unwrap();
    assert!(bounded.equivalent, "{:?}", bounded.counterexample);
    // cross-check the fixture's intended language
    let oracle = LanguageOracle::from_regex("(aa)*|a(aaa)*|aa", &mixed.alphabet).unwrap();
    for len in 0..=30 {
        let s = "a".repeat(len);
        assert_eq!(
            accepts(&Machine::OneWay(mixed.clone()), &s).unwrap(),
            oracle.contains(&s),
            "fixture mismatch at a^{len}"
        );
    }

    println!("criterion 5 (unary multi-initial to sweeping): PASS");
}

fn regex_machine(pattern: &str, symbols: &[char]) -> Machine {
    let alphabet = Alphabet::new(symbols.to_vec()).unwrap();
    Machine::OneWay(rfa::regex::to_dfa(
        &rfa::regex::Regex::parse(pattern).unwrap(),
        &alphabet,
    ))
}

#[test]
fn c06a_pin_violation_for_sigma_star_a() {
    let m = regex_machine("(a|b)*a", &['a', 'b']);
    let report = pin_falsify(&m, 3, 3, 3, None).unwrap();
    let w = report.violation.expect("violation must be found");
    assert_eq!((w.x.as_str(), w.y.as_str(), w.z.as_str()), ("", "a", ""));
    println!("criterion 6a (Pin violation for Σ*a): PASS");
}

#[test]
fn c06b_pin_clean_on_reversible_witnesses() {
    for w in mrfa_witnesses() {
        let report = pin_falsify(&w.machine, 3, 3, 3, None).unwrap();
        assert_eq!(report.violation, None, "{} wrongly falsified", w.name);
        assert!(report.exact);
    }
    println!("criterion 6b (no Pin violation on reversible witnesses): PASS");
}

// As specified, this asserts a Pin violation for a*b*. None exists: for
// x y⁺ z ⊆ a*b* the pumped block y must be a-pure or b-pure (a mixed y
// puts "ba" inside x y y z), an a-pure y forces x ∈ a* and z ∈ a*b*, a
// b-pure y forces x ∈ a*b* and z ∈ b*, and in both cases xz lands in
// a*b*. The language satisfies the condition even though it is not
// reversible, the condition being necessary but not sufficient. The
// assertion is kept faithful to the stated expectation and fails.
#[test]
fn c06c_pin_violation_for_a_star_b_star() {
    let m = regex_machine("a*b*", &['a', 'b']);
    let report = pin_falsify(&m, 3, 3, 3, None).unwrap();
    assert!(
        report.violation.is_some(),
        "expected a Pin violation for a*b*, but the language satisfies \
         x y⁺ z ⊆ L ⇒ xz ∈ L (checked exactly over all triples up to \
         3/3/3); no witness exists at any bounds"
    );
    println!("criterion 6c (Pin violation for a*b*): PASS");
}

#[test]
fn c07_bounded_separation_searches() {
    let unary = Alphabet::new(vec!['a']).unwrap();
    let binary = Alphabet::new(vec!['a', 'b']).unwrap();
    let deadline = Duration::from_secs(60);

    // (a) no small 1RFA for (aa)* ∪ {a}
    let started = Instant::now();
    let target = LanguageOracle::from_regex("(aa)*|a", &unary).unwrap();
    let outcome = search_model(
        &SearchParams {
            class: SearchClass::Rfa,
            max_states: 4,
            alphabet: unary.clone(),
            max_len: 10,
            max_initials: None,
            limit: None,
        },
        &target,
    )
    .unwrap();
    assert!(matches!(outcome, SearchOutcome::Exhausted(_)), "(a)");
    assert!(started.elapsed() < deadline);

    // positive direction: a 4-state MRFA for the same language exists
    let outcome = search_model(
        &SearchParams {
            class: SearchClass::Mrfa,
            max_states: 4,
            alphabet: unary.clone(),
            max_len: 10,
            max_initials: None,
            limit: None,
        },
        &target,
    )
    .unwrap();
    assert!(matches!(outcome, SearchOutcome::Found(_)), "(a) positive");

    // (b) no small single-accepting 1PerFA for (a³)* ∪ a(a³)*
    let started = Instant::now();
    let target = LanguageOracle::from_regex("(aaa)*|a(aaa)*", &unary).unwrap();
    let outcome = search_model(
        &SearchParams {
            class: SearchClass::PerFa1,
            max_states: 4,
            alphabet: unary.clone(),
            max_len: 9,
            max_initials: None,
            limit: None,
        },
        &target,
    )
    .unwrap();
    assert!(matches!(outcome, SearchOutcome::Exhausted(_)), "(b)");
    assert!(started.elapsed() < deadline);

    // positive direction: with two accepting states a 1PerFA exists
    let outcome = search_model(
        &SearchParams {
            class: SearchClass::PerFa,
            max_states: 4,
            alphabet: unary.clone(),
            max_len: 9,
            max_initials: None,
            limit: None,
        },
        &target,
    )
    .unwrap();
    match outcome {
        SearchOutcome::Found(m) => assert_eq!(m.accepting.len(), 2, "(b) positive"),
        SearchOutcome::Exhausted(_) => panic!("(b) positive: 3-cycle exists"),
    }

    // (c) no single-initial MRFA with ≤ 3 states for (ab)* ∪ (ab²)*
    let started = Instant::now();
    let target = LanguageOracle::from_regex("(ab)*|(abb)*", &binary).unwrap();
    let outcome = search_model(
        &SearchParams {
            class: SearchClass::Mrfa,
            max_states: 3,
            alphabet: binary.clone(),
            max_len: 8,
            max_initials: Some(1),
            limit: None,
        },
        &target,
    )
    .unwrap();
    assert!(matches!(outcome, SearchOutcome::Exhausted(_)), "(c)");
    assert!(started.elapsed() < deadline);

    // positive direction: two initial states and five states suffice
    let started = Instant::now();
    let outcome = search_model(
        &SearchParams {
            class: SearchClass::Mrfa,
            max_states: 5,
            alphabet: binary,
            max_len: 8,
            max_initials: Some(2),
            limit: None,
        },
        &target,
    )
    .unwrap();
    assert!(matches!(outcome, SearchOutcome::Found(_)), "(c) positive");
    assert!(started.elapsed() < deadline);

    println!("criterion 7 (bounded separation searches): PASS");
}

fn random_partial_injection(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<Option<usize>> {
    let mut targets: Vec<usize> = (0..n).collect();
    targets.shuffle(rng);
    (0..m)
        .map(|_| {
            if !targets.is_empty() && rng.random_bool(0.75) {
                targets.pop()
            } else {
                None
            }
        })
        .collect()
}

fn random_srfa(rng: &mut ChaCha8Rng) -> SweepingMachine {
    let np = rng.random_range(1..=3);
    let nm = rng.random_range(0..=3);
    let alphabet = Alphabet::new(vec!['a', 'b']).unwrap();
    let delta_plus: Vec<Vec<Option<usize>>> =
        (0..2).map(|_| random_partial_injection(rng, np, np)).collect();
    let delta_minus: Vec<Vec<Option<usize>>> =
        (0..2).map(|_| random_partial_injection(rng, nm, nm)).collect();
    // δ⊢ over {q₀} ∪ Q⁻, injective into Q⁺
    let left_all = random_partial_injection(rng, nm + 1, np);
    // δ⊣ injective into Q⁻
    let delta_right = random_partial_injection(rng, np, nm);
    let accepting_plus: BTreeSet<usize> = (0..np).filter(|_| rng.random_bool(0.4)).collect();
    SweepingMachine {
        alphabet,
        plus_states: (0..np).map(|i| format!("p{i}")).collect(),
        minus_states: (0..nm).map(|i| format!("q{i}")).collect(),
        initial: 0,
        delta_plus,
        delta_minus,
        left_from_initial: left_all[nm],
        delta_left: left_all[..nm].to_vec(),
        delta_right,
        accepting_plus,
        accepting_minus: BTreeSet::new(),
        acceptance_mode: AcceptanceMode::RightOnly,
        declared_class: SweepingClass::SRfa,
    }
}

fn random_sdfa(rng: &mut ChaCha8Rng) -> SweepingMachine {
    let np = rng.random_range(1..=3);
    let nm = rng.random_range(0..=3);
    let alphabet = Alphabet::new(vec!['a', 'b']).unwrap();
    let random_map = |rng: &mut ChaCha8Rng, m: usize, n: usize| -> Vec<Option<usize>> {
        (0..m)
            .map(|_| {
                if n > 0 && rng.random_bool(0.8) {
                    Some(rng.random_range(0..n))
                } else {
                    None
                }
            })
            .collect()
    };
    let left_all = random_map(rng, nm + 1, np);
    SweepingMachine {
        alphabet,
        plus_states: (0..np).map(|i| format!("p{i}")).collect(),
        minus_states: (0..nm).map(|i| format!("q{i}")).collect(),
        initial: 0,
        delta_plus: (0..2).map(|_| random_map(rng, np, np)).collect(),
        delta_minus: (0..2).map(|_| random_map(rng, nm, nm)).collect(),
        left_from_initial: left_all[nm],
        delta_left: left_all[..nm].to_vec(),
        delta_right: random_map(rng, np, nm),
        accepting_plus: (0..np).filter(|_| rng.random_bool(0.4)).collect(),
        accepting_minus: BTreeSet::new(),
        acceptance_mode: AcceptanceMode::RightOnly,
        declared_class: SweepingClass::SDfa,
    }
}

#[test]
fn c08_simulation_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let binary = Alphabet::new(vec!['a', 'b']).unwrap();
    let inputs = strings_up_to(&binary, 6);

    for i in 0..200 {
        let m = random_srfa(&mut rng);
        let report = validate_sweeping(&m).unwrap();
        assert!(report.is_empty(), "generator broke validity: {:?}", report);
        for s in &inputs {
            let t = run_sweeping(&m, s).unwrap();
            assert_ne!(t.verdict, Verdict::RejectLoop, "sRFA #{i} looped on {s:?}");
            let mut seen = BTreeSet::new();
            for c in &t.configurations {
                assert!(
                    seen.insert((c.state.clone(), c.position)),
                    "sRFA #{i} repeated a configuration on {s:?}"
                );
            }
        }
    }

    for i in 0..200 {
        let m = random_sdfa(&mut rng);
        validate_sweeping(&m).unwrap();
        for s in &inputs {
            let t = run_sweeping(&m, s).unwrap();
            let bound =
                (m.plus_states.len() + m.minus_states.len()) * (s.chars().count() + 2) + 1;
            assert!(
                t.configurations.len() <= bound,
                "sDFA #{i} trace exceeded the configuration bound on {s:?}"
            );
        }
    }
    println!("criterion 8 (simulation soundness): PASS");
}

#[test]
fn c09_determinization_matches_enumeration() {
    for w in default_suite() {
        let dfa = to_dfa(&w.machine).unwrap();
        let min = dfa_minimize(&dfa).unwrap();
        for s in strings_up_to(w.machine.alphabet(), 10) {
            assert_eq!(
                run_one_way(&min, &s, 0).unwrap().verdict.is_accept(),
                accepts(&w.machine, &s).unwrap(),
                "{} on {s:?}",
                w.name
            );
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for i in 0..100 {
        let m = random_srfa(&mut rng);
        let dfa = sweeping_to_one_way(&m).unwrap();
        let min = dfa_minimize(&dfa).unwrap();
        for s in strings_up_to(&m.alphabet, 10) {
            assert_eq!(
                run_one_way(&min, &s, 0).unwrap().verdict.is_accept(),
                run_sweeping(&m, &s).unwrap().verdict.is_accept(),
                "random sRFA #{i} on {s:?}"
            );
        }
    }
    println!("criterion 9 (determinization vs enumeration): PASS");
}

#[test]
fn c10_round_trips_and_dot_determinism() {
    let mut machines: Vec<(String, Machine)> = Vec::new();
    for w in default_suite() {
        machines.push((w.name.clone(), w.machine.clone()));
        machines.push((format!("{}:dfa", w.name), Machine::OneWay(to_dfa(&w.machine).unwrap())));
        machines.push((
            format!("{}:min", w.name),
            Machine::OneWay(dfa_minimize(&to_dfa(&w.machine).unwrap()).unwrap()),
        ));
        if let Machine::Sweeping(m) = &w.machine {
            if m.acceptance_mode == AcceptanceMode::BothSides {
                machines.push((
                    format!("{}:one-side", w.name),
                    Machine::Sweeping(both_sides_to_one_side(m).unwrap()),
                ));
            }
            machines.push((
                format!("{}:mrfa", w.name),
                Machine::OneWay(srfa_to_mrfa(m).unwrap()),
            ));
            machines.push((
                format!("{}:three-pass", w.name),
                Machine::Sweeping(srfa_to_three_pass(m).unwrap()),
            ));
            machines.push((
                format!("{}:two-pass", w.name),
                Machine::Sweeping(srfa_to_two_pass_both_sides(m).unwrap()),
            ));
        }
        if let Machine::OneWay(m) = &w.machine {
            if m.alphabet.len() == 1 && m.declared_class == OneWayClass::Mrfa {
                machines.push((
                    format!("{}:unary-srfa", w.name),
                    Machine::Sweeping(unary_mrfa_to_srfa(m).unwrap()),
                ));
            }
        }
    }

    for (name, m) in &machines {
        let text = emit_machine(m).unwrap();
        let parsed = parse_machine(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(&parsed, m, "{name}: parse∘emit is not the identity");
        assert_eq!(
            emit_machine(&parsed).unwrap(),
            text,
            "{name}: emit is not canonical"
        );
        validate(m).unwrap();
    }

    for w in default_suite() {
        let d1 = to_dot(&w.machine);
        let d2 = to_dot(&parse_machine(&emit_machine(&w.machine).unwrap()).unwrap());
        assert_eq!(d1, d2, "{}: DOT not deterministic", w.name);
    }
    println!("criterion 10 (round-trips and DOT determinism): PASS");
}

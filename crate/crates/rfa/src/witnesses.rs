//! The catalog of concrete machines used as fixtures everywhere: each
//! witness couples a machine with an independently built reference language
//! (a regular expression compiled through the internal regex engine), and
//! construction verifies the two agree exactly.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::analysis::{exact_equiv, LanguageOracle};
use crate::core::{
    AcceptanceMode, Alphabet, Machine, OneWayClass, OneWayMachine, SweepingClass, SweepingMachine,
};
use crate::regex::Regex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("unknown witness '{0}'")]
    UnknownName(String),
    #[error("witness '{name}' requires k in {min}..={max}, got {k}")]
    KOutOfRange {
        name: String,
        k: usize,
        min: usize,
        max: usize,
    },
    #[error("witness '{0}' does not take a parameter")]
    UnexpectedK(String),
    #[error("witness '{0}' requires a parameter k")]
    MissingK(String),
}

#[derive(Debug)]
pub struct WitnessSpec {
    pub name: String,
    pub k: Option<usize>,
    pub machine: Machine,
    /// Pattern in the internal regex syntax describing the same language.
    pub reference_regex: String,
}

impl WitnessSpec {
    pub fn reference_dfa(&self) -> OneWayMachine {
        let re = Regex::parse(&self.reference_regex).expect("catalog regex parses");
        crate::regex::to_dfa(&re, self.machine.alphabet())
    }

    pub fn oracle(&self) -> LanguageOracle {
        LanguageOracle::from_regex(&self.reference_regex, self.machine.alphabet())
            .expect("catalog regex parses")
    }
}

pub const PARAM_MIN: usize = 2;
pub const PARAM_MAX: usize = 6;

/// Witness names and whether they take the parameter `k`.
pub fn catalog() -> Vec<(&'static str, bool)> {
    vec![
        ("singleton-a", false),
        ("mod3-two-accept", false),
        ("even-or-a", false),
        ("even-or-a-mrfa", false),
        ("a-star-or-b-star", false),
        ("Lk-union", true),
        ("Lk-srfa", true),
    ]
}

fn unary() -> Alphabet {
    Alphabet::new(vec!['a']).unwrap()
}

fn binary() -> Alphabet {
    Alphabet::new(vec!['a', 'b']).unwrap()
}

fn singleton_a() -> (Machine, String) {
    let m = OneWayMachine {
        alphabet: unary(),
        states: vec!["u0".into(), "u1".into()],
        initials: BTreeSet::from([0]),
        transitions: vec![vec![Some(1), None]],
        accepting: BTreeSet::from([1]),
        declared_class: OneWayClass::Rfa,
    };
    (Machine::OneWay(m), "a".to_string())
}

fn mod3_two_accept() -> (Machine, String) {
    let m = OneWayMachine {
        alphabet: unary(),
        states: vec!["r0".into(), "r1".into(), "r2".into()],
        initials: BTreeSet::from([0]),
        transitions: vec![vec![Some(1), Some(2), Some(0)]],
        accepting: BTreeSet::from([0, 1]),
        declared_class: OneWayClass::PerFa,
    };
    (Machine::OneWay(m), "(aaa)*|a(aaa)*".to_string())
}

/// The sweeping machine for (aa)* ∪ {a}: a forward a-cycle on {p0, p1}
/// accepting even lengths in p0, a right turn from p1 into q0, one backward
/// step q0 → q1 and a left turn q1 → p1 that lets the second forward pass
/// accept exactly the one-letter string.
fn even_or_a() -> (Machine, String) {
    let m = SweepingMachine {
        alphabet: unary(),
        plus_states: vec!["p0".into(), "p1".into()],
        minus_states: vec!["q0".into(), "q1".into()],
        initial: 0,
        delta_plus: vec![vec![Some(1), Some(0)]],
        delta_minus: vec![vec![Some(1), None]],
        left_from_initial: Some(0),
        delta_left: vec![None, Some(1)],
        delta_right: vec![None, Some(0)],
        accepting_plus: BTreeSet::from([0]),
        accepting_minus: BTreeSet::new(),
        acceptance_mode: AcceptanceMode::RightOnly,
        declared_class: SweepingClass::SRfa,
    };
    (Machine::Sweeping(m), "(aa)*|a".to_string())
}

fn even_or_a_mrfa() -> (Machine, String) {
    let m = OneWayMachine {
        alphabet: unary(),
        states: vec!["e0".into(), "e1".into(), "f0".into(), "f1".into()],
        initials: BTreeSet::from([0, 2]),
        transitions: vec![vec![Some(1), Some(0), Some(3), None]],
        accepting: BTreeSet::from([0, 3]),
        declared_class: OneWayClass::Mrfa,
    };
    (Machine::OneWay(m), "(aa)*|a".to_string())
}

fn a_star_or_b_star() -> (Machine, String) {
    let m = OneWayMachine {
        alphabet: binary(),
        states: vec!["x".into(), "y".into()],
        initials: BTreeSet::from([0, 1]),
        transitions: vec![vec![Some(0), None], vec![None, Some(1)]],
        accepting: BTreeSet::from([0, 1]),
        declared_class: OneWayClass::Mrfa,
    };
    (Machine::OneWay(m), "a*|b*".to_string())
}

/// MRFA^k for ⋃_{i=1}^{k} (abⁱ)*: one cycle by the string abⁱ per initial
/// state.
fn lk_union(k: usize) -> (Machine, String) {
    let mut states = Vec::new();
    let mut initials = BTreeSet::new();
    let mut accepting = BTreeSet::new();
    let mut a_row = Vec::new();
    let mut b_row = Vec::new();
    for i in 1..=k {
        let base = states.len();
        initials.insert(base);
        accepting.insert(base);
        for j in 0..=i {
            states.push(format!("c{i}_{j}"));
        }
        // a: entry step of the cycle
        a_row.push(Some(base + 1));
        a_row.extend(std::iter::repeat_n(None, i));
        // b: walk the bs, closing back to the entry
        b_row.push(None);
        for j in 1..i {
            b_row.push(Some(base + j + 1));
        }
        b_row.push(Some(base));
    }
    let m = OneWayMachine {
        alphabet: binary(),
        states,
        initials,
        transitions: vec![a_row, b_row],
        accepting,
        declared_class: OneWayClass::Mrfa,
    };
    let regex = (1..=k)
        .map(|i| format!("(a{})*", "b".repeat(i)))
        .collect::<Vec<_>>()
        .join("|");
    (Machine::OneWay(m), regex)
}

/// Both-sides sRFA for ⋃_{i=0}^{k−1} (abⁱ)* b aⁱ: the first pass idles, the
/// backward pass counts the trailing as into r_i, jumps on the rightmost b
/// into the cycle s{i}_·, checks the prefix is (abⁱ)* and accepts at the
/// left end-marker in s{i}_0.
fn lk_srfa(k: usize) -> (Machine, String) {
    let mut minus_states: Vec<String> = (0..k).map(|i| format!("r{i}")).collect();
    let mut s_index = vec![0usize; k]; // start of each s{i}_· block
    for i in 0..k {
        s_index[i] = minus_states.len();
        for j in 0..=i {
            minus_states.push(format!("s{i}_{j}"));
        }
    }
    let nm = minus_states.len();
    let mut a_row = vec![None; nm];
    let mut b_row = vec![None; nm];
    let mut accepting_minus = BTreeSet::new();
    for i in 0..k {
        if i + 1 < k {
            a_row[i] = Some(i + 1); // δ_a⁻(r_i) = r_{i+1}
        }
        b_row[i] = Some(s_index[i]); // δ_b⁻(r_i) = s{i}_0
        for j in 0..i {
            b_row[s_index[i] + j] = Some(s_index[i] + j + 1); // s{i}_j → s{i}_{j+1}
        }
        a_row[s_index[i] + i] = Some(s_index[i]); // δ_a⁻(s{i}_i) = s{i}_0
        accepting_minus.insert(s_index[i]);
    }
    let m = SweepingMachine {
        alphabet: binary(),
        plus_states: vec!["q0".into()],
        minus_states,
        initial: 0,
        delta_plus: vec![vec![Some(0)], vec![Some(0)]],
        delta_minus: vec![a_row, b_row],
        left_from_initial: Some(0),
        delta_left: vec![None; nm],
        delta_right: vec![Some(0)],
        accepting_plus: BTreeSet::new(),
        accepting_minus,
        acceptance_mode: AcceptanceMode::BothSides,
        declared_class: SweepingClass::SRfa,
    };
    let regex = (0..k)
        .map(|i| format!("(a{})*b{}", "b".repeat(i), "a".repeat(i)))
        .collect::<Vec<_>>()
        .join("|");
    (Machine::Sweeping(m), regex)
}

pub fn witness(name: &str, k: Option<usize>) -> Result<WitnessSpec, WitnessError> {
    let needs_k = match catalog().iter().find(|(n, _)| *n == name) {
        Some(&(_, needs_k)) => needs_k,
        None => return Err(WitnessError::UnknownName(name.to_string())),
    };
    match (needs_k, k) {
        (false, Some(_)) => return Err(WitnessError::UnexpectedK(name.to_string())),
        (true, None) => return Err(WitnessError::MissingK(name.to_string())),
        (true, Some(k)) if !(PARAM_MIN..=PARAM_MAX).contains(&k) => {
            return Err(WitnessError::KOutOfRange {
                name: name.to_string(),
                k,
                min: PARAM_MIN,
                max: PARAM_MAX,
            })
        }
        _ => {}
    }
    let (machine, reference_regex) = match name {
        "singleton-a" => singleton_a(),
        "mod3-two-accept" => mod3_two_accept(),
        "even-or-a" => even_or_a(),
        "even-or-a-mrfa" => even_or_a_mrfa(),
        "a-star-or-b-star" => a_star_or_b_star(),
        "Lk-union" => lk_union(k.unwrap()),
        "Lk-srfa" => lk_srfa(k.unwrap()),
        _ => unreachable!("name checked against the catalog"),
    };
    let spec = WitnessSpec {
        name: name.to_string(),
        k,
        machine,
        reference_regex,
    };
    let check = exact_equiv(
        &spec.machine,
        &Machine::OneWay(spec.reference_dfa()),
    )
    .expect("witness machines are valid");
    assert!(
        check.equivalent,
        "witness {name} disagrees with its reference at {:?}",
        check.counterexample
    );
    Ok(spec)
}

/// The fixture set the verification suites run over: every fixed witness
/// plus both parameterized families at k = 2 and k = 3.
pub fn default_suite() -> Vec<WitnessSpec> {
    let mut out = Vec::new();
    for (name, needs_k) in catalog() {
        if needs_k {
            for k in [2, 3] {
                out.push(witness(name, Some(k)).unwrap());
            }
        } else {
            out.push(witness(name, None).unwrap());
        }
    }
    out
}

//! Sweeping-to-one-way determinization and the subset construction for
//! machines with multiple initial states.
//!
//! The sweeping case is the classical construction: the one-way machine's
//! state after reading a prefix `s` is a pair `(p, f)` where `p` is the
//! state the sweeping machine reaches at the right end of `s` on its first
//! pass, and `f : Q⁻ ⇀ Q⁺` records, for every backward state `q`, where a
//! double sweep (right-to-left from the last symbol of `s` in `q`, turn at
//! `⊢`, left-to-right again) ends up — undefined when that computation dies
//! on the way. `f` need not be injective for irreversible machines, and a
//! double sweep that would loop forever is recorded as undefined, the same
//! verdict the simulator's revisit check produces.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::core::{AcceptanceMode, OneWayClass, OneWayMachine, SweepingMachine};

use super::{require_sweeping_class, trim_sweeping_reachable, TransformError};

/// Behavior map for possibly irreversible machines: a plain partial map
/// `Q⁻ → Q⁺` as a table.
type PartialMap = Vec<Option<usize>>;

/// Determinizes any valid sweeping machine into a partial DFA accepting the
/// same language. Both-sides machines are first routed through the
/// acceptance-side elimination.
pub fn sweeping_to_one_way(m: &SweepingMachine) -> Result<OneWayMachine, TransformError> {
    require_sweeping_class(m, m.declared_class)?;
    let m = if m.acceptance_mode == AcceptanceMode::BothSides {
        super::both_sides_to_one_side(m)?
    } else {
        m.clone()
    };
    let m = trim_sweeping_reachable(&m);
    let nm = m.minus_states.len();

    let dead = |alphabet: &crate::core::Alphabet| OneWayMachine {
        alphabet: alphabet.clone(),
        states: vec!["⊥".to_string()],
        initials: BTreeSet::from([0]),
        transitions: vec![vec![None]; alphabet.len()],
        accepting: BTreeSet::new(),
        declared_class: OneWayClass::Dfa,
    };

    // With no left turn from the initial state the computation never takes
    // a step, which in right-only mode rejects everything.
    let Some(p_start) = m.left_from_initial else {
        return Ok(dead(&m.alphabet));
    };
    let f_start: PartialMap = m.delta_left.clone();

    let accepts_state = |p: usize, f: &PartialMap| -> bool {
        // End-game at the right end-marker: follow δ⊣ then f until the
        // computation ends; a revisited forward state means a loop and
        // rejection.
        let mut seen = BTreeSet::new();
        let mut cur = p;
        loop {
            if !seen.insert(cur) {
                return false;
            }
            match m.delta_right[cur] {
                None => return m.accepting_plus.contains(&cur),
                Some(q) => match f[q] {
                    None => return false,
                    Some(next) => cur = next,
                },
            }
        }
    };

    let name_of = |p: usize, f: &PartialMap| -> String {
        let mut out = format!("({},{{", m.plus_states[p]);
        let mut first = true;
        for (q, tgt) in f.iter().enumerate() {
            if let Some(t) = tgt {
                if !first {
                    out.push(',');
                }
                first = false;
                out.push_str(&m.minus_states[q]);
                out.push('→');
                out.push_str(&m.plus_states[*t]);
            }
        }
        out.push_str("})");
        out
    };

    let mut index: HashMap<(usize, PartialMap), usize> = HashMap::new();
    let mut order: Vec<(usize, PartialMap)> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert((p_start, f_start.clone()), 0);
    order.push((p_start, f_start.clone()));
    queue.push_back((p_start, f_start));
    let mut table: Vec<Vec<Option<usize>>> = vec![Vec::new(); m.alphabet.len()];

    while let Some((p, f)) = queue.pop_front() {
        for s in 0..m.alphabet.len() {
            let entry = m.delta_plus[s][p].map(|p2| {
                let f2: PartialMap = (0..nm)
                    .map(|r| {
                        m.delta_minus[s][r]
                            .and_then(|q| f[q])
                            .and_then(|mid| m.delta_plus[s][mid])
                    })
                    .collect();
                let key = (p2, f2);
                *index.entry(key.clone()).or_insert_with(|| {
                    order.push(key.clone());
                    queue.push_back(key);
                    order.len() - 1
                })
            });
            table[s].push(entry);
        }
    }

    let accepting: BTreeSet<usize> = order
        .iter()
        .enumerate()
        .filter(|(_, (p, f))| accepts_state(*p, f))
        .map(|(i, _)| i)
        .collect();
    Ok(OneWayMachine {
        alphabet: m.alphabet.clone(),
        states: order.iter().map(|(p, f)| name_of(*p, f)).collect(),
        initials: BTreeSet::from([0]),
        transitions: table,
        accepting,
        declared_class: OneWayClass::Dfa,
    })
}

/// Subset construction over the initial-state set of a one-way machine.
/// Each per-symbol map is a function, so member states evolve
/// deterministically and subsets only shrink (or permute, for injective
/// maps). An emptied subset becomes an undefined transition.
pub fn mrfa_to_dfa(m: &OneWayMachine) -> Result<OneWayMachine, TransformError> {
    crate::core::validate_one_way(m)?;

    let name_of = |set: &BTreeSet<usize>| -> String {
        let mut out = String::from("{");
        for (i, &q) in set.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&m.states[q]);
        }
        out.push('}');
        out
    };

    let start: BTreeSet<usize> = m.initials.clone();
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut order: Vec<BTreeSet<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(start.clone(), 0);
    order.push(start.clone());
    queue.push_back(start);
    let mut table: Vec<Vec<Option<usize>>> = vec![Vec::new(); m.alphabet.len()];

    while let Some(set) = queue.pop_front() {
        for s in 0..m.alphabet.len() {
            let next: BTreeSet<usize> = set.iter().filter_map(|&q| m.step(s, q)).collect();
            let entry = if next.is_empty() {
                None
            } else {
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    order.push(next.clone());
                    queue.push_back(next);
                    order.len() - 1
                });
                Some(id)
            };
            table[s].push(entry);
        }
    }

    let accepting: BTreeSet<usize> = order
        .iter()
        .enumerate()
        .filter(|(_, set)| set.iter().any(|q| m.accepting.contains(q)))
        .map(|(i, _)| i)
        .collect();
    Ok(OneWayMachine {
        alphabet: m.alphabet.clone(),
        states: order.iter().map(name_of).collect(),
        initials: BTreeSet::from([0]),
        transitions: table,
        accepting,
        declared_class: OneWayClass::Dfa,
    })
}

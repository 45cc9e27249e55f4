//! Unary multi-initial reversible automata as sweeping reversible automata.
//!
//! Over a one-symbol alphabet, each initial state of an MRFA either sits on
//! a cycle through itself (injectivity forbids a tail running into a cycle)
//! or heads a simple path ending in an undefined transition. The cycle
//! components are permutation automata; their union is replaced by a single
//! cycle of the least common multiple length with a residue accepting iff
//! some component accepts it. The path components contribute a finite
//! language, bounded by the longest path length `ℓ`.
//!
//! The sweeping machine runs the merged cycle on its first pass and accepts
//! at the right end-marker on the accepting residues. On every other
//! residue it turns around and measures the input length against `ℓ` on a
//! backward chain, accepting at the left end-marker exactly the lengths the
//! original machine accepts. The end-marker turns must stay injective, so
//! each non-accepting cycle state gets its own copy of the chain rather
//! than sharing one.

use std::collections::BTreeSet;

use crate::core::{
    AcceptanceMode, OneWayClass, OneWayMachine, SweepingClass, SweepingMachine,
};
use crate::sim::run_mrfa;

use super::{require_one_way_class, TransformError};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

enum Component {
    /// Cycle length and the set of accepting residues.
    Cycle(usize, BTreeSet<usize>),
    /// Longest readable length of a path component.
    Path(usize),
}

fn classify(m: &OneWayMachine, start: usize) -> Component {
    let mut seq = vec![start];
    let mut cur = start;
    loop {
        match m.step(0, cur) {
            None => return Component::Path(seq.len() - 1),
            Some(next) => {
                if next == start {
                    let residues = seq
                        .iter()
                        .enumerate()
                        .filter(|(_, q)| m.accepting.contains(q))
                        .map(|(i, _)| i)
                        .collect();
                    return Component::Cycle(seq.len(), residues);
                }
                // injective unary maps cannot re-enter the walk anywhere
                // but at its start
                debug_assert!(!seq.contains(&next));
                seq.push(next);
                cur = next;
            }
        }
    }
}

pub fn unary_mrfa_to_srfa(m: &OneWayMachine) -> Result<SweepingMachine, TransformError> {
    if m.alphabet.len() != 1 {
        return Err(TransformError::NotUnary(m.alphabet.len()));
    }
    require_one_way_class(m, OneWayClass::Mrfa)?;

    let mut cycle_len = 1usize;
    let mut cycles: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    let mut max_path = None;
    for &q0 in &m.initials {
        match classify(m, q0) {
            Component::Cycle(len, residues) => {
                cycle_len = lcm(cycle_len, len);
                cycles.push((len, residues));
            }
            Component::Path(len) => {
                max_path = Some(max_path.map_or(len, |m: usize| m.max(len)));
            }
        }
    }

    // merged permutation cycle: residue r accepts iff some component does
    let accepting_residues: BTreeSet<usize> = (0..cycle_len)
        .filter(|r| cycles.iter().any(|(len, res)| res.contains(&(r % len))))
        .collect();

    let plus_states: Vec<String> = (0..cycle_len).map(|i| format!("c{i}")).collect();
    let delta_plus: Vec<Vec<Option<usize>>> =
        vec![(0..cycle_len).map(|i| Some((i + 1) % cycle_len)).collect()];

    // Backward chains, one per non-accepting residue, of ℓ+1 states each.
    // Chain state i (1-based) is reached at the left end-marker exactly by
    // inputs of length i−1, and accepts iff that length is in the language.
    let chain_len = max_path.map_or(1, |l| l + 1);
    let accepted_length: Vec<bool> = (0..chain_len)
        .map(|len| {
            run_mrfa(m, &m.alphabet.symbols()[0].to_string().repeat(len))
                .map(|r| r.accepted)
                .unwrap_or(false)
        })
        .collect();

    let mut minus_states: Vec<String> = Vec::new();
    let mut delta_minus_row: Vec<Option<usize>> = Vec::new();
    let mut delta_left: Vec<Option<usize>> = Vec::new();
    let mut delta_right: Vec<Option<usize>> = vec![None; cycle_len];
    let mut accepting_minus: BTreeSet<usize> = BTreeSet::new();
    for p in 0..cycle_len {
        if accepting_residues.contains(&p) {
            continue;
        }
        let base = minus_states.len();
        delta_right[p] = Some(base);
        for i in 1..=chain_len {
            minus_states.push(format!("w{p}_{i}"));
            delta_minus_row.push((i < chain_len).then(|| base + i));
            delta_left.push(None);
            if accepted_length[i - 1] {
                accepting_minus.insert(base + i - 1);
            }
        }
    }

    Ok(SweepingMachine {
        alphabet: m.alphabet.clone(),
        plus_states,
        minus_states,
        initial: 0,
        delta_plus,
        delta_minus: vec![delta_minus_row],
        left_from_initial: Some(0),
        delta_left,
        delta_right,
        accepting_plus: accepting_residues,
        accepting_minus,
        acceptance_mode: AcceptanceMode::BothSides,
        declared_class: SweepingClass::SRfa,
    })
}

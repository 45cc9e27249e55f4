//! DFA minimization by partition refinement and exact equivalence with
//! shortest counterexamples.
//!
//! Minimization: restrict to the reachable part, complete with a dead state
//! when partial, refine the accepting/rejecting partition Hopcroft-style
//! until stable, then renumber classes in breadth-first order from the
//! initial class. The result is the unique minimal complete DFA of the
//! language, canonically numbered.
//!
//! Equivalence: breadth-first product walk over completed machines; the
//! first pair reached (in length-lexicographic string order) on which
//! acceptance differs yields the least counterexample.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::core::{OneWayClass, OneWayMachine};

use super::TransformError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivResult {
    pub equivalent: bool,
    /// Length-lex least string on which the two machines disagree.
    pub counterexample: Option<String>,
}

/// Completed transition table over reachable states: state `n` is the dead
/// sink if `has_dead`.
struct Complete {
    n: usize,
    table: Vec<Vec<usize>>, // [symbol][state]
    accepting: Vec<bool>,
    initial: usize,
}

fn completed_reachable(m: &OneWayMachine) -> Complete {
    let start = m.single_initial();
    let n_sym = m.alphabet.len();

    // reachable restriction
    let mut seen = vec![false; m.states.len()];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for s in 0..n_sym {
            if let Some(t) = m.transitions[s][q] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    let remap: Vec<Option<usize>> = {
        let mut v = vec![None; m.states.len()];
        for (new, &old) in order.iter().enumerate() {
            v[old] = Some(new);
        }
        v
    };

    let partial = order
        .iter()
        .any(|&q| (0..n_sym).any(|s| m.transitions[s][q].is_none()));
    let n = order.len() + usize::from(partial);
    let dead = order.len();
    let table: Vec<Vec<usize>> = (0..n_sym)
        .map(|s| {
            let mut row: Vec<usize> = order
                .iter()
                .map(|&q| m.transitions[s][q].map(|t| remap[t].unwrap()).unwrap_or(dead))
                .collect();
            if partial {
                row.push(dead);
            }
            row
        })
        .collect();
    let mut accepting: Vec<bool> = order.iter().map(|&q| m.accepting.contains(&q)).collect();
    if partial {
        accepting.push(false);
    }
    Complete {
        n,
        table,
        accepting,
        initial: 0,
    }
}

/// Hopcroft's refinement: split classes against the preimage of each
/// (class, symbol) until no splitter changes anything.
fn refine(c: &Complete) -> Vec<usize> {
    let n_sym = c.table.len();
    let mut preimage: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); c.n]; n_sym];
    for s in 0..n_sym {
        for q in 0..c.n {
            preimage[s][c.table[s][q]].push(q);
        }
    }

    let mut class_of: Vec<usize> = c.accepting.iter().map(|&a| usize::from(a)).collect();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(), Vec::new()];
    for q in 0..c.n {
        classes[class_of[q]].push(q);
    }
    if classes[1].is_empty() || classes[0].is_empty() {
        let keep = usize::from(classes[0].is_empty());
        classes = vec![classes[keep].clone()];
        class_of.iter_mut().for_each(|c| *c = 0);
    }

    let mut work: VecDeque<(usize, usize)> = VecDeque::new();
    let mut in_work: HashSet<(usize, usize)> = HashSet::new();
    for cls in 0..classes.len() {
        for s in 0..n_sym {
            work.push_back((cls, s));
            in_work.insert((cls, s));
        }
    }

    while let Some((splitter, s)) = work.pop_front() {
        in_work.remove(&(splitter, s));
        let hits: Vec<usize> = classes[splitter]
            .iter()
            .flat_map(|&q| preimage[s][q].iter().copied())
            .collect();
        let mut touched: Vec<usize> = hits.iter().map(|&q| class_of[q]).collect();
        touched.sort_unstable();
        touched.dedup();
        let hit_set: HashSet<usize> = hits.into_iter().collect();

        for cls in touched {
            let (inside, outside): (Vec<usize>, Vec<usize>) = classes[cls]
                .iter()
                .partition(|q| hit_set.contains(q));
            if inside.is_empty() || outside.is_empty() {
                continue;
            }
            // keep the larger part in place, spin off the smaller
            let (stay, split) = if inside.len() >= outside.len() {
                (inside, outside)
            } else {
                (outside, inside)
            };
            let new_cls = classes.len();
            for &q in &split {
                class_of[q] = new_cls;
            }
            classes[cls] = stay;
            classes.push(split);
            // `split` is the smaller half, so queueing it for every symbol
            // covers both the already-queued and the not-queued case for
            // the old class.
            for s2 in 0..n_sym {
                if in_work.insert((new_cls, s2)) {
                    work.push_back((new_cls, s2));
                }
            }
        }
    }
    class_of
}

/// The unique minimal complete DFA of the machine's language. Requires a
/// single initial state; run the subset construction first for MRFA.
pub fn dfa_minimize(m: &OneWayMachine) -> Result<OneWayMachine, TransformError> {
    crate::core::validate_one_way(m)?;
    if m.initials.len() != 1 {
        return Err(TransformError::MultipleInitials);
    }
    let complete = completed_reachable(m);
    let class_of = refine(&complete);
    let n_sym = complete.table.len();

    // canonical breadth-first renumbering of classes from the initial class
    let mut representative: Vec<Option<usize>> = Vec::new();
    for q in 0..complete.n {
        let cls = class_of[q];
        if representative.len() <= cls {
            representative.resize(cls + 1, None);
        }
        representative[cls].get_or_insert(q);
    }
    let n_classes = representative.len();
    let mut number: Vec<Option<usize>> = vec![None; n_classes];
    let mut order: Vec<usize> = Vec::new();
    let mut queue = VecDeque::from([class_of[complete.initial]]);
    number[class_of[complete.initial]] = Some(0);
    while let Some(cls) = queue.pop_front() {
        order.push(cls);
        let rep = representative[cls].unwrap();
        for s in 0..n_sym {
            let t_cls = class_of[complete.table[s][rep]];
            if number[t_cls].is_none() {
                number[t_cls] = Some(order.len() + queue.len());
                queue.push_back(t_cls);
            }
        }
    }

    let transitions: Vec<Vec<Option<usize>>> = (0..n_sym)
        .map(|s| {
            order
                .iter()
                .map(|&cls| {
                    let rep = representative[cls].unwrap();
                    Some(number[class_of[complete.table[s][rep]]].unwrap())
                })
                .collect()
        })
        .collect();
    let accepting: BTreeSet<usize> = order
        .iter()
        .enumerate()
        .filter(|(_, &cls)| complete.accepting[representative[cls].unwrap()])
        .map(|(i, _)| i)
        .collect();
    Ok(OneWayMachine {
        alphabet: m.alphabet.clone(),
        states: (0..order.len()).map(|i| format!("m{i}")).collect(),
        initials: BTreeSet::from([0]),
        transitions,
        accepting,
        declared_class: OneWayClass::Dfa,
    })
}

/// Exact language equivalence of two DFAs over the same alphabet, with the
/// length-lex least counterexample when they differ.
pub fn dfa_equiv(a: &OneWayMachine, b: &OneWayMachine) -> Result<EquivResult, TransformError> {
    crate::core::validate_one_way(a)?;
    crate::core::validate_one_way(b)?;
    if a.alphabet != b.alphabet {
        return Err(TransformError::AlphabetMismatch);
    }
    if a.initials.len() != 1 || b.initials.len() != 1 {
        return Err(TransformError::MultipleInitials);
    }
    let n_sym = a.alphabet.len();
    // None plays the dead state on either side
    type Pair = (Option<usize>, Option<usize>);
    let start: Pair = (Some(a.single_initial()), Some(b.single_initial()));
    let mut visited: HashSet<Pair> = HashSet::from([start]);
    let mut queue: VecDeque<(Pair, String)> = VecDeque::from([(start, String::new())]);

    while let Some(((qa, qb), path)) = queue.pop_front() {
        let acc_a = qa.is_some_and(|q| a.accepting.contains(&q));
        let acc_b = qb.is_some_and(|q| b.accepting.contains(&q));
        if acc_a != acc_b {
            return Ok(EquivResult {
                equivalent: false,
                counterexample: Some(path),
            });
        }
        for s in 0..n_sym {
            let next: Pair = (
                qa.and_then(|q| a.transitions[s][q]),
                qb.and_then(|q| b.transitions[s][q]),
            );
            if next == (None, None) {
                continue; // both dead, never disagree again
            }
            if visited.insert(next) {
                let mut p = path.clone();
                p.push(a.alphabet.symbols()[s]);
                queue.push_back((next, p));
            }
        }
    }
    Ok(EquivResult {
        equivalent: true,
        counterexample: None,
    })
}

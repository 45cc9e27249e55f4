//! Three-pass normal form for reversible sweeping automata.
//!
//! Every sRFA `A` is rewritten to an equivalent sRFA `B` that decides every
//! string within three passes (and to a both-sides variant within two).
//! `B` completes `A`'s inner maps to bijections `γ̃_a⁺`, `γ̃_a⁻` (the
//! increasing-index rule in [`super::complete_to_bijection`]) and tracks in
//! its first pass a pair `(p, f)`: `p` follows `A`'s own forward map and
//! dies where `A` dies, while `f` is the behavior function of the completed
//! permutation machine and therefore never loses domain — no initial-state
//! guessing is needed.
//!
//! At the right end-marker `B` simulates the completed machine's end-game
//! through `f`. If that computation rejects, so does `A`, and `B` halts. If
//! it accepts, `A` accepts iff none of the simulated sweeps runs through a
//! transition missing from `A`; `B` verifies this on a second pass carrying
//! `(f, R)`, where `R` is the set of backward states the accepting
//! computation visits at the current symbol. Undefined backward steps are
//! caught by `|γ_a⁻(R)| = |R|`, undefined forward steps by requiring
//! `f(R) ⊆ Im γ_a⁺`, and `f` is unwound by conjugating with the completed
//! inverses. Reaching the left end-marker proves acceptance: the both-sides
//! variant accepts right there (two passes), the right-only variant drops
//! `f` (at `⊢` it always equals the left-turn map) and ferries the bare set
//! `R` rightward to accept at `⊣` (three passes).
//!
//! One repair to the end-game rule is needed for reversibility: a first-pass
//! state whose simulated computation accepts immediately, without any turn
//! at `⊣`, would map to `(f, ∅)` and collide with every other such state
//! sharing `f`. Those states need no verification passes at all, so `B`
//! instead accepts them outright at the right end-marker, keeping `δ⊣`
//! injective. All other accepting chains record at least one turn state,
//! from which the chain's start can be reconstructed, so `δ⊣` stays
//! injective on them.

use std::collections::{BTreeMap, BTreeSet};

use crate::core::{AcceptanceMode, SweepingClass, SweepingMachine};
use crate::funcmath::{enumerate_partial_injections, subsets_lex, PartialInjection};

use super::{
    behavior_name, complete_to_bijection, normalize_right_only, require_sweeping_class, set_name,
    SweepingMaps, TransformError,
};

/// Right-only output, at most three passes on any input.
pub fn srfa_to_three_pass(m: &SweepingMachine) -> Result<SweepingMachine, TransformError> {
    build(m, true)
}

/// Both-sides intermediate of the same construction, at most two passes.
pub fn srfa_to_two_pass_both_sides(
    m: &SweepingMachine,
) -> Result<SweepingMachine, TransformError> {
    build(m, false)
}

fn build(m: &SweepingMachine, third_pass: bool) -> Result<SweepingMachine, TransformError> {
    let m = normalize_right_only(m)?;
    require_sweeping_class(&m, SweepingClass::SRfa)?;
    let maps = SweepingMaps::of(&m)?;
    let n_sym = m.alphabet.len();
    let (np, nm) = (maps.np, maps.nm);

    let Some(p_start) = maps.left_from_initial else {
        // The input rejects everything at its very first configuration.
        return Ok(SweepingMachine {
            alphabet: m.alphabet.clone(),
            plus_states: vec!["⊥".to_string()],
            minus_states: vec![],
            initial: 0,
            delta_plus: vec![vec![None]; n_sym],
            delta_minus: vec![vec![]; n_sym],
            left_from_initial: None,
            delta_left: vec![],
            delta_right: vec![None],
            accepting_plus: BTreeSet::new(),
            accepting_minus: BTreeSet::new(),
            acceptance_mode: if third_pass {
                AcceptanceMode::RightOnly
            } else {
                AcceptanceMode::BothSides
            },
            declared_class: SweepingClass::SRfa,
        });
    };

    let completed_plus: Vec<PartialInjection> = maps
        .gamma_plus
        .iter()
        .map(complete_to_bijection)
        .collect::<Result<_, _>>()?;
    let completed_minus: Vec<PartialInjection> = maps
        .gamma_minus
        .iter()
        .map(complete_to_bijection)
        .collect::<Result<_, _>>()?;

    let all_behaviors = enumerate_partial_injections(nm, np);

    // Forward states: every (p, f); the paper's Q₊ definition imposes no
    // p ∉ Im f constraint here, unlike the multi-initial construction.
    let mut plus_names: Vec<String> = Vec::new();
    let mut plus_index: BTreeMap<(usize, PartialInjection), usize> = BTreeMap::new();
    for f in &all_behaviors {
        for p in 0..np {
            plus_index.insert((p, f.clone()), plus_names.len());
            plus_names.push(format!(
                "({},{})",
                m.plus_states[p],
                behavior_name(f, &m.minus_states, &m.plus_states)
            ));
        }
    }
    let first_pass_count = plus_names.len();

    // Third-pass states: one per subset of the left-turn domain.
    let left_domain = maps.gamma_left_minus.domain();
    let mut third_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    if third_pass {
        for subset in subsets_lex(left_domain.len()) {
            let concrete: Vec<usize> = subset.iter().map(|&i| left_domain[i]).collect();
            third_index.insert(concrete.clone(), plus_names.len());
            plus_names.push(set_name(&concrete, &m.minus_states));
        }
    }

    // Backward states: (f, R) with R ⊆ Dom f.
    let mut minus_names: Vec<String> = Vec::new();
    let mut minus_index: BTreeMap<(PartialInjection, Vec<usize>), usize> = BTreeMap::new();
    for f in &all_behaviors {
        let dom = f.domain();
        for subset in subsets_lex(dom.len()) {
            let concrete: Vec<usize> = subset.iter().map(|&i| dom[i]).collect();
            minus_index.insert((f.clone(), concrete.clone()), minus_names.len());
            minus_names.push(format!(
                "({},{})",
                behavior_name(f, &m.minus_states, &m.plus_states),
                set_name(&concrete, &m.minus_states)
            ));
        }
    }

    let f_start = maps.gamma_left_minus.clone();
    let initial = plus_index[&(p_start, f_start.clone())];

    let mut delta_plus: Vec<Vec<Option<usize>>> = vec![vec![None; plus_names.len()]; n_sym];
    let mut delta_minus: Vec<Vec<Option<usize>>> = vec![vec![None; minus_names.len()]; n_sym];
    let mut delta_left: Vec<Option<usize>> = vec![None; minus_names.len()];
    let mut delta_right: Vec<Option<usize>> = vec![None; plus_names.len()];
    let mut accepting_plus: BTreeSet<usize> = BTreeSet::new();
    let mut accepting_minus: BTreeSet<usize> = BTreeSet::new();

    // First pass: A's forward step on p, completed conjugation on f.
    for s in 0..n_sym {
        for (f_id, f) in all_behaviors.iter().enumerate() {
            let conjugated = PartialInjection::compose(
                &completed_plus[s],
                &PartialInjection::compose(f, &completed_minus[s])?,
            )?;
            for p in 0..np {
                if let Some(p2) = maps.gamma_plus[s].apply(p) {
                    let src = f_id * np + p;
                    delta_plus[s][src] = Some(plus_index[&(p2, conjugated.clone())]);
                }
            }
        }
    }
    // Third pass: ferry R rightward unchanged.
    for &idx in third_index.values() {
        for row in delta_plus.iter_mut() {
            row[idx] = Some(idx);
        }
        accepting_plus.insert(idx);
    }

    // Right end-marker: simulate the completed machine's end-game.
    for ((p, f), &src) in &plus_index {
        let mut turns: Vec<usize> = Vec::new();
        let mut seen = BTreeSet::new();
        let mut cur = *p;
        let outcome = loop {
            if !seen.insert(cur) {
                break None; // loop: reject (cannot happen for valid input)
            }
            match maps.gamma_right.apply(cur) {
                None => break maps.accepting_plus.contains(&cur).then_some(()),
                Some(q) => match f.apply(q) {
                    None => break None,
                    Some(next) => {
                        turns.push(q);
                        cur = next;
                    }
                },
            }
        };
        if outcome.is_some() {
            if turns.is_empty() {
                // Accepting with no turn at ⊣: nothing to verify, accept
                // here. Turning instead would erase p and break δ⊣
                // injectivity.
                accepting_plus.insert(src);
            } else {
                turns.sort_unstable();
                delta_right[src] = Some(minus_index[&(f.clone(), turns)]);
            }
        }
    }

    // Second pass: walk R leftward through A's backward map, check A's
    // forward map covers f(R), unwind f by the completed inverses.
    for s in 0..n_sym {
        let inv_plus = completed_plus[s].inverse();
        let inv_minus = completed_minus[s].inverse();
        for ((f, r_set), &src) in &minus_index {
            let stepped: Vec<Option<usize>> = r_set
                .iter()
                .map(|&r| maps.gamma_minus[s].apply(r))
                .collect();
            if stepped.iter().any(Option::is_none) {
                continue; // an undefined backward step of A
            }
            let forward_ok = r_set.iter().all(|&r| {
                let target = f.apply(r).expect("R ⊆ Dom f by construction");
                maps.gamma_plus[s].image_contains(target)
            });
            if !forward_ok {
                continue; // an undefined forward step of A
            }
            let mut r_next: Vec<usize> = stepped.into_iter().flatten().collect();
            r_next.sort_unstable();
            let f_next = PartialInjection::compose(
                &inv_plus,
                &PartialInjection::compose(f, &inv_minus)?,
            )?;
            delta_minus[s][src] = Some(minus_index[&(f_next, r_next)]);
        }
    }

    // Left end-marker: the behavior function of the empty prefix is the
    // left-turn map itself; anything else is unreachable and stays stuck.
    for ((f, r_set), &src) in &minus_index {
        if *f != f_start {
            continue;
        }
        if third_pass {
            delta_left[src] = Some(third_index[r_set]);
        } else {
            accepting_minus.insert(src);
        }
    }

    let out = SweepingMachine {
        alphabet: m.alphabet.clone(),
        plus_states: plus_names,
        minus_states: minus_names,
        initial,
        delta_plus,
        delta_minus,
        left_from_initial: Some(initial),
        delta_left,
        delta_right,
        accepting_plus,
        accepting_minus,
        acceptance_mode: if third_pass {
            AcceptanceMode::RightOnly
        } else {
            AcceptanceMode::BothSides
        },
        declared_class: SweepingClass::SRfa,
    };
    debug_assert_eq!(out.plus_states.len(), first_pass_count + third_index.len());
    Ok(out)
}

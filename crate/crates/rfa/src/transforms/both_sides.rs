//! Elimination of acceptance at the left end-marker.
//!
//! A sweeping machine that may accept at either end-marker is rewritten to
//! one accepting only at the right end-marker: every backward state `p` that
//! could end the computation acceptingly at `⊢` instead turns there into a
//! fresh forward state `p′`, loops rightward in `p′` on every symbol, and
//! accepts at `⊣`. The new forward state set is `P⁺ ∪ {p′ | p ∈ E ∩ P⁻}`,
//! one fresh state per accepting backward state whether or not it is
//! actually wired (a `p` whose left turn is defined never ends at `⊢`, so
//! its copy stays unreachable but is still counted).
//!
//! One case falls outside that recipe: an initial state that is both
//! accepting and has no left turn ends the computation immediately at `⊢`
//! and accepts every string. That needs one extra loop state beyond the
//! `E ∩ P⁻` copies; it cannot occur for any machine whose initial state can
//! take a first step.

use crate::core::{AcceptanceMode, SweepingMachine};

use super::{require_sweeping_class, TransformError};

fn fresh_name(base: &str, taken: &mut Vec<String>) -> String {
    let mut name = format!("{base}'");
    while taken.iter().any(|n| n == &name) {
        name.push('\'');
    }
    taken.push(name.clone());
    name
}

pub fn both_sides_to_one_side(m: &SweepingMachine) -> Result<SweepingMachine, TransformError> {
    if m.acceptance_mode != AcceptanceMode::BothSides {
        return Err(TransformError::NotBothSides);
    }
    require_sweeping_class(m, m.declared_class)?;

    let mut out = m.clone();
    out.acceptance_mode = AcceptanceMode::RightOnly;
    out.accepting_minus.clear();

    let mut taken: Vec<String> = m
        .plus_states
        .iter()
        .chain(m.minus_states.iter())
        .cloned()
        .collect();

    let add_loop_state = |out: &mut SweepingMachine, base: &str, taken: &mut Vec<String>| {
        let name = fresh_name(base, taken);
        out.plus_states.push(name);
        let idx = out.plus_states.len() - 1;
        for row in &mut out.delta_plus {
            row.push(Some(idx)); // loop rightward on every symbol
        }
        out.delta_right.push(None); // ends at ⊣, hence accepts there
        out.accepting_plus.insert(idx);
        idx
    };

    for &q in &m.accepting_minus {
        let idx = add_loop_state(&mut out, &m.minus_states[q], &mut taken);
        if out.delta_left[q].is_none() {
            out.delta_left[q] = Some(idx);
        }
    }

    // Degenerate corner: accepting initial state with no left turn.
    if m.accepting_plus.contains(&m.initial) && m.left_from_initial.is_none() {
        let idx = add_loop_state(&mut out, &m.plus_states[m.initial], &mut taken);
        out.left_from_initial = Some(idx);
    }

    Ok(out)
}

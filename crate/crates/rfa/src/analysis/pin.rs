//! Pin's necessary condition for recognizability by reversible automata
//! with multiple initial states: if `x y⁺ z ⊆ L` then `xz ∈ L`. A witness
//! triple with `x y⁺ z ⊆ L` and `xz ∉ L` therefore certifies that no MRFA
//! (and no weaker reversible model) recognizes `L`.
//!
//! On a DFA the premise is decidable exactly: the states reached from
//! `δ*(q₀, x)` by pumping `y` form an eventually periodic orbit, so
//! checking `x yⁱ z ∈ L` for `i` up to the number of states plus one covers
//! every exponent. A finite `reps` below that bound degrades the check to
//! sampled evidence, which the report records.

use crate::core::Machine;

use super::{strings_up_to, AnalysisError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinWitness {
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinReport {
    pub violation: Option<PinWitness>,
    /// Number of (x, y, z) triples whose premise was evaluated.
    pub triples_checked: u64,
    /// The pumping exponent bound actually used.
    pub reps: usize,
    /// Whether `reps` was large enough to make the premise exact.
    pub exact: bool,
}

/// Searches all `|x| ≤ max_x`, `1 ≤ |y| ≤ max_y`, `|z| ≤ max_z` in
/// length-lex order for a violation of Pin's condition. `reps = None`
/// selects the exact pigeonhole bound (#states + 1).
pub fn pin_falsify(
    m: &Machine,
    max_x: usize,
    max_y: usize,
    max_z: usize,
    reps: Option<usize>,
) -> Result<PinReport, AnalysisError> {
    let dfa = crate::transforms::to_dfa(m)?;
    let alphabet = dfa.alphabet.clone();
    let n_states = dfa.states.len();
    let effective_reps = match reps {
        None | Some(0) => n_states + 1,
        Some(r) => r,
    };
    let exact = effective_reps > n_states;

    let start = dfa.single_initial();
    // None is the implicit dead state of the partial DFA.
    let step_str = |from: Option<usize>, s: &str| -> Option<usize> {
        let mut cur = from;
        for c in s.chars() {
            let sym = alphabet.index_of(c).expect("enumerated over the alphabet");
            cur = cur.and_then(|q| dfa.transitions[sym][q]);
        }
        cur
    };
    let accepting = |q: Option<usize>| q.is_some_and(|q| dfa.accepting.contains(&q));

    let xs = strings_up_to(&alphabet, max_x);
    let ys: Vec<String> = strings_up_to(&alphabet, max_y)
        .into_iter()
        .filter(|y| !y.is_empty())
        .collect();
    let zs = strings_up_to(&alphabet, max_z);

    let mut triples_checked = 0u64;
    for x in &xs {
        let after_x = step_str(Some(start), x);
        for y in &ys {
            for z in &zs {
                triples_checked += 1;
                // premise: x yⁱ z ∈ L for all i in 1..=reps
                let mut cur = after_x;
                let mut premise = true;
                for _ in 0..effective_reps {
                    cur = step_str(cur, y);
                    if !accepting(step_str(cur, z)) {
                        premise = false;
                        break;
                    }
                }
                if premise && !accepting(step_str(Some(start), &format!("{x}{z}"))) {
                    return Ok(PinReport {
                        violation: Some(PinWitness {
                            x: x.clone(),
                            y: y.clone(),
                            z: z.clone(),
                        }),
                        triples_checked,
                        reps: effective_reps,
                        exact,
                    });
                }
            }
        }
    }
    Ok(PinReport {
        violation: None,
        triples_checked,
        reps: effective_reps,
        exact,
    })
}

//! Machine-to-machine constructions: elimination of both-sides acceptance,
//! the sweeping-to-one-way determinizations, the reversible sweeping to
//! multi-initial one-way construction, the three-pass normal form, the unary
//! multi-initial to sweeping construction, and DFA minimization/equivalence
//! plumbing used to verify all of them exactly.

mod both_sides;
mod determinize;
mod minimize;
mod srfa_to_mrfa;
mod three_pass;
mod unary;

pub use both_sides::both_sides_to_one_side;
pub use determinize::{mrfa_to_dfa, sweeping_to_one_way};
pub use minimize::{dfa_equiv, dfa_minimize, EquivResult};
pub use srfa_to_mrfa::srfa_to_mrfa;
pub use three_pass::{srfa_to_three_pass, srfa_to_two_pass_both_sides};
pub use unary::unary_mrfa_to_srfa;

use std::borrow::Cow;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::core::{
    AcceptanceMode, Machine, OneWayClass, OneWayMachine, StructuralError, SweepingClass,
    SweepingMachine,
};
use crate::funcmath::{FuncMathError, PartialInjection};

#[derive(Debug, Error)]
pub enum TransformError {
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("machine is not a valid {class}: {first_violation}")]
    ClassViolation {
        class: String,
        first_violation: String,
    },
    #[error("expected a machine with acceptance at both sides")]
    NotBothSides,
    #[error("expected a unary alphabet, found {0} symbols")]
    NotUnary(usize),
    #[error("expected a single initial state; determinize with mrfa_to_dfa first")]
    MultipleInitials,
    #[error("the machines have different alphabets")]
    AlphabetMismatch,
    #[error(transparent)]
    FuncMath(#[from] FuncMathError),
}

/// Extends a partial injection on a square carrier to a total bijection:
/// unmatched sources in increasing order are paired with unmatched targets
/// in increasing order.
pub fn complete_to_bijection(f: &PartialInjection) -> Result<PartialInjection, TransformError> {
    let n = f.domain_size();
    if f.codomain_size() != n {
        return Err(TransformError::FuncMath(FuncMathError::NotSquare(
            n,
            f.codomain_size(),
        )));
    }
    let mut pairs: Vec<(usize, usize)> = f.pairs().collect();
    let free_sources: Vec<usize> = (0..n).filter(|&x| !f.is_defined_on(x)).collect();
    let free_targets: Vec<usize> = (0..n).filter(|&y| !f.image_contains(y)).collect();
    pairs.extend(free_sources.into_iter().zip(free_targets));
    Ok(PartialInjection::from_pairs(n, n, &pairs)?)
}

/// Normalizes any valid one-way machine with a single initial state into the
/// DFA view of itself, and determinizes multi-initial machines.
pub fn to_dfa(m: &Machine) -> Result<OneWayMachine, TransformError> {
    match m {
        Machine::OneWay(m) if m.initials.len() == 1 => {
            crate::core::validate_one_way(m)?;
            let mut dfa = m.clone();
            dfa.declared_class = OneWayClass::Dfa;
            Ok(dfa)
        }
        Machine::OneWay(m) => mrfa_to_dfa(m),
        Machine::Sweeping(m) => sweeping_to_one_way(m),
    }
}

/// Drops sweeping states that no computation can ever enter (graph
/// reachability from the initial state over all transition maps). The
/// language is unchanged; transform outputs built over full combinatorial
/// state spaces shrink to their working part.
pub fn trim_sweeping_reachable(m: &SweepingMachine) -> SweepingMachine {
    let np = m.plus_states.len();
    let nm = m.minus_states.len();
    let mut plus_seen = vec![false; np];
    let mut minus_seen = vec![false; nm];
    let mut stack: Vec<(bool, usize)> = vec![(true, m.initial)];
    plus_seen[m.initial] = true;
    while let Some((is_plus, q)) = stack.pop() {
        let mut visit = |is_plus: bool, t: usize, stack: &mut Vec<(bool, usize)>| {
            let seen = if is_plus {
                &mut plus_seen[t]
            } else {
                &mut minus_seen[t]
            };
            if !*seen {
                *seen = true;
                stack.push((is_plus, t));
            }
        };
        if is_plus {
            if q == m.initial {
                if let Some(t) = m.left_from_initial {
                    visit(true, t, &mut stack);
                }
            }
            for row in &m.delta_plus {
                if let Some(t) = row[q] {
                    visit(true, t, &mut stack);
                }
            }
            if let Some(t) = m.delta_right[q] {
                visit(false, t, &mut stack);
            }
        } else {
            for row in &m.delta_minus {
                if let Some(t) = row[q] {
                    visit(false, t, &mut stack);
                }
            }
            if let Some(t) = m.delta_left[q] {
                visit(true, t, &mut stack);
            }
        }
    }

    let plus_map: Vec<Option<usize>> = {
        let mut next = 0;
        plus_seen
            .iter()
            .map(|&s| {
                s.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let minus_map: Vec<Option<usize>> = {
        let mut next = 0;
        minus_seen
            .iter()
            .map(|&s| {
                s.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let remap_plus = |t: Option<usize>| t.and_then(|t| plus_map[t]);
    let remap_minus = |t: Option<usize>| t.and_then(|t| minus_map[t]);

    SweepingMachine {
        alphabet: m.alphabet.clone(),
        plus_states: (0..np)
            .filter(|&p| plus_seen[p])
            .map(|p| m.plus_states[p].clone())
            .collect(),
        minus_states: (0..nm)
            .filter(|&q| minus_seen[q])
            .map(|q| m.minus_states[q].clone())
            .collect(),
        initial: plus_map[m.initial].unwrap(),
        delta_plus: m
            .delta_plus
            .iter()
            .map(|row| {
                (0..np)
                    .filter(|&p| plus_seen[p])
                    .map(|p| remap_plus(row[p]))
                    .collect()
            })
            .collect(),
        delta_minus: m
            .delta_minus
            .iter()
            .map(|row| {
                (0..nm)
                    .filter(|&q| minus_seen[q])
                    .map(|q| remap_minus(row[q]))
                    .collect()
            })
            .collect(),
        left_from_initial: remap_plus(m.left_from_initial),
        delta_left: (0..nm)
            .filter(|&q| minus_seen[q])
            .map(|q| remap_plus(m.delta_left[q]))
            .collect(),
        delta_right: (0..np)
            .filter(|&p| plus_seen[p])
            .map(|p| remap_minus(m.delta_right[p]))
            .collect(),
        accepting_plus: m
            .accepting_plus
            .iter()
            .filter_map(|&p| plus_map[p])
            .collect(),
        accepting_minus: m
            .accepting_minus
            .iter()
            .filter_map(|&q| minus_map[q])
            .collect(),
        acceptance_mode: m.acceptance_mode,
        declared_class: m.declared_class,
    }
}

/// Validates `m` against the invariants of `class` regardless of what it
/// declares.
pub(crate) fn require_sweeping_class(
    m: &SweepingMachine,
    class: SweepingClass,
) -> Result<(), TransformError> {
    let mut redeclared = m.clone();
    redeclared.declared_class = class;
    let report = crate::core::validate_sweeping(&redeclared)?;
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(TransformError::ClassViolation {
            class: class.to_string(),
            first_violation: v.message.clone(),
        }),
    }
}

pub(crate) fn require_one_way_class(
    m: &OneWayMachine,
    class: OneWayClass,
) -> Result<(), TransformError> {
    let mut redeclared = m.clone();
    redeclared.declared_class = class;
    let report = crate::core::validate_one_way(&redeclared)?;
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(TransformError::ClassViolation {
            class: class.to_string(),
            first_violation: v.message.clone(),
        }),
    }
}

/// Routes both-sides machines through the acceptance-side elimination, so
/// the paper constructions can assume right-only acceptance.
pub(crate) fn normalize_right_only(
    m: &SweepingMachine,
) -> Result<Cow<'_, SweepingMachine>, TransformError> {
    match m.acceptance_mode {
        AcceptanceMode::RightOnly => Ok(Cow::Borrowed(m)),
        AcceptanceMode::BothSides => Ok(Cow::Owned(both_sides_to_one_side(m)?)),
    }
}

/// The transition maps of a right-only sweeping machine as partial
/// injections, the working form for every behavior-function construction.
pub(crate) struct SweepingMaps {
    pub np: usize,
    pub nm: usize,
    /// Per symbol, `γ_a⁺ : Q⁺ ⇀ Q⁺`.
    pub gamma_plus: Vec<PartialInjection>,
    /// Per symbol, `γ_a⁻ : Q⁻ ⇀ Q⁻`.
    pub gamma_minus: Vec<PartialInjection>,
    /// `γ⊢` restricted to `Q⁻`.
    pub gamma_left_minus: PartialInjection,
    /// `γ⊣ : Q⁺ ⇀ Q⁻`.
    pub gamma_right: PartialInjection,
    /// `γ⊢(q₀)`.
    pub left_from_initial: Option<usize>,
    pub accepting_plus: BTreeSet<usize>,
}

impl SweepingMaps {
    pub fn of(m: &SweepingMachine) -> Result<Self, TransformError> {
        let np = m.plus_states.len();
        let nm = m.minus_states.len();
        let table =
            |codomain: usize, row: &Vec<Option<usize>>| PartialInjection::from_table(codomain, row.clone());
        Ok(SweepingMaps {
            np,
            nm,
            gamma_plus: m
                .delta_plus
                .iter()
                .map(|row| table(np, row))
                .collect::<Result<_, _>>()?,
            gamma_minus: m
                .delta_minus
                .iter()
                .map(|row| table(nm, row))
                .collect::<Result<_, _>>()?,
            gamma_left_minus: table(np, &m.delta_left)?,
            gamma_right: table(nm, &m.delta_right)?,
            left_from_initial: m.left_from_initial,
            accepting_plus: m.accepting_plus.clone(),
        })
    }
}

/// Renders a behavior function as part of a generated state name, e.g.
/// `{q0→p1,q1→p0}`.
pub(crate) fn behavior_name(
    f: &PartialInjection,
    minus_names: &[String],
    plus_names: &[String],
) -> String {
    let mut out = String::from("{");
    for (i, (src, tgt)) in f.pairs().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&minus_names[src]);
        out.push('→');
        out.push_str(&plus_names[tgt]);
    }
    out.push('}');
    out
}

/// Renders a set of backward states as part of a generated state name.
pub(crate) fn set_name(set: &[usize], minus_names: &[String]) -> String {
    let mut out = String::from("{");
    for (i, &q) in set.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&minus_names[q]);
    }
    out.push('}');
    out
}

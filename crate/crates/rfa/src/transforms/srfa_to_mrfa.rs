//! Reversible sweeping automata as one-way reversible automata with
//! multiple initial states.
//!
//! The one-way machine's states are pairs `(p, f)` with `p ∈ P⁺`, `f : P⁻ ⇀
//! P⁺` a partial injection and `p ∉ Im f`. Reading a prefix `s`, the pair
//! says: the sweeping machine's first pass over `s` ends in `p`, and `f`
//! records where each backward entry into the last symbol of `s` ends up
//! after sweeping left, turning and sweeping right again. The machine cannot
//! reversibly forget entries of `f`, so instead it guesses the eventual
//! domain up front: there is one initial state per restriction of the
//! left-turn map to a subset of its backward domain, and a transition is
//! left undefined as soon as the guessed domain would shrink.
//!
//! The full combinatorial state space is built, not just the reachable
//! part, so state counts match the construction exactly.
//!
//! On the empty prefix the first pass consists of the single `⊢`-turn, so
//! the first component of every initial state is the left turn of the
//! initial state (which coincides with the initial state itself whenever
//! that turn is a self-loop, as in all the catalog machines); a machine
//! whose initial state has no left turn rejects everything and maps to a
//! single dead state.

use std::collections::{BTreeMap, BTreeSet};

use crate::core::{OneWayClass, OneWayMachine, SweepingClass, SweepingMachine};
use crate::funcmath::{enumerate_partial_injections, PartialInjection};

use super::{
    behavior_name, normalize_right_only, require_sweeping_class, SweepingMaps, TransformError,
};

pub fn srfa_to_mrfa(m: &SweepingMachine) -> Result<OneWayMachine, TransformError> {
    let m = normalize_right_only(m)?;
    require_sweeping_class(&m, SweepingClass::SRfa)?;
    let maps = SweepingMaps::of(&m)?;
    let n_sym = m.alphabet.len();

    let Some(p_start) = maps.left_from_initial else {
        // No first step: the sweeping machine rejects every string.
        return Ok(OneWayMachine {
            alphabet: m.alphabet.clone(),
            states: vec!["⊥".to_string()],
            initials: BTreeSet::from([0]),
            transitions: vec![vec![None]; n_sym],
            accepting: BTreeSet::new(),
            declared_class: OneWayClass::Mrfa,
        });
    };

    // Full state space: (p, f) with p ∉ Im f.
    let mut states: Vec<(usize, PartialInjection)> = Vec::new();
    let mut index: BTreeMap<(usize, PartialInjection), usize> = BTreeMap::new();
    for f in enumerate_partial_injections(maps.nm, maps.np) {
        for p in 0..maps.np {
            if !f.image_contains(p) {
                index.insert((p, f.clone()), states.len());
                states.push((p, f.clone()));
            }
        }
    }

    let names: Vec<String> = states
        .iter()
        .map(|(p, f)| {
            format!(
                "({},{})",
                m.plus_states[*p],
                behavior_name(f, &m.minus_states, &m.plus_states)
            )
        })
        .collect();

    // δ_a(p, f) = (γ_a⁺(p), γ_a⁺ ∘ f ∘ γ_a⁻), defined only when the forward
    // step exists and the composed behavior keeps the domain size.
    let mut transitions: Vec<Vec<Option<usize>>> = vec![vec![None; states.len()]; n_sym];
    for s in 0..n_sym {
        let gp = &maps.gamma_plus[s];
        let gm = &maps.gamma_minus[s];
        for (i, (p, f)) in states.iter().enumerate() {
            let Some(p2) = gp.apply(*p) else { continue };
            let g = PartialInjection::compose(gp, &PartialInjection::compose(f, gm)?)?;
            if g.domain_len() != f.domain_len() {
                continue;
            }
            let target = *index
                .get(&(p2, g))
                .expect("image of a behavior step stays inside the state space");
            transitions[s][i] = Some(target);
        }
    }

    // One initial state per restriction of the left-turn map to a subset of
    // its backward domain.
    let mut initials: BTreeSet<usize> = BTreeSet::new();
    let left_domain = maps.gamma_left_minus.domain();
    for subset in crate::funcmath::subsets_lex(left_domain.len()) {
        let concrete: Vec<usize> = subset.iter().map(|&i| left_domain[i]).collect();
        let f = maps.gamma_left_minus.restrict(&concrete)?;
        let id = *index
            .get(&(p_start, f))
            .expect("left-turn restrictions avoid the initial image by injectivity");
        initials.insert(id);
    }

    // (p, f) accepts iff iterating p ← f(γ⊣(p)) ever hits an accepting
    // state of the sweeping machine. The iteration cannot revisit a state
    // for a reversible input; the cap and the revisit check make the
    // function total on anything else.
    let cap = maps.np * maps.nm + 1;
    let mut accepting: BTreeSet<usize> = BTreeSet::new();
    for (i, (p, f)) in states.iter().enumerate() {
        let mut cur = *p;
        let mut seen = BTreeSet::new();
        for _ in 0..=cap {
            if maps.accepting_plus.contains(&cur) {
                accepting.insert(i);
                break;
            }
            if !seen.insert(cur) {
                break;
            }
            match maps.gamma_right.apply(cur).and_then(|q| f.apply(q)) {
                Some(next) => cur = next,
                None => break,
            }
        }
    }

    Ok(OneWayMachine {
        alphabet: m.alphabet.clone(),
        states: names,
        initials,
        transitions,
        accepting,
        declared_class: OneWayClass::Mrfa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{validate_one_way, AcceptanceMode, Alphabet, Machine};
    use crate::sim::{accepts, run_mrfa};
    use std::collections::BTreeSet;

    fn even_or_a_srfa() -> SweepingMachine {
        SweepingMachine {
            alphabet: Alphabet::new(vec!['a']).unwrap(),
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
        }
    }

    #[test]
    fn even_or_a_state_space_and_initials() {
        let mrfa = srfa_to_mrfa(&even_or_a_srfa()).unwrap();
        // 7 partial injections 2⇀2; admissible first components 2+4+0
        assert_eq!(mrfa.states.len(), 6);
        // δ⊢ is defined on q1 only, so the restrictions are ∅ and {q1→p1}
        assert_eq!(mrfa.initials.len(), 2);
        assert!(validate_one_way(&mrfa).unwrap().is_empty());
    }

    #[test]
    fn even_or_a_language_is_preserved_up_to_14() {
        let m = even_or_a_srfa();
        let mrfa = srfa_to_mrfa(&m).unwrap();
        for len in 0..=14 {
            let s = "a".repeat(len);
            let expect = len % 2 == 0 || len == 1;
            assert_eq!(accepts(&Machine::Sweeping(m.clone()), &s).unwrap(), expect);
            assert_eq!(run_mrfa(&mrfa, &s).unwrap().accepted, expect, "on a^{len}");
        }
    }

    #[test]
    fn output_is_reversible() {
        let mrfa = srfa_to_mrfa(&even_or_a_srfa()).unwrap();
        let report = validate_one_way(&mrfa).unwrap();
        assert!(report.is_empty(), "{:?}", report.violations);
        assert_eq!(mrfa.declared_class, OneWayClass::Mrfa);
    }

    #[test]
    fn no_left_turn_yields_the_empty_language() {
        let mut m = even_or_a_srfa();
        m.left_from_initial = None;
        let mrfa = srfa_to_mrfa(&m).unwrap();
        assert_eq!(mrfa.states.len(), 1);
        for len in 0..=5 {
            assert!(!run_mrfa(&mrfa, &"a".repeat(len)).unwrap().accepted);
        }
    }

    #[test]
    fn irreversible_input_is_rejected() {
        let mut m = even_or_a_srfa();
        m.delta_plus = vec![vec![Some(0), Some(0)]]; // two-to-one forward map
        assert!(matches!(
            srfa_to_mrfa(&m),
            Err(TransformError::ClassViolation { .. })
        ));
    }
}

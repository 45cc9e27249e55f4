//! Simulators: run machines on strings and produce full configuration
//! traces.
//!
//! A sweeping computation on `⊢ a₁ … a_k ⊣` is a sequence of configurations
//! `(state, position)` with positions `0` (left end-marker) through `k+1`
//! (right end-marker), following the step relation:
//!
//! * inside the string, `δ⁺` moves right and `δ⁻` moves left;
//! * at position `0` a state in `{q₀} ∪ Q⁻` turns via `δ⊢` to position `1`;
//! * at position `k+1` a state in `Q⁺` turns via `δ⊣` to position `k`.
//!
//! The computation ends when no step is defined. Acceptance happens only at
//! that point: the machine accepts iff it is stuck at the right end-marker
//! (or, in both-sides mode, either end-marker) in an accepting state. An
//! accepting state whose end-marker transition is defined keeps computing.
//!
//! Pass counting convention: a pass is a maximal run of steps in one
//! direction of head movement (the `⊢`-turn step moves right, the `⊣`-turn
//! step moves left). A non-empty trace always counts at least one pass, even
//! if the machine gets stuck before moving — the first sweep has begun. On
//! the empty string the single `⊢`-step is one pass and every later bounce
//! between the markers adds one.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::core::{AcceptanceMode, OneWayMachine, SweepingMachine};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("input symbol '{0}' is not in the alphabet")]
    InputSymbol(char),
    #[error("state {0} is not an initial state")]
    NotAnInitialState(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    RejectUndefined,
    RejectNonaccepting,
    RejectLoop,
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Accept => "accept",
            Verdict::RejectUndefined => "reject (undefined transition)",
            Verdict::RejectNonaccepting => "reject (not accepting)",
            Verdict::RejectLoop => "reject (loop)",
        };
        write!(f, "{s}")
    }
}

/// One machine configuration. For sweeping machines `position` ranges over
/// `0..=k+1` with the end-markers at the extremes; for one-way machines it
/// is the number of symbols consumed, `0..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub state: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub configurations: Vec<Configuration>,
    pub verdict: Verdict,
    pub pass_count: usize,
}

impl Trace {
    /// One configuration per line, `state @ position`, with a verdict
    /// footer.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.configurations {
            out.push_str(&format!("{} @ {}\n", c.state, c.position));
        }
        out.push_str(&format!(
            "verdict: {} (passes: {})\n",
            self.verdict, self.pass_count
        ));
        out
    }
}

/// Number of maximal unidirectional sweeps in a position sequence. See the
/// module docs for the convention on degenerate traces.
pub fn count_passes(trace: &Trace) -> usize {
    count_passes_of_positions(
        &trace
            .configurations
            .iter()
            .map(|c| c.position)
            .collect::<Vec<_>>(),
    )
}

fn count_passes_of_positions(positions: &[usize]) -> usize {
    if positions.is_empty() {
        return 0;
    }
    let mut passes = 1;
    let mut dir: Option<bool> = None; // true = rightward
    for w in positions.windows(2) {
        let step_right = w[1] > w[0];
        match dir {
            None => dir = Some(step_right),
            Some(d) if d != step_right => {
                passes += 1;
                dir = Some(step_right);
            }
            _ => {}
        }
    }
    passes
}

/// Runs a one-way machine from `start`, which must be one of its initial
/// states. The verdict is `accept` iff the input is consumed and the final
/// state is accepting.
pub fn run_one_way(m: &OneWayMachine, input: &str, start: usize) -> Result<Trace, SimError> {
    if !m.initials.contains(&start) {
        return Err(SimError::NotAnInitialState(start));
    }
    let symbols = m.alphabet.encode(input).map_err(SimError::InputSymbol)?;
    let mut configurations = vec![Configuration {
        state: m.states[start].clone(),
        position: 0,
    }];
    let mut q = start;
    for (i, &s) in symbols.iter().enumerate() {
        match m.step(s, q) {
            Some(next) => {
                q = next;
                configurations.push(Configuration {
                    state: m.states[q].clone(),
                    position: i + 1,
                });
            }
            None => {
                return Ok(Trace {
                    configurations,
                    verdict: Verdict::RejectUndefined,
                    pass_count: 1,
                });
            }
        }
    }
    let verdict = if m.accepting.contains(&q) {
        Verdict::Accept
    } else {
        Verdict::RejectNonaccepting
    };
    Ok(Trace {
        configurations,
        verdict,
        pass_count: 1,
    })
}

/// Result of running a machine with multiple initial states: one trace per
/// initial state, accepted iff any of them accepts.
#[derive(Debug, Clone)]
pub struct MultiRun {
    pub accepted: bool,
    /// `(initial state index, trace)` in ascending state order.
    pub runs: Vec<(usize, Trace)>,
}

/// Runs each initial state of an MRFA (or any one-way machine) and accepts
/// iff some computation accepts.
pub fn run_mrfa(m: &OneWayMachine, input: &str) -> Result<MultiRun, SimError> {
    let mut runs = Vec::new();
    let mut accepted = false;
    for &q0 in &m.initials {
        let trace = run_one_way(m, input, q0)?;
        accepted |= trace.verdict.is_accept();
        runs.push((q0, trace));
    }
    Ok(MultiRun { accepted, runs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    Plus,
    Minus,
}

/// Runs a sweeping machine on `input` from its initial configuration
/// `(q₀, 0)`. Loops are detected by configuration revisit, which bounds
/// every trace by `(|Q⁺|+|Q⁻|)·(k+2)+1` configurations.
pub fn run_sweeping(m: &SweepingMachine, input: &str) -> Result<Trace, SimError> {
    let symbols = m.alphabet.encode(input).map_err(SimError::InputSymbol)?;
    let k = symbols.len();

    let mut configurations = Vec::new();
    let mut visited: HashSet<(Side, usize, usize)> = HashSet::new();
    let mut side = Side::Plus;
    let mut state = m.initial;
    let mut pos = 0usize;

    let name = |side: Side, state: usize| -> String {
        match side {
            Side::Plus => m.plus_states[state].clone(),
            Side::Minus => m.minus_states[state].clone(),
        }
    };

    let verdict = loop {
        configurations.push(Configuration {
            state: name(side, state),
            position: pos,
        });
        if !visited.insert((side, state, pos)) {
            break Verdict::RejectLoop;
        }

        // Next step per the relation; None = computation ends here.
        let next: Option<(Side, usize, usize)> = if pos == 0 {
            match side {
                Side::Plus if state == m.initial => {
                    m.left_from_initial.map(|p| (Side::Plus, p, 1))
                }
                Side::Plus => None,
                Side::Minus => m.delta_left[state].map(|p| (Side::Plus, p, 1)),
            }
        } else if pos == k + 1 {
            match side {
                Side::Plus => m.delta_right[state].map(|q| (Side::Minus, q, k)),
                Side::Minus => None,
            }
        } else {
            let s = symbols[pos - 1];
            match side {
                Side::Plus => m.delta_plus[s][state].map(|p| (Side::Plus, p, pos + 1)),
                Side::Minus => m.delta_minus[s][state].map(|q| (Side::Minus, q, pos - 1)),
            }
        };

        match next {
            Some((ns, nq, np)) => {
                side = ns;
                state = nq;
                pos = np;
            }
            None => {
                let at_right = pos == k + 1;
                let at_left = pos == 0;
                let accepting = match side {
                    Side::Plus => m.accepting_plus.contains(&state),
                    Side::Minus => m.accepting_minus.contains(&state),
                };
                break match m.acceptance_mode {
                    AcceptanceMode::RightOnly => {
                        if at_right {
                            if accepting {
                                Verdict::Accept
                            } else {
                                Verdict::RejectNonaccepting
                            }
                        } else {
                            Verdict::RejectUndefined
                        }
                    }
                    AcceptanceMode::BothSides => {
                        if at_right || at_left {
                            if accepting {
                                Verdict::Accept
                            } else {
                                Verdict::RejectNonaccepting
                            }
                        } else {
                            Verdict::RejectUndefined
                        }
                    }
                };
            }
        }
    };

    let positions: Vec<usize> = configurations.iter().map(|c| c.position).collect();
    Ok(Trace {
        configurations,
        verdict,
        pass_count: count_passes_of_positions(&positions),
    })
}

/// Acceptance of either machine kind on a string.
pub fn accepts(m: &crate::core::Machine, input: &str) -> Result<bool, SimError> {
    match m {
        crate::core::Machine::OneWay(m) => Ok(run_mrfa(m, input)?.accepted),
        crate::core::Machine::Sweeping(m) => Ok(run_sweeping(m, input)?.verdict.is_accept()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{Alphabet, OneWayClass, SweepingClass};
    use std::collections::BTreeSet;

    fn singleton_a_rfa() -> OneWayMachine {
        OneWayMachine {
            alphabet: Alphabet::new(vec!['a']).unwrap(),
            states: vec!["u0".into(), "u1".into()],
            initials: BTreeSet::from([0]),
            transitions: vec![vec![Some(1), None]],
            accepting: BTreeSet::from([1]),
            declared_class: OneWayClass::Rfa,
        }
    }

    fn mod3_perfa() -> OneWayMachine {
        OneWayMachine {
            alphabet: Alphabet::new(vec!['a']).unwrap(),
            states: vec!["r0".into(), "r1".into(), "r2".into()],
            initials: BTreeSet::from([0]),
            transitions: vec![vec![Some(1), Some(2), Some(0)]],
            accepting: BTreeSet::from([0, 1]),
            declared_class: OneWayClass::PerFa,
        }
    }

    /// The sweeping witness for (aa)* ∪ {a}: forward a-cycle on {p0, p1},
    /// right turn from p1 into q0, one backward a-step q0 → q1, left turn
    /// q1 → p1, accepting p0.
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
    fn singleton_a_accepts_exactly_a() {
        let m = singleton_a_rfa();
        assert!(run_one_way(&m, "a", 0).unwrap().verdict.is_accept());
        assert_eq!(
            run_one_way(&m, "", 0).unwrap().verdict,
            Verdict::RejectNonaccepting
        );
        assert_eq!(
            run_one_way(&m, "aa", 0).unwrap().verdict,
            Verdict::RejectUndefined
        );
    }

    #[test]
    fn empty_input_accepted_iff_start_accepting() {
        let mut m = singleton_a_rfa();
        assert!(!run_one_way(&m, "", 0).unwrap().verdict.is_accept());
        m.accepting.insert(0);
        assert!(run_one_way(&m, "", 0).unwrap().verdict.is_accept());
    }

    #[test]
    fn mod3_cycle_acceptance() {
        let m = mod3_perfa();
        assert!(run_one_way(&m, "aaaa", 0).unwrap().verdict.is_accept());
        assert!(!run_one_way(&m, "aa", 0).unwrap().verdict.is_accept());
        assert!(run_one_way(&m, "", 0).unwrap().verdict.is_accept());
    }

    #[test]
    fn one_way_pass_count_is_one() {
        let m = mod3_perfa();
        assert_eq!(run_one_way(&m, "aaa", 0).unwrap().pass_count, 1);
    }

    #[test]
    fn input_symbol_error() {
        let m = mod3_perfa();
        assert_eq!(
            run_one_way(&m, "ab", 0),
            Err(SimError::InputSymbol('b'))
        );
    }

    #[test]
    fn run_from_non_initial_state_is_an_error() {
        let m = mod3_perfa();
        assert_eq!(run_one_way(&m, "a", 2), Err(SimError::NotAnInitialState(2)));
    }

    fn l2_union_mrfa() -> OneWayMachine {
        // (ab)* ∪ (ab²)*: a 2-cycle and a 3-cycle, one initial state each.
        OneWayMachine {
            alphabet: Alphabet::new(vec!['a', 'b']).unwrap(),
            states: vec![
                "c10".into(),
                "c11".into(),
                "c20".into(),
                "c21".into(),
                "c22".into(),
            ],
            initials: BTreeSet::from([0, 2]),
            transitions: vec![
                vec![Some(1), None, Some(3), None, None],
                vec![None, Some(0), None, Some(4), Some(2)],
            ],
            accepting: BTreeSet::from([0, 2]),
            declared_class: OneWayClass::Mrfa,
        }
    }

    #[test]
    fn mrfa_accepts_via_some_initial() {
        let m = l2_union_mrfa();
        let run = run_mrfa(&m, "abab").unwrap();
        assert!(run.accepted);
        // the accepting computation starts in the (ab)*-cycle initial state
        assert!(run.runs[0].1.verdict.is_accept());
        assert!(!run.runs[1].1.verdict.is_accept());

        assert!(!run_mrfa(&m, "ababb").unwrap().accepted);
        assert!(run_mrfa(&m, "").unwrap().accepted);
        assert!(run_mrfa(&m, "abbabb").unwrap().accepted);
    }

    #[test]
    fn even_or_a_golden_trace_on_a() {
        let m = even_or_a_srfa();
        let t = run_sweeping(&m, "a").unwrap();
        let expected = [
            ("p0", 0),
            ("p0", 1),
            ("p1", 2),
            ("q0", 1),
            ("q1", 0),
            ("p1", 1),
            ("p0", 2),
        ];
        let got: Vec<(String, usize)> = t
            .configurations
            .iter()
            .map(|c| (c.state.clone(), c.position))
            .collect();
        assert_eq!(
            got,
            expected
                .iter()
                .map(|(s, p)| (s.to_string(), *p))
                .collect::<Vec<_>>()
        );
        assert_eq!(t.verdict, Verdict::Accept);
        assert_eq!(t.pass_count, 3);
        assert_eq!(count_passes(&t), 3);
    }

    #[test]
    fn even_or_a_accepts_even_strings_on_first_pass() {
        let m = even_or_a_srfa();
        let t = run_sweeping(&m, "aa").unwrap();
        assert_eq!(t.verdict, Verdict::Accept);
        assert_eq!(t.pass_count, 1);
        let t = run_sweeping(&m, "").unwrap();
        assert_eq!(t.verdict, Verdict::Accept);
        assert_eq!(t.pass_count, 1);
    }

    #[test]
    fn even_or_a_rejects_aaa_by_undefined_backward_step() {
        let m = even_or_a_srfa();
        let t = run_sweeping(&m, "aaa").unwrap();
        assert_eq!(t.verdict, Verdict::RejectUndefined);
        // dies in q1 at position 2, mid-string, on the second pass
        let last = t.configurations.last().unwrap();
        assert_eq!((last.state.as_str(), last.position), ("q1", 2));
        assert_eq!(t.pass_count, 2);
    }

    #[test]
    fn sdfa_loop_is_detected() {
        let m = SweepingMachine {
            alphabet: Alphabet::new(vec!['a']).unwrap(),
            plus_states: vec!["p0".into()],
            minus_states: vec!["q0".into()],
            initial: 0,
            delta_plus: vec![vec![Some(0)]],
            delta_minus: vec![vec![Some(0)]],
            left_from_initial: Some(0),
            delta_left: vec![Some(0)],
            delta_right: vec![Some(0)],
            accepting_plus: BTreeSet::new(),
            accepting_minus: BTreeSet::new(),
            acceptance_mode: AcceptanceMode::RightOnly,
            declared_class: SweepingClass::SDfa,
        };
        let t = run_sweeping(&m, "a").unwrap();
        assert_eq!(t.verdict, Verdict::RejectLoop);
        let bound = (1 + 1) * (1 + 2) + 1;
        assert!(t.configurations.len() <= bound);
    }

    #[test]
    fn sweeping_determinism() {
        let m = even_or_a_srfa();
        assert_eq!(run_sweeping(&m, "aaaa"), run_sweeping(&m, "aaaa"));
    }

    #[test]
    fn trace_render_format() {
        let m = even_or_a_srfa();
        let t = run_sweeping(&m, "").unwrap();
        assert_eq!(t.render(), "p0 @ 0\np0 @ 1\nverdict: accept (passes: 1)\n");
    }
}

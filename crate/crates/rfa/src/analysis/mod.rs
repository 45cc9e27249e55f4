//! Language-level verification: bounded and exact equivalence, the Pin
//! non-representability test, and exhaustive search over small machines.
//!
//! Everything here treats languages through a [`LanguageOracle`]: a total
//! membership predicate plus the length-lexicographic string enumerator.
//! Bounded agreement up to a length is the desk-scale surrogate for
//! equality and is always labeled as such; exact equivalence goes through
//! determinization and the product construction instead.

mod pin;
mod search;

pub use pin::{pin_falsify, PinReport, PinWitness};
pub use search::{search_model, SearchClass, SearchOutcome, SearchParams, SearchReport};

use thiserror::Error;

use crate::core::{Alphabet, Machine, StructuralError};
use crate::regex::{Regex, RegexError};
use crate::sim::SimError;
use crate::transforms::{dfa_equiv, to_dfa, EquivResult, TransformError};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Regex(#[from] RegexError),
    #[error("the machines have different alphabets")]
    AlphabetMismatch,
    #[error("search space too large: estimated {estimate} candidates (limit {limit})")]
    Infeasible { estimate: u128, limit: u128 },
}

/// Membership predicate over an alphabet, with the length-lex enumerator.
pub struct LanguageOracle {
    alphabet: Alphabet,
    membership: Box<dyn Fn(&str) -> bool + Send + Sync>,
}

impl LanguageOracle {
    pub fn new(
        alphabet: Alphabet,
        membership: impl Fn(&str) -> bool + Send + Sync + 'static,
    ) -> Self {
        LanguageOracle {
            alphabet,
            membership: Box::new(membership),
        }
    }

    /// Oracle given by a machine's own acceptance.
    pub fn from_machine(m: &Machine) -> Result<Self, AnalysisError> {
        crate::core::validate(m)?;
        let owned = m.clone();
        Ok(LanguageOracle {
            alphabet: m.alphabet().clone(),
            membership: Box::new(move |s| crate::sim::accepts(&owned, s).unwrap_or(false)),
        })
    }

    /// Oracle given by a regular expression, decided by derivatives.
    pub fn from_regex(pattern: &str, alphabet: &Alphabet) -> Result<Self, AnalysisError> {
        let re = Regex::parse(pattern)?;
        Ok(LanguageOracle {
            alphabet: alphabet.clone(),
            membership: Box::new(move |s| re.matches(s)),
        })
    }

    pub fn contains(&self, s: &str) -> bool {
        (self.membership)(s)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// All strings of length at most `max_len`, length-lex.
    pub fn strings_up_to(&self, max_len: usize) -> Vec<String> {
        strings_up_to(&self.alphabet, max_len)
    }
}

/// Strings over `alphabet` in length-lexicographic order (the alphabet's
/// declared symbol order breaks ties), lengths `0..=max_len`.
pub fn strings_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * alphabet.len());
        for s in &frontier {
            for &c in alphabet.symbols() {
                let mut t = String::with_capacity(s.len() + 1);
                t.push_str(s);
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Compares acceptance on every string of length ≤ `max_len` in length-lex
/// order; the first disagreement is returned. Bounded evidence only.
pub fn bounded_equiv(
    a: &Machine,
    b: &Machine,
    max_len: usize,
) -> Result<EquivResult, AnalysisError> {
    crate::core::validate(a)?;
    crate::core::validate(b)?;
    if a.alphabet() != b.alphabet() {
        return Err(AnalysisError::AlphabetMismatch);
    }
    for s in strings_up_to(a.alphabet(), max_len) {
        if crate::sim::accepts(a, &s)? != crate::sim::accepts(b, &s)? {
            return Ok(EquivResult {
                equivalent: false,
                counterexample: Some(s),
            });
        }
    }
    Ok(EquivResult {
        equivalent: true,
        counterexample: None,
    })
}

/// Exact equivalence: both machines are determinized and the product
/// automaton is searched for the least distinguishing string.
pub fn exact_equiv(a: &Machine, b: &Machine) -> Result<EquivResult, AnalysisError> {
    if a.alphabet() != b.alphabet() {
        return Err(AnalysisError::AlphabetMismatch);
    }
    let da = to_dfa(a)?;
    let db = to_dfa(b)?;
    Ok(dfa_equiv(&da, &db)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_machine;

    const EVEN_OR_A: &str = "\
@kind srfa
@alphabet a
@states+ p0 p1
@states- q0 q1
@initial p0
@accept p0
@trans a + p0 -> p1
@trans a + p1 -> p0
@trans a - q0 -> q1
@left p0 -> p0
@left q1 -> p1
@right p1 -> q0
";

    #[test]
    fn length_lex_order() {
        let ab = Alphabet::new(vec!['a', 'b']).unwrap();
        let strings = strings_up_to(&ab, 2);
        assert_eq!(strings, vec!["", "a", "b", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn machine_equals_itself_boundedly() {
        let m = parse_machine(EVEN_OR_A).unwrap();
        let r = bounded_equiv(&m, &m, 6).unwrap();
        assert!(r.equivalent);
    }

    #[test]
    fn bounded_equiv_finds_shortest_difference() {
        let m = parse_machine(EVEN_OR_A).unwrap();
        let even = crate::regex::to_dfa(
            &crate::regex::Regex::parse("(aa)*").unwrap(),
            m.alphabet(),
        );
        let r = bounded_equiv(&m, &Machine::OneWay(even), 6).unwrap();
        assert!(!r.equivalent);
        assert_eq!(r.counterexample.as_deref(), Some("a"));
    }

    #[test]
    fn exact_equiv_between_sweeping_and_reference() {
        let m = parse_machine(EVEN_OR_A).unwrap();
        let reference = crate::regex::to_dfa(
            &crate::regex::Regex::parse("(aa)*|a").unwrap(),
            m.alphabet(),
        );
        let r = exact_equiv(&m, &Machine::OneWay(reference)).unwrap();
        assert!(r.equivalent, "{:?}", r.counterexample);
    }

    #[test]
    fn exact_agrees_with_bounded_when_equivalent() {
        let m = parse_machine(EVEN_OR_A).unwrap();
        let reference = Machine::OneWay(crate::regex::to_dfa(
            &crate::regex::Regex::parse("(aa)*|a").unwrap(),
            m.alphabet(),
        ));
        if exact_equiv(&m, &reference).unwrap().equivalent {
            for n in [0, 4, 8, 12] {
                assert!(bounded_equiv(&m, &reference, n).unwrap().equivalent);
            }
        }
    }

    #[test]
    fn oracle_from_regex_and_machine_agree() {
        let m = parse_machine(EVEN_OR_A).unwrap();
        let by_machine = LanguageOracle::from_machine(&m).unwrap();
        let by_regex = LanguageOracle::from_regex("(aa)*|a", m.alphabet()).unwrap();
        for s in by_regex.strings_up_to(10) {
            assert_eq!(by_machine.contains(&s), by_regex.contains(&s), "{s:?}");
        }
    }
}

//! Bounded exhaustive search for a machine of a given class agreeing with a
//! target language on all strings up to a length.
//!
//! Candidates are enumerated by state count, per-symbol transition tables,
//! initial-state count and accepting subset. Isomorphic duplicates are
//! pruned by a canonicity test instead of a seen-set: a candidate is
//! admitted only if breadth-first search from its initial states, taking
//! symbols in alphabet order, visits the states exactly in index order.
//! Every machine is isomorphic to one of that form on its reachable part,
//! and machines with unreachable states reappear as smaller candidates, so
//! the pruning loses nothing. Exhaustion is bounded evidence of
//! non-existence at the given sizes, never a proof.
//!
//! Enumeration and evaluation are fully deterministic, so the first find in
//! canonical order is a stable result regardless of how the work would be
//! scheduled.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use crate::core::{Alphabet, OneWayClass, OneWayMachine};
use crate::funcmath::{count_partial_injections, enumerate_partial_injections};

use super::{AnalysisError, LanguageOracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchClass {
    Dfa,
    Rfa,
    /// 1RFA with exactly one accepting state.
    Rfa1,
    PerFa,
    /// 1PerFA with exactly one accepting state.
    PerFa1,
    Mrfa,
}

impl fmt::Display for SearchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SearchClass::Dfa => "1dfa",
            SearchClass::Rfa => "1rfa",
            SearchClass::Rfa1 => "1rfa1",
            SearchClass::PerFa => "1perfa",
            SearchClass::PerFa1 => "1perfa1",
            SearchClass::Mrfa => "mrfa",
        };
        write!(f, "{s}")
    }
}

impl SearchClass {
    pub fn from_token(tok: &str) -> Option<SearchClass> {
        Some(match tok {
            "1dfa" => SearchClass::Dfa,
            "1rfa" => SearchClass::Rfa,
            "1rfa1" => SearchClass::Rfa1,
            "1perfa" => SearchClass::PerFa,
            "1perfa1" => SearchClass::PerFa1,
            "mrfa" => SearchClass::Mrfa,
            _ => return None,
        })
    }

    fn single_accepting(self) -> bool {
        matches!(self, SearchClass::Rfa1 | SearchClass::PerFa1)
    }

    fn declared(self) -> OneWayClass {
        match self {
            SearchClass::Dfa => OneWayClass::Dfa,
            SearchClass::Rfa | SearchClass::Rfa1 => OneWayClass::Rfa,
            SearchClass::PerFa | SearchClass::PerFa1 => OneWayClass::PerFa,
            SearchClass::Mrfa => OneWayClass::Mrfa,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub class: SearchClass,
    pub max_states: usize,
    pub alphabet: Alphabet,
    pub max_len: usize,
    /// Cap on initial states, only meaningful for [`SearchClass::Mrfa`].
    pub max_initials: Option<usize>,
    /// Refusal threshold on the candidate estimate; `None` for the default.
    pub limit: Option<u128>,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub class: SearchClass,
    pub max_states: usize,
    pub alphabet: String,
    pub max_len: usize,
    pub max_initials: Option<usize>,
    /// Transition/initial/accepting combinations enumerated.
    pub candidates_enumerated: u64,
    /// Candidates surviving the canonicity pruning and actually evaluated.
    pub candidates_evaluated: u64,
    pub elapsed_ms: u128,
}

impl SearchReport {
    /// Machine-readable rendering; the elapsed-time field is excluded from
    /// golden comparisons by consumers.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("result: exhausted\n");
        out.push_str(&format!("class: {}\n", self.class));
        out.push_str(&format!("max-states: {}\n", self.max_states));
        out.push_str(&format!("alphabet: {}\n", self.alphabet));
        out.push_str(&format!("max-len: {}\n", self.max_len));
        if let Some(i) = self.max_initials {
            out.push_str(&format!("max-initials: {i}\n"));
        }
        out.push_str(&format!("candidates-enumerated: {}\n", self.candidates_enumerated));
        out.push_str(&format!("candidates-evaluated: {}\n", self.candidates_evaluated));
        out.push_str(&format!("elapsed-ms: {}\n", self.elapsed_ms));
        out
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(OneWayMachine),
    Exhausted(SearchReport),
}

const DEFAULT_LIMIT: u128 = 200_000_000;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Rough candidate count used for the feasibility refusal.
fn estimate(params: &SearchParams) -> u128 {
    let n_sym = params.alphabet.len() as u32;
    let mut total = 0u128;
    for n in 1..=params.max_states {
        let per_symbol: u128 = match params.class {
            SearchClass::Dfa => ((n + 1) as u128).pow(n as u32),
            SearchClass::Rfa | SearchClass::Rfa1 | SearchClass::Mrfa => {
                count_partial_injections(n, n) as u128
            }
            SearchClass::PerFa | SearchClass::PerFa1 => factorial(n),
        };
        let initials: u128 = match params.class {
            SearchClass::Mrfa => params.max_initials.unwrap_or(n).min(n) as u128,
            _ => 1,
        };
        total = total.saturating_add(
            per_symbol
                .saturating_pow(n_sym)
                .saturating_mul(initials)
                .saturating_mul(1u128 << n),
        );
    }
    total
}

/// All transition rows (tables `state → Option<state>`) available to the
/// class at `n` states, in a fixed canonical order.
fn candidate_rows(class: SearchClass, n: usize) -> Vec<Vec<Option<usize>>> {
    match class {
        SearchClass::Dfa => {
            // all (n+1)^n partial functions, counting in base n+1
            let mut rows = Vec::new();
            let mut digits = vec![0usize; n];
            loop {
                rows.push(
                    digits
                        .iter()
                        .map(|&d| if d == 0 { None } else { Some(d - 1) })
                        .collect(),
                );
                let mut i = 0;
                loop {
                    if i == n {
                        return rows;
                    }
                    digits[i] += 1;
                    if digits[i] <= n {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
            }
        }
        SearchClass::Rfa | SearchClass::Rfa1 | SearchClass::Mrfa => {
            enumerate_partial_injections(n, n)
                .into_iter()
                .map(|f| (0..n).map(|x| f.apply(x)).collect())
                .collect()
        }
        SearchClass::PerFa | SearchClass::PerFa1 => enumerate_partial_injections(n, n)
            .into_iter()
            .filter(|f| f.is_bijection())
            .map(|f| (0..n).map(|x| f.apply(x)).collect())
            .collect(),
    }
}

/// Breadth-first canonicity: initial states are `0..m`, and exploring
/// symbols in order must discover states exactly in index order, covering
/// all of them.
fn is_canonical(n: usize, rows: &[&Vec<Option<usize>>], m_init: usize) -> bool {
    let mut seen = vec![false; n];
    let mut order: Vec<usize> = (0..m_init).collect();
    seen[..m_init].fill(true);
    let mut next = m_init;
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for row in rows {
            if let Some(t) = row[q] {
                if !seen[t] {
                    if t != next {
                        return false;
                    }
                    seen[t] = true;
                    order.push(t);
                    next += 1;
                }
            }
        }
    }
    next == n
}

/// Enumerates machines of the class up to `max_states` in canonical order
/// and returns the first one agreeing with `target` on every string of
/// length ≤ `max_len`, or an exhaustion report.
pub fn search_model(
    params: &SearchParams,
    target: &LanguageOracle,
) -> Result<SearchOutcome, AnalysisError> {
    let limit = params.limit.unwrap_or(DEFAULT_LIMIT);
    let est = estimate(params);
    if est > limit {
        return Err(AnalysisError::Infeasible {
            estimate: est,
            limit,
        });
    }

    let started = Instant::now();
    let n_sym = params.alphabet.len();
    let table: Vec<(Vec<usize>, bool)> = super::strings_up_to(&params.alphabet, params.max_len)
        .into_iter()
        .map(|s| {
            let encoded = params.alphabet.encode(&s).expect("enumerated over alphabet");
            let expect = target.contains(&s);
            (encoded, expect)
        })
        .collect();

    let mut enumerated = 0u64;
    let mut evaluated = 0u64;

    for n in 1..=params.max_states {
        let rows = candidate_rows(params.class, n);
        let init_counts: Vec<usize> = match params.class {
            SearchClass::Mrfa => (1..=params.max_initials.unwrap_or(n).min(n)).collect(),
            _ => vec![1],
        };

        // odometer over one row choice per symbol
        let mut choice = vec![0usize; n_sym];
        'tables: loop {
            let current: Vec<&Vec<Option<usize>>> = choice.iter().map(|&i| &rows[i]).collect();
            for &m_init in &init_counts {
                enumerated += 1u64 << n;
                if !is_canonical(n, &current, m_init) {
                    continue;
                }
                for accept_mask in 0u32..(1u32 << n) {
                    if params.class.single_accepting()
                        && accept_mask.count_ones() != 1
                    {
                        continue;
                    }
                    evaluated += 1;
                    let ok = table.iter().all(|(symbols, expect)| {
                        let accepted = (0..m_init).any(|q0| {
                            let mut cur = Some(q0);
                            for &s in symbols {
                                cur = cur.and_then(|q| current[s][q]);
                                if cur.is_none() {
                                    break;
                                }
                            }
                            cur.is_some_and(|q| accept_mask & (1 << q) != 0)
                        });
                        accepted == *expect
                    });
                    if ok {
                        let machine = OneWayMachine {
                            alphabet: params.alphabet.clone(),
                            states: (0..n).map(|i| format!("q{i}")).collect(),
                            initials: (0..m_init).collect(),
                            transitions: current.iter().map(|r| (*r).clone()).collect(),
                            accepting: (0..n)
                                .filter(|&q| accept_mask & (1 << q) != 0)
                                .collect::<BTreeSet<_>>(),
                            declared_class: params.class.declared(),
                        };
                        return Ok(SearchOutcome::Found(machine));
                    }
                }
            }
            // advance the odometer
            let mut i = 0;
            loop {
                if i == n_sym {
                    break 'tables;
                }
                choice[i] += 1;
                if choice[i] < rows.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    Ok(SearchOutcome::Exhausted(SearchReport {
        class: params.class,
        max_states: params.max_states,
        alphabet: params.alphabet.symbols().iter().collect(),
        max_len: params.max_len,
        max_initials: params.max_initials,
        candidates_enumerated: enumerated,
        candidates_evaluated: evaluated,
        elapsed_ms: started.elapsed().as_millis(),
    }))
}

//! Minimal regular-expression engine used to build reference languages.
//!
//! Supports exactly what the witness languages need: single-character
//! literals, concatenation, union `|`, grouping and Kleene star. Membership
//! is decided directly on the syntax tree by Brzozowski derivatives, so it
//! shares no code with the automata under test; [`to_dfa`] additionally
//! compiles a regex to a reference DFA through a Thompson construction and
//! the subset construction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::core::{Alphabet, OneWayClass, OneWayMachine};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegexError {
    #[error("unbalanced parenthesis at byte {0}")]
    Unbalanced(usize),
    #[error("dangling '*' at byte {0}")]
    DanglingStar(usize),
    #[error("unexpected character '{0}'")]
    Unexpected(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    /// The empty language.
    Empty,
    /// The empty string.
    Epsilon,
    Literal(char),
    Concat(Arc<Regex>, Arc<Regex>),
    Alt(Arc<Regex>, Arc<Regex>),
    Star(Arc<Regex>),
}

impl Regex {
    pub fn parse(src: &str) -> Result<Regex, RegexError> {
        let chars: Vec<char> = src.chars().collect();
        let mut pos = 0;
        let re = parse_alt(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(RegexError::Unbalanced(pos));
        }
        Ok(re)
    }

    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Literal(_) => false,
            Regex::Epsilon | Regex::Star(_) => true,
            Regex::Concat(a, b) => a.nullable() && b.nullable(),
            Regex::Alt(a, b) => a.nullable() || b.nullable(),
        }
    }

    /// Brzozowski derivative with respect to `c`, lightly simplified.
    pub fn derivative(&self, c: char) -> Regex {
        match self {
            Regex::Empty | Regex::Epsilon => Regex::Empty,
            Regex::Literal(l) => {
                if *l == c {
                    Regex::Epsilon
                } else {
                    Regex::Empty
                }
            }
            Regex::Concat(a, b) => {
                let left = concat(a.derivative(c), (**b).clone());
                if a.nullable() {
                    alt(left, b.derivative(c))
                } else {
                    left
                }
            }
            Regex::Alt(a, b) => alt(a.derivative(c), b.derivative(c)),
            Regex::Star(a) => concat(a.derivative(c), Regex::Star(a.clone())),
        }
    }

    pub fn matches(&self, s: &str) -> bool {
        let mut re = self.clone();
        for c in s.chars() {
            re = re.derivative(c);
            if re == Regex::Empty {
                return false;
            }
        }
        re.nullable()
    }
}

fn concat(a: Regex, b: Regex) -> Regex {
    match (&a, &b) {
        (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
        (Regex::Epsilon, _) => b,
        (_, Regex::Epsilon) => a,
        _ => Regex::Concat(Arc::new(a), Arc::new(b)),
    }
}

fn alt(a: Regex, b: Regex) -> Regex {
    match (&a, &b) {
        (Regex::Empty, _) => b,
        (_, Regex::Empty) => a,
        _ if a == b => a,
        _ => Regex::Alt(Arc::new(a), Arc::new(b)),
    }
}

fn parse_alt(chars: &[char], pos: &mut usize) -> Result<Regex, RegexError> {
    let mut re = parse_cat(chars, pos)?;
    while *pos < chars.len() && chars[*pos] == '|' {
        *pos += 1;
        re = Regex::Alt(Arc::new(re), Arc::new(parse_cat(chars, pos)?));
    }
    Ok(re)
}

fn parse_cat(chars: &[char], pos: &mut usize) -> Result<Regex, RegexError> {
    let mut re = Regex::Epsilon;
    let mut first = true;
    while *pos < chars.len() {
        let c = chars[*pos];
        let atom = match c {
            '|' | ')' => break,
            '*' => return Err(RegexError::DanglingStar(*pos)),
            '(' => {
                *pos += 1;
                let inner = parse_alt(chars, pos)?;
                if *pos >= chars.len() || chars[*pos] != ')' {
                    return Err(RegexError::Unbalanced(*pos));
                }
                *pos += 1;
                inner
            }
            c => {
                *pos += 1;
                Regex::Literal(c)
            }
        };
        let mut repeated = atom;
        while *pos < chars.len() && chars[*pos] == '*' {
            *pos += 1;
            repeated = Regex::Star(Arc::new(repeated));
        }
        re = if first {
            repeated
        } else {
            Regex::Concat(Arc::new(re), Arc::new(repeated))
        };
        first = false;
    }
    Ok(re)
}

struct Nfa {
    n_states: usize,
    eps: Vec<Vec<usize>>,
    by_char: Vec<BTreeMap<char, Vec<usize>>>,
    start: usize,
    accept: usize,
}

impl Nfa {
    fn new() -> Self {
        Nfa {
            n_states: 0,
            eps: Vec::new(),
            by_char: Vec::new(),
            start: 0,
            accept: 0,
        }
    }

    fn fresh(&mut self) -> usize {
        self.n_states += 1;
        self.eps.push(Vec::new());
        self.by_char.push(BTreeMap::new());
        self.n_states - 1
    }

    /// Thompson construction: returns (entry, exit) of the fragment.
    fn build(&mut self, re: &Regex) -> (usize, usize) {
        match re {
            Regex::Empty => {
                let s = self.fresh();
                let t = self.fresh();
                (s, t)
            }
            Regex::Epsilon => {
                let s = self.fresh();
                (s, s)
            }
            Regex::Literal(c) => {
                let s = self.fresh();
                let t = self.fresh();
                self.by_char[s].entry(*c).or_default().push(t);
                (s, t)
            }
            Regex::Concat(a, b) => {
                let (sa, ta) = self.build(a);
                let (sb, tb) = self.build(b);
                self.eps[ta].push(sb);
                (sa, tb)
            }
            Regex::Alt(a, b) => {
                let s = self.fresh();
                let t = self.fresh();
                let (sa, ta) = self.build(a);
                let (sb, tb) = self.build(b);
                self.eps[s].push(sa);
                self.eps[s].push(sb);
                self.eps[ta].push(t);
                self.eps[tb].push(t);
                (s, t)
            }
            Regex::Star(a) => {
                let s = self.fresh();
                let (sa, ta) = self.build(a);
                self.eps[s].push(sa);
                self.eps[ta].push(s);
                (s, s)
            }
        }
    }

    fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if out.insert(t) {
                    stack.push(t);
                }
            }
        }
        out
    }
}

/// Compiles a regex to a partial reference DFA over `alphabet` via Thompson
/// and subset construction. Reachable subsets only; an all-dead subset is an
/// undefined transition.
pub fn to_dfa(re: &Regex, alphabet: &Alphabet) -> OneWayMachine {
    let mut nfa = Nfa::new();
    let (start, accept) = nfa.build(re);
    nfa.start = start;
    nfa.accept = accept;

    let initial = nfa.closure(&BTreeSet::from([nfa.start]));
    let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut order: Vec<BTreeSet<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(initial.clone(), 0);
    order.push(initial.clone());
    queue.push_back(initial);
    let mut table: Vec<Vec<Option<usize>>> = vec![Vec::new(); alphabet.len()];

    while let Some(set) = queue.pop_front() {
        for (s, &c) in alphabet.symbols().iter().enumerate() {
            let mut next = BTreeSet::new();
            for &q in &set {
                if let Some(ts) = nfa.by_char[q].get(&c) {
                    next.extend(ts.iter().copied());
                }
            }
            let entry = if next.is_empty() {
                None
            } else {
                let next = nfa.closure(&next);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    order.push(next.clone());
                    queue.push_back(next);
                    order.len() - 1
                });
                Some(id)
            };
            table[s].push(entry);
        }
    }

    let accepting: BTreeSet<usize> = order
        .iter()
        .enumerate()
        .filter(|(_, set)| set.contains(&nfa.accept))
        .map(|(i, _)| i)
        .collect();
    OneWayMachine {
        alphabet: alphabet.clone(),
        states: (0..order.len()).map(|i| format!("s{i}")).collect(),
        initials: BTreeSet::from([0]),
        transitions: table,
        accepting,
        declared_class: OneWayClass::Dfa,
    }
}

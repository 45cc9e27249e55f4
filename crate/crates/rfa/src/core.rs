//! Machine data model, structural validation and class inference.
//!
//! Two carrier types cover all six automaton variants:
//!
//! * [`OneWayMachine`] — 1DFA, 1RFA, 1PerFA and MRFA, distinguished by a
//!   declared [`OneWayClass`]. A 1DFA may be partial; a 1RFA additionally has
//!   injective per-symbol maps; a 1PerFA has total bijections; an MRFA is a
//!   1RFA with a set of initial states.
//! * [`SweepingMachine`] — sDFA, sRFA and 2PerFA. States are split into a
//!   forward set `Q⁺` and a backward set `Q⁻`; besides the per-symbol maps
//!   `δ⁺`/`δ⁻` there are end-marker maps `δ⊢ : {q₀} ∪ Q⁻ ⇀ Q⁺` and
//!   `δ⊣ : Q⁺ ⇀ Q⁻`. Acceptance is either at the right end-marker only or,
//!   for the both-sides variant, at either end-marker.
//!
//! The declared class is what a file claims; [`validate`] reports every
//! violated class invariant, and [`infer_one_way_class`] /
//! [`infer_sweeping_class`] compute the strongest class that actually holds.
//! A declared class weaker than the inferred one is a warning, not an error.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Index of a state in the owning machine's state list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ordered list of distinct single-character symbols. The declaration order
/// is canonical: serialization, string enumeration and completion
/// tie-breaking all follow it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Self, StructuralError> {
        if symbols.is_empty() {
            return Err(StructuralError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for &c in &symbols {
            if !seen.insert(c) {
                return Err(StructuralError::DuplicateSymbol(c));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    /// Symbol indices of `input`, or the first character that is not in the
    /// alphabet.
    pub fn encode(&self, input: &str) -> Result<Vec<usize>, char> {
        input
            .chars()
            .map(|c| self.index_of(c).ok_or(c))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OneWayClass {
    Dfa,
    Rfa,
    PerFa,
    Mrfa,
}

impl fmt::Display for OneWayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OneWayClass::Dfa => "1dfa",
            OneWayClass::Rfa => "1rfa",
            OneWayClass::PerFa => "1perfa",
            OneWayClass::Mrfa => "mrfa",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SweepingClass {
    SDfa,
    SRfa,
    TwoPerFa,
}

impl fmt::Display for SweepingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SweepingClass::SDfa => "sdfa",
            SweepingClass::SRfa => "srfa",
            SweepingClass::TwoPerFa => "2perfa",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AcceptanceMode {
    RightOnly,
    BothSides,
}

/// One-way automaton over positional state indices. `transitions[s][q]` is
/// the target of state `q` on the `s`-th alphabet symbol, `None` when
/// undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneWayMachine {
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub initials: BTreeSet<usize>,
    pub transitions: Vec<Vec<Option<usize>>>,
    pub accepting: BTreeSet<usize>,
    pub declared_class: OneWayClass,
}

impl OneWayMachine {
    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    /// The single initial state; panics if there is not exactly one. Use
    /// after validation for DFA/RFA/PerFA machines.
    pub fn single_initial(&self) -> usize {
        assert_eq!(self.initials.len(), 1, "machine has multiple initials");
        *self.initials.iter().next().unwrap()
    }

    pub fn step(&self, sym: usize, q: usize) -> Option<usize> {
        self.transitions[sym][q]
    }
}

/// Sweeping automaton. Plus and minus states live in separate index spaces;
/// `delta_left` is split into the entry for the initial state and the table
/// over `Q⁻`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepingMachine {
    pub alphabet: Alphabet,
    pub plus_states: Vec<String>,
    pub minus_states: Vec<String>,
    /// Index into `plus_states`.
    pub initial: usize,
    /// `delta_plus[s][p]`: forward step on the `s`-th symbol.
    pub delta_plus: Vec<Vec<Option<usize>>>,
    /// `delta_minus[s][q]`: backward step on the `s`-th symbol.
    pub delta_minus: Vec<Vec<Option<usize>>>,
    /// `δ⊢(q₀)`, the turn at the left end-marker from the initial state.
    pub left_from_initial: Option<usize>,
    /// `δ⊢` on `Q⁻`, targets in `Q⁺`.
    pub delta_left: Vec<Option<usize>>,
    /// `δ⊣` on `Q⁺`, targets in `Q⁻`.
    pub delta_right: Vec<Option<usize>>,
    pub accepting_plus: BTreeSet<usize>,
    /// Only meaningful under [`AcceptanceMode::BothSides`].
    pub accepting_minus: BTreeSet<usize>,
    pub acceptance_mode: AcceptanceMode,
    pub declared_class: SweepingClass,
}

impl SweepingMachine {
    pub fn plus_name(&self, p: usize) -> &str {
        &self.plus_states[p]
    }

    pub fn minus_name(&self, q: usize) -> &str {
        &self.minus_states[q]
    }
}

/// Either machine kind, for interfaces that accept both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Machine {
    OneWay(OneWayMachine),
    Sweeping(SweepingMachine),
}

impl Machine {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Machine::OneWay(m) => &m.alphabet,
            Machine::Sweeping(m) => &m.alphabet,
        }
    }

    pub fn class_name(&self) -> String {
        match self {
            Machine::OneWay(m) => m.declared_class.to_string(),
            Machine::Sweeping(m) => match (m.declared_class, m.acceptance_mode) {
                (SweepingClass::SRfa, AcceptanceMode::BothSides) => "srfa2".to_string(),
                (c, _) => c.to_string(),
            },
        }
    }
}

/// Structural problems: the value does not describe a machine at all, as
/// opposed to a machine of the wrong class.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructuralError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate alphabet symbol '{0}'")]
    DuplicateSymbol(char),
    #[error("machine has no states")]
    NoStates,
    #[error("duplicate state name '{0}'")]
    DuplicateStateName(String),
    #[error("no initial state")]
    NoInitial,
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("transition table has {found} symbol rows, alphabet has {expected}")]
    BadTableShape { expected: usize, found: usize },
    #[error("transition table row for symbol {symbol} has {found} entries, expected {expected}")]
    BadRowLength {
        symbol: usize,
        expected: usize,
        found: usize,
    },
}

/// A violated class invariant, with the offending symbol/state spelled out
/// in the message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationCode {
    NotInjective,
    NotTotal,
    InitialCount,
    AcceptingOnWrongSide,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

/// Result of validating a machine against its declared class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Strongest class whose invariants all hold; `None` when the machine
    /// fits no class (multiple initial states with non-injective maps).
    pub inferred: Option<String>,
    /// Set when the machine satisfies a strictly stronger class than
    /// declared.
    pub stronger_class: Option<String>,
}

impl ValidationReport {
    /// Empty iff the machine satisfies its declared class.
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_table(
    table: &[Vec<Option<usize>>],
    n_symbols: usize,
    n_states: usize,
    target_bound: usize,
) -> Result<(), StructuralError> {
    if table.len() != n_symbols {
        return Err(StructuralError::BadTableShape {
            expected: n_symbols,
            found: table.len(),
        });
    }
    for (symbol, row) in table.iter().enumerate() {
        if row.len() != n_states {
            return Err(StructuralError::BadRowLength {
                symbol,
                expected: n_states,
                found: row.len(),
            });
        }
        for tgt in row.iter().flatten() {
            if *tgt >= target_bound {
                return Err(StructuralError::StateOutOfRange(*tgt));
            }
        }
    }
    Ok(())
}

fn check_names_unique(names: impl Iterator<Item = impl AsRef<str>>) -> Result<(), StructuralError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n.as_ref().to_string()) {
            return Err(StructuralError::DuplicateStateName(n.as_ref().to_string()));
        }
    }
    Ok(())
}

fn injectivity_violations(
    row: &[Option<usize>],
    what: &str,
    name_of: impl Fn(usize) -> String,
    target_name_of: impl Fn(usize) -> String,
    out: &mut Vec<Violation>,
) {
    let mut first_source: Vec<Option<usize>> = Vec::new();
    for (src, tgt) in row.iter().enumerate() {
        if let Some(t) = tgt {
            if first_source.len() <= *t {
                first_source.resize(*t + 1, None);
            }
            if let Some(prev) = first_source[*t] {
                out.push(Violation {
                    code: ViolationCode::NotInjective,
                    message: format!(
                        "{what} not injective: {} and {} both map to {}",
                        name_of(prev),
                        name_of(src),
                        target_name_of(*t)
                    ),
                });
            } else {
                first_source[*t] = Some(src);
            }
        }
    }
}

fn totality_violations(
    row: &[Option<usize>],
    what: &str,
    name_of: impl Fn(usize) -> String,
    out: &mut Vec<Violation>,
) {
    for (src, tgt) in row.iter().enumerate() {
        if tgt.is_none() {
            out.push(Violation {
                code: ViolationCode::NotTotal,
                message: format!("{what} not total: undefined on {}", name_of(src)),
            });
        }
    }
}

fn structural_one_way(m: &OneWayMachine) -> Result<(), StructuralError> {
    if m.states.is_empty() {
        return Err(StructuralError::NoStates);
    }
    check_names_unique(m.states.iter())?;
    if m.initials.is_empty() {
        return Err(StructuralError::NoInitial);
    }
    for &q in m.initials.iter().chain(m.accepting.iter()) {
        if q >= m.states.len() {
            return Err(StructuralError::StateOutOfRange(q));
        }
    }
    check_table(&m.transitions, m.alphabet.len(), m.states.len(), m.states.len())
}

fn structural_sweeping(m: &SweepingMachine) -> Result<(), StructuralError> {
    if m.plus_states.is_empty() {
        return Err(StructuralError::NoStates);
    }
    check_names_unique(m.plus_states.iter().chain(m.minus_states.iter()))?;
    if m.initial >= m.plus_states.len() {
        return Err(StructuralError::StateOutOfRange(m.initial));
    }
    check_table(
        &m.delta_plus,
        m.alphabet.len(),
        m.plus_states.len(),
        m.plus_states.len(),
    )?;
    check_table(
        &m.delta_minus,
        m.alphabet.len(),
        m.minus_states.len(),
        m.minus_states.len(),
    )?;
    if m.delta_left.len() != m.minus_states.len() {
        return Err(StructuralError::BadRowLength {
            symbol: 0,
            expected: m.minus_states.len(),
            found: m.delta_left.len(),
        });
    }
    if m.delta_right.len() != m.plus_states.len() {
        return Err(StructuralError::BadRowLength {
            symbol: 0,
            expected: m.plus_states.len(),
            found: m.delta_right.len(),
        });
    }
    for tgt in m.delta_left.iter().flatten().chain(m.left_from_initial.iter()) {
        if *tgt >= m.plus_states.len() {
            return Err(StructuralError::StateOutOfRange(*tgt));
        }
    }
    for tgt in m.delta_right.iter().flatten() {
        if *tgt >= m.minus_states.len() {
            return Err(StructuralError::StateOutOfRange(*tgt));
        }
    }
    for &p in &m.accepting_plus {
        if p >= m.plus_states.len() {
            return Err(StructuralError::StateOutOfRange(p));
        }
    }
    for &q in &m.accepting_minus {
        if q >= m.minus_states.len() {
            return Err(StructuralError::StateOutOfRange(q));
        }
    }
    Ok(())
}

fn one_way_is_injective(m: &OneWayMachine) -> bool {
    m.transitions.iter().all(|row| {
        let defined: Vec<usize> = row.iter().flatten().copied().collect();
        let set: BTreeSet<usize> = defined.iter().copied().collect();
        set.len() == defined.len()
    })
}

fn one_way_is_total_bijective(m: &OneWayMachine) -> bool {
    one_way_is_injective(m)
        && m.transitions
            .iter()
            .all(|row| row.iter().all(|t| t.is_some()))
}

/// Strongest one-way class: `PerFA ⊃ RFA ⊃ DFA` for single-initial machines,
/// `MRFA` for injective multi-initial machines, `None` otherwise.
pub fn infer_one_way_class(m: &OneWayMachine) -> Option<OneWayClass> {
    if m.initials.len() > 1 {
        return one_way_is_injective(m).then_some(OneWayClass::Mrfa);
    }
    if one_way_is_total_bijective(m) {
        Some(OneWayClass::PerFa)
    } else if one_way_is_injective(m) {
        Some(OneWayClass::Rfa)
    } else {
        Some(OneWayClass::Dfa)
    }
}

fn sweeping_is_injective(m: &SweepingMachine) -> bool {
    let rows_ok = |table: &[Vec<Option<usize>>]| {
        table.iter().all(|row| {
            let defined: Vec<usize> = row.iter().flatten().copied().collect();
            let set: BTreeSet<usize> = defined.iter().copied().collect();
            set.len() == defined.len()
        })
    };
    let left: Vec<usize> = m
        .delta_left
        .iter()
        .flatten()
        .chain(m.left_from_initial.iter())
        .copied()
        .collect();
    let left_set: BTreeSet<usize> = left.iter().copied().collect();
    let right: Vec<usize> = m.delta_right.iter().flatten().copied().collect();
    let right_set: BTreeSet<usize> = right.iter().copied().collect();
    rows_ok(&m.delta_plus)
        && rows_ok(&m.delta_minus)
        && left_set.len() == left.len()
        && right_set.len() == right.len()
}

fn sweeping_is_total_bijective_inside(m: &SweepingMachine) -> bool {
    sweeping_is_injective(m)
        && m.delta_plus
            .iter()
            .chain(m.delta_minus.iter())
            .all(|row| row.iter().all(|t| t.is_some()))
}

/// Strongest sweeping class: `2PerFA ⊃ sRFA ⊃ sDFA`.
pub fn infer_sweeping_class(m: &SweepingMachine) -> SweepingClass {
    if sweeping_is_total_bijective_inside(m) {
        SweepingClass::TwoPerFa
    } else if sweeping_is_injective(m) {
        SweepingClass::SRfa
    } else {
        SweepingClass::SDfa
    }
}

pub fn validate_one_way(m: &OneWayMachine) -> Result<ValidationReport, StructuralError> {
    structural_one_way(m)?;
    let mut violations = Vec::new();
    let name = |q: usize| m.states[q].clone();

    if m.declared_class != OneWayClass::Mrfa && m.initials.len() != 1 {
        violations.push(Violation {
            code: ViolationCode::InitialCount,
            message: format!(
                "{} requires exactly one initial state, found {}",
                m.declared_class,
                m.initials.len()
            ),
        });
    }
    if matches!(
        m.declared_class,
        OneWayClass::Rfa | OneWayClass::PerFa | OneWayClass::Mrfa
    ) {
        for (s, row) in m.transitions.iter().enumerate() {
            let sym = m.alphabet.symbols()[s];
            injectivity_violations(row, &format!("δ_{sym}"), name, name, &mut violations);
        }
    }
    if m.declared_class == OneWayClass::PerFa {
        for (s, row) in m.transitions.iter().enumerate() {
            let sym = m.alphabet.symbols()[s];
            totality_violations(row, &format!("δ_{sym}"), name, &mut violations);
        }
    }

    let inferred = infer_one_way_class(m);
    let stronger_class = match inferred {
        Some(c) if violations.is_empty() && strictly_stronger_one_way(c, m.declared_class) => {
            Some(c.to_string())
        }
        _ => None,
    };
    Ok(ValidationReport {
        violations,
        inferred: inferred.map(|c| c.to_string()),
        stronger_class,
    })
}

fn strictly_stronger_one_way(actual: OneWayClass, declared: OneWayClass) -> bool {
    let rank = |c: OneWayClass| match c {
        OneWayClass::Dfa => 0,
        OneWayClass::Rfa => 1,
        OneWayClass::PerFa => 2,
        OneWayClass::Mrfa => 0, // MRFA is its own axis, not stronger than 1DFA
    };
    actual != OneWayClass::Mrfa && declared != OneWayClass::Mrfa && rank(actual) > rank(declared)
}

pub fn validate_sweeping(m: &SweepingMachine) -> Result<ValidationReport, StructuralError> {
    structural_sweeping(m)?;
    let mut violations = Vec::new();
    let plus_name = |p: usize| m.plus_states[p].clone();
    let minus_name = |q: usize| m.minus_states[q].clone();

    if m.acceptance_mode == AcceptanceMode::RightOnly && !m.accepting_minus.is_empty() {
        for &q in &m.accepting_minus {
            violations.push(Violation {
                code: ViolationCode::AcceptingOnWrongSide,
                message: format!(
                    "accepting state {} is in Q⁻ but acceptance is right-only",
                    m.minus_states[q]
                ),
            });
        }
    }
    if matches!(
        m.declared_class,
        SweepingClass::SRfa | SweepingClass::TwoPerFa
    ) {
        for (s, row) in m.delta_plus.iter().enumerate() {
            let sym = m.alphabet.symbols()[s];
            injectivity_violations(row, &format!("δ⁺_{sym}"), plus_name, plus_name, &mut violations);
        }
        for (s, row) in m.delta_minus.iter().enumerate() {
            let sym = m.alphabet.symbols()[s];
            injectivity_violations(
                row,
                &format!("δ⁻_{sym}"),
                minus_name,
                minus_name,
                &mut violations,
            );
        }
        // δ⊢ over {q₀} ∪ Q⁻, δ⊣ over Q⁺.
        let mut left_row: Vec<Option<usize>> = m.delta_left.clone();
        left_row.push(m.left_from_initial);
        let left_name = |i: usize| {
            if i < m.minus_states.len() {
                m.minus_states[i].clone()
            } else {
                m.plus_states[m.initial].clone()
            }
        };
        injectivity_violations(&left_row, "δ⊢", left_name, plus_name, &mut violations);
        injectivity_violations(&m.delta_right, "δ⊣", plus_name, minus_name, &mut violations);
    }
    if m.declared_class == SweepingClass::TwoPerFa {
        for (s, row) in m.delta_plus.iter().enumerate() {
            let sym = m.alphabet.symbols()[s];
            totality_violations(row, &format!("δ⁺_{sym}"), plus_name, &mut violations);
        }
        for (s, row) in m.delta_minus.iter().enumerate() {
            let sym = m.alphabet.symbols()[s];
            totality_violations(row, &format!("δ⁻_{sym}"), minus_name, &mut violations);
        }
    }

    let inferred = infer_sweeping_class(m);
    let rank = |c: SweepingClass| match c {
        SweepingClass::SDfa => 0,
        SweepingClass::SRfa => 1,
        SweepingClass::TwoPerFa => 2,
    };
    let stronger_class = (violations.is_empty() && rank(inferred) > rank(m.declared_class))
        .then(|| inferred.to_string());
    Ok(ValidationReport {
        violations,
        inferred: Some(inferred.to_string()),
        stronger_class,
    })
}

pub fn validate(m: &Machine) -> Result<ValidationReport, StructuralError> {
    match m {
        Machine::OneWay(m) => validate_one_way(m),
        Machine::Sweeping(m) => validate_sweeping(m),
    }
}

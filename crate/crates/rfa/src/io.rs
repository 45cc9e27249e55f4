//! Text format for machines, with a parser, a canonical emitter and DOT
//! export.
//!
//! The format is line oriented; `#` starts a comment and tokens are
//! whitespace separated:
//!
//! ```text
//! @kind {1dfa|1rfa|1perfa|mrfa|sdfa|srfa|2perfa|srfa2}
//! @alphabet a b …                  # single-character symbols
//! @states q0 q1 …                  # one-way machines
//! @states+ p0 …                    # sweeping machines, forward states
//! @states- r0 …                    # sweeping machines, backward states
//! @initial q0 [q1 …]               # several only for mrfa
//! @accept q0 …
//! @trans a q0 -> q1                # one-way
//! @trans a {+|-} p0 -> p1          # sweeping, inside the string
//! @left r0 -> p0                   # δ⊢: sources are Q⁻ or the initial state
//! @right p0 -> r0                  # δ⊣: Q⁺ to Q⁻
//! ```
//!
//! `srfa2` is the sweeping reversible automaton with acceptance at both
//! end-markers. Emission is canonical: directives in the order above,
//! transitions sorted by (symbol, direction, source), so emitted files are
//! diff-friendly and `emit ∘ parse` is the identity on canonical text.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::core::{
    AcceptanceMode, Alphabet, Machine, OneWayClass, OneWayMachine, SweepingClass, SweepingMachine,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorCode {
    UnknownDirective,
    UnknownKind,
    DuplicateDirective,
    MissingDirective,
    DeclarationOrder,
    BadSyntax,
    BadSymbol,
    UndeclaredState,
    UndeclaredSymbol,
    DuplicateState,
    DuplicateSource,
    KindMismatch,
    MultipleInitials,
}

impl fmt::Display for ParseErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorCode::UnknownDirective => "unknown-directive",
            ParseErrorCode::UnknownKind => "unknown-kind",
            ParseErrorCode::DuplicateDirective => "duplicate-directive",
            ParseErrorCode::MissingDirective => "missing-directive",
            ParseErrorCode::DeclarationOrder => "declaration-order",
            ParseErrorCode::BadSyntax => "bad-syntax",
            ParseErrorCode::BadSymbol => "bad-symbol",
            ParseErrorCode::UndeclaredState => "undeclared-state",
            ParseErrorCode::UndeclaredSymbol => "undeclared-symbol",
            ParseErrorCode::DuplicateState => "duplicate-state",
            ParseErrorCode::DuplicateSource => "duplicate-source",
            ParseErrorCode::KindMismatch => "kind-mismatch",
            ParseErrorCode::MultipleInitials => "multiple-initials",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: [{code}] {message}")]
pub struct ParseError {
    pub line: usize,
    pub code: ParseErrorCode,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, code: ParseErrorCode, message: impl Into<String>) -> Self {
        ParseError {
            line,
            code,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmitError {
    #[error("state name {0:?} cannot be serialized (whitespace, '#' or reserved token)")]
    BadStateName(String),
    #[error("multiple initial states require the mrfa kind")]
    MultipleInitials,
    #[error("both-sides acceptance is only serializable for srfa (kind srfa2)")]
    BothSidesNotSRfa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    OneWay(OneWayClass),
    Sweeping(SweepingClass, AcceptanceMode),
}

fn kind_of_token(tok: &str) -> Option<Kind> {
    Some(match tok {
        "1dfa" => Kind::OneWay(OneWayClass::Dfa),
        "1rfa" => Kind::OneWay(OneWayClass::Rfa),
        "1perfa" => Kind::OneWay(OneWayClass::PerFa),
        "mrfa" => Kind::OneWay(OneWayClass::Mrfa),
        "sdfa" => Kind::Sweeping(SweepingClass::SDfa, AcceptanceMode::RightOnly),
        "srfa" => Kind::Sweeping(SweepingClass::SRfa, AcceptanceMode::RightOnly),
        "2perfa" => Kind::Sweeping(SweepingClass::TwoPerFa, AcceptanceMode::RightOnly),
        "srfa2" => Kind::Sweeping(SweepingClass::SRfa, AcceptanceMode::BothSides),
        _ => return None,
    })
}

fn kind_token(m: &Machine) -> Result<&'static str, EmitError> {
    Ok(match m {
        Machine::OneWay(m) => match m.declared_class {
            OneWayClass::Dfa => "1dfa",
            OneWayClass::Rfa => "1rfa",
            OneWayClass::PerFa => "1perfa",
            OneWayClass::Mrfa => "mrfa",
        },
        Machine::Sweeping(m) => match (m.declared_class, m.acceptance_mode) {
            (SweepingClass::SDfa, AcceptanceMode::RightOnly) => "sdfa",
            (SweepingClass::SRfa, AcceptanceMode::RightOnly) => "srfa",
            (SweepingClass::TwoPerFa, AcceptanceMode::RightOnly) => "2perfa",
            (SweepingClass::SRfa, AcceptanceMode::BothSides) => "srfa2",
            _ => return Err(EmitError::BothSidesNotSRfa),
        },
    })
}

struct Builder {
    kind: Option<(usize, Kind)>,
    alphabet: Option<Alphabet>,
    states: Vec<String>,
    plus_states: Vec<String>,
    minus_states: Vec<String>,
    // name → index lookups; transform outputs can have tens of thousands of
    // states, so resolution must not scan the declaration lists
    state_index: HashMap<String, usize>,
    plus_state_index: HashMap<String, usize>,
    minus_state_index: HashMap<String, usize>,
    have_states: bool,
    have_plus: bool,
    have_minus: bool,
    initials: Vec<usize>,
    have_initial: bool,
    sweeping_initial: Option<usize>,
    accepting: BTreeSet<usize>,
    accepting_plus: BTreeSet<usize>,
    accepting_minus: BTreeSet<usize>,
    transitions: Vec<Vec<Option<usize>>>,
    delta_plus: Vec<Vec<Option<usize>>>,
    delta_minus: Vec<Vec<Option<usize>>>,
    left_from_initial: Option<usize>,
    delta_left: Vec<Option<usize>>,
    delta_right: Vec<Option<usize>>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            kind: None,
            alphabet: None,
            states: Vec::new(),
            plus_states: Vec::new(),
            minus_states: Vec::new(),
            state_index: HashMap::new(),
            plus_state_index: HashMap::new(),
            minus_state_index: HashMap::new(),
            have_states: false,
            have_plus: false,
            have_minus: false,
            initials: Vec::new(),
            have_initial: false,
            sweeping_initial: None,
            accepting: BTreeSet::new(),
            accepting_plus: BTreeSet::new(),
            accepting_minus: BTreeSet::new(),
            transitions: Vec::new(),
            delta_plus: Vec::new(),
            delta_minus: Vec::new(),
            left_from_initial: None,
            delta_left: Vec::new(),
            delta_right: Vec::new(),
        }
    }

    fn kind(&self, line: usize) -> Result<Kind, ParseError> {
        self.kind
            .map(|(_, k)| k)
            .ok_or_else(|| ParseError::new(line, ParseErrorCode::DeclarationOrder, "@kind must come first"))
    }

    fn alphabet(&self, line: usize) -> Result<&Alphabet, ParseError> {
        self.alphabet.as_ref().ok_or_else(|| {
            ParseError::new(
                line,
                ParseErrorCode::DeclarationOrder,
                "@alphabet must be declared before transitions",
            )
        })
    }

    fn one_way_state(&self, line: usize, name: &str) -> Result<usize, ParseError> {
        self.state_index.get(name).copied().ok_or_else(|| {
            ParseError::new(
                line,
                ParseErrorCode::UndeclaredState,
                format!("state '{name}' not declared"),
            )
        })
    }

    fn plus_state(&self, line: usize, name: &str) -> Result<usize, ParseError> {
        self.plus_state_index.get(name).copied().ok_or_else(|| {
            ParseError::new(
                line,
                ParseErrorCode::UndeclaredState,
                format!("forward state '{name}' not declared"),
            )
        })
    }

    fn minus_state(&self, line: usize, name: &str) -> Result<usize, ParseError> {
        self.minus_state_index.get(name).copied().ok_or_else(|| {
            ParseError::new(
                line,
                ParseErrorCode::UndeclaredState,
                format!("backward state '{name}' not declared"),
            )
        })
    }
}

fn symbol_index(b: &Builder, line: usize, tok: &str) -> Result<usize, ParseError> {
    let alphabet = b.alphabet(line)?;
    let mut chars = tok.chars();
    let (c, rest) = (chars.next(), chars.next());
    match (c, rest) {
        (Some(c), None) => alphabet.index_of(c).ok_or_else(|| {
            ParseError::new(
                line,
                ParseErrorCode::UndeclaredSymbol,
                format!("symbol '{c}' not in alphabet"),
            )
        }),
        _ => Err(ParseError::new(
            line,
            ParseErrorCode::BadSymbol,
            format!("'{tok}' is not a single-character symbol"),
        )),
    }
}

fn expect_arrow(line: usize, tok: Option<&&str>) -> Result<(), ParseError> {
    match tok {
        Some(&"->") => Ok(()),
        _ => Err(ParseError::new(
            line,
            ParseErrorCode::BadSyntax,
            "expected '->'",
        )),
    }
}

fn declare_states(
    line: usize,
    names: &[&str],
    into: &mut Vec<String>,
    index: &mut HashMap<String, usize>,
    other: Option<&HashMap<String, usize>>,
) -> Result<(), ParseError> {
    for &n in names {
        if index.contains_key(n) || other.is_some_and(|o| o.contains_key(n)) {
            return Err(ParseError::new(
                line,
                ParseErrorCode::DuplicateState,
                format!("state '{n}' declared twice"),
            ));
        }
        index.insert(n.to_string(), into.len());
        into.push(n.to_string());
    }
    Ok(())
}

/// Parses the text format into a machine.
pub fn parse_machine(text: &str) -> Result<Machine, ParseError> {
    let mut b = Builder::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let directive = tokens[0];
        let args = &tokens[1..];
        match directive {
            "@kind" => {
                if b.kind.is_some() {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::DuplicateDirective,
                        "@kind declared twice",
                    ));
                }
                let [tok] = args else {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::BadSyntax,
                        "@kind takes exactly one value",
                    ));
                };
                let kind = kind_of_token(tok).ok_or_else(|| {
                    ParseError::new(
                        line,
                        ParseErrorCode::UnknownKind,
                        format!("unknown kind '{tok}'"),
                    )
                })?;
                b.kind = Some((line, kind));
            }
            "@alphabet" => {
                b.kind(line)?;
                if b.alphabet.is_some() {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::DuplicateDirective,
                        "@alphabet declared twice",
                    ));
                }
                if args.is_empty() {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::BadSyntax,
                        "@alphabet needs at least one symbol",
                    ));
                }
                let mut symbols = Vec::new();
                for tok in args {
                    let mut chars = tok.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => symbols.push(c),
                        _ => {
                            return Err(ParseError::new(
                                line,
                                ParseErrorCode::BadSymbol,
                                format!("'{tok}' is not a single character"),
                            ))
                        }
                    }
                }
                b.alphabet = Some(Alphabet::new(symbols).map_err(|e| {
                    ParseError::new(line, ParseErrorCode::BadSymbol, e.to_string())
                })?);
            }
            "@states" => {
                let Kind::OneWay(_) = b.kind(line)? else {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::KindMismatch,
                        "@states is for one-way kinds; use @states+ and @states-",
                    ));
                };
                if b.have_states {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::DuplicateDirective,
                        "@states declared twice",
                    ));
                }
                b.have_states = true;
                declare_states(line, args, &mut b.states, &mut b.state_index, None)?;
            }
            "@states+" | "@states-" => {
                let Kind::Sweeping(..) = b.kind(line)? else {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::KindMismatch,
                        "@states+/@states- are for sweeping kinds",
                    ));
                };
                if directive == "@states+" {
                    if b.have_plus {
                        return Err(ParseError::new(
                            line,
                            ParseErrorCode::DuplicateDirective,
                            "@states+ declared twice",
                        ));
                    }
                    b.have_plus = true;
                    declare_states(
                        line,
                        args,
                        &mut b.plus_states,
                        &mut b.plus_state_index,
                        Some(&b.minus_state_index),
                    )?;
                } else {
                    if b.have_minus {
                        return Err(ParseError::new(
                            line,
                            ParseErrorCode::DuplicateDirective,
                            "@states- declared twice",
                        ));
                    }
                    b.have_minus = true;
                    declare_states(
                        line,
                        args,
                        &mut b.minus_states,
                        &mut b.minus_state_index,
                        Some(&b.plus_state_index),
                    )?;
                }
            }
            "@initial" => {
                if b.have_initial {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::DuplicateDirective,
                        "@initial declared twice",
                    ));
                }
                b.have_initial = true;
                if args.is_empty() {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::BadSyntax,
                        "@initial needs at least one state",
                    ));
                }
                match b.kind(line)? {
                    Kind::OneWay(class) => {
                        if args.len() > 1 && class != OneWayClass::Mrfa {
                            return Err(ParseError::new(
                                line,
                                ParseErrorCode::MultipleInitials,
                                "multiple initial states are only allowed for mrfa",
                            ));
                        }
                        for name in args {
                            let q = b.one_way_state(line, name)?;
                            if b.initials.contains(&q) {
                                return Err(ParseError::new(
                                    line,
                                    ParseErrorCode::DuplicateState,
                                    format!("initial state '{name}' listed twice"),
                                ));
                            }
                            b.initials.push(q);
                        }
                    }
                    Kind::Sweeping(..) => {
                        if args.len() > 1 {
                            return Err(ParseError::new(
                                line,
                                ParseErrorCode::MultipleInitials,
                                "sweeping machines have a single initial state",
                            ));
                        }
                        b.sweeping_initial = Some(b.plus_state(line, args[0])?);
                    }
                }
            }
            "@accept" => match b.kind(line)? {
                Kind::OneWay(_) => {
                    for name in args {
                        let q = b.one_way_state(line, name)?;
                        b.accepting.insert(q);
                    }
                }
                Kind::Sweeping(..) => {
                    for name in args {
                        if let Ok(p) = b.plus_state(line, name) {
                            b.accepting_plus.insert(p);
                        } else {
                            let q = b.minus_state(line, name)?;
                            b.accepting_minus.insert(q);
                        }
                    }
                }
            },
            "@trans" => {
                let kind = b.kind(line)?;
                if b.transitions.is_empty() && b.delta_plus.is_empty() {
                    let n_sym = b.alphabet(line)?.len();
                    match kind {
                        Kind::OneWay(_) => {
                            b.transitions = vec![vec![None; b.states.len()]; n_sym];
                        }
                        Kind::Sweeping(..) => {
                            b.delta_plus = vec![vec![None; b.plus_states.len()]; n_sym];
                            b.delta_minus = vec![vec![None; b.minus_states.len()]; n_sym];
                            b.delta_left = vec![None; b.minus_states.len()];
                            b.delta_right = vec![None; b.plus_states.len()];
                        }
                    }
                }
                match kind {
                    Kind::OneWay(_) => {
                        if args.len() != 4 {
                            return Err(ParseError::new(
                                line,
                                ParseErrorCode::BadSyntax,
                                "expected: @trans <sym> <src> -> <dst>",
                            ));
                        }
                        let s = symbol_index(&b, line, args[0])?;
                        let src = b.one_way_state(line, args[1])?;
                        expect_arrow(line, args.get(2))?;
                        let dst = b.one_way_state(line, args[3])?;
                        if b.transitions[s][src].is_some() {
                            return Err(ParseError::new(
                                line,
                                ParseErrorCode::DuplicateSource,
                                format!("second transition by '{}' from '{}'", args[0], args[1]),
                            ));
                        }
                        b.transitions[s][src] = Some(dst);
                    }
                    Kind::Sweeping(..) => {
                        if args.len() != 5 {
                            return Err(ParseError::new(
                                line,
                                ParseErrorCode::BadSyntax,
                                "expected: @trans <sym> {+|-} <src> -> <dst>",
                            ));
                        }
                        let s = symbol_index(&b, line, args[0])?;
                        expect_arrow(line, args.get(3))?;
                        match args[1] {
                            "+" => {
                                let src = b.plus_state(line, args[2])?;
                                let dst = b.plus_state(line, args[4])?;
                                if b.delta_plus[s][src].is_some() {
                                    return Err(ParseError::new(
                                        line,
                                        ParseErrorCode::DuplicateSource,
                                        format!(
                                            "second forward transition by '{}' from '{}'",
                                            args[0], args[2]
                                        ),
                                    ));
                                }
                                b.delta_plus[s][src] = Some(dst);
                            }
                            "-" => {
                                let src = b.minus_state(line, args[2])?;
                                let dst = b.minus_state(line, args[4])?;
                                if b.delta_minus[s][src].is_some() {
                                    return Err(ParseError::new(
                                        line,
                                        ParseErrorCode::DuplicateSource,
                                        format!(
                                            "second backward transition by '{}' from '{}'",
                                            args[0], args[2]
                                        ),
                                    ));
                                }
                                b.delta_minus[s][src] = Some(dst);
                            }
                            other => {
                                return Err(ParseError::new(
                                    line,
                                    ParseErrorCode::BadSyntax,
                                    format!("expected '+' or '-', found '{other}'"),
                                ))
                            }
                        }
                    }
                }
            }
            "@left" | "@right" => {
                let Kind::Sweeping(..) = b.kind(line)? else {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::KindMismatch,
                        "@left/@right are for sweeping kinds",
                    ));
                };
                if b.delta_left.len() != b.minus_states.len() {
                    b.delta_left = vec![None; b.minus_states.len()];
                }
                if b.delta_right.len() != b.plus_states.len() {
                    b.delta_right = vec![None; b.plus_states.len()];
                }
                if args.len() != 3 {
                    return Err(ParseError::new(
                        line,
                        ParseErrorCode::BadSyntax,
                        format!("expected: {directive} <src> -> <dst>"),
                    ));
                }
                expect_arrow(line, args.get(1))?;
                if directive == "@left" {
                    let dst = b.plus_state(line, args[2])?;
                    let initial = b.sweeping_initial.ok_or_else(|| {
                        ParseError::new(
                            line,
                            ParseErrorCode::DeclarationOrder,
                            "@initial must be declared before @left",
                        )
                    })?;
                    if b.plus_state(line, args[0]) == Ok(initial) {
                        if b.left_from_initial.is_some() {
                            return Err(ParseError::new(
                                line,
                                ParseErrorCode::DuplicateSource,
                                format!("second left turn from '{}'", args[0]),
                            ));
                        }
                        b.left_from_initial = Some(dst);
                    } else {
                        let src = b.minus_state(line, args[0]).map_err(|_| {
                            ParseError::new(
                                line,
                                ParseErrorCode::UndeclaredState,
                                format!(
                                    "'{}' is neither a backward state nor the initial state",
                                    args[0]
                                ),
                            )
                        })?;
                        if b.delta_left[src].is_some() {
                            return Err(ParseError::new(
                                line,
                                ParseErrorCode::DuplicateSource,
                                format!("second left turn from '{}'", args[0]),
                            ));
                        }
                        b.delta_left[src] = Some(dst);
                    }
                } else {
                    let src = b.plus_state(line, args[0])?;
                    let dst = b.minus_state(line, args[2])?;
                    if b.delta_right[src].is_some() {
                        return Err(ParseError::new(
                            line,
                            ParseErrorCode::DuplicateSource,
                            format!("second right turn from '{}'", args[0]),
                        ));
                    }
                    b.delta_right[src] = Some(dst);
                }
            }
            other => {
                return Err(ParseError::new(
                    line,
                    ParseErrorCode::UnknownDirective,
                    format!("unknown directive '{other}'"),
                ))
            }
        }
    }

    // Assemble, checking the required directives are all present.
    let line = last_line + 1;
    let missing = |what: &str| ParseError::new(line, ParseErrorCode::MissingDirective, format!("missing {what}"));
    let (_, kind) = b.kind.ok_or_else(|| missing("@kind"))?;
    let alphabet = b.alphabet.clone().ok_or_else(|| missing("@alphabet"))?;
    match kind {
        Kind::OneWay(declared_class) => {
            if !b.have_states {
                return Err(missing("@states"));
            }
            if !b.have_initial {
                return Err(missing("@initial"));
            }
            let transitions = if b.transitions.is_empty() {
                vec![vec![None; b.states.len()]; alphabet.len()]
            } else {
                b.transitions
            };
            Ok(Machine::OneWay(OneWayMachine {
                alphabet,
                states: b.states,
                initials: b.initials.into_iter().collect(),
                transitions,
                accepting: b.accepting,
                declared_class,
            }))
        }
        Kind::Sweeping(declared_class, acceptance_mode) => {
            if !b.have_plus {
                return Err(missing("@states+"));
            }
            let initial = b.sweeping_initial.ok_or_else(|| missing("@initial"))?;
            let n_sym = alphabet.len();
            let delta_plus = if b.delta_plus.is_empty() {
                vec![vec![None; b.plus_states.len()]; n_sym]
            } else {
                b.delta_plus
            };
            let delta_minus = if b.delta_minus.is_empty() {
                vec![vec![None; b.minus_states.len()]; n_sym]
            } else {
                b.delta_minus
            };
            let delta_left = if b.delta_left.len() == b.minus_states.len() {
                b.delta_left
            } else {
                vec![None; b.minus_states.len()]
            };
            let delta_right = if b.delta_right.len() == b.plus_states.len() {
                b.delta_right
            } else {
                vec![None; b.plus_states.len()]
            };
            Ok(Machine::Sweeping(SweepingMachine {
                alphabet,
                plus_states: b.plus_states,
                minus_states: b.minus_states,
                initial,
                delta_plus,
                delta_minus,
                left_from_initial: b.left_from_initial,
                delta_left,
                delta_right,
                accepting_plus: b.accepting_plus,
                accepting_minus: b.accepting_minus,
                acceptance_mode,
                declared_class,
            }))
        }
    }
}

fn check_name(name: &str) -> Result<(), EmitError> {
    if name.is_empty()
        || name == "->"
        || name.contains('#')
        || name.chars().any(char::is_whitespace)
    {
        return Err(EmitError::BadStateName(name.to_string()));
    }
    Ok(())
}

/// Emits a machine in canonical form.
pub fn emit_machine(m: &Machine) -> Result<String, EmitError> {
    let mut out = String::new();
    out.push_str(&format!("@kind {}\n", kind_token(m)?));
    let alphabet = m.alphabet();
    out.push_str("@alphabet");
    for c in alphabet.symbols() {
        out.push_str(&format!(" {c}"));
    }
    out.push('\n');

    match m {
        Machine::OneWay(m) => {
            for s in &m.states {
                check_name(s)?;
            }
            if m.initials.len() > 1 && m.declared_class != OneWayClass::Mrfa {
                return Err(EmitError::MultipleInitials);
            }
            out.push_str("@states");
            for s in &m.states {
                out.push_str(&format!(" {s}"));
            }
            out.push('\n');
            out.push_str("@initial");
            for &q in &m.initials {
                out.push_str(&format!(" {}", m.states[q]));
            }
            out.push('\n');
            if !m.accepting.is_empty() {
                out.push_str("@accept");
                for &q in &m.accepting {
                    out.push_str(&format!(" {}", m.states[q]));
                }
                out.push('\n');
            }
            for (s, row) in m.transitions.iter().enumerate() {
                let sym = m.alphabet.symbols()[s];
                for (src, tgt) in row.iter().enumerate() {
                    if let Some(t) = tgt {
                        out.push_str(&format!(
                            "@trans {sym} {} -> {}\n",
                            m.states[src], m.states[*t]
                        ));
                    }
                }
            }
        }
        Machine::Sweeping(m) => {
            for s in m.plus_states.iter().chain(m.minus_states.iter()) {
                check_name(s)?;
            }
            out.push_str("@states+");
            for s in &m.plus_states {
                out.push_str(&format!(" {s}"));
            }
            out.push('\n');
            if !m.minus_states.is_empty() {
                out.push_str("@states-");
                for s in &m.minus_states {
                    out.push_str(&format!(" {s}"));
                }
                out.push('\n');
            }
            out.push_str(&format!("@initial {}\n", m.plus_states[m.initial]));
            if !m.accepting_plus.is_empty() || !m.accepting_minus.is_empty() {
                out.push_str("@accept");
                for &p in &m.accepting_plus {
                    out.push_str(&format!(" {}", m.plus_states[p]));
                }
                for &q in &m.accepting_minus {
                    out.push_str(&format!(" {}", m.minus_states[q]));
                }
                out.push('\n');
            }
            for (s, row) in m.delta_plus.iter().enumerate() {
                let sym = m.alphabet.symbols()[s];
                for (src, tgt) in row.iter().enumerate() {
                    if let Some(t) = tgt {
                        out.push_str(&format!(
                            "@trans {sym} + {} -> {}\n",
                            m.plus_states[src], m.plus_states[*t]
                        ));
                    }
                }
            }
            for (s, row) in m.delta_minus.iter().enumerate() {
                let sym = m.alphabet.symbols()[s];
                for (src, tgt) in row.iter().enumerate() {
                    if let Some(t) = tgt {
                        out.push_str(&format!(
                            "@trans {sym} - {} -> {}\n",
                            m.minus_states[src], m.minus_states[*t]
                        ));
                    }
                }
            }
            if let Some(t) = m.left_from_initial {
                out.push_str(&format!(
                    "@left {} -> {}\n",
                    m.plus_states[m.initial], m.plus_states[t]
                ));
            }
            for (src, tgt) in m.delta_left.iter().enumerate() {
                if let Some(t) = tgt {
                    out.push_str(&format!(
                        "@left {} -> {}\n",
                        m.minus_states[src], m.plus_states[*t]
                    ));
                }
            }
            for (src, tgt) in m.delta_right.iter().enumerate() {
                if let Some(t) = tgt {
                    out.push_str(&format!(
                        "@right {} -> {}\n",
                        m.plus_states[src], m.minus_states[*t]
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot_node(name: &str, accepting: bool, initial: bool) -> String {
    let mut attrs = Vec::new();
    if accepting {
        attrs.push("shape=doublecircle".to_string());
    }
    if initial {
        attrs.push("style=bold".to_string());
    }
    if attrs.is_empty() {
        format!("  {};\n", dot_quote(name))
    } else {
        format!("  {} [{}];\n", dot_quote(name), attrs.join(", "))
    }
}

/// Deterministic DOT rendering. Accepting states are double circles, initial
/// states bold; a sweeping machine's `Q⁺` and `Q⁻` go into separate
/// clusters, with end-marker turns drawn as edges labeled `⊢` and `⊣`.
pub fn to_dot(m: &Machine) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    match m {
        Machine::OneWay(m) => {
            for (q, name) in m.states.iter().enumerate() {
                out.push_str(&dot_node(name, m.accepting.contains(&q), m.initials.contains(&q)));
            }
            // merge parallel edges into one label
            for src in 0..m.states.len() {
                for dst in 0..m.states.len() {
                    let labels: Vec<String> = m
                        .transitions
                        .iter()
                        .enumerate()
                        .filter(|(_, row)| row[src] == Some(dst))
                        .map(|(s, _)| m.alphabet.symbols()[s].to_string())
                        .collect();
                    if !labels.is_empty() {
                        out.push_str(&format!(
                            "  {} -> {} [label=\"{}\"];\n",
                            dot_quote(&m.states[src]),
                            dot_quote(&m.states[dst]),
                            labels.join(",")
                        ));
                    }
                }
            }
        }
        Machine::Sweeping(m) => {
            out.push_str("  subgraph cluster_plus {\n    label=\"Q+\";\n");
            for (p, name) in m.plus_states.iter().enumerate() {
                out.push_str("  ");
                out.push_str(&dot_node(name, m.accepting_plus.contains(&p), p == m.initial));
            }
            out.push_str("  }\n");
            if !m.minus_states.is_empty() {
                out.push_str("  subgraph cluster_minus {\n    label=\"Q-\";\n");
                for (q, name) in m.minus_states.iter().enumerate() {
                    out.push_str("  ");
                    out.push_str(&dot_node(name, m.accepting_minus.contains(&q), false));
                }
                out.push_str("  }\n");
            }
            let mut edge = |src: &str, dst: &str, label: &str| {
                out.push_str(&format!(
                    "  {} -> {} [label={}];\n",
                    dot_quote(src),
                    dot_quote(dst),
                    dot_quote(label)
                ));
            };
            for (s, row) in m.delta_plus.iter().enumerate() {
                let sym = m.alphabet.symbols()[s];
                for (src, tgt) in row.iter().enumerate() {
                    if let Some(t) = tgt {
                        edge(&m.plus_states[src], &m.plus_states[*t], &sym.to_string());
                    }
                }
            }
            for (s, row) in m.delta_minus.iter().enumerate() {
                let sym = m.alphabet.symbols()[s];
                for (src, tgt) in row.iter().enumerate() {
                    if let Some(t) = tgt {
                        edge(&m.minus_states[src], &m.minus_states[*t], &sym.to_string());
                    }
                }
            }
            if let Some(t) = m.left_from_initial {
                edge(&m.plus_states[m.initial], &m.plus_states[t], "⊢");
            }
            for (src, tgt) in m.delta_left.iter().enumerate() {
                if let Some(t) = tgt {
                    edge(&m.minus_states[src], &m.plus_states[*t], "⊢");
                }
            }
            for (src, tgt) in m.delta_right.iter().enumerate() {
                if let Some(t) = tgt {
                    edge(&m.plus_states[src], &m.minus_states[*t], "⊣");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL_1RFA: &str = "\
@kind 1rfa
@alphabet a
@states q0
@initial q0
@accept q0
";

    #[test]
    fn minimal_file_round_trips_and_accepts_only_epsilon() {
        let m = parse_machine(MINIMAL_1RFA).unwrap();
        assert!(crate::sim::accepts(&m, "").unwrap());
        assert!(!crate::sim::accepts(&m, "a").unwrap());
        let emitted = emit_machine(&m).unwrap();
        assert_eq!(parse_machine(&emitted).unwrap(), m);
        assert_eq!(emit_machine(&parse_machine(&emitted).unwrap()).unwrap(), emitted);
    }

    #[test]
    fn duplicate_transition_source_is_an_error() {
        let text = "\
@kind 1rfa
@alphabet a
@states p0 p1
@initial p0
@trans a p0 -> p1
@trans a p0 -> p1
";
        let err = parse_machine(text).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::DuplicateSource);
        assert_eq!(err.line, 6);
    }

    #[test]
    fn duplicate_forward_transition_source_is_an_error() {
        let text = "\
@kind srfa
@alphabet a
@states+ p0 p1
@initial p0
@trans a + p0 -> p1
@trans a + p0 -> p1
";
        let err = parse_machine(text).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::DuplicateSource);
        assert_eq!(err.line, 6);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "\
# a machine
@kind 1rfa   # kind
@alphabet a

@states q0
@initial q0
";
        assert!(parse_machine(text).is_ok());
    }

    #[test]
    fn unknown_directive_reports_line() {
        let err = parse_machine("@kind 1rfa\n@wat x\n").unwrap_err();
        assert_eq!(err.code, ParseErrorCode::UnknownDirective);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn undeclared_state_in_transition() {
        let text = "\
@kind 1rfa
@alphabet a
@states q0
@initial q0
@trans a q0 -> q9
";
        let err = parse_machine(text).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::UndeclaredState);
    }

    #[test]
    fn multiple_initials_rejected_outside_mrfa() {
        let text = "\
@kind 1rfa
@alphabet a
@states q0 q1
@initial q0 q1
";
        let err = parse_machine(text).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::MultipleInitials);
    }

    const SWEEPING: &str = "\
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
    fn sweeping_file_parses_and_round_trips() {
        let m = parse_machine(SWEEPING).unwrap();
        let Machine::Sweeping(sm) = &m else {
            panic!("expected sweeping machine")
        };
        assert_eq!(sm.left_from_initial, Some(0));
        assert_eq!(sm.delta_left, vec![None, Some(1)]);
        assert!(crate::sim::accepts(&m, "a").unwrap());
        assert!(crate::sim::accepts(&m, "aa").unwrap());
        assert!(!crate::sim::accepts(&m, "aaa").unwrap());

        let emitted = emit_machine(&m).unwrap();
        assert_eq!(parse_machine(&emitted).unwrap(), m);
    }

    #[test]
    fn srfa2_kind_sets_both_sides() {
        let text = "\
@kind srfa2
@alphabet a
@states+ p0
@states- r0
@initial p0
@accept r0
@left p0 -> p0
@trans a + p0 -> p0
@right p0 -> r0
";
        let m = parse_machine(text).unwrap();
        let Machine::Sweeping(sm) = &m else { panic!() };
        assert_eq!(sm.acceptance_mode, AcceptanceMode::BothSides);
        assert_eq!(sm.accepting_minus.iter().copied().collect::<Vec<_>>(), vec![0]);
        let emitted = emit_machine(&m).unwrap();
        assert!(emitted.starts_with("@kind srfa2\n"));
        assert_eq!(parse_machine(&emitted).unwrap(), m);
    }

    #[test]
    fn dot_output_is_deterministic_and_shaped() {
        let m = parse_machine(SWEEPING).unwrap();
        let d1 = to_dot(&m);
        let d2 = to_dot(&m);
        assert_eq!(d1, d2);
        assert_eq!(d1.matches("subgraph").count(), 2);
        assert_eq!(d1.matches("doublecircle").count(), 1);

        let one = parse_machine(MINIMAL_1RFA).unwrap();
        let d = to_dot(&one);
        // one node line, no edges
        assert_eq!(d.matches(" -> ").count(), 0);
        assert!(d.contains("\"q0\""));
    }
}

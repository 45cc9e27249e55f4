//! Reversible finite automata and their hierarchy.
//!
//! Six machine models over one carrier pair: one-way deterministic,
//! reversible and permutation automata plus the multi-initial reversible
//! variant ([`core::OneWayMachine`]), and their sweeping counterparts that
//! bounce between end-markers ([`core::SweepingMachine`]). On top of the
//! data model sit simulators with full traces and pass counting ([`sim`]),
//! the constructive translations between the models ([`transforms`]),
//! language-level verification tools — bounded and exact equivalence, the
//! Pin non-representability test, bounded exhaustive model search
//! ([`analysis`]) — a catalog of witness machines for the separations
//! between the classes ([`witnesses`]), and a text format with DOT export
//! ([`io`]).

// Transition tables are parallel arrays indexed in lockstep; indexed loops
// are the clearer form for them.
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod core;
pub mod funcmath;
pub mod io;
pub mod regex;
pub mod sim;
pub mod transforms;
pub mod witnesses;

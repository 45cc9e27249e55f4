//! Command-line front end: validation, simulation, transformation,
//! equivalence checking, enumeration, witness emission, the Pin check and
//! bounded model search over the text format in [`rfa::io`].
//!
//! Exit codes: 0 on success, 1 on a negative analytical verdict (a rejected
//! string, inequivalent machines, a Pin violation, an exhausted search, a
//! failed validation), 2 on usage or file errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rfa::analysis::{
    bounded_equiv, exact_equiv, pin_falsify, search_model, strings_up_to, LanguageOracle,
    SearchClass, SearchOutcome, SearchParams,
};
use rfa::core::{validate, Machine};
use rfa::io::{emit_machine, parse_machine, to_dot};
use rfa::sim::{run_mrfa, run_sweeping};
use rfa::transforms::{
    both_sides_to_one_side, dfa_minimize, srfa_to_mrfa, srfa_to_three_pass, to_dfa,
    unary_mrfa_to_srfa,
};
use rfa::witnesses::witness;

#[derive(Parser)]
#[command(name = "rfa", version, about = "reversible finite automata toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a machine against the invariants of its declared kind
    Validate { file: PathBuf },
    /// Run a machine on a string (ε is the empty argument "")
    Run {
        file: PathBuf,
        input: String,
        /// Print the full configuration trace
        #[arg(long)]
        trace: bool,
    },
    /// Apply a construction and write the resulting machine
    Transform {
        file: PathBuf,
        /// one-side | mrfa | three-pass | unary-srfa | dfa | min-dfa
        #[arg(long = "to")]
        target: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare two machines' languages
    Equiv {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Bounded comparison on all strings up to this length
        #[arg(long, conflicts_with = "exact")]
        max_len: Option<usize>,
        /// Exact comparison through determinization
        #[arg(long)]
        exact: bool,
    },
    /// Print all accepted strings up to a length, length-lex
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Emit a catalog machine
    Witness {
        name: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a violation of Pin's condition (xy⁺z ⊆ L but xz ∉ L)
    PinCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_x: usize,
        #[arg(long, default_value_t = 3)]
        max_y: usize,
        #[arg(long, default_value_t = 3)]
        max_z: usize,
        /// Pumping exponents to test; "auto" uses the exact pigeonhole bound
        #[arg(long, default_value = "auto")]
        reps: String,
    },
    /// Exhaustively search small machines of a class for a target language
    Search {
        /// 1dfa | 1rfa | 1rfa1 | 1perfa | 1perfa1 | mrfa
        #[arg(long)]
        class: String,
        #[arg(long)]
        max_states: usize,
        /// Alphabet symbols, e.g. "ab"
        #[arg(long)]
        alphabet: String,
        /// Machine file defining the target language
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        max_initials: Option<usize>,
    },
    /// Render a machine as a DOT graph
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// 2 is the usage/parse failure code throughout.
fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load(path: &Path) -> Result<Machine, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_machine(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => usage_error(msg),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate { file } => {
            let m = load(&file)?;
            let report = validate(&m).map_err(|e| e.to_string())?;
            match report.inferred.as_deref() {
                Some(c) => println!("declared: {}  inferred: {c}", m.class_name()),
                None => println!("declared: {}  inferred: none", m.class_name()),
            }
            if let Some(stronger) = &report.stronger_class {
                println!("note: machine also satisfies the stronger class {stronger}");
            }
            if report.is_empty() {
                println!("ok");
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &report.violations {
                    println!("violation: {v}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Run { file, input, trace } => {
            let m = load(&file)?;
            validate(&m).map_err(|e| e.to_string())?;
            match &m {
                Machine::OneWay(m) => {
                    let run = run_mrfa(m, &input).map_err(|e| e.to_string())?;
                    if trace {
                        for (q0, t) in &run.runs {
                            println!("# from initial state {}", m.states[*q0]);
                            print!("{}", t.render());
                        }
                    }
                    let verdict = if run.accepted { "accept" } else { "reject" };
                    println!("{verdict}");
                    println!("passes: 1");
                    Ok(exit_verdict(run.accepted))
                }
                Machine::Sweeping(m) => {
                    let t = run_sweeping(m, &input).map_err(|e| e.to_string())?;
                    if trace {
                        for c in &t.configurations {
                            println!("{} @ {}", c.state, c.position);
                        }
                    }
                    println!("{}", t.verdict);
                    println!("passes: {}", t.pass_count);
                    Ok(exit_verdict(t.verdict.is_accept()))
                }
            }
        }
        Command::Transform {
            file,
            target,
            output,
        } => {
            let m = load(&file)?;
            let out: Machine = match (target.as_str(), &m) {
                ("one-side", Machine::Sweeping(s)) => {
                    Machine::Sweeping(both_sides_to_one_side(s).map_err(|e| e.to_string())?)
                }
                ("mrfa", Machine::Sweeping(s)) => {
                    Machine::OneWay(srfa_to_mrfa(s).map_err(|e| e.to_string())?)
                }
                ("three-pass", Machine::Sweeping(s)) => {
                    Machine::Sweeping(srfa_to_three_pass(s).map_err(|e| e.to_string())?)
                }
                ("unary-srfa", Machine::OneWay(o)) => {
                    Machine::Sweeping(unary_mrfa_to_srfa(o).map_err(|e| e.to_string())?)
                }
                ("dfa", _) => Machine::OneWay(to_dfa(&m).map_err(|e| e.to_string())?),
                ("min-dfa", _) => {
                    let dfa = to_dfa(&m).map_err(|e| e.to_string())?;
                    Machine::OneWay(dfa_minimize(&dfa).map_err(|e| e.to_string())?)
                }
                ("one-side" | "mrfa" | "three-pass", _) => {
                    return Err(format!("--to {target} needs a sweeping machine"))
                }
                ("unary-srfa", _) => return Err("--to unary-srfa needs a one-way machine".into()),
                _ => {
                    return Err(format!(
                        "unknown transform '{target}' (one-side|mrfa|three-pass|unary-srfa|dfa|min-dfa)"
                    ))
                }
            };
            let text = emit_machine(&out).map_err(|e| e.to_string())?;
            write_output(Some(&output), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv {
            file_a,
            file_b,
            max_len,
            exact,
        } => {
            let a = load(&file_a)?;
            let b = load(&file_b)?;
            let result = match (exact, max_len) {
                (false, Some(n)) => bounded_equiv(&a, &b, n).map_err(|e| e.to_string())?,
                _ => exact_equiv(&a, &b).map_err(|e| e.to_string())?,
            };
            if result.equivalent {
                println!("equivalent");
                Ok(ExitCode::SUCCESS)
            } else {
                let witness = result.counterexample.unwrap_or_default();
                println!("not equivalent: differ on \"{witness}\"");
                Ok(ExitCode::from(1))
            }
        }
        Command::Enumerate { file, max_len } => {
            let m = load(&file)?;
            validate(&m).map_err(|e| e.to_string())?;
            for s in strings_up_to(m.alphabet(), max_len) {
                if rfa::sim::accepts(&m, &s).map_err(|e| e.to_string())? {
                    println!("{s}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { name, k, output } => {
            let spec = witness(&name, k).map_err(|e| e.to_string())?;
            let text = emit_machine(&spec.machine).map_err(|e| e.to_string())?;
            write_output(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PinCheck {
            file,
            max_x,
            max_y,
            max_z,
            reps,
        } => {
            let m = load(&file)?;
            let reps = match reps.as_str() {
                "auto" => None,
                n => Some(
                    n.parse::<usize>()
                        .map_err(|_| format!("--reps takes a number or 'auto', got '{n}'"))?,
                ),
            };
            let report = pin_falsify(&m, max_x, max_y, max_z, reps).map_err(|e| e.to_string())?;
            match report.violation {
                Some(w) => {
                    println!("violation: x='{}' y='{}' z='{}'", w.x, w.y, w.z);
                    println!("certifies: no MRFA recognizes this language");
                    Ok(ExitCode::from(1))
                }
                None => {
                    let quality = if report.exact { "exact" } else { "sampled" };
                    println!(
                        "no violation ({} triples, {} pumping bound {})",
                        report.triples_checked, quality, report.reps
                    );
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Search {
            class,
            max_states,
            alphabet,
            target,
            max_len,
            max_initials,
        } => {
            let class = SearchClass::from_token(&class)
                .ok_or_else(|| format!("unknown class '{class}'"))?;
            let alphabet = rfa::core::Alphabet::new(alphabet.chars().collect())
                .map_err(|e| e.to_string())?;
            let target_machine = load(&target)?;
            if *target_machine.alphabet() != alphabet {
                return Err("target machine alphabet differs from --alphabet".into());
            }
            let oracle = LanguageOracle::from_machine(&target_machine).map_err(|e| e.to_string())?;
            let params = SearchParams {
                class,
                max_states,
                alphabet,
                max_len,
                max_initials,
                limit: None,
            };
            match search_model(&params, &oracle).map_err(|e| e.to_string())? {
                SearchOutcome::Found(m) => {
                    println!("result: found");
                    print!(
                        "{}",
                        emit_machine(&Machine::OneWay(m)).map_err(|e| e.to_string())?
                    );
                    Ok(ExitCode::SUCCESS)
                }
                SearchOutcome::Exhausted(report) => {
                    print!("{}", report.render());
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Dot { file, output } => {
            let m = load(&file)?;
            write_output(output.as_deref(), &to_dot(&m))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_verdict(accepted: bool) -> ExitCode {
    if accepted {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

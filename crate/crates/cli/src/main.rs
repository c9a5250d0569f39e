//! `olp`: evaluate ordered extended logic programs from `.olp` files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use olp_core::brewka::{brewka_defeat_trace, brewka_model};
use olp_core::harness::{
    check_theorems, generate_program, scaling_probe, CheckConfig, GeneratorConfig,
};
use olp_core::pwfs::defeat_trace;
use olp_core::{
    answer_sets, lfp_ap_model, parse_program, preferred_answer_sets, preferred_wf_model,
    render_program, well_founded_model, DSetVariant, FixpointDivergence, Interpretation,
    LiteralSet, OrderedProgram, ParseError, PartialModel, ProgramError,
};

#[derive(Parser)]
#[command(
    name = "olp",
    version,
    about = "Semantics of ordered extended logic programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a program, then print its canonical form.
    Check { file: PathBuf },
    /// Compute a model or the answer sets of a program.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
        /// Include every fixpoint iterate and per-rule removal sets.
        #[arg(long)]
        trace: bool,
        /// Hide classically negated literals the program never mentions.
        #[arg(long)]
        atoms_only: bool,
    },
    /// Time the well-founded computations on chain programs.
    Bench {
        /// Comma-separated chain lengths.
        #[arg(long, default_value = "")]
        sizes: String,
    },
    /// Check every property on generated programs, one JSON line per check.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Use the simplistic removal sets.
        #[arg(long)]
        simplistic: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Wfs,
    Pwfs,
    PwfsSimplistic,
    As,
    Pas,
    Brewka,
    LfpAp,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Wfs => "wfs",
            Mode::Pwfs => "pwfs",
            Mode::PwfsSimplistic => "pwfs-simplistic",
            Mode::As => "as",
            Mode::Pas => "pas",
            Mode::Brewka => "brewka",
            Mode::LfpAp => "lfp-ap",
        }
    }
}

enum CliError {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, String, ParseError),
    Input(String),
    Divergence(FixpointDivergence),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(..) | CliError::Input(_) => 1,
            CliError::Io(..) => 2,
            CliError::Divergence(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Parse(path, text, e) => {
                writeln!(f, "{}:{e}", path.display())?;
                let line = text.lines().nth(e.span.line - 1).unwrap_or("");
                writeln!(f, "  {line}")?;
                write!(
                    f,
                    "  {}{}",
                    " ".repeat(e.span.column - 1),
                    "^".repeat(e.span.length.max(1))
                )
            }
            CliError::Input(message) => write!(f, "{message}"),
            CliError::Divergence(e) => write!(f, "internal error: {e}"),
        }
    }
}

impl From<FixpointDivergence> for CliError {
    fn from(e: FixpointDivergence) -> Self {
        CliError::Divergence(e)
    }
}

impl From<ProgramError> for CliError {
    fn from(e: ProgramError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn load(path: &Path) -> Result<OrderedProgram, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    parse_program(&text).map_err(|e| CliError::Parse(path.to_owned(), text, e))
}

/// Result of one `solve` run, before formatting.
struct Solved {
    model: Option<PartialModel>,
    answer_sets: Vec<Interpretation>,
    /// `(set, per-rule removal sets or defeated rules)` per outer step.
    trace: Vec<(LiteralSet, BTreeMap<String, Vec<String>>)>,
}

fn solve(op: &OrderedProgram, mode: Mode) -> Result<Solved, CliError> {
    let p = op.program();
    let name = |id| p.rule(id).name().to_string();
    let plain = |steps: Vec<LiteralSet>| steps.into_iter().map(|s| (s, BTreeMap::new())).collect();
    let solved = match mode {
        Mode::Wfs => {
            let w = well_founded_model(p)?;
            Solved {
                model: Some(w.model),
                answer_sets: vec![],
                trace: plain(
                    w.trace
                        .steps
                        .into_iter()
                        .map(|(_, x)| x.into_set())
                        .collect(),
                ),
            }
        }
        Mode::LfpAp => {
            let (model, trace) = lfp_ap_model(op)?;
            Solved {
                model: Some(model),
                answer_sets: vec![],
                trace: plain(trace.steps.into_iter().map(|(_, x)| x.into_set()).collect()),
            }
        }
        Mode::Pwfs | Mode::PwfsSimplistic => {
            let variant = if mode == Mode::Pwfs {
                DSetVariant::Full
            } else {
                DSetVariant::Simplistic
            };
            let pw = preferred_wf_model(op, variant)?;
            let removals = defeat_trace(op, &pw.trace, variant);
            let trace = pw
                .trace
                .steps
                .iter()
                .enumerate()
                .map(|(k, (_, x))| {
                    let sets = k
                        .checked_sub(1)
                        .map(|i| {
                            removals[i]
                                .iter()
                                .map(|d| (name(d.rule), d.removed.sorted_strings()))
                                .collect()
                        })
                        .unwrap_or_default();
                    (x.as_set().clone(), sets)
                })
                .collect();
            Solved {
                model: Some(pw.model),
                answer_sets: vec![],
                trace,
            }
        }
        Mode::Brewka => {
            let b = brewka_model(op)?;
            let defeated = brewka_defeat_trace(op, &b.trace);
            let trace = b
                .trace
                .steps
                .iter()
                .enumerate()
                .map(|(k, (_, x))| {
                    let sets = k
                        .checked_sub(1)
                        .map(|i| {
                            defeated[i]
                                .iter()
                                .map(|(r, ds)| (name(*r), ds.iter().map(|&d| name(d)).collect()))
                                .collect()
                        })
                        .unwrap_or_default();
                    (x.clone(), sets)
                })
                .collect();
            Solved {
                model: Some(b.model),
                answer_sets: vec![],
                trace,
            }
        }
        Mode::As | Mode::Pas => Solved {
            model: None,
            answer_sets: if mode == Mode::As {
                answer_sets(p)?
            } else {
                preferred_answer_sets(op)?
            },
            trace: vec![],
        },
    };
    Ok(solved)
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn render_solved(
    op: &OrderedProgram,
    mode: Mode,
    solved: &Solved,
    json: bool,
    trace: bool,
    atoms_only: bool,
) -> String {
    let keep = if atoms_only {
        op.atom_level_literals()
    } else {
        op.literal_universe()
    };
    let shown = |s: &LiteralSet| s.intersection(&keep).sorted_strings();
    let mut out = String::new();
    if json {
        let mut doc = json!({ "mode": mode.name() });
        if let Some(m) = &solved.model {
            doc["true"] = json!(shown(m.true_set()));
            doc["false"] = json!(shown(m.false_set()));
            doc["unknown"] = json!(shown(&m.unknown_set()));
        } else {
            let sets: Vec<_> = solved
                .answer_sets
                .iter()
                .map(|z| shown(z.as_set()))
                .collect();
            doc["answer_sets"] = json!(sets);
        }
        if trace {
            let steps: Vec<Value> = solved
                .trace
                .iter()
                .enumerate()
                .map(|(k, (set, sets))| json!({ "step": k, "set": shown(set), "dsets": sets }))
                .collect();
            doc["trace"] = Value::Array(steps);
        }
        out.push_str(&serde_json::to_string(&doc).expect("plain data serializes"));
        out.push('\n');
        return out;
    }
    if trace {
        for (k, (set, sets)) in solved.trace.iter().enumerate() {
            out.push_str(&format!("step {k}: {}\n", braces(&shown(set))));
            for (rule, items) in sets {
                out.push_str(&format!("  {rule}: {}\n", braces(items)));
            }
        }
    }
    match &solved.model {
        Some(m) => out.push_str(&format!(
            "true: {} false: {} unknown: {}\n",
            braces(&shown(m.true_set())),
            braces(&shown(m.false_set())),
            braces(&shown(&m.unknown_set()))
        )),
        None if solved.answer_sets.is_empty() => out.push_str("no answer sets\n"),
        None => {
            for z in &solved.answer_sets {
                if z.is_lit() {
                    out.push_str("Lit\n");
                } else {
                    out.push_str(&format!("{}\n", braces(&shown(z.as_set()))));
                }
            }
        }
    }
    out
}

fn parse_sizes(sizes: &str) -> Result<Vec<usize>, CliError> {
    sizes
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Input(format!("invalid size `{s}`")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Check { file } => {
            print!("{}", render_program(&load(&file)?));
        }
        Command::Solve {
            file,
            mode,
            json,
            trace,
            atoms_only,
        } => {
            let op = load(&file)?;
            let solved = solve(&op, mode)?;
            print!(
                "{}",
                render_solved(&op, mode, &solved, json, trace, atoms_only)
            );
        }
        Command::Bench { sizes } => {
            let report = scaling_probe(&parse_sizes(&sizes)?);
            println!("{:>6}  {:>12}  {:>12}", "size", "wfs_secs", "pwfs_secs");
            for row in &report.rows {
                println!(
                    "{:>6}  {:>12.6}  {:>12.6}",
                    row.size, row.wfs_secs, row.pwfs_secs
                );
            }
            let fmt = |e: Option<f64>| e.map_or("n/a".to_string(), |e| format!("{e:.2}"));
            println!("wfs exponent: {}", fmt(report.wfs_exponent));
            println!("pwfs exponent: {}", fmt(report.pwfs_exponent));
        }
        Command::Fuzz {
            seed,
            count,
            simplistic,
        } => {
            let variant = if simplistic {
                DSetVariant::Simplistic
            } else {
                DSetVariant::Full
            };
            let gen = GeneratorConfig::default();
            let mut failed = 0;
            for s in seed..seed.saturating_add(count) {
                let op = generate_program(&gen.with_seed(s));
                let report = check_theorems(
                    &op,
                    &CheckConfig {
                        variant,
                        seed: s,
                        ..CheckConfig::default()
                    },
                );
                failed += report.failures().count();
                for line in report.json_lines() {
                    println!("{line}");
                }
            }
            eprintln!("{count} programs, {failed} failed checks");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("olp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let diverged = CliError::Divergence(FixpointDivergence {
            operator: "A°",
            cap: 5,
        });
        assert_eq!(diverged.exit_code(), 3);
        assert!(diverged.to_string().contains("did not converge within 5"));
        assert_eq!(CliError::Input("x".into()).exit_code(), 1);
        let io = std::io::Error::new(std::io::ErrorKind::NotFound, "gone");
        assert_eq!(CliError::Io("f.olp".into(), io).exit_code(), 2);
    }

    #[test]
    fn size_lists() {
        assert_eq!(parse_sizes("").ok(), Some(vec![]));
        assert_eq!(parse_sizes("50, 100,200").ok(), Some(vec![50, 100, 200]));
        assert!(parse_sizes("5,x").is_err());
    }
}

//! Command-line front end: satisfaction checks, model validity, proof
//! verification, countermodel search, formula formatting, bundled examples,
//! and the randomized suites.
//!
//! Exit codes: 0 when the claim holds (proof accepted, countermodel found,
//! suite passed), 1 when it fails, 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kc_logic::checker::{self, SemanticsMode};
use kc_logic::countermodel::{find_countermodel, SearchBounds, SearchResult};
use kc_logic::fixtures;
use kc_logic::formula::{parse, Formula};
use kc_logic::harness::{
    run_meaning_transfer_suite, run_soundness_suite, run_undefinability_suite, GenConfig, Report,
};
use kc_logic::model::{Model, Point};
use kc_logic::proof::{check_proof, Proof, Verdict};

#[derive(Parser)]
#[command(
    name = "kc",
    version,
    about = "Knowledge and comprehension over epistemic models with meanings",
    propagate_version = true
)]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Wall-clock limit in seconds (countermodel search).
    #[arg(long, global = true, value_name = "SECS")]
    time_limit: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a point, or across a state's meanings.
    Check(CheckArgs),
    /// Test whether a formula holds at every point of a model.
    Valid {
        /// Path to a model file.
        model: PathBuf,
        /// Formula in the concrete grammar.
        formula: String,
    },
    /// Verify a proof file.
    ProveCheck {
        /// Path to a proof file.
        proof: PathBuf,
    },
    /// Search for a model with a point falsifying the formula.
    Countermodel {
        /// Formula in the concrete grammar.
        formula: String,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        #[arg(long, default_value_t = 2)]
        max_meanings: usize,
        /// Write the witness model here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse a formula and print its canonical form.
    Fmt {
        /// Formula in the concrete grammar.
        formula: String,
    },
    /// List or materialize the bundled example models and proofs.
    Examples(ExamplesArgs),
    /// Run a randomized property suite and print its JSON report.
    Suite {
        #[arg(value_enum)]
        which: SuiteName,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Path to a model file.
    model: PathBuf,
    /// Formula in the concrete grammar.
    formula: String,
    /// State to evaluate in.
    #[arg(long)]
    state: String,
    /// Meaning to evaluate under; omit to report every meaning of the state.
    #[arg(long)]
    meaning: Option<String>,
    /// Semantics for the knowledge modality.
    #[arg(long, value_enum, default_value_t = ModeArg::Standard)]
    mode: ModeArg,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExamplesArgs {
    /// List the bundled fixture names.
    #[arg(long)]
    list: bool,
    /// Write fixture NAME (or `all`) into DIR as NAME.json.
    #[arg(long, num_args = 2, value_names = ["NAME", "DIR"])]
    emit: Option<Vec<String>>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Knowledge quantifies over every meaning of every related state.
    Standard,
    /// Knowledge keeps the current meaning fixed across related states.
    Alt4,
}

impl From<ModeArg> for SemanticsMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Standard => SemanticsMode::Standard,
            ModeArg::Alt4 => SemanticsMode::MeaningIndexedK,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Soundness,
    Undefinability,
    MeaningTransfer,
}

/// Claim holds / claim fails, per the exit-code contract.
enum Outcome {
    Holds,
    Fails,
}

impl Outcome {
    fn code(self) -> ExitCode {
        match self {
            Outcome::Holds => ExitCode::SUCCESS,
            Outcome::Fails => ExitCode::from(1),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => outcome.code(),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Check(args) => cmd_check(cli, args),
        Command::Valid { model, formula } => cmd_valid(cli, model, formula),
        Command::ProveCheck { proof } => cmd_prove_check(cli, proof),
        Command::Countermodel {
            formula,
            max_states,
            max_meanings,
            out,
        } => cmd_countermodel(cli, formula, *max_states, *max_meanings, out.as_deref()),
        Command::Fmt { formula } => cmd_fmt(cli, formula),
        Command::Examples(args) => cmd_examples(cli, args),
        Command::Suite { which, trials } => cmd_suite(cli, *which, *trials),
    }
}

fn load_model(path: &Path) -> Result<Model, String> {
    Model::load(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_formula(text: &str) -> Result<Formula, String> {
    parse(text).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct PointJson {
    state: String,
    meaning: String,
}

impl From<&Point> for PointJson {
    fn from(p: &Point) -> Self {
        PointJson {
            state: p.state.to_string(),
            meaning: p.meaning.to_string(),
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports always serialize")
    );
}

// --- check -----------------------------------------------------------------

#[derive(Serialize)]
struct CheckPointJson {
    formula: String,
    state: String,
    meaning: String,
    mode: &'static str,
    value: bool,
}

#[derive(Serialize)]
struct CheckStateJson {
    formula: String,
    state: String,
    mode: &'static str,
    per_meaning: Vec<MeaningValueJson>,
    consistent: bool,
    holds_at_all_meanings: bool,
}

#[derive(Serialize)]
struct MeaningValueJson {
    meaning: String,
    value: bool,
}

fn mode_name(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Standard => "standard",
        ModeArg::Alt4 => "alt4",
    }
}

fn cmd_check(cli: &Cli, args: &CheckArgs) -> Result<Outcome, String> {
    let model = load_model(&args.model)?;
    let formula = parse_formula(&args.formula)?;
    let mode: SemanticsMode = args.mode.into();

    if let Some(meaning) = &args.meaning {
        let point = model
            .point(&args.state, meaning)
            .map_err(|e| e.to_string())?;
        let value =
            checker::satisfies(&model, &point, &formula, mode).map_err(|e| e.to_string())?;
        if cli.json {
            print_json(&CheckPointJson {
                formula: formula.to_string(),
                state: point.state.to_string(),
                meaning: point.meaning.to_string(),
                mode: mode_name(args.mode),
                value,
            });
        } else {
            println!("{formula} at {point}: {value}");
        }
        return Ok(if value {
            Outcome::Holds
        } else {
            Outcome::Fails
        });
    }

    let state = model
        .states()
        .iter()
        .find(|s| s.as_str() == args.state)
        .cloned()
        .ok_or_else(|| format!("unknown state `{}`", args.state))?;
    let meanings = model.meanings(&state).map_err(|e| e.to_string())?.to_vec();
    let mut per_meaning = Vec::with_capacity(meanings.len());
    for meaning in &meanings {
        let point = Point::new(state.clone(), meaning.clone());
        let value =
            checker::satisfies(&model, &point, &formula, mode).map_err(|e| e.to_string())?;
        per_meaning.push((meaning.clone(), value));
    }
    let consistent = per_meaning.windows(2).all(|w| w[0].1 == w[1].1);
    let holds_everywhere = per_meaning.iter().all(|(_, v)| *v);

    if cli.json {
        print_json(&CheckStateJson {
            formula: formula.to_string(),
            state: state.to_string(),
            mode: mode_name(args.mode),
            per_meaning: per_meaning
                .iter()
                .map(|(m, v)| MeaningValueJson {
                    meaning: m.to_string(),
                    value: *v,
                })
                .collect(),
            consistent,
            holds_at_all_meanings: holds_everywhere,
        });
    } else {
        println!("{formula} at state {state}:");
        for (meaning, value) in &per_meaning {
            println!("  {meaning}: {value}");
        }
        println!("consistent across meanings: {consistent}");
    }
    Ok(if holds_everywhere {
        Outcome::Holds
    } else {
        Outcome::Fails
    })
}

// --- valid -------------------------------------------------------------------

#[derive(Serialize)]
struct ValidJson {
    formula: String,
    valid: bool,
    failing_points: Vec<PointJson>,
}

fn cmd_valid(cli: &Cli, model_path: &Path, formula_text: &str) -> Result<Outcome, String> {
    let model = load_model(model_path)?;
    let formula = parse_formula(formula_text)?;
    let failing = checker::failing_points(&model, &formula).map_err(|e| e.to_string())?;
    let valid = failing.is_empty();

    if cli.json {
        print_json(&ValidJson {
            formula: formula.to_string(),
            valid,
            failing_points: failing.iter().map(PointJson::from).collect(),
        });
    } else if valid {
        println!("valid in model");
    } else {
        println!("not valid: {} failing point(s)", failing.len());
        for point in &failing {
            println!("  {point}");
        }
    }
    Ok(if valid {
        Outcome::Holds
    } else {
        Outcome::Fails
    })
}

// --- prove-check ---------------------------------------------------------------

#[derive(Serialize)]
struct ProveCheckJson {
    accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    goal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

fn cmd_prove_check(cli: &Cli, path: &Path) -> Result<Outcome, String> {
    let proof = Proof::load(path).map_err(|e| format!("{}: {e}", path.display()))?;
    match check_proof(&proof) {
        Verdict::Accepted { goal } => {
            if cli.json {
                print_json(&ProveCheckJson {
                    accepted: true,
                    goal: Some(goal.to_string()),
                    line: None,
                    reason: None,
                    detail: None,
                });
            } else {
                println!("Accepted: {goal}");
            }
            Ok(Outcome::Holds)
        }
        Verdict::Rejected { line, reason } => {
            if cli.json {
                print_json(&ProveCheckJson {
                    accepted: false,
                    goal: None,
                    line: Some(line),
                    reason: Some(reason.code()),
                    detail: Some(reason.to_string()),
                });
            } else {
                println!("Rejected at line {line}: {reason} [{}]", reason.code());
            }
            Ok(Outcome::Fails)
        }
    }
}

// --- countermodel ---------------------------------------------------------------

#[derive(Serialize)]
struct CountermodelJson {
    formula: String,
    result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<PointJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    written_to: Option<String>,
}

fn cmd_countermodel(
    cli: &Cli,
    formula_text: &str,
    max_states: usize,
    max_meanings: usize,
    out: Option<&Path>,
) -> Result<Outcome, String> {
    if max_states < 1 || max_meanings < 1 {
        return Err("bounds must be at least 1".to_string());
    }
    if max_states * max_meanings > 64 {
        return Err("bounds exceed the 64-point search limit".to_string());
    }
    let formula = parse_formula(formula_text)?;
    let mut bounds = SearchBounds::new(max_states, max_meanings);
    if let Some(secs) = cli.time_limit {
        if !secs.is_finite() || secs < 0.0 {
            return Err("time limit must be a non-negative number of seconds".to_string());
        }
        bounds = bounds.with_time_limit(Duration::from_secs_f64(secs));
    }

    match find_countermodel(&formula, &bounds) {
        SearchResult::Found(model, point) => {
            let mut written_to = None;
            if let Some(path) = out {
                model.save(path).map_err(|e| e.to_string())?;
                written_to = Some(path.display().to_string());
            }
            if cli.json {
                print_json(&CountermodelJson {
                    formula: formula.to_string(),
                    result: "found",
                    point: Some(PointJson::from(&point)),
                    model: Some(
                        serde_json::to_value(model.description())
                            .expect("descriptions always serialize"),
                    ),
                    written_to,
                });
            } else {
                println!("countermodel found: {} state(s)", model.states().len());
                println!("falsifying point: {point}");
                match written_to {
                    Some(path) => println!("witness written to {path}"),
                    None => print!("{}", model.to_json()),
                }
            }
            Ok(Outcome::Holds)
        }
        SearchResult::ExhaustedBounds => {
            if cli.json {
                print_json(&CountermodelJson {
                    formula: formula.to_string(),
                    result: "exhausted_bounds",
                    point: None,
                    model: None,
                    written_to: None,
                });
            } else {
                println!(
                    "no countermodel within bounds (max-states {max_states}, max-meanings {max_meanings})"
                );
            }
            Ok(Outcome::Fails)
        }
        SearchResult::TimedOut => {
            if cli.json {
                print_json(&CountermodelJson {
                    formula: formula.to_string(),
                    result: "timed_out",
                    point: None,
                    model: None,
                    written_to: None,
                });
            } else {
                println!("search timed out");
            }
            Ok(Outcome::Fails)
        }
    }
}

// --- fmt -------------------------------------------------------------------------

#[derive(Serialize)]
struct FmtJson {
    formula: String,
}

fn cmd_fmt(cli: &Cli, formula_text: &str) -> Result<Outcome, String> {
    let formula = parse_formula(formula_text)?;
    if cli.json {
        print_json(&FmtJson {
            formula: formula.to_string(),
        });
    } else {
        println!("{formula}");
    }
    Ok(Outcome::Holds)
}

// --- examples ----------------------------------------------------------------------

#[derive(Serialize)]
struct ExamplesListJson {
    examples: Vec<ExampleEntryJson>,
}

#[derive(Serialize)]
struct ExampleEntryJson {
    name: String,
    kind: &'static str,
}

#[derive(Serialize)]
struct ExamplesEmitJson {
    written: Vec<String>,
}

fn example_entries() -> Vec<(&'static str, &'static str)> {
    let mut entries: Vec<(&'static str, &'static str)> = fixtures::MODEL_NAMES
        .iter()
        .map(|&name| (name, "model"))
        .collect();
    entries.extend(fixtures::PROOF_NAMES.iter().map(|&name| (name, "proof")));
    entries
}

fn cmd_examples(cli: &Cli, args: &ExamplesArgs) -> Result<Outcome, String> {
    if args.list {
        let entries = example_entries();
        if cli.json {
            print_json(&ExamplesListJson {
                examples: entries
                    .iter()
                    .map(|(name, kind)| ExampleEntryJson {
                        name: name.to_string(),
                        kind,
                    })
                    .collect(),
            });
        } else {
            for (name, kind) in entries {
                println!("{name}\t{kind}");
            }
        }
        return Ok(Outcome::Holds);
    }

    let emit = args.emit.as_ref().expect("clap enforces the group");
    let (name, dir) = (&emit[0], Path::new(&emit[1]));
    let selected: Vec<(&'static str, &'static str)> = if name == "all" {
        example_entries()
    } else {
        example_entries()
            .into_iter()
            .filter(|(n, _)| n == name)
            .collect()
    };
    if selected.is_empty() {
        return Err(format!(
            "unknown example `{name}`; run `kc examples --list`"
        ));
    }
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut written = Vec::new();
    for (entry, kind) in selected {
        let path = dir.join(format!("{entry}.json"));
        let contents = match kind {
            "model" => fixtures::model(entry).unwrap().to_json(),
            _ => fixtures::proof_json(entry).unwrap().to_string(),
        };
        std::fs::write(&path, contents).map_err(|e| format!("{}: {e}", path.display()))?;
        written.push(path.display().to_string());
    }
    if cli.json {
        print_json(&ExamplesEmitJson {
            written: written.clone(),
        });
    } else {
        for path in written {
            println!("wrote {path}");
        }
    }
    Ok(Outcome::Holds)
}

// --- suites -----------------------------------------------------------------------

fn cmd_suite(cli: &Cli, which: SuiteName, trials: usize) -> Result<Outcome, String> {
    if trials < 1 {
        return Err("trials must be at least 1".to_string());
    }
    let cfg = GenConfig::default().with_seed(cli.seed);
    let report: Report = match which {
        SuiteName::Soundness => run_soundness_suite(&cfg, trials),
        SuiteName::Undefinability => run_undefinability_suite(cli.seed, trials),
        SuiteName::MeaningTransfer => run_meaning_transfer_suite(&cfg, trials),
    };
    // The report is the interface; it is JSON either way.
    print!("{}", report.to_json_string());
    Ok(if report.passed {
        Outcome::Holds
    } else {
        Outcome::Fails
    })
}

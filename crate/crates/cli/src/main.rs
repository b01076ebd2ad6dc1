//! `caf`: decide controllability of control argumentation frameworks.
//!
//! Exit codes: 10 controllable, 20 not controllable, 1 usage or input
//! error, 2 budget exceeded, 3 the two methods disagree.

mod report;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use caf_core::completion::{count_completions, enumerate_completions};
use caf_core::controllability::{check_configuration, decide_with, DecideOptions, DEFAULT_BUDGET};
use caf_core::encoding::{
    build_query_formula, clausify, emit_dimacs, emit_qdimacs, solve_credulous, solve_skeptical,
};
use caf_core::model::{
    configure, fmt_set, parse_af, parse_instance, serialize_af, Acceptance, ArgSet, ArgumentId,
    Configuration, ControlAf, Instance, Mode, Query, Semantics,
};
use caf_core::semantics::extensions;
use caf_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

use report::{MethodRun, RunReport};

const EXIT_CONTROLLABLE: u8 = 10;
const EXIT_NOT_CONTROLLABLE: u8 = 20;
const EXIT_USAGE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "caf",
    version,
    about = "Controllability of control argumentation frameworks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn keyword<T: FromStr<Err = Error>>(s: &str) -> Result<T, Error> {
    s.parse()
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Logic,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a controllability query.
    Check {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_parser = keyword::<Semantics>)]
        semantics: Semantics,
        #[arg(long, value_parser = keyword::<Mode>)]
        mode: Mode,
        #[arg(long, value_parser = keyword::<Acceptance>)]
        acceptance: Acceptance,
        /// Comma-separated fixed arguments; overrides target(...) facts.
        #[arg(long, value_delimiter = ',', value_parser = keyword::<ArgumentId>)]
        target: Option<Vec<ArgumentId>>,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
        /// Worker threads for the exhaustive search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Check only this configuration (exhaustive method).
        #[arg(long, value_delimiter = ',', value_parser = keyword::<ArgumentId>)]
        conf: Option<Vec<ArgumentId>>,
        /// Add wall-clock time to the report.
        #[arg(long)]
        timing: bool,
    },
    /// List the extensions of a plain framework, one per line.
    Extensions {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_parser = keyword::<Semantics>)]
        semantics: Semantics,
    },
    /// Write the stable-semantics encoding of a possible-controllability
    /// query: QDIMACS for skeptical, DIMACS for credulous.
    Encode {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_delimiter = ',', value_parser = keyword::<ArgumentId>)]
        target: Option<Vec<ArgumentId>>,
        #[arg(long, value_parser = keyword::<Acceptance>)]
        acceptance: Acceptance,
        #[arg(long)]
        out: PathBuf,
    },
    /// Count completions, optionally writing each one out.
    Completions {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_delimiter = ',', value_parser = keyword::<ArgumentId>)]
        conf: Option<Vec<ArgumentId>>,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let text = read(path)?;
    parse_instance(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Flag targets win over file targets, with a warning when they differ.
fn resolve_target(inst: &Instance, flag: Option<Vec<ArgumentId>>) -> Result<ArgSet, Failure> {
    match flag {
        Some(list) => {
            let t: ArgSet = list.into_iter().collect();
            if !inst.targets.is_empty() && inst.targets != t {
                eprintln!(
                    "warning: --target {} overrides target facts {} in the file",
                    fmt_set(&t),
                    fmt_set(&inst.targets)
                );
            }
            Ok(t)
        }
        None if inst.targets.is_empty() => Err(Failure::usage(
            "no target: pass --target or add target(...) facts",
        )),
        None => Ok(inst.targets.clone()),
    }
}

fn budget() -> Result<u128, Failure> {
    match std::env::var("CAF_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::usage(format!(
                "CAF_BUDGET must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn configuration(caf: &ControlAf, names: Vec<ArgumentId>) -> Result<Configuration, Failure> {
    if let Some(bad) = names.iter().find(|a| !caf.control_args().contains(*a)) {
        return Err(Failure::usage(format!(
            "--conf: `{bad}` is not a control argument"
        )));
    }
    Ok(Configuration::new(names))
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    file: PathBuf,
    semantics: Semantics,
    mode: Mode,
    acceptance: Acceptance,
    target: Option<Vec<ArgumentId>>,
    method: Method,
    jobs: usize,
    conf: Option<Vec<ArgumentId>>,
    timing: bool,
) -> Outcome {
    let start = Instant::now();
    if method != Method::Brute && (semantics != Semantics::Stable || mode != Mode::Possible) {
        return Err(Failure::usage(
            "--method logic/both requires --semantics stable and --mode possible",
        ));
    }
    if conf.is_some() && method != Method::Brute {
        return Err(Failure::usage("--conf applies to --method brute only"));
    }
    let inst = load_instance(&file)?;
    let target = resolve_target(&inst, target)?;
    let caf = &inst.caf;
    let query = Query::new(caf, semantics, mode, acceptance, target.clone())?;

    let mut runs = Vec::new();
    let mut witness = None;
    let mut configuration_check = None;
    if let Some(names) = conf {
        let conf = configuration(caf, names)?;
        let out = check_configuration(caf, &conf, &query)?;
        runs.push(MethodRun {
            name: "brute",
            answer: out.success,
            stats: vec![("completions_examined", out.completions_examined)],
        });
        witness = out.witness;
        configuration_check = Some(conf.chosen().clone());
    } else {
        if method != Method::Logic {
            let opts = DecideOptions {
                budget: budget()?,
                jobs: jobs.max(1),
            };
            let v = decide_with(caf, &query, &opts)?;
            runs.push(MethodRun {
                name: "brute",
                answer: v.answer,
                stats: vec![
                    ("configurations_tried", v.stats.configurations_tried),
                    ("completions_examined", v.stats.completions_examined),
                ],
            });
            witness = v.witness;
        }
        if method != Method::Brute {
            let v = match acceptance {
                Acceptance::Credulous => solve_credulous(caf, &target)?,
                Acceptance::Skeptical => solve_skeptical(caf, &target)?,
            };
            runs.push(MethodRun {
                name: "logic",
                answer: v.answer,
                stats: vec![
                    ("candidates", v.stats.configurations_tried),
                    ("sat_checks", v.stats.completions_examined),
                ],
            });
            if witness.is_none() {
                witness = v.witness;
            }
        }
    }

    let agreed = runs.windows(2).all(|w| w[0].answer == w[1].answer);
    let answer = runs[0].answer;
    let report = RunReport {
        instance: file.display().to_string(),
        query,
        method: match method {
            Method::Brute => "brute",
            Method::Logic => "logic",
            Method::Both => "both",
        }
        .to_string(),
        configuration_check,
        verdict: if agreed {
            RunReport::verdict_of(answer)
        } else {
            "disagreement"
        },
        witness: if agreed { witness } else { None },
        runs,
        time_ms: timing.then(|| start.elapsed().as_millis()),
    };
    print!("{}", report.render());
    if !agreed {
        eprintln!("error: brute-force and logic methods disagree");
        return Ok(EXIT_DISAGREE);
    }
    Ok(if answer {
        EXIT_CONTROLLABLE
    } else {
        EXIT_NOT_CONTROLLABLE
    })
}

fn cmd_extensions(file: PathBuf, semantics: Semantics) -> Outcome {
    let text = read(&file)?;
    let af = parse_af(&text).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    let mut stdout = std::io::stdout().lock();
    for e in extensions(&af, semantics) {
        let _ = writeln!(stdout, "{}", fmt_set(e.members()));
    }
    Ok(0)
}

/// Writes `contents` to `path` via a sibling temporary file, so that a
/// failure leaves nothing behind.
fn write_atomically(path: &Path, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::usage(format!("{}: {e}", path.display()));
    let name = path
        .file_name()
        .ok_or_else(|| Failure::usage(format!("{}: not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = fs::write(&tmp, contents).and_then(|()| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}

fn cmd_encode(
    file: PathBuf,
    target: Option<Vec<ArgumentId>>,
    acceptance: Acceptance,
    out: PathBuf,
) -> Outcome {
    let inst = load_instance(&file)?;
    let target = resolve_target(&inst, target)?;
    let qf = build_query_formula(&inst.caf, &target, acceptance)?;
    let text = match acceptance {
        Acceptance::Skeptical => emit_qdimacs(&qf),
        Acceptance::Credulous => emit_dimacs(&clausify(&qf)),
    };
    write_atomically(&out, &text)?;
    Ok(0)
}

fn cmd_completions(file: PathBuf, conf: Option<Vec<ArgumentId>>, dump: Option<PathBuf>) -> Outcome {
    let inst = load_instance(&file)?;
    let caf = match conf {
        Some(names) => configure(&inst.caf, &configuration(&inst.caf, names)?)?,
        None => inst.caf,
    };
    let count = count_completions(&caf)?;
    println!("completions: {count}");
    if let Some(dir) = dump {
        let io = |e: std::io::Error| Failure::usage(format!("{}: {e}", dir.display()));
        fs::create_dir_all(&dir).map_err(io)?;
        let width = count.to_string().len();
        for (i, af) in enumerate_completions(&caf).enumerate() {
            let path = dir.join(format!("completion-{:0width$}.af", i + 1));
            fs::write(&path, serialize_af(&af)).map_err(io)?;
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check {
            file,
            semantics,
            mode,
            acceptance,
            target,
            method,
            jobs,
            conf,
            timing,
        } => cmd_check(
            file, semantics, mode, acceptance, target, method, jobs, conf, timing,
        ),
        Command::Extensions { file, semantics } => cmd_extensions(file, semantics),
        Command::Encode {
            file,
            target,
            acceptance,
            out,
        } => cmd_encode(file, target, acceptance, out),
        Command::Completions { file, conf, dump } => cmd_completions(file, conf, dump),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

//! The `scim` command line: `check`, `run` and `oracle`.
//!
//! Exit codes: 0 on success, 1 when the input is understood but fails
//! (diagnostics, no interpretation, oracle mismatch), 2 on usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::engine::{run, SearchConfig};
use crate::memory::BranchState;
use crate::random::oracle_suite;
use crate::scenario::{analyse, parse_scene};
use crate::syntax::parse_source;
use crate::validate::{load_program, validate, CompiledProgram, ProgramError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "scim", version, about = "Situated construction grammar interpreter")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate grammar files as one program.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Interpret an utterance in a scene, or run the engine from an empty state.
    Run {
        #[arg(required = true)]
        grammars: Vec<PathBuf>,
        #[arg(long, requires = "utterance")]
        scene: Option<PathBuf>,
        #[arg(long, requires = "scene")]
        utterance: Option<String>,
        #[arg(long, default_value_t = 8, value_parser = positive)]
        beam: usize,
        #[arg(long, default_value_t = 200)]
        max_firings: usize,
        #[arg(long)]
        halt_on_type: Option<String>,
        #[arg(long, default_value_t = 0.01)]
        cost_per_firing: f64,
        /// Drop branches scoring below this.
        #[arg(long)]
        score_floor: Option<f64>,
        /// Write the JSON trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compare the indexed matcher with the brute-force oracle on random cases.
    Oracle {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

struct Failure(u8, String);

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn describe(files: &[PathBuf], e: &ProgramError) -> String {
    match e {
        ProgramError::Syntax { source_index, error } => {
            format!("{}:{error}", files[*source_index].display())
        }
        ProgramError::Invalid(ds) => {
            let prefix = match files {
                [one] => format!("{}:", one.display()),
                _ => String::new(),
            };
            ds.iter().map(|d| format!("{prefix}{d}")).collect::<Vec<_>>().join("\n")
        }
    }
}

fn load(files: &[PathBuf]) -> Result<CompiledProgram, Failure> {
    let sources = files.iter().map(|f| read(f)).collect::<Result<Vec<_>, _>>()?;
    load_program(&sources).map_err(|e| Failure(EXIT_FAILURE, describe(files, &e)))
}

fn check(files: &[PathBuf], out: &mut dyn Write) -> Result<(), Failure> {
    let sources = files.iter().map(|f| read(f)).collect::<Result<Vec<_>, _>>()?;
    let mut program = crate::syntax::Program::default();
    for (i, s) in sources.iter().enumerate() {
        let p = parse_source(s)
            .map_err(|error| Failure(EXIT_FAILURE, describe(files, &ProgramError::Syntax { source_index: i, error })))?;
        program.append(p);
    }
    let p = validate(&program).map_err(|ds| Failure(EXIT_FAILURE, describe(files, &ProgramError::Invalid(ds))))?;
    let _ = writeln!(
        out,
        "ok: {} declaration(s), {} s-construction(s)",
        p.user.items.len(),
        p.constructions.len()
    );
    Ok(())
}

fn write_trace(path: &Option<PathBuf>, json: impl FnOnce() -> String) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, json() + "\n").map_err(|e| Failure(EXIT_FAILURE, format!("{}: {e}", p.display()))),
        None => Ok(()),
    }
}

fn run_command(cmd: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    let Command::Run { grammars, scene, utterance, beam, max_firings, halt_on_type, cost_per_firing, score_floor, trace } =
        cmd
    else {
        unreachable!("called for run only")
    };
    let p = load(grammars)?;
    let cfg = SearchConfig {
        beam_width: *beam,
        max_firings: *max_firings,
        score_floor: *score_floor,
        cost_per_firing: *cost_per_firing,
        halt_on_type: halt_on_type.clone(),
    };
    if let (Some(scene), Some(text)) = (scene, utterance) {
        let s = parse_scene(&read(scene)?).map_err(|e| Failure(EXIT_FAILURE, format!("{}: {e}", scene.display())))?;
        let a = analyse(&p, &s, text, &cfg).map_err(|e| Failure(EXIT_FAILURE, e.to_string()))?;
        write_trace(trace, || a.trace_json())?;
        if a.interpretations.is_empty() {
            return Err(Failure(EXIT_FAILURE, "no interpretation".into()));
        }
        for (i, r) in a.interpretations.iter().enumerate() {
            let _ = writeln!(out, "{} {}", i + 1, r.line());
        }
        return Ok(());
    }
    let forest = run(&p, BranchState::new(0), &cfg);
    write_trace(trace, || forest.trace_json())?;
    for (i, b) in forest.branches.iter().enumerate() {
        let flag = if b.incomplete { " incomplete" } else { "" };
        let _ = writeln!(out, "{} {:.4} branch {} firings {}{flag}", i + 1, b.score, b.id, b.firings().len());
    }
    if forest.branches.iter().all(|b| b.incomplete) {
        return Err(Failure(EXIT_FAILURE, "firing budget exhausted before quiescence".into()));
    }
    Ok(())
}

/// Runs a parsed command line, writing results to `out` and errors to `err`.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Check { files } => check(files, out),
        cmd @ Command::Run { .. } => run_command(cmd, out),
        Command::Oracle { seed, cases } => {
            let r = oracle_suite(*seed, *cases);
            let _ = writeln!(out, "{}", r.summary());
            if r.failures.is_empty() {
                Ok(())
            } else {
                let detail = r.failures.iter().map(|(s, e)| format!("case seed {s}: {e}")).collect::<Vec<_>>();
                Err(Failure(EXIT_FAILURE, detail.join("\n")))
            }
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// Parses `args` (program name first) and runs them.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            code
        }
    }
}

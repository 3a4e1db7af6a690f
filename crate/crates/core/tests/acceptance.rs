//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scim::engine::{run, SearchConfig};
use scim::random::{oracle_suite, stress};
use scim::scenario::counting::only_branch;
use scim::scenario::{count_program, count_trace, counting_state, FORMALISM_TOUR};

type Outcome = Result<String, String>;

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn formalisms() -> Outcome {
    let t = Instant::now();
    let features = common::formalism_coverage(FORMALISM_TOUR)?;
    common::round_trip(FORMALISM_TOUR)?;
    within(Duration::from_secs(1), t.elapsed())?;
    Ok(format!("{} forms parsed, validated and round-tripped", features.len()))
}

fn oracle() -> Outcome {
    let t = Instant::now();
    let r = oracle_suite(42, 50);
    if !r.failures.is_empty() {
        return Err(format!("{}: {:?}", r.summary(), r.failures));
    }
    within(Duration::from_secs(30), t.elapsed())?;
    Ok(format!("{}, {} matches", r.summary(), r.matches))
}

fn constraint_logic() -> Outcome {
    let rows = common::check_kleene_tables()?;
    common::check_distinctions()?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 500;
    for _ in 0..cases {
        let n = rng.gen_range(2..10);
        let fillers: Vec<Option<i64>> = (0..n).map(|_| rng.gen_bool(0.6).then(|| rng.gen_range(0..3))).collect();
        let ops: Vec<(usize, usize)> = (0..rng.gen_range(0..8)).map(|_| (rng.gen_range(0..10), rng.gen_range(0..10))).collect();
        let probe = (rng.gen_range(0..10), rng.gen_range(0..10));
        common::unify_properties(&fillers, &ops, probe)?;
    }
    Ok(format!("{rows} truth-table rows, {cases} unification cases"))
}

fn counting() -> Outcome {
    let t = Instant::now();
    let p = count_program().map_err(|e| e.to_string())?;
    let go = || -> Result<(String, Vec<(String, Option<i64>)>), String> {
        let (b, goal) = counting_state(&p, 2, 4).map_err(|e| e.to_string())?;
        let forest = run(&p, b, &SearchConfig::default());
        let branch = only_branch(&forest).ok_or("more than one branch")?;
        Ok((forest.trace_json(), count_trace(branch, goal)))
    };
    let (a, trace) = go()?;
    let (b, _) = go()?;
    let rules: Vec<&str> = trace.iter().map(|(r, _)| r.as_str()).collect();
    if rules != ["start-rule", "count-rule", "count-rule", "stop-rule"] {
        return Err(format!("fired {rules:?}"));
    }
    if a != b {
        return Err("traces differ between runs".into());
    }
    within(Duration::from_secs(1), t.elapsed())?;
    Ok(format!("fired {}", rules.join(", ")))
}

fn scenarios() -> Outcome {
    let mut lines = Vec::new();
    let mut failed = false;
    for c in common::scenario_matrix() {
        let t = Instant::now();
        let r = common::run_case(&c).and_then(|rs| within(Duration::from_secs(2), t.elapsed()).map(|_| rs));
        let line = match r {
            Ok(rs) => format!("ok   {} ({:.2?}, {} readings)", c.name, t.elapsed(), rs.len()),
            Err(e) => {
                failed = true;
                format!("FAIL {}: {e}", c.name)
            }
        };
        lines.push(format!("    {line}"));
    }
    let detail = lines.join("\n");
    if failed {
        Err(format!("\n{detail}"))
    } else {
        Ok(format!("\n{detail}"))
    }
}

fn stress_run() -> Outcome {
    let r = stress(2024, 20, 1000);
    if !r.violations.is_empty() {
        return Err(format!("{} violations, first: {}", r.violations.len(), r.violations[0]));
    }
    if r.fired < 1000 || r.programs < 20 {
        return Err(format!("only {} firings over {} programs", r.fired, r.programs));
    }
    Ok(format!("{} firings over {} programs, {} dead, {} re-armed, no violations", r.fired, r.programs, r.dead, r.rearmed))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let grammar = common::data("demo.scim");
    let scene = common::data("sit3.scene");
    let once = |name: &str| -> Result<(Vec<u8>, Vec<u8>), String> {
        let trace = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_scim"))
            .arg("run")
            .arg(&grammar)
            .arg("--scene")
            .arg(&scene)
            .args(["--utterance", common::MOVE, "--trace"])
            .arg(&trace)
            .output()
            .map_err(|e| e.to_string())?;
        if !o.status.success() {
            return Err(String::from_utf8_lossy(&o.stderr).into_owned());
        }
        Ok((o.stdout, std::fs::read(&trace).map_err(|e| e.to_string())?))
    };
    let (a, b) = (once("a.json")?, once("b.json")?);
    if a != b {
        return Err("output differs between runs".into());
    }
    Ok(format!("{} bytes of output, {} bytes of trace, identical", a.0.len(), a.1.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("formalism coverage", formalisms),
        ("matcher oracle", oracle),
        ("constraint logic", constraint_logic),
        ("counting", counting),
        ("scenario matrix", scenarios),
        ("stress", stress_run),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (status, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {status} {name} [{:.2?}] {detail}", i + 1, t.elapsed());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

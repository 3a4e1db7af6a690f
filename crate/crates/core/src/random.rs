//! Seeded random programs and states for checking the matcher against the
//! brute-force oracle and for stressing the engine.
//!
//! Every program shares one small type vocabulary: three schemas over a
//! linear context `K` and a set context `S`. Constructions draw one to three
//! inputs and a handful of constraints from a fixed menu; some create an
//! output, mutate an input, withdraw one, or depend on an earlier
//! construction.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{enumerate_matches, fire, oracle_matches, FireOutcome, Match};
use crate::memory::BranchState;
use crate::place::Place;
use crate::validate::{load_program, CompiledProgram};
use crate::value::{Filler, InstanceId, Value};

/// Largest state a random case starts from, contexts included.
pub const MAX_INSTANCES: usize = 8;

const HEADER: &str = "\
enum Tag { a, b, c }
context K inherits LinearContext
context S inherits SetContext
schema T0
  roles x: Integer ?y: Integer tag: Tag link: T0
schema T1 inherits T0
  roles z: Integer
schema T2 inherits T0
";

const TYPES: [&str; 3] = ["T0", "T1", "T2"];
const TAGS: [&str; 3] = ["a", "b", "c"];
const LABELS: [&str; 3] = ["a", "b", "c"];

#[derive(Debug, Clone)]
pub struct RandomCase {
    pub seed: u64,
    pub source: String,
    pub program: CompiledProgram,
    pub state: BranchState,
}

fn constraint(rng: &mut ChaCha8Rng, labels: &[&str], situated: &[&str]) -> String {
    let l = *labels.choose(rng).expect("at least one input");
    let other = labels.iter().copied().filter(|x| *x != l).collect::<Vec<_>>();
    let m = other.choose(rng).copied();
    let n = rng.gen_range(0..4);
    let tag = *TAGS.choose(rng).expect("tags");
    match (rng.gen_range(0..10), m) {
        (0, Some(m)) => format!("lt({l}.x, {m}.x)"),
        (0, None) => format!("lt({l}.x, {n})"),
        (1, _) => format!("{l}.tag <- {tag}"),
        (2, _) => format!("neq({l}.x, {n})"),
        (3, Some(m)) => format!("{l}.y <-> {m}.y"),
        (4, Some(m)) => format!("{l}.link = {m}"),
        (5, _) => format!("gt({l}.link.x, {})", n.min(2)),
        (6, _) if situated.len() >= 2 => {
            let mut s = situated.to_vec();
            s.shuffle(rng);
            format!("k.before({}, {})", s[0], s[1])
        }
        (7, _) => format!("OR(lt({l}.x, 1), {l}.tag <- {tag})"),
        (8, _) => format!("NOT({l}.tag <- {tag})"),
        _ => format!("le({l}.x, {})", n + 1),
    }
}

fn construction(rng: &mut ChaCha8Rng, i: usize, out: &mut String) {
    let _ = writeln!(out, "s-construction Cx{i}");
    if i > 0 && rng.gen_bool(0.3) {
        let j = rng.gen_range(0..i);
        let neg = if rng.gen_bool(0.4) { "not " } else { "" };
        let _ = writeln!(out, "  constructional\n    {neg}p: Cx{j}");
    }
    let n = rng.gen_range(1..=3);
    let labels = &LABELS[..n];
    let with_k = rng.gen_bool(0.5);
    let mut situated = Vec::new();
    let _ = writeln!(out, "  constituents");
    if with_k {
        let _ = writeln!(out, "    k: K /I");
    }
    for l in labels {
        let ty = TYPES.choose(rng).expect("types");
        if with_k && rng.gen_bool(0.7) {
            situated.push(*l);
            let _ = writeln!(out, "    {l}: {ty} @k /I");
        } else {
            let _ = writeln!(out, "    {l}: {ty} /I");
        }
    }
    let output = rng.gen_bool(0.5);
    if output {
        let _ = writeln!(out, "    s: S /I\n    o: T0 @s /O");
    }
    let _ = writeln!(out, "  constraints");
    for _ in 0..rng.gen_range(0..=3) {
        let _ = writeln!(out, "    {}", constraint(rng, labels, &situated));
    }
    if output {
        let src = labels.choose(rng).expect("inputs");
        let _ = writeln!(out, "    o.x <-> {src}.x");
        if rng.gen_bool(0.5) {
            let _ = writeln!(out, "    lt(o.x, {})", rng.gen_range(1..4));
        }
        if rng.gen_bool(0.3) {
            let _ = writeln!(out, "    o C {src}");
        }
    }
    if rng.gen_bool(0.4) {
        let l = labels.choose(rng).expect("inputs");
        let _ = writeln!(out, "    ?{l}.y <- {}", rng.gen_range(0..3));
    }
    if !situated.is_empty() && rng.gen_bool(0.3) {
        let _ = writeln!(out, "    OUT({})", situated.choose(rng).expect("situated"));
    }
}

/// Source text of a random program with one to three constructions.
pub fn random_source(rng: &mut ChaCha8Rng) -> String {
    let mut out = HEADER.to_string();
    for i in 0..rng.gen_range(1..=3) {
        out.push('\n');
        construction(rng, i, &mut out);
    }
    out
}

/// A state of at most `MAX_INSTANCES - 2` instances, so that two firings of
/// history still fit the bound.
pub fn random_state(rng: &mut ChaCha8Rng, p: &CompiledProgram) -> BranchState {
    let h = &p.hierarchy;
    let mut b = BranchState::new(0);
    let k = b.create_instance(h, "K", [], &[]).expect("context");
    b.create_instance(h, "S", [], &[]).expect("context");
    let count = rng.gen_range(2..=MAX_INSTANCES - 4);
    let mut slots: Vec<usize> = (0..count).collect();
    slots.shuffle(rng);
    let mut made: Vec<InstanceId> = Vec::new();
    for slot in slots {
        let ty = *TYPES.choose(rng).expect("types");
        // Inherited slots live under their path-qualified key.
        let key = |r: &str| if ty == "T0" { r.to_string() } else { format!("T0*{r}") };
        let mut fillers = Vec::new();
        if rng.gen_bool(0.85) {
            fillers.push((key("x"), Filler::Atom(Value::Int(rng.gen_range(0..4)))));
        }
        if rng.gen_bool(0.5) {
            fillers.push((key("y"), Filler::Atom(Value::Int(rng.gen_range(0..3)))));
        }
        if rng.gen_bool(0.7) {
            fillers.push((key("tag"), Filler::Atom(Value::Sym((*TAGS.choose(rng).expect("tags")).into()))));
        }
        if let (true, Some(t)) = (rng.gen_bool(0.4), made.choose(rng)) {
            fillers.push((key("link"), Filler::Instance(*t)));
        }
        let id = b.create_instance(h, ty, fillers, &[]).expect("well-typed fillers");
        if rng.gen_bool(0.7) {
            b.situate(h, id, k, Place::point(slot as f64)).expect("point in a linear context");
        }
        made.push(id);
    }
    b
}

/// Fires up to `n` randomly chosen matches, giving the state a history.
pub fn random_history(rng: &mut ChaCha8Rng, p: &CompiledProgram, b: &mut BranchState, n: usize) {
    for _ in 0..n {
        let mut options: Vec<_> = p
            .constructions
            .iter()
            .flat_map(|sc| enumerate_matches(&p.hierarchy, b, sc).into_iter().map(move |m| (sc, m)))
            .collect();
        if options.is_empty() {
            return;
        }
        let (sc, m) = options.swap_remove(rng.gen_range(0..options.len()));
        fire(&p.hierarchy, b, sc, &m);
    }
}

pub fn random_program(rng: &mut ChaCha8Rng) -> (String, CompiledProgram) {
    let source = random_source(rng);
    match load_program(&[&source]) {
        Ok(p) => (source, p),
        Err(e) => panic!("generated program does not validate: {e:?}\n{source}"),
    }
}

pub fn random_case(seed: u64) -> RandomCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (source, program) = random_program(&mut rng);
    let mut state = random_state(&mut rng, &program);
    let n = rng.gen_range(0..=2);
    random_history(&mut rng, &program, &mut state, n);
    RandomCase { seed, source, program, state }
}

/// Compares the indexed matcher with the oracle on every construction.
pub fn check_oracle(case: &RandomCase) -> Result<usize, String> {
    if case.state.len() > MAX_INSTANCES {
        return Err(format!("state has {} instances", case.state.len()));
    }
    let h = &case.program.hierarchy;
    let mut total = 0;
    for sc in &case.program.constructions {
        let fast = enumerate_matches(h, &case.state, sc);
        let slow = oracle_matches(h, &case.state, sc);
        if fast != slow {
            return Err(format!(
                "{}: matcher found {} bindings, oracle {}\n{:?}\n{:?}",
                sc.name,
                fast.len(),
                slow.len(),
                fast.iter().map(|m| &m.env.constituents).collect::<Vec<_>>(),
                slow.iter().map(|m| &m.env.constituents).collect::<Vec<_>>()
            ));
        }
        total += fast.len();
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub cases: usize,
    pub passed: usize,
    /// Matches found over all cases.
    pub matches: usize,
    pub failures: Vec<(u64, String)>,
}

impl OracleReport {
    pub fn summary(&self) -> String {
        format!("{}/{} pass", self.passed, self.cases)
    }
}

/// Case seeds are drawn from `seed`, so one number reproduces the suite.
pub fn case_seeds(seed: u64, cases: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases).map(|_| rng.gen()).collect()
}

pub fn oracle_suite(seed: u64, cases: usize) -> OracleReport {
    let mut report = OracleReport { cases, passed: 0, matches: 0, failures: Vec::new() };
    for s in case_seeds(seed, cases) {
        match check_oracle(&random_case(s)) {
            Ok(n) => {
                report.passed += 1;
                report.matches += n;
            }
            Err(e) => report.failures.push((s, e)),
        }
    }
    report
}

/// Outcome counts of a random firing walk.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WalkStats {
    pub fired: usize,
    pub dead: usize,
}

/// Fires random matches until quiescence or `limit` attempts, calling
/// `check` with the state before and after each attempt.
pub fn random_walk(
    rng: &mut ChaCha8Rng,
    p: &CompiledProgram,
    b: &mut BranchState,
    limit: usize,
    mut check: impl FnMut(&BranchState, &BranchState, &Match, &FireOutcome),
) -> WalkStats {
    let mut stats = WalkStats::default();
    for _ in 0..limit {
        let mut options: Vec<_> = p
            .constructions
            .iter()
            .flat_map(|sc| enumerate_matches(&p.hierarchy, b, sc).into_iter().map(move |m| (sc, m)))
            .collect();
        if options.is_empty() {
            break;
        }
        let (sc, m) = options.swap_remove(rng.gen_range(0..options.len()));
        let before = b.clone();
        let outcome = fire(&p.hierarchy, b, sc, &m);
        match outcome {
            FireOutcome::Fired(_) => stats.fired += 1,
            FireOutcome::Dead(_) => stats.dead += 1,
        }
        check(&before, b, &m, &outcome);
    }
    stats
}

/// Invariant counts of a stress run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StressReport {
    pub programs: usize,
    pub fired: usize,
    pub dead: usize,
    /// Firings of a key that had fired before and was re-armed by a mutation.
    pub rearmed: usize,
    pub violations: Vec<String>,
}

/// Pairs of firings of the same key with no mutation of a bound instance in between.
pub fn refractory_violations(b: &BranchState) -> Vec<String> {
    let mut out = Vec::new();
    let fires: Vec<_> = b.firings().iter().collect();
    for (i, f) in fires.iter().enumerate() {
        for g in &fires[i + 1..] {
            if f.construction != g.construction || f.inputs() != g.inputs() {
                continue;
            }
            let inputs = f.inputs();
            let rearmed = b.mutations().any(|m| m.time > f.time && m.time < g.time && inputs.contains(&m.instance));
            if !rearmed {
                out.push(format!("{} fired twice on {:?} without a mutation", f.construction, inputs));
            }
        }
    }
    out
}

fn count_rearmed(b: &BranchState) -> usize {
    let fires = b.firings();
    fires
        .iter()
        .enumerate()
        .filter(|(i, g)| fires[..*i].iter().any(|f| f.construction == g.construction && f.inputs() == g.inputs()))
        .count()
}

/// Parent lists name exactly the inputs of the creating firing, and every
/// input is an ancestor of what was created.
pub fn parent_violations(b: &BranchState) -> Vec<String> {
    let mut out = Vec::new();
    if !b.parents_well_formed() {
        out.push("parent lists are not well formed".into());
    }
    for f in b.firings() {
        for c in &f.created {
            let Some(inst) = b.instance(*c) else {
                out.push(format!("created instance {c} is missing"));
                continue;
            };
            let mut parents = inst.parents.clone();
            parents.sort();
            if parents != f.inputs() {
                out.push(format!("{c} has parents {parents:?}, firing inputs {:?}", f.inputs()));
            }
            if f.inputs().iter().any(|i| b.is_ancestor(*i, *c) != Ok(true)) {
                out.push(format!("{c} does not reach every input of {}", f.construction));
            }
        }
    }
    out
}

fn check_attempt(
    p: &CompiledProgram,
    before: &BranchState,
    after: &BranchState,
    m: &Match,
    outcome: &FireOutcome,
    out: &mut Vec<String>,
) {
    let h = &p.hierarchy;
    let sc = p.construction(&m.construction).expect("match names a construction");
    match outcome {
        FireOutcome::Dead(_) => {
            if after.dump_live() != before.dump_live() {
                out.push(format!("{}: rolled-back firing left a trace", m.construction));
            }
            if after.dead_decisions().len() != before.dead_decisions().len() + 1 {
                out.push(format!("{}: dead decision not logged", m.construction));
            }
        }
        FireOutcome::Fired(_) => {
            if enumerate_matches(h, after, sc).iter().any(|n| n.key() == m.key()) {
                out.push(format!("{}: matches again right after firing", m.construction));
            }
        }
    }
    if after.replay().dump_string() != after.dump_string() {
        out.push(format!("{}: replay differs from the live state", m.construction));
    }
    let replayed = after.replay();
    for sc in &p.constructions {
        let keys = |s: &BranchState| enumerate_matches(h, s, sc).iter().map(Match::key).collect::<Vec<_>>();
        if keys(&replayed) != keys(after) {
            out.push(format!("{}: replayed state matches differently", sc.name));
        }
    }
    // A sibling fork sees none of this firing, and firing there gives the same state.
    let mut sibling = before.fork(before.id + 1);
    let snapshot = before.dump_string();
    let again = fire(h, &mut sibling, sc, m);
    if before.dump_string() != snapshot {
        out.push("firing in a fork changed its parent".into());
    }
    if std::mem::discriminant(&again) != std::mem::discriminant(outcome) {
        out.push(format!("{}: fork disagrees on the outcome", m.construction));
    }
    let strip = |s: &BranchState| {
        let mut v = s.dump();
        if let Some(o) = v.as_object_mut() {
            o.remove("id");
            o.remove("parent");
        }
        // Firings carry the id of the branch they happened in.
        [before.id, sibling.id].iter().fold(v.to_string(), |t, id| t.replace(&format!("\"branch\":{id}"), "\"branch\":_"))
    };
    if strip(&sibling) != strip(after) {
        out.push(format!("{}: fork diverged from the branch", m.construction));
    }
}

/// Attempts per walk; states grow with every firing, so walks stay short.
pub const WALK_LIMIT: usize = 25;

/// Random firing walks over random programs: at least `programs` programs
/// and at least `firings` successful firings.
pub fn stress(seed: u64, programs: usize, firings: usize) -> StressReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = StressReport::default();
    while report.programs < programs || report.fired < firings {
        let (_, p) = random_program(&mut rng);
        report.programs += 1;
        for _ in 0..4 {
            let mut b = random_state(&mut rng, &p);
            let mut found = Vec::new();
            let stats = random_walk(&mut rng, &p, &mut b, WALK_LIMIT, |before, after, m, outcome| {
                check_attempt(&p, before, after, m, outcome, &mut found);
            });
            found.extend(refractory_violations(&b));
            found.extend(parent_violations(&b));
            report.fired += stats.fired;
            report.dead += stats.dead;
            report.rearmed += count_rearmed(&b);
            report.violations.extend(found);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_programs_validate() {
        for s in case_seeds(7, 200) {
            let case = random_case(s);
            assert!(case.state.len() <= MAX_INSTANCES, "{}", case.source);
        }
    }

    #[test]
    fn cases_are_reproducible() {
        let a = random_case(11);
        let b = random_case(11);
        assert_eq!(a.source, b.source);
        assert_eq!(a.state.dump_string(), b.state.dump_string());
    }

    #[test]
    fn oracle_agrees_on_a_small_suite() {
        let r = oracle_suite(3, 20);
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert_eq!(r.summary(), "20/20 pass");
    }

    #[test]
    fn short_stress_run_is_clean() {
        let r = stress(1, 3, 50);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.fired >= 50);
    }
}

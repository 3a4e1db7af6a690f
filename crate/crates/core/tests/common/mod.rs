//! Helpers shared by the integration targets.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use scim::constraint::{unify, value_of, BindingEnv, EvalCtx, Phase, RoleRef, Verdict};
use scim::memory::BranchState;
use scim::validate::{load_program, CompiledProgram};
use scim::value::{Filler, InstanceId, Value};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub const VERDICTS: [Verdict; 3] = [Verdict::Satisfied, Verdict::Violated, Verdict::Undetermined];

/// Strong Kleene logic over {0, 1/2, 1}: min, max and complement.
fn degree(v: Verdict) -> u8 {
    match v {
        Verdict::Violated => 0,
        Verdict::Undetermined => 1,
        Verdict::Satisfied => 2,
    }
}

fn from_degree(d: u8) -> Verdict {
    [Verdict::Violated, Verdict::Undetermined, Verdict::Satisfied][d as usize]
}

pub fn kleene(op: &str, args: &[Verdict]) -> Verdict {
    let ds = args.iter().map(|v| degree(*v));
    match op {
        "AND" => from_degree(ds.min().unwrap_or(2)),
        "OR" => from_degree(ds.max().unwrap_or(0)),
        "NAND" => from_degree(2 - ds.min().unwrap_or(2)),
        "NOT" => from_degree(2 - ds.max().unwrap_or(1)),
        _ => unreachable!("unknown operator {op}"),
    }
}

fn tuples(arity: usize) -> Vec<Vec<Verdict>> {
    (0..arity).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|t| VERDICTS.map(|v| [t.clone(), vec![v]].concat())).collect()
    })
}

/// One atom per verdict over a `Probe` instance with `a = 1` and `u` unbound.
fn atom(v: Verdict) -> &'static str {
    match v {
        Verdict::Satisfied => "lt(a, 5)",
        Verdict::Violated => "gt(a, 5)",
        Verdict::Undetermined => "lt(u, 1)",
    }
}

/// Every table of AND, OR, NAND up to arity 3 and NOT, through the verdict
/// combinators and through constraint evaluation. Returns the rows checked.
pub fn check_kleene_tables() -> Result<usize, String> {
    let mut rows = Vec::new();
    for arity in 1..=3 {
        for op in ["AND", "OR", "NAND"] {
            for t in tuples(arity) {
                rows.push((op, t));
            }
        }
    }
    for t in tuples(1) {
        rows.push(("NOT", t));
    }
    let constraints: Vec<String> =
        rows.iter().map(|(op, t)| format!("{op}({})", t.iter().map(|v| atom(*v)).collect::<Vec<_>>().join(", "))).collect();
    let source = format!("schema Probe\n  roles a: Integer u: Integer\n  constraints\n    {}\n", constraints.join("\n    "));
    let p = load_program(&[source]).map_err(|e| e.to_string())?;
    let h = &p.hierarchy;
    let mut b = BranchState::new(0);
    let probe = b.create_instance(h, "Probe", [("a".to_string(), Filler::Atom(Value::Int(1)))], &[]).map_err(|e| e.to_string())?;
    let exprs = h.effective_constraints("Probe").map_err(|e| e.to_string())?;
    let ctx = EvalCtx::for_instance(h, &b, b.instance(probe).expect("created"));
    for ((op, t), e) in rows.iter().zip(&exprs) {
        let expected = kleene(op, t);
        let direct = match *op {
            "AND" => Verdict::and(t.iter().copied()),
            "OR" => Verdict::or(t.iter().copied()),
            "NAND" => Verdict::nand(t.iter().copied()),
            _ => t[0].not(),
        };
        if direct != expected {
            return Err(format!("{op}{t:?}: combinator gives {direct:?}, expected {expected:?}"));
        }
        let evaluated = ctx.evaluate(e, &mut BindingEnv::default(), Phase::Pre).map_err(|e| e.to_string())?;
        if evaluated != expected {
            return Err(format!("{e}: evaluates to {evaluated:?}, expected {expected:?}"));
        }
    }
    Ok(rows.len())
}

/// Instances of `P` with two integer slots each.
pub struct Slots {
    pub program: CompiledProgram,
    pub state: BranchState,
    pub refs: Vec<RoleRef>,
}

pub fn slots(fillers: &[Option<i64>]) -> Slots {
    let program = load_program(&["schema P roles x: Integer y: Integer"]).expect("valid");
    let h = &program.hierarchy;
    let mut state = BranchState::new(0);
    let mut refs = Vec::new();
    for pair in fillers.chunks(2) {
        let fs: Vec<(String, Filler)> = pair
            .iter()
            .zip(["x", "y"])
            .filter_map(|(v, k)| v.map(|v| (k.to_string(), Filler::Atom(Value::Int(v)))))
            .collect();
        let id = state.create_instance(h, "P", fs, &[]).expect("well typed");
        refs.extend(["x", "y"].into_iter().take(pair.len()).map(|k| RoleRef::new(id, k)));
    }
    Slots { program, state, refs }
}

/// Builds an environment from `ops` (failures skipped), then checks that
/// unifying the `probe` pair is commutative, idempotent and monotone.
pub fn unify_properties(fillers: &[Option<i64>], ops: &[(usize, usize)], probe: (usize, usize)) -> Result<(), String> {
    let s = slots(fillers);
    let (h, b, refs) = (&s.program.hierarchy, &s.state, &s.refs);
    let r = |i: usize| &refs[i % refs.len()];
    let mut env = BindingEnv::default();
    for (a, c) in ops {
        if let Ok(next) = unify(h, b, r(*a), r(*c), &env) {
            env = next;
        }
    }
    let (a, c) = (r(probe.0), r(probe.1));
    let ac = unify(h, b, a, c, &env);
    let ca = unify(h, b, c, a, &env);
    match (&ac, &ca) {
        (Ok(x), Ok(y)) if !x.equivalent(y) => return Err(format!("unify({a:?}, {c:?}) is not commutative")),
        (Ok(_), Err(e)) | (Err(e), Ok(_)) => return Err(format!("one order fails with {e}, the other succeeds")),
        (Err(x), Err(y)) if x != y => return Err(format!("orders fail differently: {x} vs {y}")),
        _ => {}
    }
    let Ok(out) = ac else { return Ok(()) };
    match unify(h, b, a, c, &out) {
        Ok(again) if again.equivalent(&out) => {}
        _ => return Err("unifying twice changes the result".into()),
    }
    if out.find(a) != out.find(c) {
        return Err("unified slots are not in one class".into());
    }
    for x in refs {
        for y in refs {
            if env.find(x) == env.find(y) && out.find(x) != out.find(y) {
                return Err(format!("{x:?} and {y:?} were separated"));
            }
        }
        if let Some(v) = value_of(b, &env, x) {
            if value_of(b, &out, x).as_ref() != Some(&v) {
                return Err(format!("value of {x:?} changed"));
            }
        }
    }
    Ok(())
}

/// Equality demands the same instance; identification only compatible content;
/// a filler demands the constant.
pub fn check_distinctions() -> Result<(), String> {
    let p = load_program(&["schema N roles v: Integer
         schema H roles left: N right: N
           constraints
             left = right
             left <-> right
             left.v <- 1"])
    .map_err(|e| e.to_string())?;
    let h = &p.hierarchy;
    let mut b = BranchState::new(0);
    let n = |b: &mut BranchState, v: Option<i64>| {
        let fs: Vec<(String, Filler)> = v.map(|v| ("v".to_string(), Filler::Atom(Value::Int(v)))).into_iter().collect();
        b.create_instance(h, "N", fs, &[]).expect("N")
    };
    let one = n(&mut b, Some(1));
    let other_one = n(&mut b, Some(1));
    let two = n(&mut b, Some(2));
    let open = n(&mut b, None);
    let pair = |b: &mut BranchState, l: InstanceId, r: InstanceId| {
        b.create_instance(h, "H", [("left".to_string(), Filler::Instance(l)), ("right".to_string(), Filler::Instance(r))], &[])
            .expect("H")
    };
    use Verdict::*;
    let cases = [
        ((one, one), [Satisfied, Satisfied, Satisfied]),
        ((one, other_one), [Violated, Satisfied, Satisfied]),
        ((one, two), [Violated, Violated, Satisfied]),
        ((two, one), [Violated, Violated, Violated]),
        ((open, one), [Violated, Satisfied, Undetermined]),
    ];
    let exprs = h.effective_constraints("H").map_err(|e| e.to_string())?;
    let mut made = BTreeMap::new();
    for ((l, r), _) in &cases {
        made.insert((*l, *r), pair(&mut b, *l, *r));
    }
    for ((l, r), expected) in cases {
        let inst = b.instance(made[&(l, r)]).expect("H");
        let ctx = EvalCtx::for_instance(h, &b, inst);
        for (e, want) in exprs.iter().zip(expected) {
            let got = ctx.evaluate(e, &mut BindingEnv::default(), Phase::Pre).map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!("{e} on ({l}, {r}): {got:?}, expected {want:?}"));
            }
        }
    }
    Ok(())
}

/// Parses, validates and round-trips `source`, returning the canonical print.
pub fn round_trip(source: &str) -> Result<String, String> {
    use scim::syntax::parse_source;
    let p = parse_source(source).map_err(|e| e.to_string())?;
    let printed = p.to_string();
    let again = parse_source(&printed).map_err(|e| format!("reprint does not parse: {e}\n{printed}"))?;
    if again.without_locations() != p.without_locations() {
        return Err("reprint parses to a different tree".into());
    }
    if again.to_string() != printed {
        return Err("printing is not a fixed point".into());
    }
    scim::validate::validate(&p).map_err(|ds| ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))?;
    Ok(printed)
}

/// The tour exercises every block and constraint form; returns what was seen.
pub fn formalism_coverage(source: &str) -> Result<Vec<&'static str>, String> {
    use scim::syntax::{parse_source, ConstraintExpr, DefKind, Direction, IdentSource, PlaceExpr, Segment, ValueExpr};
    round_trip(source)?;
    let p = parse_source(source).map_err(|e| e.to_string())?;
    let defs: Vec<_> = p.definitions().collect();
    let of = |k: DefKind| defs.iter().filter(move |d| d.kind == k);
    let exprs: Vec<&ConstraintExpr> = defs.iter().flat_map(|d| d.constraints().iter().map(|c| &c.expr)).collect();
    fn walk<'a>(e: &'a ConstraintExpr, out: &mut Vec<&'a ConstraintExpr>) {
        out.push(e);
        if let ConstraintExpr::Bool { args, .. } = e {
            args.iter().for_each(|a| walk(a, out));
        }
    }
    let mut all = Vec::new();
    exprs.iter().for_each(|e| walk(e, &mut all));
    let any = |f: &dyn Fn(&ConstraintExpr) -> bool| all.iter().any(|e| f(e));
    let sig = |name: &str, params: &[&str], result: &str, relation: bool| {
        of(DefKind::Context).any(|d| {
            let sigs = if relation { d.relations() } else { d.operations() };
            sigs.iter().any(|s| s.name == name && s.params == params && s.result == result)
        })
    };
    let checks: Vec<(&'static str, bool)> = vec![
        ("schema inherits", of(DefKind::Schema).any(|d| !d.inherits().is_empty())),
        ("schema roles", of(DefKind::Schema).any(|d| !d.roles().is_empty())),
        ("schema constraints", of(DefKind::Schema).any(|d| !d.constraints().is_empty())),
        ("mutable role", defs.iter().any(|d| d.roles().iter().any(|r| r.mutable))),
        ("situated role", defs.iter().any(|d| d.roles().iter().any(|r| r.situated_in.is_some()))),
        ("inheritance path", any(&|e| e.paths().iter().any(|p| p.segments.iter().any(|s| matches!(s, Segment::Via(_)))))),
        ("self", any(&|e| e.paths().iter().any(|p| p.segments.first() == Some(&Segment::SelfRef)))),
        ("sub-role path", any(&|e| e.paths().iter().any(|p| p.segments.len() > 1 && !p.segments.iter().any(|s| matches!(s, Segment::Via(_) | Segment::SelfRef))))),
        ("boolean operation", any(&|e| matches!(e, ConstraintExpr::Bool { .. }))),
        ("filler constant", any(&|e| matches!(e, ConstraintExpr::Filler { value: ValueExpr::Literal(_), .. }))),
        ("filler function", any(&|e| matches!(e, ConstraintExpr::Filler { value: ValueExpr::Call { .. }, .. }))),
        ("identification", any(&|e| matches!(e, ConstraintExpr::Identify { right: IdentSource::Path(_), .. }))),
        ("identification through a function", any(&|e| matches!(e, ConstraintExpr::Identify { right: IdentSource::Call { .. }, .. }))),
        ("equality", any(&|e| matches!(e, ConstraintExpr::Equal { .. }))),
        ("predicate", any(&|e| matches!(e, ConstraintExpr::Predicate { .. }))),
        ("context places", of(DefKind::Context).any(|d| !d.places().is_empty())),
        ("before(point, point) |-> Boolean", sig("before", &["point", "point"], "Boolean", true)),
        ("intersection(segment, segment) |-> segment", sig("intersection", &["segment", "segment"], "segment", false)),
        ("s-construction inherits", of(DefKind::SConstruction).any(|d| !d.inherits().is_empty())),
        ("s-construction roles", of(DefKind::SConstruction).any(|d| !d.roles().is_empty())),
        ("constructional", of(DefKind::SConstruction).any(|d| d.constructional().iter().any(|c| !c.negative))),
        ("negative constructional", of(DefKind::SConstruction).any(|d| d.constructional().iter().any(|c| c.negative))),
        ("/I", defs.iter().any(|d| d.constituents().iter().any(|c| c.direction == Direction::In))),
        ("/O", defs.iter().any(|d| d.constituents().iter().any(|c| c.direction == Direction::Out))),
        ("/I/O", defs.iter().any(|d| d.constituents().iter().any(|c| c.direction == Direction::InOut))),
        ("situated constituent", defs.iter().any(|d| d.constituents().iter().any(|c| c.situated_in.is_some()))),
        ("muted role", any(&|e| e.has_muted())),
        ("parent constraint", any(&|e| matches!(e, ConstraintExpr::Parent { .. }))),
        ("structural relation", any(&|e| matches!(e, ConstraintExpr::Relation { .. }))),
        ("context operation as place", any(&|e| matches!(e, ConstraintExpr::Relation { args, .. } if args.iter().any(|a| matches!(a, PlaceExpr::Operation { .. }))))),
        ("OUT", any(&|e| matches!(e, ConstraintExpr::Out { .. }))),
        ("constructional label path", any(&|e| e.paths().iter().any(|p| p.first_label() == Some("first")))),
    ];
    let missing: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    if missing.is_empty() {
        Ok(checks.into_iter().map(|(n, _)| n).collect())
    } else {
        Err(format!("not covered: {}", missing.join(", ")))
    }
}

pub const PUT: &str = "put the small red square on the left";
pub const REMOVE: &str = "remove the small red square on the left";
pub const MOVE: &str = "move the small red square on the left";

/// Ratio under which a second reading no longer counts as wavering.
pub const WAVERING_RATIO: f64 = 0.8;

pub struct ScenarioCase {
    pub name: &'static str,
    pub scene: &'static str,
    pub utterance: &'static str,
    pub expect: fn(&[scim::scenario::Interpretation]) -> Result<(), String>,
}

fn top(rs: &[scim::scenario::Interpretation]) -> Result<&scim::scenario::Interpretation, String> {
    rs.first().ok_or_else(|| "no interpretation".to_string())
}

fn none(rs: &[scim::scenario::Interpretation]) -> Result<(), String> {
    match rs.first() {
        None => Ok(()),
        Some(r) => Err(format!("expected no interpretation, got {}", r.line())),
    }
}

fn referent_is(rs: &[scim::scenario::Interpretation], id: &str) -> Result<(), String> {
    let t = top(rs)?;
    if t.referent.as_deref() == Some(id) {
        Ok(())
    } else {
        Err(format!("top reading is {}", t.line()))
    }
}

/// Readings other than the top one scoring within the wavering ratio.
pub fn wavering(rs: &[scim::scenario::Interpretation]) -> Vec<&scim::scenario::Interpretation> {
    match rs.first() {
        Some(t) => rs[1..].iter().filter(|r| r.score >= WAVERING_RATIO * t.score).collect(),
        None => Vec::new(),
    }
}

pub fn scenario_matrix() -> Vec<ScenarioCase> {
    use scim::scenario::{SITUATION_1, SITUATION_2, SITUATION_3, SITUATION_3_NO_CIRCLES};
    vec![
        ScenarioCase { name: "situation 1, put: not understandable", scene: SITUATION_1, utterance: PUT, expect: none },
        ScenarioCase {
            name: "situation 2, remove: center square, with wavering",
            scene: SITUATION_2,
            utterance: REMOVE,
            expect: |rs| {
                referent_is(rs, "B")?;
                if wavering(rs).is_empty() {
                    return Err("no second reading within the ratio".into());
                }
                Ok(())
            },
        },
        ScenarioCase {
            name: "situation 2, move: right square",
            scene: SITUATION_2,
            utterance: MOVE,
            expect: |rs| referent_is(rs, "C"),
        },
        ScenarioCase {
            name: "situation 3, move: hesitation, one-argument reading on the left square",
            scene: SITUATION_3,
            utterance: MOVE,
            expect: |rs| {
                top(rs)?;
                if wavering(rs).is_empty() {
                    return Err("fewer than two readings within the ratio".into());
                }
                let close: Vec<_> = rs.iter().filter(|r| r.score >= WAVERING_RATIO * rs[0].score).collect();
                if !close.iter().any(|r| r.sense == "move1" && r.referent.as_deref() == Some("A")) {
                    return Err("no one-argument reading on the left square".into());
                }
                Ok(())
            },
        },
        ScenarioCase {
            name: "situation 3, put: right square",
            scene: SITUATION_3,
            utterance: PUT,
            expect: |rs| referent_is(rs, "C"),
        },
        ScenarioCase {
            name: "situation 3 without circles, put: incomprehension",
            scene: SITUATION_3_NO_CIRCLES,
            utterance: PUT,
            expect: none,
        },
    ]
}

/// Runs one case at the default beam width.
pub fn run_case(c: &ScenarioCase) -> Result<Vec<scim::scenario::Interpretation>, String> {
    let p = scim::scenario::demo_program().map_err(|e| e.to_string())?;
    let scene = scim::scenario::parse_scene(c.scene).map_err(|e| e.to_string())?;
    let a = scim::scenario::analyse(&p, &scene, c.utterance, &scim::engine::SearchConfig::default()).map_err(|e| e.to_string())?;
    (c.expect)(&a.interpretations)?;
    Ok(a.interpretations)
}

//! Two-phase interpretation: parse the utterance into requests, then ground
//! each request's theme in the scene.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::engine::{run, Forest, SearchConfig, Trace};
use crate::memory::{BranchState, MemoryError};
use crate::value::{Filler, InstanceId, Value};
use crate::validate::CompiledProgram;

use super::resolve::{resolve_referents, Pred, Resolution};
use super::scene::{load_scene, LoadedScene, Scene};
use super::utterance::{lay_out_utterance, LayoutError};

pub const REQUEST: &str = "Request";
pub const GROUNDING: &str = "Grounding";

/// One reading of an utterance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interpretation {
    pub sense: String,
    /// Scene id of the referent.
    pub referent: Option<String>,
    pub referent_rank: Option<usize>,
    pub goal: Option<String>,
    pub score: f64,
    /// Parse branch the reading comes from.
    pub parse: u64,
}

impl Interpretation {
    /// `score sense referent goal`, with `-` for missing fields.
    pub fn line(&self) -> String {
        format!(
            "{:.4} {} {} {}",
            self.score,
            self.sense,
            self.referent.as_deref().unwrap_or("-"),
            self.goal.as_deref().unwrap_or("-")
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroundingRun {
    pub parse: u64,
    pub request: InstanceId,
    pub predicates: Vec<Pred>,
    pub resolution: Option<Resolution>,
    #[serde(skip)]
    pub forest: Option<Forest>,
    pub trace: Option<Trace>,
}

/// Everything an interpretation run produced, readings best first.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub interpretations: Vec<Interpretation>,
    pub parse: Forest,
    pub grounding: Vec<GroundingRun>,
}

#[derive(Serialize)]
struct AnalysisTrace<'a> {
    parse: Trace,
    grounding: &'a [GroundingRun],
    interpretations: &'a [Interpretation],
}

impl Analysis {
    pub fn trace_json(&self) -> String {
        let t = AnalysisTrace { parse: self.parse.trace(), grounding: &self.grounding, interpretations: &self.interpretations };
        serde_json::to_string_pretty(&t).expect("trace serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterpretError {
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Memory(#[from] MemoryError),
    #[error("no interpretation")]
    NoInterpretation,
}

fn with_halt(cfg: &SearchConfig, ty: &str) -> SearchConfig {
    SearchConfig { halt_on_type: Some(cfg.halt_on_type.clone().unwrap_or_else(|| ty.to_string())), ..cfg.clone() }
}

fn sym(b: &BranchState, inst: InstanceId, key: &str) -> Option<String> {
    match b.instance(inst)?.filler(key)? {
        Filler::Atom(Value::Sym(s) | Value::Str(s)) => Some(s.clone()),
        _ => None,
    }
}

fn instance(b: &BranchState, inst: InstanceId, key: &str) -> Option<InstanceId> {
    b.instance(inst)?.filler(key)?.as_instance()
}

/// Predicates of a referring expression: the noun, the adjectives nearest
/// first, then the prepositional restriction.
pub fn predicates_of(b: &BranchState, refexp: InstanceId) -> Vec<Pred> {
    let flag = |k: &str| matches!(b.instance(refexp).and_then(|i| i.filler(k)), Some(Filler::Atom(Value::Bool(true))));
    [("square", Pred::Square), ("red", Pred::Red), ("small", Pred::Small), ("left", Pred::OnTheLeft)]
        .into_iter()
        .filter(|(k, _)| flag(k))
        .map(|(_, p)| p)
        .collect()
}

/// The initial state: scene, meaning context and laid-out utterance.
pub fn initial_state(p: &CompiledProgram, scene: &Scene, utterance: &str) -> Result<(BranchState, LoadedScene), InterpretError> {
    let h = &p.hierarchy;
    let mut b = BranchState::new(0);
    let loaded = load_scene(h, &mut b, scene)?;
    b.create_instance(h, "Meaning", [], &[])?;
    lay_out_utterance(h, &mut b, utterance)?;
    Ok((b, loaded))
}

fn ground(
    p: &CompiledProgram,
    parse: &BranchState,
    request: InstanceId,
    scene: &Scene,
    loaded: &LoadedScene,
    cfg: &SearchConfig,
) -> Result<GroundingRun, InterpretError> {
    let h = &p.hierarchy;
    let theme = instance(parse, request, "theme");
    let predicates = theme.map(|t| predicates_of(parse, t)).unwrap_or_default();
    let mut run_info = GroundingRun { parse: parse.id, request, predicates, resolution: None, forest: None, trace: None };
    let (Some(theme), Ok(resolution)) = (theme, resolve_referents(scene, &run_info.predicates)) else {
        return Ok(run_info);
    };
    let mut b = parse.clone();
    let rc = b.create_instance(h, "Resolution", [], &[])?;
    let survivors = resolution.ranked.iter().map(|r| (r.object.as_str(), r.rank, true, Some(r.trust)));
    let dropped = resolution.dropped.iter().enumerate().map(|(i, o)| (o.as_str(), resolution.ranked.len() + 1 + i, false, None));
    for (object, rank, survived, trust) in survivors.chain(dropped) {
        let Some(obj) = loaded.instance(object) else { continue };
        let region = scene.object(object).map(|o| scene.region_of(o).name()).unwrap_or("center");
        let c = b.create_instance(
            h,
            "Candidate",
            [
                ("object".to_string(), Filler::Instance(obj)),
                ("rank".to_string(), Filler::Atom(Value::Int(rank as i64))),
                ("survived".to_string(), Filler::Atom(Value::Bool(survived))),
                ("query".to_string(), Filler::Instance(theme)),
                ("region".to_string(), Filler::Atom(Value::Sym(region.into()))),
            ],
            &[],
        )?;
        if let Some(t) = trust {
            b.set_trust(c, t)?;
        }
        let at = b.synthetic_point(rc);
        b.situate(h, c, rc, at)?;
    }
    let forest = run(p, b, &with_halt(cfg, GROUNDING));
    run_info.trace = Some(forest.trace());
    run_info.resolution = Some(resolution);
    run_info.forest = Some(forest);
    Ok(run_info)
}

fn readings(p: &CompiledProgram, g: &GroundingRun, loaded: &LoadedScene) -> Vec<Interpretation> {
    let Some(forest) = &g.forest else { return Vec::new() };
    let mut out = Vec::new();
    for b in &forest.branches {
        for gi in b.instances().filter(|i| p.hierarchy.subtype(&i.ty, GROUNDING)) {
            let referent = instance(b, gi.id, "referent");
            let rank = b
                .instances()
                .filter(|c| c.ty == "Candidate" && instance(b, c.id, "object") == referent)
                .find_map(|c| match c.filler("rank") {
                    Some(Filler::Atom(Value::Int(r))) => Some(*r as usize),
                    _ => None,
                });
            out.push(Interpretation {
                sense: sym(b, gi.id, "sense").unwrap_or_else(|| "-".into()),
                referent: referent.and_then(|r| loaded.name_of(r)).map(String::from),
                referent_rank: rank,
                goal: sym(b, gi.id, "goal"),
                score: b.score,
                parse: g.parse,
            });
        }
    }
    // A second-ranked referent only counts as wavering next to a surviving first choice.
    if !out.iter().any(|i| i.referent_rank == Some(1)) {
        out.clear();
    }
    out
}

/// Runs both phases and collects every reading, best first.
pub fn analyse(p: &CompiledProgram, scene: &Scene, utterance: &str, cfg: &SearchConfig) -> Result<Analysis, InterpretError> {
    let (initial, loaded) = initial_state(p, scene, utterance)?;
    let parse = run(p, initial, &with_halt(cfg, REQUEST));
    let mut grounding = Vec::new();
    for b in &parse.branches {
        for q in b.instances().filter(|i| p.hierarchy.subtype(&i.ty, REQUEST)) {
            grounding.push(ground(p, b, q.id, scene, &loaded, cfg)?);
        }
    }
    let mut all: Vec<Interpretation> = grounding.iter().flat_map(|g| readings(p, g, &loaded)).collect();
    all.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.parse.cmp(&b.parse)));
    let mut seen = BTreeSet::new();
    all.retain(|i| seen.insert((i.sense.clone(), i.referent.clone(), i.goal.clone())));
    Ok(Analysis { interpretations: all, parse, grounding })
}

/// Ranked readings, or `NoInterpretation` when nothing grounds.
pub fn interpret(p: &CompiledProgram, scene: &Scene, utterance: &str, cfg: &SearchConfig) -> Result<Vec<Interpretation>, InterpretError> {
    let a = analyse(p, scene, utterance, cfg)?;
    if a.interpretations.is_empty() {
        Err(InterpretError::NoInterpretation)
    } else {
        Ok(a.interpretations)
    }
}

/// Score of the best reading per referent.
pub fn best_by_referent(readings: &[Interpretation]) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    for r in readings {
        if let Some(id) = &r.referent {
            out.entry(id.clone()).or_insert(r.score);
        }
    }
    out
}

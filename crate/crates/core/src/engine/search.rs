use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::memory::{BranchState, DeadDecision, Firing};
use crate::types::TypeHierarchy;
use crate::validate::CompiledProgram;
use crate::value::{Filler, InstanceId};

use super::{enumerate_matches, fire, CompiledSConstruction, FireOutcome, Match};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub beam_width: usize,
    pub max_firings: usize,
    /// Branches scoring below this are dropped.
    pub score_floor: Option<f64>,
    pub cost_per_firing: f64,
    /// Stop a branch as soon as it holds an instance of this type.
    pub halt_on_type: Option<String>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { beam_width: 8, max_firings: 200, score_floor: None, cost_per_firing: 0.01, halt_on_type: None }
    }
}

pub trait Scorer {
    fn score(&self, h: &TypeHierarchy, b: &BranchState) -> f64;
}

/// Trust times capacity of the live meaning, minus a cost per firing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostScorer {
    pub cost_per_firing: f64,
}

impl Default for CostScorer {
    fn default() -> Self {
        CostScorer { cost_per_firing: 0.01 }
    }
}

impl Scorer for CostScorer {
    fn score(&self, h: &TypeHierarchy, b: &BranchState) -> f64 {
        score(h, b, self.cost_per_firing)
    }
}

/// Instances that were situated somewhere and are now present nowhere.
fn withdrawn(b: &BranchState) -> BTreeSet<InstanceId> {
    let mut seen = BTreeSet::new();
    let mut present = BTreeSet::new();
    for c in b.contexts() {
        for s in b.situations(c) {
            seen.insert(s.instance);
            if s.present {
                present.insert(s.instance);
            }
        }
    }
    seen.difference(&present).copied().collect()
}

pub fn score(h: &TypeHierarchy, b: &BranchState, cost_per_firing: f64) -> f64 {
    let out = withdrawn(b);
    let gain: f64 = b
        .instances()
        .filter(|i| i.created_by.is_some() && !h.is_context(&i.ty) && !out.contains(&i.id))
        .map(|i| i.trust * i.capacity)
        .fold(0.0, |a, x| a + x);
    gain - cost_per_firing * b.firings().len() as f64
}

/// Terminal branches of a run, best first.
#[derive(Debug, Clone)]
pub struct Forest {
    pub config: SearchConfig,
    pub branches: Vec<BranchState>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceBranch {
    pub id: u64,
    pub parent: Option<u64>,
    pub score: f64,
    pub incomplete: bool,
    pub firings: Vec<Firing>,
    pub dead: Vec<DeadDecision>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub config: SearchConfig,
    pub branches: Vec<TraceBranch>,
}

impl Forest {
    pub fn best(&self) -> Option<&BranchState> {
        self.branches.first()
    }

    pub fn trace(&self) -> Trace {
        Trace {
            config: self.config.clone(),
            branches: self
                .branches
                .iter()
                .map(|b| TraceBranch {
                    id: b.id,
                    parent: b.parent,
                    score: b.score,
                    incomplete: b.incomplete,
                    firings: b.firings().to_vec(),
                    dead: b.dead_decisions().to_vec(),
                })
                .collect(),
        }
    }

    pub fn trace_json(&self) -> String {
        serde_json::to_string_pretty(&self.trace()).expect("trace serializes")
    }
}

/// Canonical description of a branch that ignores instance numbering and
/// firing order. Two branches with equal signatures hold the same derivation.
pub fn derivation_signature(b: &BranchState) -> String {
    let mut origins: BTreeMap<InstanceId, String> = BTreeMap::new();
    for i in b.instances() {
        let o = match i.created_by {
            None => format!("#{}", i.id.0),
            Some(f) => {
                let firing = &b.firings()[f];
                let pos = firing.created.iter().position(|c| *c == i.id).unwrap_or(0);
                format!("{}({}).{pos}", firing.construction, sorted_origins(&origins, &firing.inputs()))
            }
        };
        origins.insert(i.id, o);
    }
    let name = |id: &InstanceId| origins.get(id).cloned().unwrap_or_else(|| id.to_string());
    let mut lines = Vec::new();
    for i in b.instances() {
        let mut line = format!("{} {} t={:.9} c={:.9}", name(&i.id), i.ty, i.trust, i.capacity);
        for (k, f) in &i.fillers {
            match f {
                Filler::Instance(x) => write!(line, " {k}={}", name(x)),
                Filler::Atom(v) => write!(line, " {k}={v:?}"),
            }
            .expect("string write");
        }
        lines.push(line);
    }
    for c in b.contexts() {
        for s in b.situations(c).iter().filter(|s| s.present) {
            lines.push(format!("@{} {} {:?}", name(&c), name(&s.instance), s.place));
        }
    }
    for f in b.firings() {
        lines.push(format!("!{}({})", f.construction, sorted_origins(&origins, &f.inputs())));
    }
    lines.sort();
    lines.join("\n")
}

fn sorted_origins(origins: &BTreeMap<InstanceId, String>, ids: &[InstanceId]) -> String {
    let mut v: Vec<&str> = ids.iter().filter_map(|i| origins.get(i).map(String::as_str)).collect();
    v.sort();
    v.join(",")
}

fn halted(h: &TypeHierarchy, b: &BranchState, cfg: &SearchConfig) -> bool {
    cfg.halt_on_type.as_ref().is_some_and(|t| b.instances().any(|i| h.subtype(&i.ty, t)))
}

/// Beam search with the default cost scorer.
pub fn run(p: &CompiledProgram, initial: BranchState, cfg: &SearchConfig) -> Forest {
    run_with(p, initial, cfg, &CostScorer { cost_per_firing: cfg.cost_per_firing })
}

/// Beam search: every candidate of a branch spawns its own child; the
/// best `beam_width` children survive each step.
pub fn run_with(p: &CompiledProgram, initial: BranchState, cfg: &SearchConfig, scorer: &dyn Scorer) -> Forest {
    let h = &p.hierarchy;
    let mut next_id = initial.id + 1;
    let mut initial = initial;
    initial.score = scorer.score(h, &initial);
    let mut live = vec![initial];
    let mut terminal = Vec::new();
    let beam = cfg.beam_width.max(1);

    while !live.is_empty() {
        let mut children: Vec<(BranchState, (String, Vec<InstanceId>))> = Vec::new();
        for mut b in live {
            if halted(h, &b, cfg) {
                terminal.push(b);
                continue;
            }
            if b.firings().len() >= cfg.max_firings {
                b.incomplete = true;
                terminal.push(b);
                continue;
            }
            let candidates: Vec<(&Arc<CompiledSConstruction>, Match)> = p
                .constructions
                .iter()
                .flat_map(|sc| enumerate_matches(h, &b, sc).into_iter().map(move |m| (sc, m)))
                .collect();
            if candidates.is_empty() {
                terminal.push(b);
                continue;
            }
            let single = candidates.len() == 1;
            let mut fired = Vec::new();
            let mut dead = Vec::new();
            for (sc, m) in candidates {
                let mut child = if single { b.clone() } else { b.fork(next_id) };
                if !single {
                    next_id += 1;
                }
                match fire(h, &mut child, sc, &m) {
                    FireOutcome::Fired(_) => {
                        child.score = scorer.score(h, &child);
                        fired.push((child, m.key()));
                    }
                    FireOutcome::Dead(reason) => dead.push((sc.name.clone(), m.env.constituents.clone(), reason)),
                }
            }
            if fired.is_empty() {
                // Every candidate failed: the branch lives on, remembering why.
                for (sc, bindings, reason) in dead {
                    b.record_dead(&sc, bindings, reason);
                }
                children.push((b, (String::new(), Vec::new())));
                continue;
            }
            for (mut child, key) in fired {
                for (sc, bindings, reason) in &dead {
                    child.record_dead(sc, bindings.clone(), reason.clone());
                }
                children.push((child, key));
            }
        }
        children.sort_by(|(a, ka), (b, kb)| b.score.total_cmp(&a.score).then_with(|| ka.cmp(kb)).then(a.id.cmp(&b.id)));
        let mut seen = HashSet::new();
        live = Vec::new();
        for (c, _) in children {
            if cfg.score_floor.is_some_and(|f| c.score < f) {
                continue;
            }
            if !seen.insert(derivation_signature(&c)) {
                continue;
            }
            if live.len() < beam {
                live.push(c);
            }
        }
    }

    let mut seen = HashSet::new();
    terminal.retain(|b| seen.insert(derivation_signature(b)));
    terminal.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.id.cmp(&b.id)));
    Forest { config: cfg.clone(), branches: terminal }
}

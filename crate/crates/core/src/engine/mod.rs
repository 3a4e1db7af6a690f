//! The production-system core: matching, firing and beam search.

mod fire;
mod matcher;
mod search;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::syntax::{
    ConstituentDecl, ConstraintExpr, ConstructionalDecl, Direction, IdentSource, PlaceExpr, RolePath, ValueExpr,
};
use crate::types::{MergedConstruction, PathRoot, ResolvedPath, Scope, TypeError, TypeHierarchy};

pub use fire::{fire, FireOutcome};
pub use matcher::{admissible, enumerate_matches, oracle_matches, Match};
pub use search::{
    derivation_signature, run, run_with, score, CostScorer, Forest, Scorer, SearchConfig, Trace, TraceBranch,
};

/// Where an output value comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Const(ValueExpr),
    Path(RolePath),
    Call { function: String, arg: RolePath },
}

/// Initial filler of a created constituent.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub label: String,
    pub key: String,
    pub source: Source,
}

/// New value for a muted role of an input.
#[derive(Debug, Clone, PartialEq)]
pub struct MutationPlan {
    /// The target path with the muted marker removed.
    pub target: RolePath,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub label: String,
    pub context: String,
    pub place: PlaceExpr,
}

/// An s-construction ready for matching and firing.
#[derive(Debug, Clone)]
pub struct CompiledSConstruction {
    pub name: String,
    pub confidence: f64,
    pub requirements: Vec<ConstructionalDecl>,
    pub constituents: Vec<ConstituentDecl>,
    pub outputs: BTreeSet<String>,
    /// Top-level pre-phase identifications; they build the binding environment.
    pub identifications: Vec<ConstraintExpr>,
    /// Remaining pre-phase constraints.
    pub pre: Vec<ConstraintExpr>,
    /// Constraints over muted roles or created constituents.
    pub post: Vec<ConstraintExpr>,
    pub assignments: Vec<Assignment>,
    pub mutations: Vec<MutationPlan>,
    pub placements: Vec<Placement>,
    pub outs: Vec<String>,
    pub paths: HashMap<RolePath, ResolvedPath>,
    pub merged: MergedConstruction,
}

impl CompiledSConstruction {
    pub fn inputs(&self) -> impl Iterator<Item = &ConstituentDecl> {
        self.constituents.iter().filter(|c| c.direction.is_input())
    }

    pub fn constituent(&self, label: &str) -> Option<&ConstituentDecl> {
        self.constituents.iter().find(|c| c.label == label)
    }

    /// Constituent labels a constraint depends on, or `None` if it reads a
    /// constructional label.
    pub fn labels_of(&self, e: &ConstraintExpr) -> Option<BTreeSet<String>> {
        let mut out: BTreeSet<String> = e.context_labels().into_iter().map(String::from).collect();
        for p in e.paths() {
            match &self.paths.get(p)?.root {
                PathRoot::Constituent(l) => {
                    out.insert(l.clone());
                }
                _ => return None,
            }
        }
        Some(out)
    }
}

impl Serialize for CompiledSConstruction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

fn strip_muted(p: &RolePath) -> RolePath {
    RolePath { muted: false, segments: p.segments.clone() }
}

/// Builds matching and output plans from a validated s-construction.
pub fn compile_construction(h: &TypeHierarchy, name: &str) -> Result<CompiledSConstruction, TypeError> {
    let merged = h.merged_construction(name)?;
    let outputs: BTreeSet<String> =
        merged.constituents.iter().filter(|c| c.direction == Direction::Out).map(|c| c.label.clone()).collect();
    let mut paths = HashMap::new();
    for c in &merged.constraints {
        for p in c.paths() {
            let r = h.resolve_in(Scope::Construction(&merged), p)?;
            paths.insert(strip_muted(p), r.clone());
            paths.insert(p.clone(), r);
        }
    }
    let is_output_path = |p: &RolePath| matches!(&paths[p].root, PathRoot::Constituent(l) if outputs.contains(l));
    let direct_output = |p: &RolePath| -> Option<(String, String)> {
        let r = &paths[p];
        match &r.root {
            PathRoot::Constituent(l) if outputs.contains(l) && r.hops.len() == 1 && !p.muted => {
                Some((l.clone(), r.hops[0].key.clone()))
            }
            _ => None,
        }
    };

    let mut c = CompiledSConstruction {
        name: name.to_string(),
        confidence: merged.confidence,
        requirements: merged.constructional.clone(),
        constituents: merged.constituents.clone(),
        outputs: outputs.clone(),
        identifications: Vec::new(),
        pre: Vec::new(),
        post: Vec::new(),
        assignments: Vec::new(),
        mutations: Vec::new(),
        placements: Vec::new(),
        outs: Vec::new(),
        paths: HashMap::new(),
        merged: merged.clone(),
    };

    for e in &merged.constraints {
        let post = e.has_muted()
            || e.paths().into_iter().any(is_output_path)
            || e.context_labels().iter().any(|l| outputs.contains(*l));
        match e {
            ConstraintExpr::Out { constituent } => {
                c.outs.push(constituent.clone());
                continue;
            }
            ConstraintExpr::Filler { role, value } => {
                if let Some((label, key)) = direct_output(role) {
                    c.assignments.push(Assignment { label, key, source: Source::Const(value.clone()) });
                } else if role.muted {
                    c.mutations.push(MutationPlan { target: strip_muted(role), source: Source::Const(value.clone()) });
                }
            }
            ConstraintExpr::Identify { left, right } => {
                let source = match right {
                    IdentSource::Path(p) => Source::Path(p.clone()),
                    IdentSource::Call { function, arg } => Source::Call { function: function.clone(), arg: arg.clone() },
                };
                if let Some((label, key)) = direct_output(left) {
                    c.assignments.push(Assignment { label, key, source });
                } else if left.muted {
                    c.mutations.push(MutationPlan { target: strip_muted(left), source });
                } else if let IdentSource::Path(p) = right {
                    if let Some((label, key)) = direct_output(p) {
                        c.assignments.push(Assignment { label, key, source: Source::Path(left.clone()) });
                    } else if p.muted {
                        c.mutations.push(MutationPlan { target: strip_muted(p), source: Source::Path(left.clone()) });
                    }
                }
            }
            ConstraintExpr::Equal { left, right } => {
                if let Some((label, key)) = direct_output(left) {
                    c.assignments.push(Assignment { label, key, source: Source::Path(right.clone()) });
                } else if let Some((label, key)) = direct_output(right) {
                    c.assignments.push(Assignment { label, key, source: Source::Path(left.clone()) });
                }
            }
            ConstraintExpr::Relation { context, relation, args } if relation == "at" => {
                if let Some(PlaceExpr::Path(p)) = args.first() {
                    if let (true, Some(l)) = (p.is_bare_label(), p.first_label()) {
                        if outputs.contains(l) && args.len() == 2 {
                            c.placements.push(Placement {
                                label: l.to_string(),
                                context: context.clone(),
                                place: args[1].clone(),
                            });
                        }
                    }
                }
            }
            _ => {}
        }
        if post {
            c.post.push(e.clone());
        } else if matches!(e, ConstraintExpr::Identify { .. }) {
            c.identifications.push(e.clone());
        } else {
            c.pre.push(e.clone());
        }
    }
    c.paths = paths;
    Ok(c)
}

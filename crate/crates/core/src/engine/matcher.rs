use std::collections::{BTreeMap, BTreeSet};

use crate::constraint::{BindingEnv, EvalCtx, Phase, Verdict};
use crate::memory::{BranchState, RefractoryKey};
use crate::syntax::ConstituentDecl;
use crate::types::{Scope, TypeHierarchy};
use crate::value::InstanceId;

use super::CompiledSConstruction;

/// An admissible binding of an s-construction's inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Match {
    pub construction: String,
    pub env: BindingEnv,
    /// Constructional label to the index of the firing it refers to.
    pub requirements: BTreeMap<String, usize>,
}

impl Match {
    /// Bound instance ids, sorted.
    pub fn inputs(&self) -> Vec<InstanceId> {
        let mut ids: Vec<_> = self.env.constituents.values().copied().collect();
        ids.sort();
        ids
    }

    pub fn key(&self) -> RefractoryKey {
        (self.construction.clone(), self.inputs())
    }
}

fn requirement_map(
    h: &TypeHierarchy,
    state: &BranchState,
    sc: &CompiledSConstruction,
    ids: &[InstanceId],
) -> Option<BTreeMap<String, usize>> {
    if sc.requirements.is_empty() {
        return Some(BTreeMap::new());
    }
    let closure: BTreeSet<InstanceId> = ids.iter().flat_map(|i| state.lineage(*i)).collect();
    let mut out = BTreeMap::new();
    for req in &sc.requirements {
        let first = state
            .firings()
            .iter()
            .position(|f| h.subtype(&f.construction, &req.ty) && f.created.iter().any(|c| closure.contains(c)));
        match (req.negative, first) {
            (true, Some(_)) | (false, None) => return None,
            (true, None) => {}
            (false, Some(i)) => {
                out.insert(req.label.clone(), i);
            }
        }
    }
    Some(out)
}

pub(crate) fn eval_ctx<'a>(
    h: &'a TypeHierarchy,
    pre: &'a BranchState,
    post: Option<&'a BranchState>,
    sc: &'a CompiledSConstruction,
    requirements: Option<&'a BTreeMap<String, BTreeMap<String, InstanceId>>>,
) -> EvalCtx<'a> {
    EvalCtx {
        h,
        pre,
        post,
        scope: Scope::Construction(&sc.merged),
        paths: Some(&sc.paths),
        self_instance: None,
        requirements,
        outputs: &sc.outputs,
    }
}

pub(crate) fn requirement_bindings(
    state: &BranchState,
    reqs: &BTreeMap<String, usize>,
) -> BTreeMap<String, BTreeMap<String, InstanceId>> {
    reqs.iter().map(|(l, i)| (l.clone(), state.firings()[*i].bindings.clone())).collect()
}

/// The full admissibility test for one binding of the input constituents.
pub fn admissible(
    h: &TypeHierarchy,
    state: &BranchState,
    sc: &CompiledSConstruction,
    binding: &BTreeMap<String, InstanceId>,
) -> Option<Match> {
    let inputs: Vec<&ConstituentDecl> = sc.inputs().collect();
    if binding.len() != inputs.len() {
        return None;
    }
    let distinct: BTreeSet<_> = binding.values().collect();
    if distinct.len() != binding.len() {
        return None;
    }
    for c in &inputs {
        let id = *binding.get(&c.label)?;
        let inst = state.instance(id)?;
        if !h.subtype(&inst.ty, &c.ty) {
            return None;
        }
        if let Some(ctx) = &c.situated_in {
            state.place_of(id, *binding.get(ctx)?)?;
        }
    }
    let ids: Vec<InstanceId> = distinct.into_iter().copied().collect();
    if state.is_refractory(&(sc.name.clone(), ids.clone())) {
        return None;
    }
    let requirements = requirement_map(h, state, sc, &ids)?;
    let req_bindings = requirement_bindings(state, &requirements);
    let ctx = eval_ctx(h, state, None, sc, Some(&req_bindings));
    let mut env = BindingEnv::with_constituents(binding.clone());
    for e in &sc.identifications {
        if !matches!(ctx.evaluate(e, &mut env, Phase::Pre), Ok(Verdict::Satisfied | Verdict::Undetermined)) {
            return None;
        }
    }
    for e in &sc.pre {
        if !matches!(ctx.evaluate(e, &mut env.clone(), Phase::Pre), Ok(Verdict::Satisfied | Verdict::Undetermined)) {
            return None;
        }
    }
    Some(Match { construction: sc.name.clone(), env, requirements })
}

fn sort_matches(sc: &CompiledSConstruction, v: &mut [Match]) {
    let labels: Vec<&str> = sc.inputs().map(|c| c.label.as_str()).collect();
    let tuple = |m: &Match| -> Vec<InstanceId> { labels.iter().map(|l| m.env.constituents[*l]).collect() };
    v.sort_by(|a, b| a.inputs().cmp(&b.inputs()).then_with(|| tuple(a).cmp(&tuple(b))));
}

/// Every admissible binding, found by indexed backtracking with early pruning.
pub fn enumerate_matches(h: &TypeHierarchy, state: &BranchState, sc: &CompiledSConstruction) -> Vec<Match> {
    let mut order: Vec<&ConstituentDecl> = sc.inputs().collect();
    let hosts: BTreeSet<&str> = order.iter().filter_map(|c| c.situated_in.as_deref()).collect();
    order.sort_by_key(|c| !hosts.contains(c.label.as_str()));

    let mut by_type: BTreeMap<&str, Vec<InstanceId>> = BTreeMap::new();
    for c in &order {
        by_type
            .entry(c.ty.as_str())
            .or_insert_with(|| state.instances().filter(|i| h.subtype(&i.ty, &c.ty)).map(|i| i.id).collect());
    }
    let prunable: Vec<(BTreeSet<String>, &crate::syntax::ConstraintExpr)> =
        sc.pre.iter().filter_map(|e| sc.labels_of(e).map(|l| (l, e))).collect();

    let mut out = Vec::new();
    let mut binding = BTreeMap::new();
    let search = Search { h, state, sc, order: &order, by_type: &by_type, prunable: &prunable };
    search.assign(0, &mut binding, &mut out);
    sort_matches(sc, &mut out);
    out
}

struct Search<'a> {
    h: &'a TypeHierarchy,
    state: &'a BranchState,
    sc: &'a CompiledSConstruction,
    order: &'a [&'a ConstituentDecl],
    by_type: &'a BTreeMap<&'a str, Vec<InstanceId>>,
    prunable: &'a [(BTreeSet<String>, &'a crate::syntax::ConstraintExpr)],
}

impl Search<'_> {
    fn assign(&self, i: usize, binding: &mut BTreeMap<String, InstanceId>, out: &mut Vec<Match>) {
        if i == self.order.len() {
            if let Some(m) = admissible(self.h, self.state, self.sc, binding) {
                out.push(m);
            }
            return;
        }
        let c = self.order[i];
        let typed = &self.by_type[c.ty.as_str()];
        let candidates: Vec<InstanceId> = match &c.situated_in {
            Some(ctx) => {
                let typed: BTreeSet<_> = typed.iter().collect();
                self.state.present_in(binding[ctx]).filter(|id| typed.contains(id)).collect()
            }
            None => typed.clone(),
        };
        for id in candidates {
            if binding.values().any(|b| *b == id) {
                continue;
            }
            binding.insert(c.label.clone(), id);
            if !self.pruned(&c.label, binding) {
                self.assign(i + 1, binding, out);
            }
            binding.remove(&c.label);
        }
    }

    /// A constraint already violated under a partial binding stays violated.
    fn pruned(&self, label: &str, binding: &BTreeMap<String, InstanceId>) -> bool {
        let ctx = eval_ctx(self.h, self.state, None, self.sc, None);
        self.prunable.iter().any(|(labels, e)| {
            labels.contains(label)
                && labels.iter().all(|l| binding.contains_key(l))
                && matches!(
                    ctx.evaluate(e, &mut BindingEnv::with_constituents(binding.clone()), Phase::Pre),
                    Ok(Verdict::Violated) | Err(_)
                )
        })
    }
}

/// Brute force over every tuple of instances; the reference for `enumerate_matches`.
pub fn oracle_matches(h: &TypeHierarchy, state: &BranchState, sc: &CompiledSConstruction) -> Vec<Match> {
    let labels: Vec<&str> = sc.inputs().map(|c| c.label.as_str()).collect();
    let all: Vec<InstanceId> = state.instances().map(|i| i.id).collect();
    let mut out = Vec::new();
    if labels.is_empty() {
        out.extend(admissible(h, state, sc, &BTreeMap::new()));
        return out;
    }
    if all.is_empty() {
        return out;
    }
    let mut idx = vec![0usize; labels.len()];
    loop {
        let binding: BTreeMap<String, InstanceId> =
            labels.iter().zip(&idx).map(|(l, i)| (l.to_string(), all[*i])).collect();
        out.extend(admissible(h, state, sc, &binding));
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < all.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == labels.len() {
                sort_matches(sc, &mut out);
                return out;
            }
        }
    }
}

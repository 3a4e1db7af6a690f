use std::collections::BTreeMap;

use crate::constraint::{constant, BindingEnv, EvalCtx, Phase, Resolved, Verdict};
use crate::memory::{is_set_like, BranchState};
use crate::place::Place;
use crate::registry;
use crate::types::TypeHierarchy;
use crate::value::{Filler, InstanceId};

use super::matcher::{eval_ctx, requirement_bindings};
use super::{CompiledSConstruction, Match, Source};

#[derive(Debug, Clone, PartialEq)]
pub enum FireOutcome {
    /// Index of the recorded firing.
    Fired(usize),
    /// The firing was rolled back; the reason is also in the dead-decision log.
    Dead(String),
}

fn source_value(ctx: &EvalCtx<'_>, env: &BindingEnv, s: &Source) -> Option<Filler> {
    match s {
        Source::Const(v) => constant(v).map(Filler::Atom),
        Source::Path(p) => ctx.resolve(p, env, Phase::Pre).ok()?.filler().cloned(),
        Source::Call { function, arg } => match ctx.resolve(arg, env, Phase::Pre).ok()? {
            Resolved::Bound(Filler::Atom(v), _) => registry::apply_function(function, &[v]).map(Filler::Atom),
            _ => None,
        },
    }
}

/// Applies a match's effects. On a post-phase violation the branch is
/// restored to its pre-fire state and a dead decision is logged.
pub fn fire(h: &TypeHierarchy, state: &mut BranchState, sc: &CompiledSConstruction, m: &Match) -> FireOutcome {
    let snapshot = state.clone();
    match apply(h, state, &snapshot, sc, m) {
        Ok(i) => FireOutcome::Fired(i),
        Err(reason) => {
            *state = snapshot;
            state.record_dead(&sc.name, m.env.constituents.clone(), reason.clone());
            FireOutcome::Dead(reason)
        }
    }
}

fn apply(
    h: &TypeHierarchy,
    state: &mut BranchState,
    pre: &BranchState,
    sc: &CompiledSConstruction,
    m: &Match,
) -> Result<usize, String> {
    let req_bindings = requirement_bindings(pre, &m.requirements);
    let ctx = eval_ctx(h, pre, None, sc, Some(&req_bindings));
    let env = &m.env;

    // Everything read from the pre state is computed before any write.
    let mut mutations = Vec::new();
    for plan in &sc.mutations {
        let slot = ctx
            .resolve(&plan.target, env, Phase::Pre)
            .map_err(|e| e.to_string())?
            .slot()
            .cloned()
            .ok_or_else(|| format!("cannot reach `{}`", plan.target))?;
        if let Some(v) = source_value(&ctx, env, &plan.source) {
            mutations.push((slot, v));
        }
    }
    let mut fillers: BTreeMap<&str, Vec<(String, Filler)>> = BTreeMap::new();
    // Fillers naming another created constituent wait for its id.
    let mut links: BTreeMap<&str, Vec<(String, &str)>> = BTreeMap::new();
    for a in &sc.assignments {
        match &a.source {
            Source::Path(p) if p.is_bare_label() && p.first_label().is_some_and(|l| sc.outputs.contains(l)) => {
                let target = p.first_label().unwrap_or_default();
                links.entry(a.label.as_str()).or_default().push((a.key.clone(), target));
            }
            source => {
                if let Some(v) = source_value(&ctx, env, source) {
                    fillers.entry(a.label.as_str()).or_default().push((a.key.clone(), v));
                }
            }
        }
    }
    let mut places: BTreeMap<&str, (InstanceId, Place)> = BTreeMap::new();
    for c in sc.constituents.iter().filter(|c| sc.outputs.contains(&c.label)) {
        let Some(ctx_label) = &c.situated_in else { continue };
        let cid = *env.constituents.get(ctx_label).ok_or_else(|| format!("context `{ctx_label}` is not bound"))?;
        let planned = sc.placements.iter().find(|p| p.label == c.label && &p.context == ctx_label);
        let place = match planned {
            Some(p) => ctx.place(cid, &p.place, env, Phase::Pre).map_err(|e| e.to_string())?,
            None => None,
        };
        let place = match place {
            Some(p) => p,
            None if is_set_like(h, &pre.get(cid).map_err(|e| e.to_string())?.ty) => {
                Place::point((state.situations(cid).len() + places.values().filter(|(x, _)| *x == cid).count()) as f64)
            }
            None => return Err(format!("no place for `{}` in `{ctx_label}`", c.label)),
        };
        places.insert(c.label.as_str(), (cid, place));
    }

    for (slot, v) in env.pending_writes(pre) {
        state.bind_role(h, slot.instance, &slot.key, v).map_err(|e| e.to_string())?;
    }

    let parents = m.inputs();
    let index = state.next_firing_index();
    let mut bindings = env.constituents.clone();
    let mut created = Vec::new();
    let mut pending: Vec<_> = sc.constituents.iter().filter(|c| sc.outputs.contains(&c.label)).collect();
    while !pending.is_empty() {
        let ready = pending
            .iter()
            .position(|c| links.get(c.label.as_str()).is_none_or(|l| l.iter().all(|(_, t)| bindings.contains_key(*t))))
            .ok_or_else(|| "created constituents refer to each other in a cycle".to_string())?;
        let c = pending.remove(ready);
        let mut f = fillers.remove(c.label.as_str()).unwrap_or_default();
        for (key, target) in links.remove(c.label.as_str()).unwrap_or_default() {
            f.push((key, Filler::Instance(bindings[target])));
        }
        let id = state
            .create_derived(h, &c.ty, f, &parents, sc.confidence, index)
            .map_err(|e| e.to_string())?;
        bindings.insert(c.label.clone(), id);
        created.push(id);
    }

    for (slot, v) in mutations {
        state.mutate_role(h, slot.instance, &slot.key, v).map_err(|e| e.to_string())?;
    }

    for label in &sc.outs {
        let id = env.constituents[label];
        let ctx_label = sc
            .constituent(label)
            .and_then(|c| c.situated_in.as_ref())
            .ok_or_else(|| format!("`{label}` is not situated"))?;
        state.remove_situated(id, env.constituents[ctx_label]).map_err(|e| e.to_string())?;
    }

    for (label, (cid, place)) in places {
        state.situate(h, bindings[label], cid, place).map_err(|e| e.to_string())?;
    }

    let post_env = BindingEnv::with_constituents(bindings.clone());
    let mut post_env = merge_classes(env, post_env);
    let ctx = eval_ctx(h, pre, Some(state), sc, Some(&req_bindings));
    for e in &sc.post {
        match ctx.evaluate(e, &mut post_env, Phase::Post) {
            Ok(Verdict::Violated) => return Err(format!("violated: {e}")),
            Err(err) => return Err(format!("{e}: {err}")),
            Ok(_) => {}
        }
    }
    Ok(state.record_firing(&sc.name, bindings, created))
}

/// The match's identification closure with the created constituents added.
fn merge_classes(env: &BindingEnv, with: BindingEnv) -> BindingEnv {
    let mut out = env.clone();
    out.constituents = with.constituents;
    out
}

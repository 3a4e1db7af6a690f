//! Three-valued constraint evaluation and identification of role references.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::memory::{eval_operation, eval_relation, BranchState, Instance};
use crate::place::{Place, PlaceError};
use crate::registry;
use crate::syntax::{BoolOp, ConstraintExpr, IdentSource, Operand, PlaceExpr, RolePath, ValueExpr};
use crate::types::{PathRoot, ResolvedPath, Scope, TypeHierarchy};
use crate::value::{Filler, InstanceId, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Satisfied,
    Violated,
    /// Some referenced role is not bound yet.
    Undetermined,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }

    pub fn not(self) -> Verdict {
        match self {
            Verdict::Satisfied => Verdict::Violated,
            Verdict::Violated => Verdict::Satisfied,
            Verdict::Undetermined => Verdict::Undetermined,
        }
    }

    pub fn and(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Satisfied;
        for v in vs {
            match v {
                Verdict::Violated => return Verdict::Violated,
                Verdict::Undetermined => out = Verdict::Undetermined,
                Verdict::Satisfied => {}
            }
        }
        out
    }

    pub fn or(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Violated;
        for v in vs {
            match v {
                Verdict::Satisfied => return Verdict::Satisfied,
                Verdict::Undetermined => out = Verdict::Undetermined,
                Verdict::Violated => {}
            }
        }
        out
    }

    pub fn nand(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        Verdict::and(vs).not()
    }
}

/// A concrete role slot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RoleRef {
    pub instance: InstanceId,
    pub key: String,
}

impl RoleRef {
    pub fn new(instance: InstanceId, key: impl Into<String>) -> RoleRef {
        RoleRef { instance, key: key.into() }
    }
}

/// Constituent bindings plus the identification closure over role slots.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BindingEnv {
    pub constituents: BTreeMap<String, InstanceId>,
    parent: BTreeMap<RoleRef, RoleRef>,
    /// Value of each class, keyed by the class root.
    values: BTreeMap<RoleRef, Filler>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnifyFailure {
    #[error("atomic values differ")]
    Clash,
    #[error("an atomic value cannot unify with an instance")]
    KindClash,
    #[error("instance types are unrelated")]
    TypeClash,
    #[error("cyclic structure")]
    CyclicStructure,
}

impl BindingEnv {
    pub fn with_constituents(constituents: BTreeMap<String, InstanceId>) -> BindingEnv {
        BindingEnv { constituents, ..BindingEnv::default() }
    }

    pub fn find(&self, r: &RoleRef) -> RoleRef {
        let mut cur = r;
        while let Some(p) = self.parent.get(cur) {
            cur = p;
        }
        cur.clone()
    }

    pub fn class_value(&self, r: &RoleRef) -> Option<&Filler> {
        self.values.get(&self.find(r))
    }

    fn union(&mut self, a: &RoleRef, b: &RoleRef, value: Option<Filler>) {
        let (ra, rb) = (self.find(a), self.find(b));
        let va = self.values.remove(&ra);
        let vb = self.values.remove(&rb);
        let (root, child) = if ra <= rb { (ra, rb) } else { (rb, ra) };
        if root != child {
            self.parent.insert(child, root.clone());
        }
        if let Some(v) = va.or(vb).or(value) {
            self.values.insert(root, v);
        }
    }

    /// Every slot that is part of a non-trivial class or carries a class value.
    pub fn refs(&self) -> BTreeSet<RoleRef> {
        self.parent.keys().chain(self.parent.values()).chain(self.values.keys()).cloned().collect()
    }

    /// The equivalence classes, each with its value.
    pub fn classes(&self) -> BTreeSet<(BTreeSet<RoleRef>, Option<String>)> {
        let mut groups: BTreeMap<RoleRef, BTreeSet<RoleRef>> = BTreeMap::new();
        for r in self.refs() {
            groups.entry(self.find(&r)).or_default().insert(r);
        }
        groups
            .into_iter()
            .map(|(root, members)| (members, self.values.get(&root).map(|v| format!("{v:?}"))))
            .collect()
    }

    /// Same constituents and the same closure.
    pub fn equivalent(&self, other: &BindingEnv) -> bool {
        self.constituents == other.constituents && self.classes() == other.classes()
    }

    /// Class values for slots that are still unbound in `state`.
    pub fn pending_writes(&self, state: &BranchState) -> Vec<(RoleRef, Filler)> {
        self.refs()
            .into_iter()
            .filter(|r| state.instance(r.instance).is_some_and(|i| !i.fillers.contains_key(&r.key)))
            .filter_map(|r| self.class_value(&r).cloned().map(|v| (r, v)))
            .collect()
    }
}

/// Live filler of a slot, falling back to its class value in `env`.
pub fn value_of(state: &BranchState, env: &BindingEnv, r: &RoleRef) -> Option<Filler> {
    state
        .instance(r.instance)
        .and_then(|i| i.fillers.get(&r.key))
        .cloned()
        .or_else(|| env.class_value(r).cloned())
}

/// Identifies two role slots, returning the extended environment.
pub fn unify(h: &TypeHierarchy, state: &BranchState, a: &RoleRef, c: &RoleRef, env: &BindingEnv) -> Result<BindingEnv, UnifyFailure> {
    let mut out = env.clone();
    unify_refs(h, state, &mut out, a, c, &mut BTreeSet::new())?;
    Ok(out)
}

fn unify_refs(
    h: &TypeHierarchy,
    state: &BranchState,
    env: &mut BindingEnv,
    a: &RoleRef,
    c: &RoleRef,
    active: &mut BTreeSet<(InstanceId, InstanceId)>,
) -> Result<(), UnifyFailure> {
    if env.find(a) == env.find(c) {
        return Ok(());
    }
    let (va, vc) = (value_of(state, env, a), value_of(state, env, c));
    if let (Some(x), Some(y)) = (&va, &vc) {
        unify_fillers(h, state, env, x, y, active)?;
    }
    env.union(a, c, va.or(vc));
    Ok(())
}

fn unify_fillers(
    h: &TypeHierarchy,
    state: &BranchState,
    env: &mut BindingEnv,
    x: &Filler,
    y: &Filler,
    active: &mut BTreeSet<(InstanceId, InstanceId)>,
) -> Result<(), UnifyFailure> {
    match (x, y) {
        (Filler::Atom(p), Filler::Atom(q)) => {
            if p.same(q) {
                Ok(())
            } else {
                Err(UnifyFailure::Clash)
            }
        }
        (Filler::Instance(p), Filler::Instance(q)) => unify_instances(h, state, env, *p, *q, active),
        _ => Err(UnifyFailure::KindClash),
    }
}

fn unify_instances(
    h: &TypeHierarchy,
    state: &BranchState,
    env: &mut BindingEnv,
    x: InstanceId,
    y: InstanceId,
    active: &mut BTreeSet<(InstanceId, InstanceId)>,
) -> Result<(), UnifyFailure> {
    if x == y {
        return Ok(());
    }
    let (Some(ix), Some(iy)) = (state.instance(x), state.instance(y)) else {
        return Err(UnifyFailure::TypeClash);
    };
    let (sub, sup) = if h.subtype(&ix.ty, &iy.ty) {
        (ix, iy)
    } else if h.subtype(&iy.ty, &ix.ty) {
        (iy, ix)
    } else {
        return Err(UnifyFailure::TypeClash);
    };
    let pair = (x.min(y), x.max(y));
    if !active.insert(pair) {
        return Err(UnifyFailure::CyclicStructure);
    }
    let keys: Vec<String> = h.effective_roles(&sup.ty).map(|r| r.keys().cloned().collect()).unwrap_or_default();
    for k in keys {
        let Some(ks) = h.upcast_key(&sub.ty, &sup.ty, &k) else { continue };
        let (r1, r2) = (RoleRef::new(sup.id, k), RoleRef::new(sub.id, ks));
        if value_of(state, env, &r1).is_some() && value_of(state, env, &r2).is_some() {
            unify_refs(h, state, env, &r1, &r2, active)?;
        }
    }
    active.remove(&pair);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Pre,
    Post,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("{instance} is not situated in {context}")]
    NotSituated { instance: InstanceId, context: InstanceId },
    #[error(transparent)]
    Place(#[from] PlaceError),
    #[error("cannot resolve `{0}`")]
    Unresolved(String),
}

/// Everything a constraint may read.
pub struct EvalCtx<'a> {
    pub h: &'a TypeHierarchy,
    /// State before the firing (or the only state when matching).
    pub pre: &'a BranchState,
    /// State after the firing's effects, for the post phase.
    pub post: Option<&'a BranchState>,
    pub scope: Scope<'a>,
    pub paths: Option<&'a HashMap<RolePath, ResolvedPath>>,
    pub self_instance: Option<InstanceId>,
    /// Bindings of the firings chosen for constructional labels.
    pub requirements: Option<&'a BTreeMap<String, BTreeMap<String, InstanceId>>>,
    /// Labels of created constituents; they read the post state.
    pub outputs: &'a BTreeSet<String>,
}

/// Result of walking a role path.
#[derive(Debug, Clone, PartialEq)]
pub enum Resolved {
    Bound(Filler, Option<RoleRef>),
    Unbound(Option<RoleRef>),
}

impl Resolved {
    pub fn filler(&self) -> Option<&Filler> {
        match self {
            Resolved::Bound(f, _) => Some(f),
            Resolved::Unbound(_) => None,
        }
    }

    pub fn slot(&self) -> Option<&RoleRef> {
        match self {
            Resolved::Bound(_, r) | Resolved::Unbound(r) => r.as_ref(),
        }
    }
}

impl<'a> EvalCtx<'a> {
    /// A context for checking a single instance against its own type.
    pub fn for_instance(h: &'a TypeHierarchy, state: &'a BranchState, inst: &'a Instance) -> EvalCtx<'a> {
        static NONE: std::sync::OnceLock<BTreeSet<String>> = std::sync::OnceLock::new();
        EvalCtx {
            h,
            pre: state,
            post: None,
            scope: Scope::Type(&inst.ty),
            paths: None,
            self_instance: Some(inst.id),
            requirements: None,
            outputs: NONE.get_or_init(BTreeSet::new),
        }
    }

    fn resolved(&self, p: &RolePath) -> Result<Cow<'a, ResolvedPath>, EvalError> {
        if let Some(r) = self.paths.and_then(|m| m.get(p)) {
            return Ok(Cow::Borrowed(r));
        }
        self.h.resolve_in(self.scope, p).map(Cow::Owned).map_err(|_| EvalError::Unresolved(p.to_string()))
    }

    /// State a path reads from, or `None` if it cannot be read in this phase.
    fn state_for(&self, p: &RolePath, root: &PathRoot, phase: Phase) -> Option<&'a BranchState> {
        let output = matches!(root, PathRoot::Constituent(l) if self.outputs.contains(l));
        match phase {
            Phase::Pre if p.muted || output => None,
            Phase::Pre => Some(self.pre),
            Phase::Post if p.muted || output => self.post,
            Phase::Post => Some(self.pre),
        }
    }

    fn instance(&self, state: &'a BranchState, id: InstanceId) -> Option<&'a Instance> {
        state.instance(id).or_else(|| self.post.and_then(|p| p.instance(id)))
    }

    fn root(&self, root: &PathRoot, env: &BindingEnv) -> Option<InstanceId> {
        match root {
            PathRoot::SelfInstance => self.self_instance,
            PathRoot::Constituent(l) => env.constituents.get(l).copied(),
            PathRoot::Requirement { label, constituent } => {
                self.requirements?.get(label)?.get(constituent).copied()
            }
        }
    }

    /// Walks a role path; values come from the live state, then from `env`.
    pub fn resolve(&self, p: &RolePath, env: &BindingEnv, phase: Phase) -> Result<Resolved, EvalError> {
        let r = self.resolved(p)?;
        let Some(state) = self.state_for(p, &r.root, phase) else { return Ok(Resolved::Unbound(None)) };
        let Some(mut cur) = self.root(&r.root, env) else { return Ok(Resolved::Unbound(None)) };
        if r.hops.is_empty() {
            return Ok(Resolved::Bound(Filler::Instance(cur), None));
        }
        for (i, hop) in r.hops.iter().enumerate() {
            let Some(inst) = self.instance(state, cur) else { return Ok(Resolved::Unbound(None)) };
            let Some(key) = self.h.upcast_key(&inst.ty, &hop.declared, &hop.key) else {
                return Ok(Resolved::Unbound(None));
            };
            let slot = RoleRef::new(cur, key);
            let value = inst.fillers.get(&slot.key).cloned().or_else(|| env.class_value(&slot).cloned());
            if i + 1 == r.hops.len() {
                return Ok(match value {
                    Some(v) => Resolved::Bound(v, Some(slot)),
                    None => Resolved::Unbound(Some(slot)),
                });
            }
            match value {
                Some(Filler::Instance(next)) => cur = next,
                _ => return Ok(Resolved::Unbound(None)),
            }
        }
        unreachable!("loop returns on the last hop")
    }

    fn state_with(&self, ids: &[InstanceId]) -> &'a BranchState {
        match self.post {
            Some(post) if ids.iter().any(|i| self.pre.instance(*i).is_none()) => post,
            _ => self.pre,
        }
    }

    pub(crate) fn place(&self, ctx: InstanceId, p: &PlaceExpr, env: &BindingEnv, phase: Phase) -> Result<Option<Place>, EvalError> {
        match p {
            PlaceExpr::Path(path) => {
                let Some(Filler::Instance(id)) = self.resolve(path, env, phase)?.filler().cloned() else {
                    return Ok(None);
                };
                let found = self
                    .pre
                    .place_of(id, ctx)
                    .or_else(|| self.post.and_then(|s| s.place_of(id, ctx)))
                    .cloned();
                found.map(Some).ok_or(EvalError::NotSituated { instance: id, context: ctx })
            }
            PlaceExpr::Operation { context, operation, args } => {
                let Some(cid) = env.constituents.get(context).copied() else { return Ok(None) };
                let Some(ctx_ty) = self.instance(self.pre, cid).map(|i| i.ty.clone()) else { return Ok(None) };
                let mut places = Vec::new();
                for a in args {
                    match self.place(cid, a, env, phase)? {
                        Some(pl) => places.push(pl),
                        None => return Ok(None),
                    }
                }
                Ok(Some(eval_operation(self.h, &ctx_ty, operation, &places)?))
            }
        }
    }

    /// Evaluates one constraint. In the pre phase a satisfied identification
    /// extends `env`.
    pub fn evaluate(&self, e: &ConstraintExpr, env: &mut BindingEnv, phase: Phase) -> Result<Verdict, EvalError> {
        Ok(match e {
            ConstraintExpr::Bool { op, args } => {
                let mut vs = Vec::with_capacity(args.len());
                for a in args {
                    vs.push(self.evaluate(a, &mut env.clone(), phase)?);
                }
                match op {
                    BoolOp::And => Verdict::and(vs),
                    BoolOp::Or => Verdict::or(vs),
                    BoolOp::Nand => Verdict::nand(vs),
                    BoolOp::Not => vs.first().copied().unwrap_or(Verdict::Undetermined).not(),
                }
            }
            ConstraintExpr::Filler { role, value } => {
                let Some(expected) = constant(value) else { return Ok(Verdict::Violated) };
                match self.resolve(role, env, phase)? {
                    Resolved::Bound(Filler::Atom(v), _) => Verdict::from_bool(v.same(&expected)),
                    Resolved::Bound(Filler::Instance(_), _) => Verdict::Violated,
                    Resolved::Unbound(_) => Verdict::Undetermined,
                }
            }
            ConstraintExpr::Identify { left, right } => self.identify(left, right, env, phase)?,
            ConstraintExpr::Equal { left, right } => {
                let l = self.resolve(left, env, phase)?;
                let r = self.resolve(right, env, phase)?;
                match (l.filler(), r.filler()) {
                    (Some(a), Some(b)) => Verdict::from_bool(matches!((a, b), (Filler::Instance(x), Filler::Instance(y)) if x == y)),
                    _ => Verdict::Undetermined,
                }
            }
            ConstraintExpr::Predicate { name, args } => {
                if registry::predicate_arity(name).is_none() {
                    return Err(EvalError::UnknownPredicate(name.clone()));
                }
                let mut values = Vec::with_capacity(args.len());
                let mut unbound = false;
                for a in args {
                    match a {
                        Operand::Literal(v) => values.push(v.clone()),
                        Operand::Path(p) => match self.resolve(p, env, phase)? {
                            Resolved::Bound(Filler::Atom(v), _) => values.push(v),
                            Resolved::Bound(Filler::Instance(_), _) => return Ok(Verdict::Violated),
                            Resolved::Unbound(_) => unbound = true,
                        },
                    }
                }
                if unbound {
                    Verdict::Undetermined
                } else {
                    Verdict::from_bool(registry::apply_predicate(name, &values).unwrap_or(false))
                }
            }
            ConstraintExpr::Relation { context, relation, args } => {
                let output = self.outputs.contains(context);
                if phase == Phase::Pre && output {
                    return Ok(Verdict::Undetermined);
                }
                let Some(cid) = env.constituents.get(context).copied() else { return Ok(Verdict::Undetermined) };
                let Some(ctx_ty) = self.instance(self.pre, cid).map(|i| i.ty.clone()) else {
                    return Ok(Verdict::Undetermined);
                };
                let mut places = Vec::with_capacity(args.len());
                for a in args {
                    match self.place(cid, a, env, phase)? {
                        Some(p) => places.push(p),
                        None => return Ok(Verdict::Undetermined),
                    }
                }
                match eval_relation(self.h, &ctx_ty, relation, &places)? {
                    Value::Bool(b) => Verdict::from_bool(b),
                    _ => Verdict::Violated,
                }
            }
            ConstraintExpr::Parent { child, parent } => {
                let c = self.resolve(child, env, phase)?;
                let p = self.resolve(parent, env, phase)?;
                match (c.filler(), p.filler()) {
                    (Some(Filler::Instance(c)), Some(Filler::Instance(p))) => {
                        let state = self.state_with(&[*c, *p]);
                        Verdict::from_bool(state.is_ancestor(*p, *c).unwrap_or(false))
                    }
                    (Some(_), Some(_)) => Verdict::Violated,
                    _ => Verdict::Undetermined,
                }
            }
            ConstraintExpr::Out { .. } => Verdict::Satisfied,
        })
    }

    fn identify(&self, left: &RolePath, right: &IdentSource, env: &mut BindingEnv, phase: Phase) -> Result<Verdict, EvalError> {
        let l = self.resolve(left, env, phase)?;
        let (r, function) = match right {
            IdentSource::Path(p) => (self.resolve(p, env, phase)?, None),
            IdentSource::Call { function, arg } => (self.resolve(arg, env, phase)?, Some(function)),
        };
        if let Some(f) = function {
            let Some(Filler::Atom(arg)) = r.filler() else {
                return Ok(if r.filler().is_some() { Verdict::Violated } else { Verdict::Undetermined });
            };
            let Some(target) = registry::apply_function(f, std::slice::from_ref(arg)) else {
                return Ok(Verdict::Violated);
            };
            return Ok(match (&l, phase) {
                (Resolved::Bound(Filler::Atom(v), _), _) => Verdict::from_bool(v.same(&target)),
                (Resolved::Bound(Filler::Instance(_), _), _) => Verdict::Violated,
                (Resolved::Unbound(Some(slot)), Phase::Pre) => {
                    env.union(slot, slot, Some(Filler::Atom(target)));
                    Verdict::Satisfied
                }
                (Resolved::Unbound(_), _) => Verdict::Undetermined,
            });
        }
        let state = match phase {
            Phase::Pre => self.pre,
            Phase::Post => self.post.unwrap_or(self.pre),
        };
        match (l.slot(), r.slot(), phase) {
            (Some(a), Some(c), Phase::Pre) => match unify(self.h, state, a, c, env) {
                Ok(next) => {
                    *env = next;
                    Ok(Verdict::Satisfied)
                }
                Err(_) => Ok(Verdict::Violated),
            },
            _ => match (l.filler(), r.filler()) {
                (Some(x), Some(y)) => {
                    let mut scratch = env.clone();
                    let ok = unify_fillers(self.h, state, &mut scratch, x, y, &mut BTreeSet::new()).is_ok();
                    Ok(Verdict::from_bool(ok))
                }
                _ => Ok(Verdict::Undetermined),
            },
        }
    }
}

/// Value of a filler constraint's right-hand side.
pub fn constant(v: &ValueExpr) -> Option<Value> {
    match v {
        ValueExpr::Literal(v) => Some(v.clone()),
        ValueExpr::Call { function, args } => registry::apply_function(function, args),
    }
}

/// True iff no effective constraint of the instance's type is violated.
pub fn validate_instance(h: &TypeHierarchy, state: &BranchState, inst: InstanceId) -> bool {
    let Some(i) = state.instance(inst) else { return false };
    let Ok(constraints) = h.effective_constraints(&i.ty) else { return false };
    let ctx = EvalCtx::for_instance(h, state, i);
    let mut env = BindingEnv::default();
    constraints
        .iter()
        .all(|c| !matches!(ctx.evaluate(c, &mut env, Phase::Pre), Ok(Verdict::Violated) | Err(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::load_program;

    const V: [Verdict; 3] = [Verdict::Satisfied, Verdict::Violated, Verdict::Undetermined];

    #[test]
    fn kleene_tables() {
        assert_eq!(Verdict::Undetermined.not(), Verdict::Undetermined);
        for a in V {
            for b in V {
                let and = Verdict::and([a, b]);
                let or = Verdict::or([a, b]);
                assert_eq!(and, Verdict::and([b, a]));
                assert_eq!(or, Verdict::or([b, a]));
                assert_eq!(Verdict::nand([a, b]), and.not());
                if a == Verdict::Violated {
                    assert_eq!(and, Verdict::Violated);
                }
                if a == Verdict::Satisfied {
                    assert_eq!(or, Verdict::Satisfied);
                }
            }
        }
    }

    fn square_program() -> crate::validate::CompiledProgram {
        load_program(&["schema Box roles width: Float height: Float constraints width <-> height
                        schema Plain roles x: Integer"])
        .unwrap()
    }

    #[test]
    fn validate_instance_examples() {
        let p = square_program();
        let h = &p.hierarchy;
        let mut b = BranchState::new(0);
        let f = |x: f64| Filler::Atom(Value::Float(x));
        let plain = b.create_instance(h, "Plain", [], &[]).unwrap();
        let bad = b.create_instance(h, "Box", [("width".into(), f(30.0)), ("height".into(), f(40.0))], &[]).unwrap();
        let open = b.create_instance(h, "Box", [("width".into(), f(30.0))], &[]).unwrap();
        assert!(validate_instance(h, &b, plain));
        assert!(!validate_instance(h, &b, bad));
        assert!(validate_instance(h, &b, open));
    }

    #[test]
    fn unify_binds_and_clashes() {
        let p = square_program();
        let h = &p.hierarchy;
        let mut b = BranchState::new(0);
        let i = |v: i64| Filler::Atom(Value::Int(v));
        let x = b.create_instance(h, "Plain", [("x".into(), i(1))], &[]).unwrap();
        let y = b.create_instance(h, "Plain", [], &[]).unwrap();
        let z = b.create_instance(h, "Plain", [("x".into(), i(2))], &[]).unwrap();
        let (rx, ry, rz) = (RoleRef::new(x, "x"), RoleRef::new(y, "x"), RoleRef::new(z, "x"));
        let env = BindingEnv::default();
        assert_eq!(unify(h, &b, &rx, &rx, &env).unwrap(), env);
        let bound = unify(h, &b, &ry, &rx, &env).unwrap();
        assert_eq!(value_of(&b, &bound, &ry), Some(i(1)));
        assert_eq!(unify(h, &b, &rx, &rz, &env), Err(UnifyFailure::Clash));
        assert_eq!(unify(h, &b, &ry, &rz, &bound), Err(UnifyFailure::Clash));
        assert_eq!(bound.pending_writes(&b), vec![(ry, i(1))]);
    }
}

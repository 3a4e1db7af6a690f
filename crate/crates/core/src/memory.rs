//! Branchable working memory: instances, situations and the event journal.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::place::{Place, PlaceError, PlaceKind, Topology};
use crate::syntax::{ConstraintExpr, DefKind, ValueExpr};
use crate::types::{RoleType, Scope, TypeHierarchy};
use crate::value::{Filler, InstanceId, Value};

pub type Time = u64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MemoryError {
    #[error("unknown type `{0}`")]
    UnknownType(String),
    #[error("`{0}` is an s-construction and cannot be instantiated")]
    NotInstantiable(String),
    #[error("unknown instance {0}")]
    UnknownInstance(InstanceId),
    #[error("`{ty}` has no role `{role}`")]
    UnknownRole { ty: String, role: String },
    #[error("type mismatch on `{role}`: {detail}")]
    TypeMismatch { role: String, detail: String },
    #[error("role `{0}` is not mutable")]
    ImmutableRole(String),
    #[error("role `{0}` is already bound")]
    AlreadyBound(String),
    #[error("{0} is not a context instance")]
    NotAContext(InstanceId),
    #[error("context `{context}` does not declare {kind} places")]
    PlaceKindMismatch { context: String, kind: PlaceKind },
    #[error("{instance} is already situated in {context}")]
    AlreadySituatedHere { instance: InstanceId, context: InstanceId },
    #[error("{instance} is not situated in {context}")]
    NotSituated { instance: InstanceId, context: InstanceId },
    #[error("invalid parent list: {0}")]
    InvalidParents(String),
    #[error("trust must lie in (0, 1], got {0}")]
    InvalidTrust(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub id: InstanceId,
    #[serde(rename = "type")]
    pub ty: String,
    pub fillers: BTreeMap<String, Filler>,
    pub capacity: f64,
    pub trust: f64,
    pub parents: Vec<InstanceId>,
    pub created_at: Time,
    /// Index into the firing log of the firing that produced this instance.
    pub created_by: Option<usize>,
}

impl Instance {
    pub fn filler(&self, key: &str) -> Option<&Filler> {
        self.fillers.get(key)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Situation {
    pub instance: InstanceId,
    pub place: Place,
    pub present: bool,
    pub placed_at: Time,
    pub removed_at: Option<Time>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Firing {
    pub construction: String,
    /// Constituent label to bound or created instance.
    pub bindings: BTreeMap<String, InstanceId>,
    pub time: Time,
    pub created: Vec<InstanceId>,
    pub branch: u64,
}

impl Firing {
    /// Bound instances of input constituents, sorted.
    pub fn inputs(&self) -> Vec<InstanceId> {
        let created: BTreeSet<_> = self.created.iter().collect();
        let mut ids: Vec<_> = self.bindings.values().filter(|i| !created.contains(i)).copied().collect();
        ids.sort();
        ids.dedup();
        ids
    }
}

/// A firing attempt whose post-phase constraints failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeadDecision {
    pub construction: String,
    pub bindings: BTreeMap<String, InstanceId>,
    pub time: Time,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum Event {
    Create { time: Time, instance: Instance },
    Situate { time: Time, instance: InstanceId, context: InstanceId, place: Place },
    Remove { time: Time, instance: InstanceId, context: InstanceId },
    Mutate { time: Time, instance: InstanceId, role: String, old: Option<Filler>, new: Filler },
    Trust { time: Time, instance: InstanceId, trust: f64 },
    Fire { time: Time, firing: Firing },
}

impl Event {
    pub fn time(&self) -> Time {
        match self {
            Event::Create { time, .. }
            | Event::Situate { time, .. }
            | Event::Remove { time, .. }
            | Event::Mutate { time, .. }
            | Event::Trust { time, .. }
            | Event::Fire { time, .. } => *time,
        }
    }
}

/// One entry of the mutation log.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mutation<'a> {
    pub time: Time,
    pub instance: InstanceId,
    pub role: &'a str,
    pub old: Option<&'a Filler>,
    pub new: &'a Filler,
}

/// Key of the refractory set: construction name and sorted input ids.
pub type RefractoryKey = (String, Vec<InstanceId>);

/// One alternative interpretation world.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchState {
    pub id: u64,
    pub parent: Option<u64>,
    clock: Time,
    next_id: u32,
    instances: BTreeMap<InstanceId, Instance>,
    situations: BTreeMap<InstanceId, Vec<Situation>>,
    journal: Vec<Event>,
    firings: Vec<Firing>,
    dead: Vec<DeadDecision>,
    #[serde(skip)]
    refractory: BTreeMap<RefractoryKey, Time>,
    /// Bindings whose firing was rolled back; not retried until re-armed.
    #[serde(skip)]
    dead_keys: BTreeMap<RefractoryKey, Time>,
    #[serde(skip)]
    last_mutation: BTreeMap<InstanceId, Time>,
    pub score: f64,
    /// Set when the firing budget ran out before quiescence.
    pub incomplete: bool,
}

impl Default for BranchState {
    fn default() -> Self {
        BranchState::new(0)
    }
}

impl BranchState {
    pub fn new(id: u64) -> BranchState {
        BranchState {
            id,
            parent: None,
            clock: 0,
            next_id: 0,
            instances: BTreeMap::new(),
            situations: BTreeMap::new(),
            journal: Vec::new(),
            firings: Vec::new(),
            dead: Vec::new(),
            refractory: BTreeMap::new(),
            dead_keys: BTreeMap::new(),
            last_mutation: BTreeMap::new(),
            score: 0.0,
            incomplete: false,
        }
    }

    /// A child that starts observationally equal to `self`.
    pub fn fork(&self, id: u64) -> BranchState {
        let mut child = self.clone();
        child.id = id;
        child.parent = Some(self.id);
        child
    }

    pub fn clock(&self) -> Time {
        self.clock
    }

    fn tick(&mut self) -> Time {
        let t = self.clock;
        self.clock += 1;
        t
    }

    pub fn instance(&self, id: InstanceId) -> Option<&Instance> {
        self.instances.get(&id)
    }

    pub fn get(&self, id: InstanceId) -> Result<&Instance, MemoryError> {
        self.instances.get(&id).ok_or(MemoryError::UnknownInstance(id))
    }

    pub fn instances(&self) -> impl Iterator<Item = &Instance> {
        self.instances.values()
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn firings(&self) -> &[Firing] {
        &self.firings
    }

    pub fn dead_decisions(&self) -> &[DeadDecision] {
        &self.dead
    }

    pub fn journal(&self) -> &[Event] {
        &self.journal
    }

    pub fn situations(&self, ctx: InstanceId) -> &[Situation] {
        self.situations.get(&ctx).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Contexts holding at least one situation entry.
    pub fn contexts(&self) -> impl Iterator<Item = InstanceId> + '_ {
        self.situations.keys().copied()
    }

    pub fn mutations(&self) -> impl Iterator<Item = Mutation<'_>> {
        self.journal.iter().filter_map(|e| match e {
            Event::Mutate { time, instance, role, old, new } => {
                Some(Mutation { time: *time, instance: *instance, role, old: old.as_ref(), new })
            }
            _ => None,
        })
    }

    /// Instances currently present in `ctx`, in placement order.
    pub fn present_in(&self, ctx: InstanceId) -> impl Iterator<Item = InstanceId> + '_ {
        self.situations(ctx).iter().filter(|s| s.present).map(|s| s.instance)
    }

    pub fn place_of(&self, inst: InstanceId, ctx: InstanceId) -> Option<&Place> {
        self.situations(ctx).iter().find(|s| s.present && s.instance == inst).map(|s| &s.place)
    }

    /// Contexts in which `inst` is currently present.
    pub fn situated_in(&self, inst: InstanceId) -> Vec<InstanceId> {
        self.situations
            .iter()
            .filter(|(_, v)| v.iter().any(|s| s.present && s.instance == inst))
            .map(|(c, _)| *c)
            .collect()
    }

    fn check_filler(&self, h: &TypeHierarchy, ty: &str, key: &str, filler: Filler) -> Result<Filler, MemoryError> {
        let role = h
            .role(ty, key)
            .ok_or_else(|| MemoryError::UnknownRole { ty: ty.to_string(), role: key.to_string() })?;
        let mismatch = |detail: String| MemoryError::TypeMismatch { role: key.to_string(), detail };
        match (&role.ty, filler) {
            (RoleType::Atomic(a), Filler::Atom(v)) => {
                let symbols = match a {
                    crate::value::AtomicType::Enum(n) => h.enum_symbols(n),
                    _ => None,
                };
                if v.fits(a, symbols) {
                    Ok(Filler::Atom(v.coerce_to(a)))
                } else {
                    Err(mismatch(format!("`{v}` is not a valid {a}")))
                }
            }
            (RoleType::Instance(t), Filler::Instance(id)) => {
                let actual = &self.get(id)?.ty;
                if h.subtype(actual, t) {
                    Ok(Filler::Instance(id))
                } else {
                    Err(mismatch(format!("{id} is a `{actual}`, not a `{t}`")))
                }
            }
            (RoleType::Atomic(a), Filler::Instance(id)) => Err(mismatch(format!("expected {a}, found {id}"))),
            (RoleType::Instance(t), Filler::Atom(v)) => Err(mismatch(format!("expected `{t}`, found `{v}`"))),
        }
    }

    /// Creates a lexical or perceptual instance: capacity 1, trust 1 without
    /// parents, otherwise the derived policy with confidence 1.
    pub fn create_instance(
        &mut self,
        h: &TypeHierarchy,
        ty: &str,
        fillers: impl IntoIterator<Item = (String, Filler)>,
        parents: &[InstanceId],
    ) -> Result<InstanceId, MemoryError> {
        self.create(h, ty, fillers, parents, 1.0, None)
    }

    /// Creates an instance on behalf of a firing.
    pub fn create_derived(
        &mut self,
        h: &TypeHierarchy,
        ty: &str,
        fillers: impl IntoIterator<Item = (String, Filler)>,
        parents: &[InstanceId],
        confidence: f64,
        firing: usize,
    ) -> Result<InstanceId, MemoryError> {
        self.create(h, ty, fillers, parents, confidence, Some(firing))
    }

    fn create(
        &mut self,
        h: &TypeHierarchy,
        ty: &str,
        fillers: impl IntoIterator<Item = (String, Filler)>,
        parents: &[InstanceId],
        confidence: f64,
        created_by: Option<usize>,
    ) -> Result<InstanceId, MemoryError> {
        match h.kind(ty) {
            None => return Err(MemoryError::UnknownType(ty.to_string())),
            Some(DefKind::SConstruction) => return Err(MemoryError::NotInstantiable(ty.to_string())),
            Some(_) => {}
        }
        let mut seen = BTreeSet::new();
        for p in parents {
            self.get(*p)?;
            if !seen.insert(*p) {
                return Err(MemoryError::InvalidParents(format!("{p} listed twice")));
            }
        }
        let mut bound = BTreeMap::new();
        for (k, f) in fillers {
            let f = self.check_filler(h, ty, &k, f)?;
            bound.insert(k, f);
        }
        for (k, v) in constant_fillers(h, ty) {
            if !bound.contains_key(&k) {
                let f = self.check_filler(h, ty, &k, Filler::Atom(v))?;
                bound.insert(k, f);
            }
        }
        let (capacity, trust) = if parents.is_empty() {
            (1.0, 1.0 * confidence)
        } else {
            let cap: f64 = parents.iter().map(|p| self.instances[p].capacity).sum();
            let trust = parents.iter().map(|p| self.instances[p].trust).fold(1.0, f64::min);
            (cap, trust * confidence)
        };
        if !(trust > 0.0 && trust <= 1.0) {
            return Err(MemoryError::InvalidTrust(trust));
        }
        let id = InstanceId(self.next_id);
        self.next_id += 1;
        let time = self.tick();
        let inst = Instance {
            id,
            ty: ty.to_string(),
            fillers: bound,
            capacity,
            trust,
            parents: parents.to_vec(),
            created_at: time,
            created_by,
        };
        self.journal.push(Event::Create { time, instance: inst.clone() });
        self.instances.insert(id, inst);
        Ok(id)
    }

    pub fn set_trust(&mut self, id: InstanceId, trust: f64) -> Result<(), MemoryError> {
        self.get(id)?;
        if !(trust > 0.0 && trust <= 1.0) {
            return Err(MemoryError::InvalidTrust(trust));
        }
        let time = self.tick();
        self.instances.get_mut(&id).unwrap().trust = trust;
        self.journal.push(Event::Trust { time, instance: id, trust });
        Ok(())
    }

    pub fn situate(&mut self, h: &TypeHierarchy, inst: InstanceId, ctx: InstanceId, place: Place) -> Result<(), MemoryError> {
        self.get(inst)?;
        let ctx_ty = &self.get(ctx)?.ty;
        if !h.is_context(ctx_ty) {
            return Err(MemoryError::NotAContext(ctx));
        }
        if !h.effective_places(ctx_ty).contains(&place.kind()) {
            return Err(MemoryError::PlaceKindMismatch { context: ctx_ty.clone(), kind: place.kind() });
        }
        if self.place_of(inst, ctx).is_some() {
            return Err(MemoryError::AlreadySituatedHere { instance: inst, context: ctx });
        }
        let time = self.tick();
        self.situations.entry(ctx).or_default().push(Situation {
            instance: inst,
            place: place.clone(),
            present: true,
            placed_at: time,
            removed_at: None,
        });
        self.journal.push(Event::Situate { time, instance: inst, context: ctx, place });
        Ok(())
    }

    /// The next synthetic point of a set-like context.
    pub fn synthetic_point(&self, ctx: InstanceId) -> Place {
        Place::point(self.situations(ctx).len() as f64)
    }

    pub fn remove_situated(&mut self, inst: InstanceId, ctx: InstanceId) -> Result<(), MemoryError> {
        let time = self.clock;
        let entry = self
            .situations
            .get_mut(&ctx)
            .and_then(|v| v.iter_mut().find(|s| s.present && s.instance == inst))
            .ok_or(MemoryError::NotSituated { instance: inst, context: ctx })?;
        entry.present = false;
        entry.removed_at = Some(time);
        self.clock += 1;
        self.journal.push(Event::Remove { time, instance: inst, context: ctx });
        Ok(())
    }

    /// Changes a mutable role.
    pub fn mutate_role(&mut self, h: &TypeHierarchy, inst: InstanceId, key: &str, value: Filler) -> Result<(), MemoryError> {
        let ty = self.get(inst)?.ty.clone();
        let role = h
            .role(&ty, key)
            .ok_or_else(|| MemoryError::UnknownRole { ty: ty.clone(), role: key.to_string() })?;
        if !role.mutable {
            return Err(MemoryError::ImmutableRole(key.to_string()));
        }
        let value = self.check_filler(h, &ty, key, value)?;
        self.write(inst, key, value);
        Ok(())
    }

    /// Fills a role that is still unbound; used for identifications deferred to firing time.
    pub fn bind_role(&mut self, h: &TypeHierarchy, inst: InstanceId, key: &str, value: Filler) -> Result<(), MemoryError> {
        let ty = self.get(inst)?.ty.clone();
        if self.instances[&inst].fillers.contains_key(key) {
            return Err(MemoryError::AlreadyBound(key.to_string()));
        }
        let value = self.check_filler(h, &ty, key, value)?;
        self.write(inst, key, value);
        Ok(())
    }

    fn write(&mut self, inst: InstanceId, key: &str, value: Filler) {
        let time = self.tick();
        let slot = self.instances.get_mut(&inst).unwrap();
        let old = slot.fillers.insert(key.to_string(), value.clone());
        self.last_mutation.insert(inst, time);
        self.journal.push(Event::Mutate { time, instance: inst, role: key.to_string(), old, new: value });
    }

    /// Appends a firing and arms its refractory key. Returns the firing index.
    pub fn record_firing(&mut self, construction: &str, bindings: BTreeMap<String, InstanceId>, created: Vec<InstanceId>) -> usize {
        let time = self.tick();
        let firing = Firing { construction: construction.to_string(), bindings, time, created, branch: self.id };
        self.refractory.insert((firing.construction.clone(), firing.inputs()), time);
        self.journal.push(Event::Fire { time, firing: firing.clone() });
        self.firings.push(firing);
        self.firings.len() - 1
    }

    /// Index the next recorded firing will get.
    pub fn next_firing_index(&self) -> usize {
        self.firings.len()
    }

    pub fn record_dead(&mut self, construction: &str, bindings: BTreeMap<String, InstanceId>, reason: String) {
        let time = self.clock;
        self.dead_keys.insert(dead_key(construction, &bindings), time);
        self.dead.push(DeadDecision { construction: construction.to_string(), bindings, time, reason });
    }

    /// Whether `key` fired before and none of its instances changed since.
    pub fn is_refractory(&self, key: &RefractoryKey) -> bool {
        // A dead decision does not tick the clock, so a mutation at the same
        // time already happened after it.
        let changed_since = |t: Time, strict: bool| {
            key.1.iter().any(|i| self.last_mutation.get(i).is_some_and(|m| if strict { *m > t } else { *m >= t }))
        };
        self.refractory.get(key).is_some_and(|t| !changed_since(*t, true))
            || self.dead_keys.get(key).is_some_and(|t| !changed_since(*t, false))
    }

    /// True iff `ancestor` is reachable from `inst` through parent links.
    pub fn is_ancestor(&self, ancestor: InstanceId, inst: InstanceId) -> Result<bool, MemoryError> {
        self.get(ancestor)?;
        let mut stack = self.get(inst)?.parents.clone();
        let mut seen = BTreeSet::new();
        while let Some(p) = stack.pop() {
            if p == ancestor {
                return Ok(true);
            }
            if seen.insert(p) {
                stack.extend(self.instances[&p].parents.iter().copied());
            }
        }
        Ok(false)
    }

    /// `inst` together with all its ancestors.
    pub fn lineage(&self, inst: InstanceId) -> BTreeSet<InstanceId> {
        let mut out = BTreeSet::new();
        let mut stack = vec![inst];
        while let Some(i) = stack.pop() {
            if out.insert(i) {
                if let Some(x) = self.instances.get(&i) {
                    stack.extend(x.parents.iter().copied());
                }
            }
        }
        out
    }

    /// Rebuilds a state from the journal alone.
    pub fn replay(&self) -> BranchState {
        let mut s = BranchState::new(self.id);
        s.parent = self.parent;
        for e in &self.journal {
            match e {
                Event::Create { instance, .. } => {
                    s.next_id = s.next_id.max(instance.id.0 + 1);
                    s.instances.insert(instance.id, instance.clone());
                }
                Event::Situate { time, instance, context, place } => {
                    s.situations.entry(*context).or_default().push(Situation {
                        instance: *instance,
                        place: place.clone(),
                        present: true,
                        placed_at: *time,
                        removed_at: None,
                    });
                }
                Event::Remove { time, instance, context } => {
                    if let Some(x) = s
                        .situations
                        .get_mut(context)
                        .and_then(|v| v.iter_mut().find(|x| x.present && x.instance == *instance))
                    {
                        x.present = false;
                        x.removed_at = Some(*time);
                    }
                }
                Event::Mutate { time, instance, role, new, .. } => {
                    if let Some(x) = s.instances.get_mut(instance) {
                        x.fillers.insert(role.clone(), new.clone());
                    }
                    s.last_mutation.insert(*instance, *time);
                }
                Event::Trust { instance, trust, .. } => {
                    if let Some(x) = s.instances.get_mut(instance) {
                        x.trust = *trust;
                    }
                }
                Event::Fire { time, firing } => {
                    s.refractory.insert((firing.construction.clone(), firing.inputs()), *time);
                    s.firings.push(firing.clone());
                }
            }
            s.clock = e.time() + 1;
        }
        s.journal = self.journal.clone();
        s.dead = self.dead.clone();
        for d in &s.dead {
            s.dead_keys.insert(dead_key(&d.construction, &d.bindings), d.time);
        }
        s.score = self.score;
        s.incomplete = self.incomplete;
        s
    }

    /// Copy with every capacity, journalled ones included, multiplied by `k`.
    pub fn with_scaled_capacities(&self, k: f64) -> BranchState {
        let mut s = self.clone();
        for i in s.instances.values_mut() {
            i.capacity *= k;
        }
        for e in &mut s.journal {
            if let Event::Create { instance, .. } = e {
                instance.capacity *= k;
            }
        }
        s
    }

    /// Whether the parent graph is acyclic and parent lists are well formed.
    pub fn parents_well_formed(&self) -> bool {
        self.instances.values().all(|i| {
            let unique: BTreeSet<_> = i.parents.iter().collect();
            unique.len() == i.parents.len()
                && !i.parents.contains(&i.id)
                && i.parents.iter().all(|p| self.instances.get(p).is_some_and(|x| x.created_at < i.created_at))
        })
    }

    pub fn dump(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("branch state serializes")
    }

    pub fn dump_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("branch state serializes")
    }

    /// Dump without the dead-decision log.
    pub fn dump_live(&self) -> String {
        let mut v = self.dump();
        if let Some(m) = v.as_object_mut() {
            m.remove("dead");
        }
        serde_json::to_string(&v).expect("json value serializes")
    }
}

fn dead_key(construction: &str, bindings: &BTreeMap<String, InstanceId>) -> RefractoryKey {
    let mut ids: Vec<_> = bindings.values().copied().collect();
    ids.sort();
    (construction.to_string(), ids)
}

/// Top-level `role <- constant` constraints of a type, as slot key and value.
pub fn constant_fillers(h: &TypeHierarchy, ty: &str) -> Vec<(String, Value)> {
    let Ok(constraints) = h.effective_constraints(ty) else { return Vec::new() };
    constraints
        .iter()
        .filter_map(|c| match c {
            ConstraintExpr::Filler { role, value: ValueExpr::Literal(v) } if !role.muted => {
                let r = h.resolve_in(Scope::Type(ty), role).ok()?;
                (r.hops.len() == 1).then(|| (r.hops[0].key.clone(), v.clone()))
            }
            _ => None,
        })
        .collect()
}

/// Evaluates a relation of a context type on concrete places.
pub fn eval_relation(h: &TypeHierarchy, ctx_type: &str, name: &str, places: &[Place]) -> Result<Value, PlaceError> {
    check_signature(h.effective_relations(ctx_type).into_iter(), name, places)?;
    let topology = h.topology(ctx_type).ok_or_else(|| PlaceError::UnknownRelation(name.to_string()))?;
    topology.relation(name, places)
}

/// Evaluates an operation of a context type on concrete places.
pub fn eval_operation(h: &TypeHierarchy, ctx_type: &str, name: &str, places: &[Place]) -> Result<Place, PlaceError> {
    check_signature(h.effective_operations(ctx_type).into_iter(), name, places)
        .map_err(|e| match e {
            PlaceError::UnknownRelation(n) => PlaceError::UnknownOperation(n),
            e => e,
        })?;
    let topology = h.topology(ctx_type).ok_or_else(|| PlaceError::UnknownOperation(name.to_string()))?;
    topology.operation(name, places)
}

fn check_signature<'a>(
    sigs: impl Iterator<Item = &'a crate::syntax::Signature>,
    name: &str,
    places: &[Place],
) -> Result<(), PlaceError> {
    let mut known = false;
    for s in sigs.filter(|s| s.name == name) {
        known = true;
        if s.params.len() == places.len()
            && s.params.iter().zip(places).all(|(p, pl)| PlaceKind::from_name(p) == Some(pl.kind()))
        {
            return Ok(());
        }
    }
    if !known {
        return Err(PlaceError::UnknownRelation(name.to_string()));
    }
    Err(PlaceError::PlaceKindMismatch {
        name: name.to_string(),
        kinds: places.iter().map(|p| p.kind().name()).collect::<Vec<_>>().join(", "),
    })
}

/// Whether a context type places instances natively or synthetically.
pub fn is_set_like(h: &TypeHierarchy, ctx_type: &str) -> bool {
    matches!(h.topology(ctx_type), Some(Topology::Set) | None)
}

//! Static checks that turn a parsed program into a `CompiledProgram`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::engine::{compile_construction, CompiledSConstruction};
use crate::place::PlaceKind;
use crate::registry;
use crate::syntax::{
    parse_source, BoolOp, ConstraintExpr, DefKind, Definition, Direction, IdentSource, Item, Loc,
    Operand, PlaceExpr, Program, RolePath, Segment, SyntaxFailure, ValueExpr,
};
use crate::types::{find_cycle, MergedConstruction, RoleType, Scope, TypeError, TypeHierarchy};
use crate::value::{AtomicType, Value};

const PRELUDE_SOURCE: &str = include_str!("../data/prelude.scim");

/// The built-in context declarations every program is validated against.
pub fn prelude() -> &'static Program {
    static PRELUDE: OnceLock<Program> = OnceLock::new();
    PRELUDE.get_or_init(|| parse_source(PRELUDE_SOURCE).expect("prelude parses"))
}

pub fn prelude_source() -> &'static str {
    PRELUDE_SOURCE
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DiagnosticKind {
    UnknownType,
    InheritanceCycle,
    UnresolvedRolePath,
    AmbiguousRole,
    ArityMismatch,
    PlaceKindMismatch,
    TypeMismatch,
    UnknownPredicate,
    UnknownRelation,
    DuplicateDefinition,
    KindMismatch,
    ImmutableRole,
    DirectionMismatch,
    MissingPlacement,
    IllegalAnnotation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub loc: Loc,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}: {}", self.loc, self.kind, self.message)
    }
}

impl From<(TypeError, Loc)> for Diagnostic {
    fn from((e, loc): (TypeError, Loc)) -> Self {
        let kind = match e {
            TypeError::UnknownType(_) => DiagnosticKind::UnknownType,
            TypeError::UnresolvedRolePath { .. } => DiagnosticKind::UnresolvedRolePath,
            TypeError::AmbiguousRole { .. } => DiagnosticKind::AmbiguousRole,
            TypeError::InheritanceCycle(_) => DiagnosticKind::InheritanceCycle,
        };
        Diagnostic { kind, loc, message: e.to_string() }
    }
}

/// A validated program ready for the engine.
#[derive(Debug, Clone)]
pub struct CompiledProgram {
    /// The user declarations, with bare enum symbols normalised to literals.
    pub user: Program,
    pub hierarchy: TypeHierarchy,
    /// Compiled s-constructions, sorted by name.
    pub constructions: Vec<Arc<CompiledSConstruction>>,
}

impl CompiledProgram {
    pub fn construction(&self, name: &str) -> Option<&Arc<CompiledSConstruction>> {
        self.constructions.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProgramError {
    #[error("{source_index}: {error}")]
    Syntax { source_index: usize, error: SyntaxFailure },
    #[error("{} diagnostic(s), first: {}", .0.len(), .0[0])]
    Invalid(Vec<Diagnostic>),
}

/// Parses the given sources in order and validates them as one program.
pub fn load_program<S: AsRef<str>>(sources: &[S]) -> Result<CompiledProgram, ProgramError> {
    let mut program = Program::default();
    for (i, src) in sources.iter().enumerate() {
        let p = parse_source(src.as_ref()).map_err(|error| ProgramError::Syntax { source_index: i, error })?;
        program.append(p);
    }
    validate(&program).map_err(ProgramError::Invalid)
}

/// Checks a user program (the prelude is added implicitly).
pub fn validate(user: &Program) -> Result<CompiledProgram, Vec<Diagnostic>> {
    let mut full = prelude().clone();
    full.append(user.clone());
    let mut diags = structural_checks(&full);
    if !diags.is_empty() {
        return Err(diags);
    }
    let h0 = TypeHierarchy::build(&full).map_err(|e| vec![Diagnostic::from((e, Loc::default()))])?;
    let user = rewrite_enum_symbols(&h0, user);
    let mut full = prelude().clone();
    full.append(user.clone());
    let hierarchy = TypeHierarchy::build(&full).map_err(|e| vec![Diagnostic::from((e, Loc::default()))])?;

    let mut v = Checker { h: &hierarchy, diags: Vec::new() };
    for d in full.definitions() {
        v.definition(d);
    }
    diags.extend(v.diags);
    if !diags.is_empty() {
        return Err(diags);
    }
    let mut constructions = Vec::new();
    for name in hierarchy.names() {
        if hierarchy.kind(name) == Some(DefKind::SConstruction) {
            let c = compile_construction(&hierarchy, name)
                .map_err(|e| vec![Diagnostic::from((e, Loc::default()))])?;
            constructions.push(Arc::new(c));
        }
    }
    constructions.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(CompiledProgram { user, hierarchy, constructions })
}

fn diag(kind: DiagnosticKind, loc: Loc, message: impl Into<String>) -> Diagnostic {
    Diagnostic { kind, loc, message: message.into() }
}

/// Names, parents and role types: everything the hierarchy needs to be built.
fn structural_checks(full: &Program) -> Vec<Diagnostic> {
    use DiagnosticKind::*;
    let mut out = Vec::new();
    let mut kinds: BTreeMap<&str, DefKind> = BTreeMap::new();
    let mut enums: BTreeSet<&str> = BTreeSet::new();
    for item in &full.items {
        match item {
            Item::Enum(e) => {
                if AtomicType::builtin(&e.name).is_some() || kinds.contains_key(e.name.as_str()) || !enums.insert(&e.name) {
                    out.push(diag(DuplicateDefinition, e.loc, format!("`{}` is already defined", e.name)));
                }
                let mut seen = BTreeSet::new();
                for s in &e.symbols {
                    if !seen.insert(s) {
                        out.push(diag(DuplicateDefinition, e.loc, format!("symbol `{s}` repeated in enum `{}`", e.name)));
                    }
                }
            }
            Item::Definition(d) => {
                if AtomicType::builtin(&d.name).is_some() || enums.contains(d.name.as_str()) || kinds.insert(&d.name, d.kind).is_some() {
                    out.push(diag(DuplicateDefinition, d.loc, format!("`{}` is already defined", d.name)));
                }
            }
        }
    }
    let is_type = |n: &str| AtomicType::builtin(n).is_some() || enums.contains(n) || kinds.contains_key(n);
    for d in full.definitions() {
        for p in d.inherits() {
            match kinds.get(p.as_str()) {
                None => out.push(diag(UnknownType, d.loc, format!("`{}` inherits unknown type `{p}`", d.name))),
                Some(pk) => {
                    let ok = match d.kind {
                        DefKind::Schema => *pk == DefKind::Schema,
                        DefKind::Context => *pk != DefKind::SConstruction,
                        DefKind::SConstruction => *pk == DefKind::SConstruction,
                    };
                    if !ok {
                        out.push(diag(KindMismatch, d.loc, format!(
                            "{} `{}` cannot inherit {} `{p}`", d.kind.keyword(), d.name, pk.keyword()
                        )));
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        for r in d.roles() {
            if !is_type(&r.ty) {
                out.push(diag(UnknownType, r.loc, format!("role `{}` has unknown type `{}`", r.name, r.ty)));
            }
            if !seen.insert(&r.name) {
                out.push(diag(DuplicateDefinition, r.loc, format!("role `{}` declared twice in `{}`", r.name, d.name)));
            }
        }
    }
    if out.is_empty() {
        if let Some(cycle) = find_cycle(full) {
            let loc = full.definitions().find(|d| d.name == cycle[0]).map(|d| d.loc).unwrap_or_default();
            out.push(diag(InheritanceCycle, loc, format!("inheritance cycle: {}", cycle.join(" -> "))));
        }
    }
    out
}

/// Rewrites single-name operands that do not resolve but name an enum symbol.
fn rewrite_enum_symbols(h: &TypeHierarchy, user: &Program) -> Program {
    let symbols: BTreeSet<&String> = h.enums().values().flatten().collect();
    let mut out = user.clone();
    for item in &mut out.items {
        let Item::Definition(d) = item else { continue };
        let merged = (d.kind == DefKind::SConstruction).then(|| h.merged_construction(&d.name).ok()).flatten();
        let scope = match &merged {
            Some(m) => Scope::Construction(m),
            None => Scope::Type(&d.name),
        };
        for block in &mut d.blocks {
            let crate::syntax::Block::Constraints(items) = block else { continue };
            for c in items.iter_mut() {
                rewrite_operands(&mut c.expr, &mut |p: &RolePath| {
                    let Some(Segment::Role(name)) = p.segments.first() else { return None };
                    (p.is_bare_label() && !p.muted && symbols.contains(name) && h.resolve_in(scope, p).is_err())
                        .then(|| Value::Sym(name.clone()))
                });
            }
        }
    }
    out
}

fn rewrite_operands(e: &mut ConstraintExpr, f: &mut dyn FnMut(&RolePath) -> Option<Value>) {
    match e {
        ConstraintExpr::Bool { args, .. } => args.iter_mut().for_each(|a| rewrite_operands(a, f)),
        ConstraintExpr::Predicate { args, .. } => {
            for a in args {
                if let Operand::Path(p) = a {
                    if let Some(v) = f(p) {
                        *a = Operand::Literal(v);
                    }
                }
            }
        }
        _ => {}
    }
}

struct Checker<'h> {
    h: &'h TypeHierarchy,
    diags: Vec<Diagnostic>,
}

/// Static type of a constraint operand.
#[derive(Debug, Clone, PartialEq)]
enum Ty {
    Atomic(AtomicType),
    Instance(String),
    /// Literal or computed value whose exact type is not tracked.
    Value(Option<Value>),
}

impl<'h> Checker<'h> {
    fn push(&mut self, kind: DiagnosticKind, loc: Loc, message: impl Into<String>) {
        self.diags.push(diag(kind, loc, message));
    }

    fn definition(&mut self, d: &Definition) {
        use DiagnosticKind::*;
        for r in d.roles() {
            let Some(ctx) = &r.situated_in else { continue };
            if self.h.atomic_type(&r.ty).is_some() {
                self.push(IllegalAnnotation, r.loc, format!("atomic role `{}` cannot be situated", r.name));
                continue;
            }
            match d.roles().iter().find(|o| &o.name == ctx) {
                None => self.push(UnresolvedRolePath, r.loc, format!("`@{ctx}` names no role of `{}`", d.name)),
                Some(o) if !self.h.is_context(&o.ty) => {
                    self.push(KindMismatch, r.loc, format!("`@{ctx}` is not context-typed"))
                }
                Some(_) => {}
            }
        }
        if d.kind == DefKind::Context {
            self.context(d);
        }
        match d.kind {
            DefKind::SConstruction => self.construction(d),
            _ => {
                for c in d.constraints() {
                    self.type_constraint(d, &c.expr, c.loc);
                }
            }
        }
    }

    fn context(&mut self, d: &Definition) {
        use DiagnosticKind::*;
        for p in d.places() {
            if PlaceKind::from_name(p).is_none() {
                self.push(PlaceKindMismatch, d.loc, format!("unknown place kind `{p}`"));
            }
        }
        let places = self.h.effective_places(&d.name);
        let topology = self.h.topology(&d.name);
        for (sigs, is_rel) in [(d.relations(), true), (d.operations(), false)] {
            for s in sigs {
                if let Some(p) = s.params.iter().find(|p| !PlaceKind::from_name(p).is_some_and(|k| places.contains(&k))) {
                    self.push(PlaceKindMismatch, s.loc, format!("`{}` uses undeclared place `{p}`", s.name));
                }
                if is_rel {
                    if self.h.atomic_type(&s.result).is_none() {
                        self.push(UnknownType, s.loc, format!("relation `{}` must yield an atomic type", s.name));
                    }
                } else if !PlaceKind::from_name(&s.result).is_some_and(|k| places.contains(&k)) {
                    self.push(PlaceKindMismatch, s.loc, format!("operation `{}` yields undeclared place `{}`", s.name, s.result));
                }
                if let Some(t) = topology {
                    let known = if is_rel { t.relation_names() } else { t.operation_names() };
                    if !known.contains(&s.name.as_str()) {
                        self.push(UnknownRelation, s.loc, format!(
                            "`{}` is not provided by {}", s.name, t.context_type()
                        ));
                    }
                }
            }
        }
    }

    fn type_constraint(&mut self, d: &Definition, e: &ConstraintExpr, loc: Loc) {
        let scope = Scope::Type(&d.name);
        let forbidden = match e {
            ConstraintExpr::Relation { .. } => Some("context relations"),
            ConstraintExpr::Parent { .. } => Some("parent constraints"),
            ConstraintExpr::Out { .. } => Some("OUT"),
            _ if e.has_muted() => Some("muted references"),
            _ => None,
        };
        if let Some(what) = forbidden {
            self.push(DiagnosticKind::KindMismatch, loc, format!("{what} are only allowed in s-constructions"));
            return;
        }
        self.constraint(scope, None, e, loc);
    }

    fn construction(&mut self, d: &Definition) {
        use DiagnosticKind::*;
        let before = self.diags.len();
        let m = match self.h.merged_construction(&d.name) {
            Ok(m) => m,
            Err(e) => return self.diags.push((e, d.loc).into()),
        };
        let mut labels: BTreeMap<&str, Loc> = BTreeMap::new();
        for (label, loc) in m.constituents.iter().map(|c| (&c.label, c.loc)).chain(m.constructional.iter().map(|c| (&c.label, c.loc))) {
            if labels.insert(label, loc).is_some() {
                self.push(DuplicateDefinition, d.loc, format!("label `{label}` declared twice in `{}`", d.name));
            }
        }
        for c in d.constituents() {
            match self.h.kind(&c.ty) {
                None => {
                    self.push(UnknownType, c.loc, format!("constituent `{}` has unknown type `{}`", c.label, c.ty));
                    continue;
                }
                Some(DefKind::SConstruction) => {
                    self.push(KindMismatch, c.loc, format!("constituent `{}` must be a schema or context", c.label));
                }
                Some(_) => {}
            }
            if let Some(ctx) = &c.situated_in {
                match m.constituent(ctx) {
                    None => self.push(UnresolvedRolePath, c.loc, format!("`@{ctx}` names no constituent")),
                    Some(k) if !self.h.is_context(&k.ty) => {
                        self.push(KindMismatch, c.loc, format!("`@{ctx}` is not context-typed"))
                    }
                    Some(k) if c.direction.is_input() && k.direction == Direction::Out => self.push(
                        DirectionMismatch,
                        c.loc,
                        format!("input `{}` cannot be matched inside created context `{ctx}`", c.label),
                    ),
                    Some(_) => {}
                }
            }
        }
        for r in d.constructional() {
            match self.h.kind(&r.ty) {
                None => self.push(UnknownType, r.loc, format!("unknown s-construction `{}`", r.ty)),
                Some(DefKind::SConstruction) => {}
                Some(k) => self.push(KindMismatch, r.loc, format!("`{}` is a {}, not an s-construction", r.ty, k.keyword())),
            }
        }
        // Own roles are still type-checked, even though firings never bind them.
        for c in d.constraints() {
            self.constraint(Scope::Construction(&m), Some(&m), &c.expr, c.loc);
        }
        if self.diags.len() > before {
            return;
        }
        for c in m.constituents.iter().filter(|c| c.direction == Direction::Out) {
            let Some(ctx) = &c.situated_in else { continue };
            let Some(ctx_ty) = m.constituent(ctx).map(|k| k.ty.clone()) else { continue };
            let is_set = self.h.topology(&ctx_ty) == Some(crate::place::Topology::Set);
            let placed = m.constraints.iter().any(|e| is_placement(e, ctx, &c.label));
            if !placed && !is_set {
                self.push(MissingPlacement, c.loc, format!(
                    "created constituent `{}` needs `{ctx}.at({}, ...)`", c.label, c.label
                ));
            }
        }
    }

    fn path(&mut self, scope: Scope<'_>, p: &RolePath, loc: Loc) -> Option<Ty> {
        match self.h.resolve_in(scope, p) {
            Ok(r) => {
                if p.muted && !r.last.as_ref().is_some_and(|d| d.mutable) {
                    self.push(DiagnosticKind::ImmutableRole, loc, format!("`{p}` is not declared mutable"));
                }
                Some(match r.ty {
                    RoleType::Atomic(a) => Ty::Atomic(a),
                    RoleType::Instance(t) => Ty::Instance(t),
                })
            }
            Err(e) => {
                self.diags.push((e, loc).into());
                None
            }
        }
    }

    fn atomic(&mut self, ty: &Option<Ty>, what: &str, loc: Loc) -> bool {
        if let Some(Ty::Instance(t)) = ty {
            self.push(DiagnosticKind::TypeMismatch, loc, format!("{what} needs an atomic value, found instance of `{t}`"));
            return false;
        }
        true
    }

    fn instance(&mut self, ty: &Option<Ty>, what: &str, loc: Loc) {
        if let Some(Ty::Atomic(_) | Ty::Value(_)) = ty {
            self.push(DiagnosticKind::TypeMismatch, loc, format!("{what} needs an instance"));
        }
    }

    fn fits(&mut self, ty: &Option<Ty>, value: &Value, loc: Loc) {
        if let Some(Ty::Atomic(a)) = ty {
            if !value.fits(a, self.enum_symbols(a)) {
                self.push(DiagnosticKind::TypeMismatch, loc, format!("`{value}` is not a valid {a}"));
            }
        }
    }

    fn enum_symbols(&self, a: &AtomicType) -> Option<&'h [String]> {
        match a {
            AtomicType::Enum(n) => self.h.enum_symbols(n),
            _ => None,
        }
    }

    fn compatible(&mut self, a: &Option<Ty>, b: &Option<Ty>, what: &str, loc: Loc) {
        let ok = match (a, b) {
            (Some(Ty::Atomic(x)), Some(Ty::Atomic(y))) => x.compatible(y),
            (Some(Ty::Instance(x)), Some(Ty::Instance(y))) => self.h.subtype(x, y) || self.h.subtype(y, x),
            (Some(Ty::Atomic(_)), Some(Ty::Instance(_))) | (Some(Ty::Instance(_)), Some(Ty::Atomic(_))) => false,
            _ => true,
        };
        if !ok {
            self.push(DiagnosticKind::TypeMismatch, loc, format!("{what}: incompatible operand types"));
        }
    }

    fn function(&mut self, name: &str, arity: usize, loc: Loc) {
        match registry::function_arity(name) {
            None => self.push(DiagnosticKind::UnknownPredicate, loc, format!("unknown function `{name}`")),
            Some(Some(n)) if n != arity => {
                self.push(DiagnosticKind::ArityMismatch, loc, format!("`{name}` takes {n} argument(s), got {arity}"))
            }
            Some(None) if arity == 0 => {
                self.push(DiagnosticKind::ArityMismatch, loc, format!("`{name}` needs at least one argument"))
            }
            _ => {}
        }
    }

    fn constraint(&mut self, scope: Scope<'_>, m: Option<&MergedConstruction>, e: &ConstraintExpr, loc: Loc) {
        use DiagnosticKind::*;
        match e {
            ConstraintExpr::Bool { op, args } => {
                let ok = match op {
                    BoolOp::Not => args.len() == 1,
                    _ => !args.is_empty(),
                };
                if !ok {
                    self.push(ArityMismatch, loc, format!("{} with {} operand(s)", op.keyword(), args.len()));
                }
                for a in args {
                    if matches!(a, ConstraintExpr::Out { .. }) {
                        self.push(KindMismatch, loc, "OUT cannot be nested in a boolean operation");
                    }
                    self.constraint(scope, m, a, loc);
                }
            }
            ConstraintExpr::Filler { role, value } => {
                let ty = self.path(scope, role, loc);
                if !self.atomic(&ty, "filler", loc) {
                    return;
                }
                match value {
                    ValueExpr::Literal(v) => self.fits(&ty, v, loc),
                    ValueExpr::Call { function, args } => self.function(function, args.len(), loc),
                }
            }
            ConstraintExpr::Identify { left, right } => {
                let lt = self.path(scope, left, loc);
                match right {
                    IdentSource::Path(p) => {
                        let rt = self.path(scope, p, loc);
                        self.compatible(&lt, &rt, "identification", loc);
                    }
                    IdentSource::Call { function, arg } => {
                        let rt = self.path(scope, arg, loc);
                        self.function(function, 1, loc);
                        if self.atomic(&lt, "identification", loc) {
                            self.atomic(&rt, "function argument", loc);
                        }
                    }
                }
            }
            ConstraintExpr::Equal { left, right } => {
                let lt = self.path(scope, left, loc);
                let rt = self.path(scope, right, loc);
                self.instance(&lt, "equality", loc);
                self.instance(&rt, "equality", loc);
                self.compatible(&lt, &rt, "equality", loc);
            }
            ConstraintExpr::Predicate { name, args } => {
                match registry::predicate_arity(name) {
                    None => self.push(UnknownPredicate, loc, format!("unknown predicate `{name}`")),
                    Some(n) if n != args.len() => {
                        self.push(ArityMismatch, loc, format!("`{name}` takes {n} argument(s), got {}", args.len()))
                    }
                    Some(_) => {}
                }
                let tys: Vec<Option<Ty>> = args
                    .iter()
                    .map(|a| match a {
                        Operand::Path(p) => self.path(scope, p, loc),
                        Operand::Literal(v) => Some(Ty::Value(Some(v.clone()))),
                    })
                    .collect();
                for t in &tys {
                    self.atomic(t, &format!("predicate `{name}`"), loc);
                }
                if let [a, b] = tys.as_slice() {
                    match (a, b) {
                        (Some(Ty::Atomic(x)), Some(Ty::Value(Some(v)))) | (Some(Ty::Value(Some(v))), Some(Ty::Atomic(x))) => {
                            let comparable = v.fits(x, self.enum_symbols(x))
                                || matches!((x, v), (AtomicType::Integer, Value::Float(_)));
                            if !comparable {
                                self.push(TypeMismatch, loc, format!("`{v}` cannot be compared with {x}"));
                            }
                        }
                        _ => self.compatible(a, b, &format!("predicate `{name}`"), loc),
                    }
                }
            }
            ConstraintExpr::Relation { context, relation, args } => {
                let Some(m) = m else { return };
                let Some(ctx_ty) = self.context_label(m, context, loc) else { return };
                let sigs: Vec<usize> = self.h.effective_relations(&ctx_ty).iter().filter(|s| &s.name == relation).map(|s| s.params.len()).collect();
                self.signature(&ctx_ty, relation, &sigs, args.len(), "relation", loc);
                for a in args {
                    self.place(scope, m, a, loc);
                }
            }
            ConstraintExpr::Parent { child, parent } => {
                for p in [child, parent] {
                    let t = self.path(scope, p, loc);
                    self.instance(&t, "parent constraint", loc);
                }
            }
            ConstraintExpr::Out { constituent } => {
                let Some(m) = m else { return };
                match m.constituent(constituent) {
                    None => self.push(UnresolvedRolePath, loc, format!("OUT names unknown constituent `{constituent}`")),
                    Some(c) if !c.direction.is_input() => {
                        self.push(DirectionMismatch, loc, format!("OUT target `{constituent}` is not an input"))
                    }
                    Some(c) if c.situated_in.is_none() => {
                        self.push(DirectionMismatch, loc, format!("OUT target `{constituent}` is not situated"))
                    }
                    Some(_) => {}
                }
            }
        }
    }

    fn context_label(&mut self, m: &MergedConstruction, label: &str, loc: Loc) -> Option<String> {
        match m.constituent(label) {
            None => {
                self.push(DiagnosticKind::UnresolvedRolePath, loc, format!("`{label}` names no constituent"));
                None
            }
            Some(c) if !self.h.is_context(&c.ty) => {
                self.push(DiagnosticKind::KindMismatch, loc, format!("`{label}` is not context-typed"));
                None
            }
            Some(c) => Some(c.ty.clone()),
        }
    }

    fn signature(&mut self, ctx_ty: &str, name: &str, arities: &[usize], got: usize, what: &str, loc: Loc) {
        if arities.is_empty() {
            self.push(DiagnosticKind::UnknownRelation, loc, format!("`{ctx_ty}` declares no {what} `{name}`"));
        } else if !arities.contains(&got) {
            self.push(DiagnosticKind::ArityMismatch, loc, format!("{what} `{name}` applied to {got} place(s)"));
        }
    }

    fn place(&mut self, scope: Scope<'_>, m: &MergedConstruction, p: &PlaceExpr, loc: Loc) {
        match p {
            PlaceExpr::Path(path) => {
                let t = self.path(scope, path, loc);
                self.instance(&t, "place argument", loc);
            }
            PlaceExpr::Operation { context, operation, args } => {
                let Some(ctx_ty) = self.context_label(m, context, loc) else { return };
                let sigs: Vec<usize> = self.h.effective_operations(&ctx_ty).iter().filter(|s| &s.name == operation).map(|s| s.params.len()).collect();
                self.signature(&ctx_ty, operation, &sigs, args.len(), "operation", loc);
                for a in args {
                    self.place(scope, m, a, loc);
                }
            }
        }
    }
}

/// `ctx.at(label, ...)` at top level: the placement of a created constituent.
pub fn is_placement(e: &ConstraintExpr, ctx: &str, label: &str) -> bool {
    matches!(e, ConstraintExpr::Relation { context, relation, args }
        if context == ctx && relation == "at"
            && matches!(args.first(), Some(PlaceExpr::Path(p)) if p.is_bare_label() && p.first_label() == Some(label)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<DiagnosticKind> {
        match load_program(&[src]) {
            Ok(_) => Vec::new(),
            Err(ProgramError::Invalid(d)) => d.into_iter().map(|d| d.kind).collect(),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn inherited_path_is_valid() {
        let src = "enum Color { red, blue }
            schema Figure roles color: Color width: Float
            schema Rectangle inherits Figure
            schema Square inherits Rectangle constraints Rectangle*Figure*color <- red";
        assert_eq!(kinds(src), vec![]);
    }

    #[test]
    fn two_cycle() {
        let err = load_program(&["schema A inherits B schema B inherits A"]).unwrap_err();
        let ProgramError::Invalid(d) = err else { panic!() };
        assert_eq!(d[0].kind, DiagnosticKind::InheritanceCycle);
        assert!(d[0].message.contains("A -> B -> A"), "{}", d[0].message);
    }

    #[test]
    fn dangling_out() {
        let src = "context Ctx inherits SetContext
            schema W
            s-construction Cx constituents c: Ctx /I w: W @c /I constraints OUT(v)";
        assert_eq!(kinds(src), vec![DiagnosticKind::UnresolvedRolePath]);
    }

    #[test]
    fn diagnostics_by_kind() {
        let cases = [
            ("schema A inherits Nope", DiagnosticKind::UnknownType),
            ("schema A roles x: Integer constraints lt(y, 1)", DiagnosticKind::UnresolvedRolePath),
            ("schema A roles x: Integer constraints lt(x)", DiagnosticKind::ArityMismatch),
            ("schema A roles x: Integer constraints frob(x, 1)", DiagnosticKind::UnknownPredicate),
            ("schema A roles x: Integer constraints x <- \"s\"", DiagnosticKind::TypeMismatch),
            ("schema A schema A", DiagnosticKind::DuplicateDefinition),
            ("context C inherits SetContext schema A inherits C", DiagnosticKind::KindMismatch),
            ("context C inherits LinearContext relations before(box, box) |-> Boolean", DiagnosticKind::PlaceKindMismatch),
            ("context C inherits LinearContext relations near(point, point) |-> Boolean", DiagnosticKind::UnknownRelation),
            ("schema A roles x: Integer @x", DiagnosticKind::IllegalAnnotation),
            (
                "schema W roles x: Integer context F inherits SetContext
                 s-construction Cx constituents f: F /I w: W @f /I constraints ?w.x <- 1",
                DiagnosticKind::ImmutableRole,
            ),
            (
                "schema W context F inherits SetContext
                 s-construction Cx constituents f: F /I w: W @f /O constraints OUT(w)",
                DiagnosticKind::DirectionMismatch,
            ),
            (
                "schema W context F inherits LinearContext
                 s-construction Cx constituents f: F /I w: W @f /O",
                DiagnosticKind::MissingPlacement,
            ),
            (
                "schema D roles r: Integer schema B inherits D schema C inherits D
                 schema A inherits B, C constraints lt(r, 1)",
                DiagnosticKind::AmbiguousRole,
            ),
        ];
        for (src, want) in cases {
            assert_eq!(kinds(src), vec![want], "{src}");
        }
    }

    #[test]
    fn enum_symbols_become_literals_and_validation_is_idempotent() {
        let src = "enum Region { left, right }
            schema A roles r: Region constraints neq(r, left)";
        let c = load_program(&[src]).unwrap();
        let d = c.user.definitions().next().unwrap();
        assert!(matches!(&d.constraints()[0].expr,
            ConstraintExpr::Predicate { args, .. } if args[1] == Operand::Literal(Value::Sym("left".into()))));
        let again = validate(&c.user).unwrap();
        assert_eq!(again.user, c.user);
    }
}

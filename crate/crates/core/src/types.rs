//! The multiple-inheritance hierarchy over schemas, contexts and s-constructions.
//!
//! Inherited roles live in path-qualified slots: a `Square` instance stores the
//! `color` declared by `Figure` under the key `Rectangle*Figure*color`. Diamond
//! inheritance therefore yields one slot per inheritance path.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::place::{PlaceKind, Topology};
use crate::syntax::{
    ConstituentDecl, ConstraintExpr, ConstructionalDecl, DefKind, Program, RoleDecl, Segment,
    Signature,
};
use crate::syntax::ast::RolePath;
use crate::value::AtomicType;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TypeError {
    #[error("unknown type `{0}`")]
    UnknownType(String),
    #[error("cannot resolve `{segment}` from `{from}`")]
    UnresolvedRolePath { from: String, segment: String },
    #[error("role `{role}` of `{from}` is reachable through several inheritance paths: {}", candidates.join(", "))]
    AmbiguousRole { from: String, role: String, candidates: Vec<String> },
    #[error("inheritance cycle: {}", .0.join(" -> "))]
    InheritanceCycle(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum RoleType {
    Atomic(AtomicType),
    /// A schema, context or s-construction type name.
    Instance(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoleDescriptor {
    /// Type that declares the role.
    pub owner: String,
    pub name: String,
    pub ty: RoleType,
    pub mutable: bool,
    pub situated_in: Option<String>,
    /// Inheritance hops from the querying type to `owner`.
    pub path: Vec<String>,
    /// Slot key inside instances of the querying type.
    pub key: String,
}

#[derive(Debug, Clone)]
pub struct TypeNode {
    pub kind: DefKind,
    pub name: String,
    pub parents: Vec<String>,
    pub roles: Vec<RoleDecl>,
    pub constraints: Vec<ConstraintExpr>,
    pub places: Vec<String>,
    pub relations: Vec<Signature>,
    pub operations: Vec<Signature>,
    pub constructional: Vec<ConstructionalDecl>,
    pub constituents: Vec<ConstituentDecl>,
    pub confidence: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct TypeHierarchy {
    nodes: BTreeMap<String, TypeNode>,
    enums: BTreeMap<String, Vec<String>>,
    /// Reflexive-transitive ancestor sets.
    ancestors: BTreeMap<String, BTreeSet<String>>,
    roles: BTreeMap<String, BTreeMap<String, RoleDescriptor>>,
    /// Declaration order, parents before children.
    topo: Vec<String>,
}

impl TypeHierarchy {
    pub fn build(program: &Program) -> Result<TypeHierarchy, TypeError> {
        let enums: BTreeMap<String, Vec<String>> =
            program.enums().map(|e| (e.name.clone(), e.symbols.clone())).collect();
        let mut nodes = BTreeMap::new();
        for d in program.definitions() {
            nodes.insert(
                d.name.clone(),
                TypeNode {
                    kind: d.kind,
                    name: d.name.clone(),
                    parents: d.inherits().to_vec(),
                    roles: d.roles().to_vec(),
                    constraints: d.constraints().iter().map(|c| c.expr.clone()).collect(),
                    places: d.places().to_vec(),
                    relations: d.relations().to_vec(),
                    operations: d.operations().to_vec(),
                    constructional: d.constructional().to_vec(),
                    constituents: d.constituents().to_vec(),
                    confidence: d.confidence,
                },
            );
        }
        for node in nodes.values() {
            if let Some(p) = node.parents.iter().find(|p| !nodes.contains_key(*p)) {
                return Err(TypeError::UnknownType(p.clone()));
            }
        }
        let topo = topological_order(&nodes)?;
        let mut h = TypeHierarchy { nodes, enums, ancestors: BTreeMap::new(), roles: BTreeMap::new(), topo };
        for name in h.topo.clone() {
            let mut anc = BTreeSet::from([name.clone()]);
            for p in &h.nodes[&name].parents {
                anc.extend(h.ancestors[p].iter().cloned());
            }
            h.ancestors.insert(name.clone(), anc);

            let mut roles = BTreeMap::new();
            let node = &h.nodes[&name];
            for r in &node.roles {
                let ty = h.role_type(&r.ty)?;
                roles.insert(
                    r.name.clone(),
                    RoleDescriptor {
                        owner: name.clone(),
                        name: r.name.clone(),
                        ty,
                        mutable: r.mutable,
                        situated_in: r.situated_in.clone(),
                        path: Vec::new(),
                        key: r.name.clone(),
                    },
                );
            }
            for p in &node.parents {
                for (k, d) in &h.roles[p] {
                    let mut d = d.clone();
                    d.key = format!("{p}*{k}");
                    d.path.insert(0, p.clone());
                    roles.insert(d.key.clone(), d);
                }
            }
            h.roles.insert(name, roles);
        }
        Ok(h)
    }

    fn role_type(&self, name: &str) -> Result<RoleType, TypeError> {
        if let Some(a) = self.atomic_type(name) {
            Ok(RoleType::Atomic(a))
        } else if self.nodes.contains_key(name) {
            Ok(RoleType::Instance(name.to_string()))
        } else {
            Err(TypeError::UnknownType(name.to_string()))
        }
    }

    pub fn atomic_type(&self, name: &str) -> Option<AtomicType> {
        AtomicType::builtin(name)
            .or_else(|| self.enums.contains_key(name).then(|| AtomicType::Enum(name.to_string())))
    }

    pub fn enum_symbols(&self, name: &str) -> Option<&[String]> {
        self.enums.get(name).map(Vec::as_slice)
    }

    pub fn enums(&self) -> &BTreeMap<String, Vec<String>> {
        &self.enums
    }

    pub fn node(&self, name: &str) -> Option<&TypeNode> {
        self.nodes.get(name)
    }

    pub fn kind(&self, name: &str) -> Option<DefKind> {
        self.nodes.get(name).map(|n| n.kind)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.nodes.contains_key(name)
    }

    /// Type names, parents before children.
    pub fn names(&self) -> &[String] {
        &self.topo
    }

    pub fn is_subtype(&self, sub: &str, sup: &str) -> Result<bool, TypeError> {
        for n in [sub, sup] {
            if !self.nodes.contains_key(n) {
                return Err(TypeError::UnknownType(n.to_string()));
            }
        }
        Ok(self.ancestors[sub].contains(sup))
    }

    /// `is_subtype` that answers false for undeclared names.
    pub fn subtype(&self, sub: &str, sup: &str) -> bool {
        self.ancestors.get(sub).is_some_and(|a| a.contains(sup))
    }

    pub fn ancestors(&self, name: &str) -> Option<&BTreeSet<String>> {
        self.ancestors.get(name)
    }

    pub fn is_context(&self, name: &str) -> bool {
        self.kind(name) == Some(DefKind::Context)
    }

    /// Own roles plus every inherited role under its path-qualified key.
    pub fn effective_roles(&self, name: &str) -> Result<&BTreeMap<String, RoleDescriptor>, TypeError> {
        self.roles.get(name).ok_or_else(|| TypeError::UnknownType(name.to_string()))
    }

    pub fn role(&self, ty: &str, key: &str) -> Option<&RoleDescriptor> {
        self.roles.get(ty)?.get(key)
    }

    /// Resolves `path` from `start`; the descriptor of the last role hop.
    pub fn resolve_role_path(&self, start: &str, path: &RolePath) -> Result<RoleDescriptor, TypeError> {
        self.resolve_steps(start, &path.segments)?
            .pop()
            .ok_or_else(|| TypeError::UnresolvedRolePath { from: start.to_string(), segment: "self".into() })
    }

    /// One descriptor per role hop along `segments`, each keyed relative to the type it starts from.
    pub fn resolve_steps(&self, start: &str, segments: &[Segment]) -> Result<Vec<RoleDescriptor>, TypeError> {
        if !self.nodes.contains_key(start) {
            return Err(TypeError::UnknownType(start.to_string()));
        }
        let mut view = start.to_string();
        let mut prefix: Vec<String> = Vec::new();
        let mut steps: Vec<RoleDescriptor> = Vec::new();
        let unresolved = |from: &str, seg: &str| TypeError::UnresolvedRolePath {
            from: from.to_string(),
            segment: seg.to_string(),
        };
        // Set after a role hop: the next segment starts from that role's type.
        let mut hop = false;
        for (i, seg) in segments.iter().enumerate() {
            if hop && !matches!(seg, Segment::SelfRef) {
                let prev = steps.last().expect("hop follows a role");
                let RoleType::Instance(t) = &prev.ty else {
                    return Err(unresolved(&prev.name, &seg_text(seg)));
                };
                view = t.clone();
                hop = false;
            }
            match seg {
                Segment::SelfRef if i == 0 => {}
                Segment::SelfRef => return Err(unresolved(&view, "self")),
                Segment::Via(p) => {
                    if !self.nodes[&view].parents.contains(p) {
                        return Err(unresolved(&view, &format!("{p}*")));
                    }
                    prefix.push(p.clone());
                    view = p.clone();
                }
                Segment::Role(r) => {
                    let table = &self.roles[&view];
                    let found = match table.get(r.as_str()) {
                        Some(d) => d,
                        None => {
                            let hits: Vec<&RoleDescriptor> = table.values().filter(|d| &d.name == r).collect();
                            match hits.as_slice() {
                                [d] => *d,
                                [] => return Err(unresolved(&view, r)),
                                many => {
                                    return Err(TypeError::AmbiguousRole {
                                        from: view.clone(),
                                        role: r.clone(),
                                        candidates: many.iter().map(|d| d.key.clone()).collect(),
                                    })
                                }
                            }
                        }
                    };
                    let mut d = found.clone();
                    if !prefix.is_empty() {
                        d.key = format!("{}*{}", prefix.join("*"), d.key);
                        let mut path = std::mem::take(&mut prefix);
                        path.extend(d.path);
                        d.path = path;
                    }
                    steps.push(d);
                    hop = true;
                }
            }
        }
        if !prefix.is_empty() {
            return Err(unresolved(&view, "*"));
        }
        Ok(steps)
    }

    /// Every parent-hop path from `sub` up to `sup` (excluding `sub`, including `sup`).
    pub fn inheritance_paths(&self, sub: &str, sup: &str) -> Vec<Vec<String>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.walk_paths(sub, sup, &mut stack, &mut out);
        out
    }

    fn walk_paths(&self, at: &str, sup: &str, stack: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        if at == sup {
            out.push(stack.clone());
            return;
        }
        let Some(node) = self.nodes.get(at) else { return };
        for p in &node.parents {
            if self.subtype(p, sup) {
                stack.push(p.clone());
                self.walk_paths(p, sup, stack, out);
                stack.pop();
            }
        }
    }

    /// Maps a slot key of `declared` to the matching slot in an instance of `actual`.
    pub fn upcast_key(&self, actual: &str, declared: &str, key: &str) -> Option<String> {
        if actual == declared {
            return Some(key.to_string());
        }
        match self.inheritance_paths(actual, declared).as_slice() {
            [path] => Some(format!("{}*{key}", path.join("*"))),
            _ => None,
        }
    }

    /// Own constraints plus ancestors' constraints rebased through the inheritance hop,
    /// ancestors first.
    pub fn effective_constraints(&self, name: &str) -> Result<Vec<ConstraintExpr>, TypeError> {
        let node = self.nodes.get(name).ok_or_else(|| TypeError::UnknownType(name.to_string()))?;
        let mut out = Vec::new();
        for p in &node.parents {
            for mut c in self.effective_constraints(p)? {
                c.map_paths(&mut |path: &mut RolePath| rebase(path, p));
                out.push(c);
            }
        }
        out.extend(node.constraints.iter().cloned());
        Ok(out)
    }

    /// Built-in topology a context type inherits, if any.
    pub fn topology(&self, ctx_type: &str) -> Option<Topology> {
        Topology::ALL.into_iter().find(|t| self.subtype(ctx_type, t.context_type()))
    }

    pub fn effective_places(&self, ctx_type: &str) -> BTreeSet<PlaceKind> {
        self.ancestors
            .get(ctx_type)
            .into_iter()
            .flatten()
            .flat_map(|a| self.nodes[a].places.iter())
            .filter_map(|p| PlaceKind::from_name(p))
            .collect()
    }

    fn signatures<'a>(&'a self, ctx_type: &str, pick: fn(&'a TypeNode) -> &'a [Signature]) -> Vec<&'a Signature> {
        let mut out: Vec<&Signature> = Vec::new();
        for a in self.ancestors.get(ctx_type).into_iter().flatten() {
            for s in pick(&self.nodes[a]) {
                if !out.iter().any(|o| o.name == s.name && o.params == s.params) {
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn effective_relations(&self, ctx_type: &str) -> Vec<&Signature> {
        self.signatures(ctx_type, |n| &n.relations)
    }

    pub fn effective_operations(&self, ctx_type: &str) -> Vec<&Signature> {
        self.signatures(ctx_type, |n| &n.operations)
    }
}

/// An s-construction with its ancestors' blocks merged in, ancestors first.
#[derive(Debug, Clone)]
pub struct MergedConstruction {
    pub name: String,
    pub confidence: f64,
    pub roles: Vec<RoleDecl>,
    pub constructional: Vec<ConstructionalDecl>,
    pub constituents: Vec<ConstituentDecl>,
    pub constraints: Vec<ConstraintExpr>,
}

impl MergedConstruction {
    pub fn constituent(&self, label: &str) -> Option<&ConstituentDecl> {
        self.constituents.iter().find(|c| c.label == label)
    }

    pub fn requirement(&self, label: &str) -> Option<&ConstructionalDecl> {
        self.constructional.iter().find(|c| c.label == label)
    }
}

/// Where a resolved path starts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathRoot {
    /// The instance whose own constraints are evaluated.
    SelfInstance,
    Constituent(String),
    /// A constituent of an earlier firing named in the constructional block.
    Requirement { label: String, constituent: String },
}

/// One role hop: the slot `key` as declared on `declared`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hop {
    pub declared: String,
    pub key: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedPath {
    pub root: PathRoot,
    /// Declared type of the root instance.
    pub root_type: String,
    pub hops: Vec<Hop>,
    pub ty: RoleType,
    /// Descriptor of the final hop; `None` for a bare label.
    pub last: Option<RoleDescriptor>,
}

/// Naming scope for role paths.
#[derive(Debug, Clone, Copy)]
pub enum Scope<'a> {
    Type(&'a str),
    Construction(&'a MergedConstruction),
}

impl TypeHierarchy {
    /// Merges an s-construction's inherited blocks (textual inheritance).
    pub fn merged_construction(&self, name: &str) -> Result<MergedConstruction, TypeError> {
        let node = self.nodes.get(name).ok_or_else(|| TypeError::UnknownType(name.to_string()))?;
        let mut m = MergedConstruction {
            name: name.to_string(),
            confidence: node.confidence.unwrap_or(1.0),
            roles: Vec::new(),
            constructional: Vec::new(),
            constituents: Vec::new(),
            constraints: Vec::new(),
        };
        for a in self.topo.iter().filter(|a| self.subtype(name, a)) {
            let n = &self.nodes[a];
            m.roles.extend(n.roles.iter().cloned());
            m.constructional.extend(n.constructional.iter().cloned());
            m.constituents.extend(n.constituents.iter().cloned());
            m.constraints.extend(n.constraints.iter().cloned());
        }
        Ok(m)
    }

    fn hops_from(&self, start: &str, segments: &[Segment]) -> Result<(Vec<Hop>, Option<RoleDescriptor>), TypeError> {
        let steps = self.resolve_steps(start, segments)?;
        let mut hops = Vec::with_capacity(steps.len());
        for (i, d) in steps.iter().enumerate() {
            let declared = match i {
                0 => start.to_string(),
                _ => match &steps[i - 1].ty {
                    RoleType::Instance(t) => t.clone(),
                    RoleType::Atomic(_) => unreachable!("resolve_steps only hops through instances"),
                },
            };
            hops.push(Hop { declared, key: d.key.clone() });
        }
        Ok((hops, steps.last().cloned()))
    }

    /// Resolves a role path inside `scope`.
    pub fn resolve_in(&self, scope: Scope<'_>, path: &RolePath) -> Result<ResolvedPath, TypeError> {
        let finish = |root, root_type: &str, rest: &[Segment]| -> Result<ResolvedPath, TypeError> {
            let (hops, last) = self.hops_from(root_type, rest)?;
            let ty = match &last {
                Some(d) => d.ty.clone(),
                None => RoleType::Instance(root_type.to_string()),
            };
            Ok(ResolvedPath { root, root_type: root_type.to_string(), hops, ty, last })
        };
        match scope {
            Scope::Type(t) => {
                let rest = match path.segments.first() {
                    Some(Segment::SelfRef) => &path.segments[1..],
                    _ => &path.segments[..],
                };
                finish(PathRoot::SelfInstance, t, rest)
            }
            Scope::Construction(m) => {
                let unresolved = |seg: &str| TypeError::UnresolvedRolePath { from: m.name.clone(), segment: seg.to_string() };
                let Some(Segment::Role(label)) = path.segments.first() else {
                    return Err(unresolved(&path.segments.first().map(seg_text).unwrap_or_default()));
                };
                if let Some(c) = m.constituent(label) {
                    return finish(PathRoot::Constituent(label.clone()), &c.ty, &path.segments[1..]);
                }
                let Some(req) = m.requirement(label) else { return Err(unresolved(label)) };
                let other = self.merged_construction(&req.ty)?;
                let Some(Segment::Role(inner)) = path.segments.get(1) else {
                    return Err(unresolved(&format!("{label}.")));
                };
                let c = other.constituent(inner).ok_or_else(|| unresolved(&format!("{label}.{inner}")))?;
                let root = PathRoot::Requirement { label: label.clone(), constituent: inner.clone() };
                finish(root, &c.ty, &path.segments[2..])
            }
        }
    }
}

fn seg_text(seg: &Segment) -> String {
    match seg {
        Segment::SelfRef => "self".into(),
        Segment::Role(r) => r.clone(),
        Segment::Via(p) => format!("{p}*"),
    }
}

fn rebase(path: &mut RolePath, parent: &str) {
    let at = usize::from(path.segments.first() == Some(&Segment::SelfRef));
    path.segments.insert(at, Segment::Via(parent.to_string()));
}

fn topological_order(nodes: &BTreeMap<String, TypeNode>) -> Result<Vec<String>, TypeError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    fn visit(
        n: &str,
        nodes: &BTreeMap<String, TypeNode>,
        marks: &mut BTreeMap<String, Mark>,
        stack: &mut Vec<String>,
        out: &mut Vec<String>,
    ) -> Result<(), TypeError> {
        match marks.get(n) {
            Some(Mark::Done) => return Ok(()),
            Some(Mark::Active) => {
                let start = stack.iter().position(|s| s == n).unwrap();
                let mut cycle = stack[start..].to_vec();
                cycle.push(n.to_string());
                return Err(TypeError::InheritanceCycle(cycle));
            }
            None => {}
        }
        marks.insert(n.to_string(), Mark::Active);
        stack.push(n.to_string());
        for p in &nodes[n].parents {
            if nodes.contains_key(p) {
                visit(p, nodes, marks, stack, out)?;
            }
        }
        stack.pop();
        marks.insert(n.to_string(), Mark::Done);
        out.push(n.to_string());
        Ok(())
    }
    let mut marks = BTreeMap::new();
    let mut out = Vec::new();
    for n in nodes.keys() {
        visit(n, nodes, &mut marks, &mut Vec::new(), &mut out)?;
    }
    Ok(out)
}

/// Finds one inheritance cycle, if any, without building a hierarchy.
pub fn find_cycle(program: &Program) -> Option<Vec<String>> {
    let mut nodes = BTreeMap::new();
    for d in program.definitions() {
        nodes.insert(
            d.name.clone(),
            TypeNode {
                kind: d.kind,
                name: d.name.clone(),
                parents: d.inherits().to_vec(),
                roles: Vec::new(),
                constraints: Vec::new(),
                places: Vec::new(),
                relations: Vec::new(),
                operations: Vec::new(),
                constructional: Vec::new(),
                constituents: Vec::new(),
                confidence: None,
            },
        );
    }
    match topological_order(&nodes) {
        Err(TypeError::InheritanceCycle(c)) => Some(c),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_source;

    fn hierarchy(src: &str) -> TypeHierarchy {
        TypeHierarchy::build(&parse_source(src).unwrap()).unwrap()
    }

    fn path(s: &str) -> RolePath {
        RolePath::parse(s).unwrap()
    }

    const FIGURES: &str = "
        enum Color { red, blue }
        schema Figure roles color: Color width: Float height: Float
            constraints ge(width, 0)
        schema Rectangle inherits Figure
        schema Square inherits Rectangle
        schema Plain roles x: Integer";

    #[test]
    fn inherited_roles_are_path_qualified() {
        let h = hierarchy(FIGURES);
        let roles = h.effective_roles("Square").unwrap();
        assert!(roles.contains_key("Rectangle*Figure*color"));
        let plain = h.effective_roles("Plain").unwrap();
        assert_eq!(plain.keys().collect::<Vec<_>>(), vec!["x"]);
    }

    #[test]
    fn subtype_queries() {
        let h = hierarchy(FIGURES);
        assert!(h.is_subtype("Square", "Square").unwrap());
        assert!(h.is_subtype("Square", "Figure").unwrap());
        assert!(!h.is_subtype("Figure", "Square").unwrap());
        assert_eq!(h.is_subtype("Nope", "Figure"), Err(TypeError::UnknownType("Nope".into())));
    }

    #[test]
    fn resolve_explicit_and_bare_paths() {
        let h = hierarchy(FIGURES);
        let d = h.resolve_role_path("Square", &path("Rectangle*Figure*color")).unwrap();
        assert_eq!((d.owner.as_str(), d.key.as_str()), ("Figure", "Rectangle*Figure*color"));
        let bare = h.resolve_role_path("Square", &path("color")).unwrap();
        assert_eq!(bare.key, "Rectangle*Figure*color");
        assert!(matches!(
            h.resolve_role_path("Square", &path("nonexistent")),
            Err(TypeError::UnresolvedRolePath { .. })
        ));
    }

    #[test]
    fn sub_role_hops() {
        let h = hierarchy(
            "enum Region { left, right }
             schema SPG roles source: Region goal: Region
             schema CauseMotion roles spg: SPG",
        );
        let d = h.resolve_role_path("CauseMotion", &path("spg.source")).unwrap();
        assert_eq!((d.owner.as_str(), d.key.as_str()), ("SPG", "source"));
    }

    #[test]
    fn constraints_are_rebased() {
        let h = hierarchy(FIGURES);
        let cs = h.effective_constraints("Square").unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].to_string(), "ge(Rectangle*Figure*width, 0)");
        assert!(h.effective_constraints("Plain").unwrap().is_empty());
    }

    #[test]
    fn diamond_keeps_one_slot_per_path() {
        let h = hierarchy(
            "schema D roles r: Integer constraints ge(r, 0)
             schema B inherits D
             schema C inherits D
             schema A inherits B, C",
        );
        let keys: Vec<_> = h.effective_roles("A").unwrap().keys().cloned().collect();
        assert_eq!(keys, vec!["B*D*r", "C*D*r"]);
        assert!(matches!(h.resolve_role_path("A", &path("r")), Err(TypeError::AmbiguousRole { .. })));
        let cs: Vec<String> = h.effective_constraints("A").unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(cs, vec!["ge(B*D*r, 0)", "ge(C*D*r, 0)"]);
        assert_eq!(h.upcast_key("A", "D", "r"), None);
        assert_eq!(h.upcast_key("B", "D", "r").as_deref(), Some("D*r"));
    }

    #[test]
    fn cycles_are_detected() {
        let p = parse_source("schema A inherits B schema B inherits A").unwrap();
        assert_eq!(find_cycle(&p), Some(vec!["A".to_string(), "B".to_string(), "A".to_string()]));
    }
}

//! Parsed program structure.

use crate::syntax::lexer::Loc;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    pub items: Vec<Item>,
}

impl Program {
    pub fn definitions(&self) -> impl Iterator<Item = &Definition> {
        self.items.iter().filter_map(|i| match i {
            Item::Definition(d) => Some(d),
            Item::Enum(_) => None,
        })
    }

    pub fn enums(&self) -> impl Iterator<Item = &EnumDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Enum(e) => Some(e),
            Item::Definition(_) => None,
        })
    }

    /// Copy with every source location reset, for structural comparison.
    pub fn without_locations(&self) -> Program {
        let mut p = self.clone();
        for item in &mut p.items {
            match item {
                Item::Enum(e) => e.loc = Loc::default(),
                Item::Definition(d) => d.clear_locations(),
            }
        }
        p
    }

    pub fn append(&mut self, other: Program) {
        self.items.extend(other.items);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Enum(EnumDecl),
    Definition(Definition),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumDecl {
    pub name: String,
    pub symbols: Vec<String>,
    pub loc: Loc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum DefKind {
    Schema,
    Context,
    SConstruction,
}

impl DefKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DefKind::Schema => "schema",
            DefKind::Context => "context",
            DefKind::SConstruction => "s-construction",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Definition {
    pub kind: DefKind,
    pub name: String,
    /// `confidence <float>` header annotation (s-constructions).
    pub confidence: Option<f64>,
    pub blocks: Vec<Block>,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Block {
    Inherits(Vec<String>),
    Roles(Vec<RoleDecl>),
    Constructional(Vec<ConstructionalDecl>),
    Constituents(Vec<ConstituentDecl>),
    Constraints(Vec<ConstraintItem>),
    Places(Vec<String>),
    Relations(Vec<Signature>),
    Operations(Vec<Signature>),
}

impl Block {
    pub fn keyword(&self) -> &'static str {
        match self {
            Block::Inherits(_) => "inherits",
            Block::Roles(_) => "roles",
            Block::Constructional(_) => "constructional",
            Block::Constituents(_) => "constituents",
            Block::Constraints(_) => "constraints",
            Block::Places(_) => "places",
            Block::Relations(_) => "relations",
            Block::Operations(_) => "operations",
        }
    }
}

/// Blocks allowed for each declaration kind, in their required order.
pub fn block_order(kind: DefKind) -> &'static [&'static str] {
    match kind {
        DefKind::Schema => &["inherits", "roles", "constraints"],
        DefKind::Context => {
            &["inherits", "roles", "constraints", "places", "relations", "operations"]
        }
        DefKind::SConstruction => {
            &["inherits", "roles", "constructional", "constituents", "constraints"]
        }
    }
}

impl Definition {
    pub fn inherits(&self) -> &[String] {
        self.blocks
            .iter()
            .find_map(|b| match b {
                Block::Inherits(v) => Some(v.as_slice()),
                _ => None,
            })
            .unwrap_or(&[])
    }

    pub fn roles(&self) -> &[RoleDecl] {
        self.blocks
            .iter()
            .find_map(|b| match b {
                Block::Roles(v) => Some(v.as_slice()),
                _ => None,
            })
            .unwrap_or(&[])
    }

    pub fn constraints(&self) -> &[ConstraintItem] {
        self.blocks
            .iter()
            .find_map(|b| match b {
                Block::Constraints(v) => Some(v.as_slice()),
                _ => None,
            })
            .unwrap_or(&[])
    }

    pub fn places(&self) -> &[String] {
        self.blocks
            .iter()
            .find_map(|b| match b {
                Block::Places(v) => Some(v.as_slice()),
                _ => None,
            })
            .unwrap_or(&[])
    }

    pub fn relations(&self) -> &[Signature] {
        self.blocks
            .iter()
            .find_map(|b| match b {
                Block::Relations(v) => Some(v.as_slice()),
                _ => None,
            })
            .unwrap_or(&[])
    }

    pub fn operations(&self) -> &[Signature] {
        self.blocks
            .iter()
            .find_map(|b| match b {
                Block::Operations(v) => Some(v.as_slice()),
                _ => None,
            })
            .unwrap_or(&[])
    }

    pub fn constructional(&self) -> &[ConstructionalDecl] {
        self.blocks
            .iter()
            .find_map(|b| match b {
                Block::Constructional(v) => Some(v.as_slice()),
                _ => None,
            })
            .unwrap_or(&[])
    }

    pub fn constituents(&self) -> &[ConstituentDecl] {
        self.blocks
            .iter()
            .find_map(|b| match b {
                Block::Constituents(v) => Some(v.as_slice()),
                _ => None,
            })
            .unwrap_or(&[])
    }

    fn clear_locations(&mut self) {
        self.loc = Loc::default();
        for block in &mut self.blocks {
            match block {
                Block::Roles(v) => v.iter_mut().for_each(|r| r.loc = Loc::default()),
                Block::Constructional(v) => v.iter_mut().for_each(|r| r.loc = Loc::default()),
                Block::Constituents(v) => v.iter_mut().for_each(|r| r.loc = Loc::default()),
                Block::Constraints(v) => v.iter_mut().for_each(|r| r.loc = Loc::default()),
                Block::Relations(v) | Block::Operations(v) => {
                    v.iter_mut().for_each(|r| r.loc = Loc::default())
                }
                Block::Inherits(_) | Block::Places(_) => {}
            }
        }
    }
}

/// `[?]name : Type [@ctx]`
#[derive(Debug, Clone, PartialEq)]
pub struct RoleDecl {
    pub name: String,
    pub ty: String,
    pub mutable: bool,
    pub situated_in: Option<String>,
    pub loc: Loc,
}

/// Relation or operation signature: `name(place, ...) |-> result`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    pub name: String,
    pub params: Vec<String>,
    pub result: String,
    pub loc: Loc,
}

/// `[not] label : SConstruction`
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionalDecl {
    pub label: String,
    pub ty: String,
    pub negative: bool,
    pub loc: Loc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum Direction {
    In,
    Out,
    InOut,
}

impl Direction {
    pub fn is_input(self) -> bool {
        matches!(self, Direction::In | Direction::InOut)
    }

    pub fn marker(self) -> &'static str {
        match self {
            Direction::In => "/I",
            Direction::Out => "/O",
            Direction::InOut => "/IO",
        }
    }
}

/// `label : Type [@ctx] /I|/O|/IO`
#[derive(Debug, Clone, PartialEq)]
pub struct ConstituentDecl {
    pub label: String,
    pub ty: String,
    pub situated_in: Option<String>,
    pub direction: Direction,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintItem {
    pub expr: ConstraintExpr,
    pub loc: Loc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Not,
    Nand,
}

impl BoolOp {
    pub fn keyword(self) -> &'static str {
        match self {
            BoolOp::And => "AND",
            BoolOp::Or => "OR",
            BoolOp::Not => "NOT",
            BoolOp::Nand => "NAND",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintExpr {
    Bool { op: BoolOp, args: Vec<ConstraintExpr> },
    /// `role <- value`
    Filler { role: RolePath, value: ValueExpr },
    /// `role <-> role` or `role <-> fn(role)`
    Identify { left: RolePath, right: IdentSource },
    /// `role = role`: both denote the same instance.
    Equal { left: RolePath, right: RolePath },
    /// `pred(arg, ...)`
    Predicate { name: String, args: Vec<Operand> },
    /// `ctx.relation(place, ...)`
    Relation { context: String, relation: String, args: Vec<PlaceExpr> },
    /// `child C parent`: the right-hand side derives the left-hand side.
    Parent { child: RolePath, parent: RolePath },
    /// `OUT(constituent)`
    Out { constituent: String },
}

impl ConstraintExpr {
    /// Every role path mentioned, in source order.
    pub fn paths(&self) -> Vec<&RolePath> {
        let mut out = Vec::new();
        self.collect_paths(&mut out);
        out
    }

    fn collect_paths<'a>(&'a self, out: &mut Vec<&'a RolePath>) {
        match self {
            ConstraintExpr::Bool { args, .. } => args.iter().for_each(|a| a.collect_paths(out)),
            ConstraintExpr::Filler { role, .. } => out.push(role),
            ConstraintExpr::Identify { left, right } => {
                out.push(left);
                match right {
                    IdentSource::Path(p) | IdentSource::Call { arg: p, .. } => out.push(p),
                }
            }
            ConstraintExpr::Equal { left, right } => {
                out.push(left);
                out.push(right);
            }
            ConstraintExpr::Predicate { args, .. } => {
                for a in args {
                    if let Operand::Path(p) = a {
                        out.push(p);
                    }
                }
            }
            ConstraintExpr::Relation { args, .. } => args.iter().for_each(|a| a.collect_paths(out)),
            ConstraintExpr::Parent { child, parent } => {
                out.push(child);
                out.push(parent);
            }
            ConstraintExpr::Out { .. } => {}
        }
    }

    /// Context labels used by relations and operations.
    pub fn context_labels(&self) -> Vec<&str> {
        fn place<'a>(p: &'a PlaceExpr, out: &mut Vec<&'a str>) {
            if let PlaceExpr::Operation { context, args, .. } = p {
                out.push(context);
                args.iter().for_each(|a| place(a, out));
            }
        }
        let mut out = Vec::new();
        match self {
            ConstraintExpr::Bool { args, .. } => {
                args.iter().for_each(|a| out.extend(a.context_labels()))
            }
            ConstraintExpr::Relation { context, args, .. } => {
                out.push(context.as_str());
                args.iter().for_each(|a| place(a, &mut out));
            }
            _ => {}
        }
        out
    }

    pub fn has_muted(&self) -> bool {
        self.paths().iter().any(|p| p.muted)
    }

    /// Applies `f` to every role path in place.
    pub fn map_paths(&mut self, f: &mut dyn FnMut(&mut RolePath)) {
        match self {
            ConstraintExpr::Bool { args, .. } => args.iter_mut().for_each(|a| a.map_paths(f)),
            ConstraintExpr::Filler { role, .. } => f(role),
            ConstraintExpr::Identify { left, right } => {
                f(left);
                match right {
                    IdentSource::Path(p) | IdentSource::Call { arg: p, .. } => f(p),
                }
            }
            ConstraintExpr::Equal { left, right } => {
                f(left);
                f(right);
            }
            ConstraintExpr::Predicate { args, .. } => {
                for a in args {
                    if let Operand::Path(p) = a {
                        f(p);
                    }
                }
            }
            ConstraintExpr::Relation { args, .. } => args.iter_mut().for_each(|a| a.map_paths(f)),
            ConstraintExpr::Parent { child, parent } => {
                f(child);
                f(parent);
            }
            ConstraintExpr::Out { .. } => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValueExpr {
    Literal(Value),
    Call { function: String, args: Vec<Value> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum IdentSource {
    Path(RolePath),
    Call { function: String, arg: RolePath },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    Path(RolePath),
    Literal(Value),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlaceExpr {
    Path(RolePath),
    Operation { context: String, operation: String, args: Vec<PlaceExpr> },
}

impl PlaceExpr {
    fn collect_paths<'a>(&'a self, out: &mut Vec<&'a RolePath>) {
        match self {
            PlaceExpr::Path(p) => out.push(p),
            PlaceExpr::Operation { args, .. } => args.iter().for_each(|a| a.collect_paths(out)),
        }
    }

    fn map_paths(&mut self, f: &mut dyn FnMut(&mut RolePath)) {
        match self {
            PlaceExpr::Path(p) => f(p),
            PlaceExpr::Operation { args, .. } => args.iter_mut().for_each(|a| a.map_paths(f)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Segment {
    SelfRef,
    /// A role name (or, as the first segment inside an s-construction, a label).
    Role(String),
    /// `Parent*` inheritance hop.
    Via(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RolePath {
    /// `?path`: read the value after the s-construction is applied.
    pub muted: bool,
    pub segments: Vec<Segment>,
}

impl RolePath {
    pub fn new(segments: Vec<Segment>) -> Self {
        RolePath { muted: false, segments }
    }

    /// Parses the dotted/starred textual form used in tests and tools.
    pub fn parse(text: &str) -> Option<RolePath> {
        let tokens = crate::syntax::lexer::tokenize(text).ok()?;
        let mut parser = crate::syntax::parser::Parser::new(&tokens);
        let path = parser.role_path().ok()?;
        parser.at_end().then_some(path)
    }

    pub fn first_label(&self) -> Option<&str> {
        match self.segments.first()? {
            Segment::Role(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_bare_label(&self) -> bool {
        self.segments.len() == 1 && matches!(self.segments[0], Segment::Role(_))
    }
}

//! Canonical concrete syntax for parsed programs.

use std::fmt::{self, Display, Formatter, Write};

use crate::syntax::ast::*;

fn join<T: Display>(items: &[T], sep: &str) -> String {
    let mut s = String::new();
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            s.push_str(sep);
        }
        write!(s, "{item}").unwrap();
    }
    s
}

impl Display for Program {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            match item {
                Item::Enum(e) => writeln!(f, "enum {} {{ {} }}", e.name, e.symbols.join(", "))?,
                Item::Definition(d) => write!(f, "{d}")?,
            }
        }
        Ok(())
    }
}

impl Display for Definition {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.keyword(), self.name)?;
        if let Some(c) = self.confidence {
            write!(f, " confidence {c:?}")?;
        }
        writeln!(f)?;
        for block in &self.blocks {
            match block {
                Block::Inherits(names) => writeln!(f, "  inherits {}", names.join(", "))?,
                Block::Places(places) => writeln!(f, "  places {}", places.join(", "))?,
                Block::Roles(roles) => {
                    writeln!(f, "  roles")?;
                    for r in roles {
                        writeln!(f, "    {r}")?;
                    }
                }
                Block::Relations(sigs) | Block::Operations(sigs) => {
                    writeln!(f, "  {}", block.keyword())?;
                    for s in sigs {
                        writeln!(f, "    {}({}) |-> {}", s.name, s.params.join(", "), s.result)?;
                    }
                }
                Block::Constructional(decls) => {
                    writeln!(f, "  constructional")?;
                    for d in decls {
                        let neg = if d.negative { "not " } else { "" };
                        writeln!(f, "    {neg}{}: {}", d.label, d.ty)?;
                    }
                }
                Block::Constituents(decls) => {
                    writeln!(f, "  constituents")?;
                    for d in decls {
                        write!(f, "    {}: {}", d.label, d.ty)?;
                        if let Some(ctx) = &d.situated_in {
                            write!(f, " @{ctx}")?;
                        }
                        writeln!(f, " {}", d.direction.marker())?;
                    }
                }
                Block::Constraints(items) => {
                    writeln!(f, "  constraints")?;
                    for c in items {
                        writeln!(f, "    {}", c.expr)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Display for RoleDecl {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.mutable {
            f.write_str("?")?;
        }
        write!(f, "{}: {}", self.name, self.ty)?;
        if let Some(ctx) = &self.situated_in {
            write!(f, " @{ctx}")?;
        }
        Ok(())
    }
}

impl Display for RolePath {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.muted {
            f.write_str("?")?;
        }
        let mut prev_via = true;
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 && !prev_via {
                f.write_str(".")?;
            }
            match seg {
                Segment::SelfRef => {
                    f.write_str("self")?;
                    prev_via = false;
                }
                Segment::Role(r) => {
                    f.write_str(r)?;
                    prev_via = false;
                }
                Segment::Via(p) => {
                    write!(f, "{p}*")?;
                    prev_via = true;
                }
            }
        }
        Ok(())
    }
}

impl Display for ValueExpr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ValueExpr::Literal(v) => write!(f, "{v}"),
            ValueExpr::Call { function, args } => write!(f, "{function}({})", join(args, ", ")),
        }
    }
}

impl Display for Operand {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Path(p) => write!(f, "{p}"),
            Operand::Literal(v) => write!(f, "{v}"),
        }
    }
}

impl Display for PlaceExpr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            PlaceExpr::Path(p) => write!(f, "{p}"),
            PlaceExpr::Operation { context, operation, args } => {
                write!(f, "{context}.{operation}({})", join(args, ", "))
            }
        }
    }
}

impl Display for ConstraintExpr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintExpr::Bool { op, args } => write!(f, "{}({})", op.keyword(), join(args, ", ")),
            ConstraintExpr::Filler { role, value } => write!(f, "{role} <- {value}"),
            ConstraintExpr::Identify { left, right } => match right {
                IdentSource::Path(p) => write!(f, "{left} <-> {p}"),
                IdentSource::Call { function, arg } => write!(f, "{left} <-> {function}({arg})"),
            },
            ConstraintExpr::Equal { left, right } => write!(f, "{left} = {right}"),
            ConstraintExpr::Predicate { name, args } => write!(f, "{name}({})", join(args, ", ")),
            ConstraintExpr::Relation { context, relation, args } => {
                write!(f, "{context}.{relation}({})", join(args, ", "))
            }
            ConstraintExpr::Parent { child, parent } => write!(f, "{child} C {parent}"),
            ConstraintExpr::Out { constituent } => write!(f, "OUT({constituent})"),
        }
    }
}

use thiserror::Error;

use crate::syntax::ast::*;
use crate::syntax::lexer::{LiteralKind, Loc, Token, TokenKind};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("{loc}: syntax error in {production}: expected {}, found {found}", expected.join(" | "))]
    SyntaxError { loc: Loc, production: &'static str, expected: Vec<String>, found: String },
    #[error("{loc}: block `{block}` repeated in {definition}")]
    DuplicateBlock { loc: Loc, definition: String, block: String },
}

impl ParseError {
    pub fn loc(&self) -> Loc {
        match self {
            ParseError::SyntaxError { loc, .. } | ParseError::DuplicateBlock { loc, .. } => *loc,
        }
    }
}

type PResult<T> = Result<T, ParseError>;

const DECL_KEYWORDS: &[&str] = &["schema", "context", "s-construction", "enum"];
const BLOCK_KEYWORDS: &[&str] = &[
    "inherits",
    "roles",
    "constructional",
    "constituents",
    "constraints",
    "places",
    "relations",
    "operations",
];

/// Parses a token stream into a program.
pub fn parse_program(tokens: &[Token]) -> PResult<Program> {
    let mut p = Parser::new(tokens);
    let mut items = Vec::new();
    while !p.at_end() {
        items.push(p.item()?);
    }
    Ok(Program { items })
}

pub struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

impl<'t> Parser<'t> {
    pub fn new(tokens: &'t [Token]) -> Self {
        Parser { tokens, pos: 0 }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, ahead: usize) -> Option<&'t Token> {
        self.tokens.get(self.pos + ahead)
    }

    fn loc(&self) -> Loc {
        self.peek()
            .or_else(|| self.tokens.last())
            .map(|t| t.loc)
            .unwrap_or_default()
    }

    fn error<T>(&self, production: &'static str, expected: &[&str]) -> PResult<T> {
        Err(ParseError::SyntaxError {
            loc: self.loc(),
            production,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().map_or("end of input".to_string(), |t| format!("`{}`", t.text)),
        })
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn eat_symbol(&mut self, sym: &str) -> bool {
        if self.peek().is_some_and(|t| t.is_symbol(sym)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek().is_some_and(|t| t.is_keyword(kw)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_symbol(&mut self, sym: &'static str, production: &'static str) -> PResult<()> {
        if self.eat_symbol(sym) {
            Ok(())
        } else {
            self.error(production, &[sym])
        }
    }

    fn ident(&mut self, production: &'static str) -> PResult<String> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => Ok(self.bump().text.clone()),
            _ => self.error(production, &["identifier"]),
        }
    }

    fn at_ident(&self) -> bool {
        self.peek().is_some_and(|t| t.kind == TokenKind::Identifier)
    }

    /// True at a token that ends the current block.
    fn at_block_end(&self) -> bool {
        match self.peek() {
            None => true,
            Some(t) if t.kind == TokenKind::Keyword => {
                DECL_KEYWORDS.contains(&t.text.as_str()) || BLOCK_KEYWORDS.contains(&t.text.as_str())
            }
            _ => false,
        }
    }

    fn item(&mut self) -> PResult<Item> {
        let t = self.peek().unwrap();
        let loc = t.loc;
        if self.eat_keyword("enum") {
            let name = self.ident("enum declaration")?;
            self.expect_symbol("{", "enum declaration")?;
            let mut symbols = Vec::new();
            while !self.eat_symbol("}") {
                symbols.push(self.ident("enum declaration")?);
                if !self.eat_symbol(",") && !self.peek().is_some_and(|t| t.is_symbol("}")) {
                    return self.error("enum declaration", &[",", "}"]);
                }
            }
            return Ok(Item::Enum(EnumDecl { name, symbols, loc }));
        }
        let kind = if self.eat_keyword("schema") {
            DefKind::Schema
        } else if self.eat_keyword("context") {
            DefKind::Context
        } else if self.eat_keyword("s-construction") {
            DefKind::SConstruction
        } else {
            return self.error("program", &["schema", "context", "s-construction", "enum"]);
        };
        let name = self.ident("declaration header")?;
        let confidence = if self.eat_keyword("confidence") { Some(self.number("confidence")?) } else { None };
        let order = block_order(kind);
        let mut next_slot = 0;
        let mut blocks: Vec<Block> = Vec::new();
        while let Some(t) = self.peek() {
            if t.kind != TokenKind::Keyword || DECL_KEYWORDS.contains(&t.text.as_str()) {
                break;
            }
            let kw = t.text.as_str();
            let Some(slot) = order.iter().position(|b| *b == kw) else {
                return self.error("declaration body", order);
            };
            if blocks.iter().any(|b| b.keyword() == kw) {
                return Err(ParseError::DuplicateBlock { loc: t.loc, definition: name, block: kw.to_string() });
            }
            if slot < next_slot {
                return self.error("declaration body", &order[next_slot..]);
            }
            next_slot = slot + 1;
            self.bump();
            blocks.push(self.block(kw)?);
        }
        Ok(Item::Definition(Definition { kind, name, confidence, blocks, loc }))
    }

    fn number(&mut self, production: &'static str) -> PResult<f64> {
        match self.peek() {
            Some(t) if matches!(t.kind, TokenKind::Literal(LiteralKind::Int | LiteralKind::Float)) => {
                Ok(self.bump().text.parse().unwrap())
            }
            _ => self.error(production, &["number"]),
        }
    }

    fn block(&mut self, kw: &str) -> PResult<Block> {
        Ok(match kw {
            "inherits" => {
                let mut names = vec![self.ident("inherits")?];
                while self.eat_symbol(",") {
                    names.push(self.ident("inherits")?);
                }
                Block::Inherits(names)
            }
            "roles" => {
                let mut roles = Vec::new();
                while !self.at_block_end() {
                    roles.push(self.role_decl()?);
                    self.eat_symbol(",");
                }
                Block::Roles(roles)
            }
            "places" => {
                let mut places = Vec::new();
                while !self.at_block_end() {
                    places.push(self.ident("places")?);
                    self.eat_symbol(",");
                }
                Block::Places(places)
            }
            "relations" | "operations" => {
                let mut sigs = Vec::new();
                while !self.at_block_end() {
                    sigs.push(self.signature()?);
                }
                if kw == "relations" {
                    Block::Relations(sigs)
                } else {
                    Block::Operations(sigs)
                }
            }
            "constructional" => {
                let mut decls = Vec::new();
                while !self.at_block_end() {
                    let loc = self.loc();
                    let negative = self.eat_keyword("not");
                    let label = self.ident("constructional")?;
                    self.expect_symbol(":", "constructional")?;
                    let ty = self.ident("constructional")?;
                    decls.push(ConstructionalDecl { label, ty, negative, loc });
                    self.eat_symbol(",");
                }
                Block::Constructional(decls)
            }
            "constituents" => {
                let mut decls = Vec::new();
                while !self.at_block_end() {
                    decls.push(self.constituent()?);
                    self.eat_symbol(",");
                }
                Block::Constituents(decls)
            }
            "constraints" => {
                let mut items = Vec::new();
                while !self.at_block_end() {
                    let loc = self.loc();
                    let expr = self.constraint()?;
                    items.push(ConstraintItem { expr, loc });
                    self.eat_symbol(",");
                }
                Block::Constraints(items)
            }
            _ => unreachable!("block keyword {kw}"),
        })
    }

    fn role_decl(&mut self) -> PResult<RoleDecl> {
        let loc = self.loc();
        let mutable = self.eat_symbol("?");
        let name = self.ident("role declaration")?;
        self.expect_symbol(":", "role declaration")?;
        let ty = self.ident("role declaration")?;
        let situated_in = if self.eat_symbol("@") { Some(self.ident("role declaration")?) } else { None };
        Ok(RoleDecl { name, ty, mutable, situated_in, loc })
    }

    fn signature(&mut self) -> PResult<Signature> {
        let loc = self.loc();
        let name = self.ident("signature")?;
        self.expect_symbol("(", "signature")?;
        let mut params = Vec::new();
        if !self.eat_symbol(")") {
            loop {
                params.push(self.ident("signature")?);
                if self.eat_symbol(")") {
                    break;
                }
                self.expect_symbol(",", "signature")?;
            }
        }
        self.expect_symbol("|->", "signature")?;
        let result = self.ident("signature")?;
        Ok(Signature { name, params, result, loc })
    }

    fn constituent(&mut self) -> PResult<ConstituentDecl> {
        let loc = self.loc();
        let label = self.ident("constituent")?;
        self.expect_symbol(":", "constituent")?;
        let ty = self.ident("constituent")?;
        let situated_in = if self.eat_symbol("@") { Some(self.ident("constituent")?) } else { None };
        self.expect_symbol("/", "constituent")?;
        let first = self.ident("constituent")?;
        let direction = match first.as_str() {
            "I" if self.eat_symbol("/") => match self.ident("constituent")?.as_str() {
                "O" => Direction::InOut,
                _ => return self.error("constituent", &["O"]),
            },
            "I" => Direction::In,
            "O" => Direction::Out,
            "IO" => Direction::InOut,
            _ => {
                self.pos -= 1;
                return self.error("constituent", &["I", "O", "IO"]);
            }
        };
        Ok(ConstituentDecl { label, ty, situated_in, direction, loc })
    }

    fn literal(&mut self) -> Option<Value> {
        let t = self.peek()?;
        let v = match t.kind {
            TokenKind::Literal(LiteralKind::Str) => Value::Str(t.text.clone()),
            TokenKind::Literal(LiteralKind::Int) => Value::Int(t.text.parse().ok()?),
            TokenKind::Literal(LiteralKind::Float) => Value::Float(t.text.parse().ok()?),
            TokenKind::Literal(LiteralKind::Bool) => Value::Bool(t.text == "true"),
            _ => return None,
        };
        self.pos += 1;
        Some(v)
    }

    /// `[?] (self | name) ( ('.' | '*') name )*` where a name followed by `*` is an inheritance hop.
    pub fn role_path(&mut self) -> PResult<RolePath> {
        let muted = self.eat_symbol("?");
        let mut segments = Vec::new();
        if self.eat_keyword("self") {
            segments.push(Segment::SelfRef);
            if !self.eat_symbol(".") {
                return Ok(RolePath { muted, segments });
            }
        }
        loop {
            let name = self.ident("role path")?;
            if self.eat_symbol("*") {
                segments.push(Segment::Via(name));
                continue;
            }
            segments.push(Segment::Role(name));
            // `.` continues the path unless it introduces a call like `ctx.op(`.
            if self.peek().is_some_and(|t| t.is_symbol("."))
                && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Identifier)
            {
                self.pos += 1;
                continue;
            }
            break;
        }
        Ok(RolePath { muted, segments })
    }

    fn constraint(&mut self) -> PResult<ConstraintExpr> {
        let Some(t) = self.peek() else {
            return self.error("constraint", &["constraint"]);
        };
        if self.eat_keyword("OUT") {
            self.expect_symbol("(", "OUT constraint")?;
            let constituent = self.ident("OUT constraint")?;
            self.expect_symbol(")", "OUT constraint")?;
            return Ok(ConstraintExpr::Out { constituent });
        }
        let op = match t.text.as_str() {
            "AND" if t.kind == TokenKind::Keyword => Some(BoolOp::And),
            "OR" if t.kind == TokenKind::Keyword => Some(BoolOp::Or),
            "NOT" if t.kind == TokenKind::Keyword => Some(BoolOp::Not),
            "NAND" if t.kind == TokenKind::Keyword => Some(BoolOp::Nand),
            _ => None,
        };
        if let Some(op) = op {
            self.bump();
            self.expect_symbol("(", "boolean operation")?;
            let mut args = vec![self.constraint()?];
            while self.eat_symbol(",") {
                args.push(self.constraint()?);
            }
            self.expect_symbol(")", "boolean operation")?;
            return Ok(ConstraintExpr::Bool { op, args });
        }

        let path = self.role_path()?;
        if self.peek().is_some_and(|t| t.is_symbol("(")) {
            return self.call_constraint(path);
        }
        if self.eat_symbol("<->") {
            let right = if self.at_ident() && self.peek_at(1).is_some_and(|t| t.is_symbol("(")) {
                let function = self.ident("identification")?;
                self.expect_symbol("(", "identification")?;
                let arg = self.role_path()?;
                self.expect_symbol(")", "identification")?;
                IdentSource::Call { function, arg }
            } else {
                IdentSource::Path(self.role_path()?)
            };
            return Ok(ConstraintExpr::Identify { left: path, right });
        }
        if self.eat_symbol("<-") {
            let value = self.value_expr()?;
            return Ok(ConstraintExpr::Filler { role: path, value });
        }
        if self.eat_symbol("=") {
            let right = self.role_path()?;
            return Ok(ConstraintExpr::Equal { left: path, right });
        }
        if self.peek().is_some_and(|t| t.kind == TokenKind::Identifier && t.text == "C") {
            self.bump();
            let parent = self.role_path()?;
            return Ok(ConstraintExpr::Parent { child: path, parent });
        }
        self.error("constraint", &["<-", "<->", "=", "C", "("])
    }

    fn value_expr(&mut self) -> PResult<ValueExpr> {
        if let Some(v) = self.literal() {
            return Ok(ValueExpr::Literal(v));
        }
        let name = self.ident("filler value")?;
        if !self.eat_symbol("(") {
            return Ok(ValueExpr::Literal(Value::Sym(name)));
        }
        let mut args = Vec::new();
        if !self.eat_symbol(")") {
            loop {
                match self.literal() {
                    Some(v) => args.push(v),
                    None if self.at_ident() => args.push(Value::Sym(self.bump().text.clone())),
                    None => return self.error("function argument", &["atomic value"]),
                }
                if self.eat_symbol(")") {
                    break;
                }
                self.expect_symbol(",", "function call")?;
            }
        }
        Ok(ValueExpr::Call { function: name, args })
    }

    fn call_constraint(&mut self, head: RolePath) -> PResult<ConstraintExpr> {
        let names: Option<Vec<&str>> = head
            .segments
            .iter()
            .map(|s| match s {
                Segment::Role(r) => Some(r.as_str()),
                _ => None,
            })
            .collect();
        match (head.muted, names.as_deref()) {
            (false, Some([name])) => {
                let name = name.to_string();
                self.expect_symbol("(", "predicate")?;
                let mut args = Vec::new();
                if !self.eat_symbol(")") {
                    loop {
                        args.push(match self.literal() {
                            Some(v) => Operand::Literal(v),
                            None => Operand::Path(self.role_path()?),
                        });
                        if self.eat_symbol(")") {
                            break;
                        }
                        self.expect_symbol(",", "predicate")?;
                    }
                }
                Ok(ConstraintExpr::Predicate { name, args })
            }
            (false, Some([ctx, rel])) => {
                let (context, relation) = (ctx.to_string(), rel.to_string());
                let args = self.place_args()?;
                Ok(ConstraintExpr::Relation { context, relation, args })
            }
            _ => self.error("constraint", &["predicate(...)", "context.relation(...)"]),
        }
    }

    fn place_args(&mut self) -> PResult<Vec<PlaceExpr>> {
        self.expect_symbol("(", "place list")?;
        let mut args = Vec::new();
        if self.eat_symbol(")") {
            return Ok(args);
        }
        loop {
            args.push(self.place_expr()?);
            if self.eat_symbol(")") {
                return Ok(args);
            }
            self.expect_symbol(",", "place list")?;
        }
    }

    fn place_expr(&mut self) -> PResult<PlaceExpr> {
        let path = self.role_path()?;
        if !self.peek().is_some_and(|t| t.is_symbol("(")) {
            return Ok(PlaceExpr::Path(path));
        }
        match path.segments.as_slice() {
            [Segment::Role(ctx), Segment::Role(op)] if !path.muted => {
                let (context, operation) = (ctx.clone(), op.clone());
                let args = self.place_args()?;
                Ok(PlaceExpr::Operation { context, operation, args })
            }
            _ => self.error("place expression", &["context.operation(...)"]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::lexer::tokenize;

    fn parse(src: &str) -> PResult<Program> {
        parse_program(&tokenize(src).unwrap())
    }

    #[test]
    fn empty_program() {
        assert_eq!(parse("").unwrap().items.len(), 0);
        assert_eq!(parse("// only a comment").unwrap().items.len(), 0);
    }

    #[test]
    fn schema_skeleton_has_three_blocks() {
        let p = parse(
            "schema Square inherits Rectangle
               roles ?side: Float  frame: Frame @ctx
               constraints Rectangle*Figure*width <-> Rectangle*Figure*height",
        )
        .unwrap();
        let d = p.definitions().next().unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert!(d.roles()[0].mutable);
        assert_eq!(d.roles()[1].situated_in.as_deref(), Some("ctx"));
        match &d.constraints()[0].expr {
            ConstraintExpr::Identify { left, .. } => assert_eq!(
                left.segments,
                vec![
                    Segment::Via("Rectangle".into()),
                    Segment::Via("Figure".into()),
                    Segment::Role("width".into())
                ]
            ),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn predicate_over_two_paths() {
        let p = parse(
            "s-construction CxMove
               constituents m: CauseMotion /O
               constraints neq(m.spg.source, m.spg.goal)",
        )
        .unwrap();
        let d = p.definitions().next().unwrap();
        match &d.constraints()[0].expr {
            ConstraintExpr::Predicate { name, args } => {
                assert_eq!(name, "neq");
                assert_eq!(args.len(), 2);
                assert!(matches!(&args[0], Operand::Path(p) if p.segments.len() == 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn s_construction_forms() {
        let p = parse(
            "s-construction Cx confidence 0.9
               constructional prev: CxA  not bad: CxB
               constituents
                 f: Form /I
                 w: Word @f /I/O
                 r: Thing @f /O
               constraints
                 ?w.step <- counting
                 r C w
                 f.before(w, f.span(w, w))
                 OUT(w)
                 NAND(w.x <- 1, w.y = r.z)",
        )
        .unwrap();
        let d = p.definitions().next().unwrap();
        assert_eq!(d.confidence, Some(0.9));
        assert!(d.constructional()[1].negative);
        assert_eq!(d.constituents()[1].direction, Direction::InOut);
        let exprs: Vec<_> = d.constraints().iter().map(|c| &c.expr).collect();
        assert!(matches!(exprs[0], ConstraintExpr::Filler { role, .. } if role.muted));
        assert!(matches!(exprs[1], ConstraintExpr::Parent { .. }));
        assert!(matches!(exprs[2], ConstraintExpr::Relation { args, .. }
            if matches!(&args[1], PlaceExpr::Operation { operation, .. } if operation == "span")));
        assert!(matches!(exprs[3], ConstraintExpr::Out { constituent } if constituent == "w"));
        assert!(matches!(exprs[4], ConstraintExpr::Bool { op: BoolOp::Nand, args } if args.len() == 2));
    }

    #[test]
    fn duplicate_block_is_reported() {
        let err = parse("schema A roles x: Integer roles y: Integer").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateBlock { ref block, .. } if block == "roles"));
    }

    #[test]
    fn misordered_block_is_a_syntax_error() {
        let err = parse("schema A constraints eq(x, 1) roles x: Integer").unwrap_err();
        assert!(matches!(err, ParseError::SyntaxError { .. }));
    }

    #[test]
    fn syntax_error_names_expected_tokens() {
        let err = parse("schema A roles x Integer").unwrap_err();
        match err {
            ParseError::SyntaxError { loc, expected, .. } => {
                assert_eq!(loc, Loc { line: 1, column: 18 });
                assert_eq!(expected, vec![":".to_string()]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn context_signatures() {
        let p = parse(
            "context Form inherits LinearContext
               places point, segment
               relations before(point, point) |-> Boolean
               operations intersection(segment, segment) |-> segment",
        )
        .unwrap();
        let d = p.definitions().next().unwrap();
        assert_eq!(d.places(), ["point", "segment"]);
        assert_eq!(d.relations()[0].result, "Boolean");
        assert_eq!(d.operations()[0].params, ["segment", "segment"]);
    }
}

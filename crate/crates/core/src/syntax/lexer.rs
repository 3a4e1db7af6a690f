use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// One-based source position.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Loc {
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralKind {
    Str,
    Int,
    Float,
    Bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Keyword,
    Identifier,
    Symbol,
    Literal(LiteralKind),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Source characters; string literals hold their unescaped contents.
    pub text: String,
    pub loc: Loc,
}

impl Token {
    pub fn is_keyword(&self, kw: &str) -> bool {
        self.kind == TokenKind::Keyword && self.text == kw
    }

    pub fn is_symbol(&self, sym: &str) -> bool {
        self.kind == TokenKind::Symbol && self.text == sym
    }
}

pub const KEYWORDS: &[&str] = &[
    "schema",
    "context",
    "s-construction",
    "enum",
    "inherits",
    "roles",
    "constraints",
    "places",
    "relations",
    "operations",
    "constructional",
    "constituents",
    "confidence",
    "OUT",
    "self",
    "not",
    "AND",
    "OR",
    "NOT",
    "NAND",
];

const SYMBOLS: &[&str] = &[
    "<->", "|->", "<-", "(", ")", ",", ":", ".", "*", "?", "@", "/", "=", "{", "}",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LexError {
    #[error("{loc}: unterminated string literal")]
    UnterminatedLiteral { loc: Loc },
    #[error("{loc}: illegal character {ch:?}")]
    IllegalCharacter { loc: Loc, ch: char },
}

impl LexError {
    pub fn loc(&self) -> Loc {
        match self {
            LexError::UnterminatedLiteral { loc } | LexError::IllegalCharacter { loc, .. } => *loc,
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    column: u32,
}

impl Cursor {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn loc(&self) -> Loc {
        Loc { line: self.line, column: self.column }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek(i) == Some(c))
    }
}

/// Splits program text into tokens. `//` comments and whitespace are dropped.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor { chars: source.chars().collect(), pos: 0, line: 1, column: 1 };
    let mut out = Vec::new();

    while let Some(c) = cur.peek(0) {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if cur.starts_with("//") {
            while let Some(c) = cur.peek(0) {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }

        let loc = cur.loc();

        if c == '"' {
            cur.bump();
            let mut text = String::new();
            loop {
                match cur.bump() {
                    None | Some('\n') => return Err(LexError::UnterminatedLiteral { loc }),
                    Some('"') => break,
                    Some('\\') => match cur.bump() {
                        Some('n') => text.push('\n'),
                        Some('t') => text.push('\t'),
                        Some(other @ ('"' | '\\')) => text.push(other),
                        Some(other) => {
                            text.push('\\');
                            text.push(other);
                        }
                        None => return Err(LexError::UnterminatedLiteral { loc }),
                    },
                    Some(ch) => text.push(ch),
                }
            }
            out.push(Token { kind: TokenKind::Literal(LiteralKind::Str), text, loc });
            continue;
        }

        let negative_number = c == '-' && cur.peek(1).is_some_and(|d| d.is_ascii_digit());
        if c.is_ascii_digit() || negative_number {
            let mut text = String::new();
            if negative_number {
                text.push(cur.bump().unwrap());
            }
            let mut kind = LiteralKind::Int;
            while let Some(d) = cur.peek(0) {
                if d.is_ascii_digit() {
                    text.push(d);
                    cur.bump();
                } else if d == '.'
                    && kind == LiteralKind::Int
                    && cur.peek(1).is_some_and(|e| e.is_ascii_digit())
                {
                    kind = LiteralKind::Float;
                    text.push(d);
                    cur.bump();
                } else {
                    break;
                }
            }
            out.push(Token { kind: TokenKind::Literal(kind), text, loc });
            continue;
        }

        if is_ident_start(c) {
            let mut text = String::new();
            while let Some(d) = cur.peek(0) {
                if !is_ident_continue(d) {
                    break;
                }
                // `x->` ends the name before the arrow.
                if d == '-' && cur.peek(1) == Some('>') {
                    break;
                }
                text.push(d);
                cur.bump();
            }
            let kind = if text == "true" || text == "false" {
                TokenKind::Literal(LiteralKind::Bool)
            } else if KEYWORDS.contains(&text.as_str()) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            };
            out.push(Token { kind, text, loc });
            continue;
        }

        if let Some(sym) = SYMBOLS.iter().find(|s| cur.starts_with(s)) {
            for _ in 0..sym.chars().count() {
                cur.bump();
            }
            out.push(Token { kind: TokenKind::Symbol, text: (*sym).to_string(), loc });
            continue;
        }

        return Err(LexError::IllegalCharacter { loc, ch: c });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src).unwrap().into_iter().map(|t| (t.kind, t.text)).collect()
    }

    #[test]
    fn schema_header() {
        assert_eq!(
            kinds("schema Figure"),
            vec![
                (TokenKind::Keyword, "schema".into()),
                (TokenKind::Identifier, "Figure".into())
            ]
        );
    }

    #[test]
    fn filler_constraint() {
        assert_eq!(
            kinds("color <- \"red\""),
            vec![
                (TokenKind::Identifier, "color".into()),
                (TokenKind::Symbol, "<-".into()),
                (TokenKind::Literal(LiteralKind::Str), "red".into()),
            ]
        );
    }

    #[test]
    fn relation_signature() {
        let toks = tokenize("before(point, point) |-> Boolean").unwrap();
        assert_eq!(toks.len(), 8);
        let last = toks.last().unwrap();
        assert_eq!((last.kind, last.text.as_str()), (TokenKind::Identifier, "Boolean"));
        assert!(toks[6].is_symbol("|->"));
    }

    #[test]
    fn hyphenated_names_and_arrows() {
        let toks = kinds("s-construction Source-Path-Goal a<->b -3 2.5");
        assert_eq!(toks[0], (TokenKind::Keyword, "s-construction".into()));
        assert_eq!(toks[1].1, "Source-Path-Goal");
        assert_eq!(toks[3], (TokenKind::Symbol, "<->".into()));
        assert_eq!(toks[5], (TokenKind::Literal(LiteralKind::Int), "-3".into()));
        assert_eq!(toks[6], (TokenKind::Literal(LiteralKind::Float), "2.5".into()));
    }

    #[test]
    fn comments_are_skipped_and_locations_increase() {
        let toks = tokenize("schema A // trailing\n  roles x: Integer").unwrap();
        assert_eq!(toks.len(), 6);
        assert_eq!(toks[2].loc, Loc { line: 2, column: 3 });
        assert!(toks.windows(2).all(|w| w[0].loc < w[1].loc));
    }

    #[test]
    fn errors_carry_locations() {
        assert_eq!(
            tokenize("x <- \"open").unwrap_err(),
            LexError::UnterminatedLiteral { loc: Loc { line: 1, column: 6 } }
        );
        assert_eq!(
            tokenize("a\n  $").unwrap_err(),
            LexError::IllegalCharacter { loc: Loc { line: 2, column: 3 }, ch: '$' }
        );
    }
}

//! Atomic values, role fillers and instance identifiers.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// Identifier of an instance inside one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct InstanceId(pub u32);

impl fmt::Display for InstanceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An atomic value. `Sym` is a symbol of a user-declared enumeration.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "lowercase")]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    Sym(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(i) => Some(*i as f64),
            Value::Float(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Value::Str(s) | Value::Sym(s) => Some(s),
            _ => None,
        }
    }

    /// Equality with integer/float coercion; strings and symbols stay distinct.
    pub fn same(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Int(_) | Value::Float(_), Value::Int(_) | Value::Float(_)) => {
                self.as_f64() == other.as_f64()
            }
            _ => self == other,
        }
    }

    /// Ordering for comparable values of the same family.
    pub fn compare(&self, other: &Value) -> Option<Ordering> {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => Some(a.cmp(b)),
            (Value::Int(_) | Value::Float(_), Value::Int(_) | Value::Float(_)) => {
                self.as_f64()?.partial_cmp(&other.as_f64()?)
            }
            (Value::Str(a), Value::Str(b)) | (Value::Sym(a), Value::Sym(b)) => Some(a.cmp(b)),
            (Value::Bool(a), Value::Bool(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }

    /// True when a value of this shape may fill a role of type `ty`.
    pub fn fits(&self, ty: &AtomicType, enum_symbols: Option<&[String]>) -> bool {
        match (self, ty) {
            (Value::Int(_), AtomicType::Integer | AtomicType::Float) => true,
            (Value::Float(_), AtomicType::Float) => true,
            (Value::Bool(_), AtomicType::Boolean) => true,
            (Value::Str(_), AtomicType::String) => true,
            (Value::Sym(s), AtomicType::Enum(_)) => {
                enum_symbols.is_some_and(|syms| syms.iter().any(|x| x == s))
            }
            _ => false,
        }
    }

    /// Converts integers stored into float roles.
    pub fn coerce_to(self, ty: &AtomicType) -> Value {
        match (self, ty) {
            (Value::Int(i), AtomicType::Float) => Value::Float(i as f64),
            (v, _) => v,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Float(x) => write!(f, "{x:?}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\n' => f.write_str("\\n")?,
                        '\t' => f.write_str("\\t")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
            Value::Sym(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AtomicType {
    Integer,
    Float,
    Boolean,
    String,
    Enum(String),
}

impl AtomicType {
    pub fn builtin(name: &str) -> Option<AtomicType> {
        match name {
            "Integer" => Some(AtomicType::Integer),
            "Float" => Some(AtomicType::Float),
            "Boolean" => Some(AtomicType::Boolean),
            "String" => Some(AtomicType::String),
            _ => None,
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, AtomicType::Integer | AtomicType::Float)
    }

    /// Whether two atomic types can hold a common value.
    pub fn compatible(&self, other: &AtomicType) -> bool {
        self == other || (self.is_numeric() && other.is_numeric())
    }
}

impl fmt::Display for AtomicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomicType::Integer => f.write_str("Integer"),
            AtomicType::Float => f.write_str("Float"),
            AtomicType::Boolean => f.write_str("Boolean"),
            AtomicType::String => f.write_str("String"),
            AtomicType::Enum(n) => f.write_str(n),
        }
    }
}

/// What a bound role holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Filler {
    Atom(Value),
    Instance(InstanceId),
}

impl Filler {
    pub fn as_value(&self) -> Option<&Value> {
        match self {
            Filler::Atom(v) => Some(v),
            Filler::Instance(_) => None,
        }
    }

    pub fn as_instance(&self) -> Option<InstanceId> {
        match self {
            Filler::Instance(id) => Some(*id),
            Filler::Atom(_) => None,
        }
    }

    pub fn same(&self, other: &Filler) -> bool {
        match (self, other) {
            (Filler::Atom(a), Filler::Atom(b)) => a.same(b),
            (Filler::Instance(a), Filler::Instance(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Filler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filler::Atom(v) => write!(f, "{v}"),
            Filler::Instance(id) => write!(f, "{id}"),
        }
    }
}

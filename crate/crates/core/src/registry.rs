//! Built-in boolean predicates and value transforms referenced by grammars.

use std::cmp::Ordering;

use crate::value::Value;

/// Relative tolerance for `approx-square`.
pub const SQUARE_TOLERANCE: f64 = 0.2;

/// Number of arguments a predicate takes, or `None` if unknown.
pub fn predicate_arity(name: &str) -> Option<usize> {
    match name {
        "eq" | "neq" | "lt" | "le" | "gt" | "ge" | "approx-square" | "color-is" => Some(2),
        _ => None,
    }
}

/// Applies a predicate. `None` when the arguments cannot be compared.
pub fn apply_predicate(name: &str, args: &[Value]) -> Option<bool> {
    let [a, b] = args else { return None };
    let ord = || a.compare(b);
    Some(match name {
        "eq" => a.same(b),
        "neq" => !a.same(b),
        "lt" => ord()? == Ordering::Less,
        "le" => ord()? != Ordering::Greater,
        "gt" => ord()? == Ordering::Greater,
        "ge" => ord()? != Ordering::Less,
        "approx-square" => {
            let (w, h) = (a.as_f64()?, b.as_f64()?);
            let m = w.abs().max(h.abs());
            m == 0.0 || (w - h).abs() / m <= SQUARE_TOLERANCE
        }
        "color-is" => a.as_str()? == b.as_str()?,
        _ => return None,
    })
}

/// Arity of a value transform (`None` = unknown, `Some(None)` = variadic).
pub fn function_arity(name: &str) -> Option<Option<usize>> {
    match name {
        "succ" | "pred" | "neg" | "abs" => Some(Some(1)),
        "add" | "sub" | "mul" | "max" | "min" | "concat" => Some(None),
        _ => None,
    }
}

pub fn apply_function(name: &str, args: &[Value]) -> Option<Value> {
    let ints: Option<Vec<i64>> = args
        .iter()
        .map(|v| match v {
            Value::Int(i) => Some(*i),
            _ => None,
        })
        .collect();
    let floats: Option<Vec<f64>> = args.iter().map(Value::as_f64).collect();
    let numeric = |fi: fn(i64, i64) -> Option<i64>, ff: fn(f64, f64) -> f64| -> Option<Value> {
        if let Some(ints) = &ints {
            let (first, rest) = ints.split_first()?;
            rest.iter().try_fold(*first, |acc, x| fi(acc, *x)).map(Value::Int)
        } else {
            let floats = floats.as_ref()?;
            let (first, rest) = floats.split_first()?;
            Some(Value::Float(rest.iter().fold(*first, |acc, x| ff(acc, *x))))
        }
    };
    match (name, args) {
        ("succ", [Value::Int(i)]) => i.checked_add(1).map(Value::Int),
        ("pred", [Value::Int(i)]) => i.checked_sub(1).map(Value::Int),
        ("neg", [Value::Int(i)]) => i.checked_neg().map(Value::Int),
        ("neg", [Value::Float(x)]) => Some(Value::Float(-x)),
        ("abs", [Value::Int(i)]) => i.checked_abs().map(Value::Int),
        ("abs", [Value::Float(x)]) => Some(Value::Float(x.abs())),
        ("add", _) => numeric(|a, b| a.checked_add(b), |a, b| a + b),
        ("sub", _) => numeric(|a, b| a.checked_sub(b), |a, b| a - b),
        ("mul", _) => numeric(|a, b| a.checked_mul(b), |a, b| a * b),
        ("max", _) => numeric(|a, b| Some(a.max(b)), f64::max),
        ("min", _) => numeric(|a, b| Some(a.min(b)), f64::min),
        ("concat", _) => {
            let mut s = String::new();
            for a in args {
                s.push_str(a.as_str()?);
            }
            Some(Value::Str(s))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        assert_eq!(apply_predicate("lt", &[Value::Int(1), Value::Float(1.5)]), Some(true));
        assert_eq!(apply_predicate("neq", &[Value::Sym("left".into()), Value::Sym("left".into())]), Some(false));
        assert_eq!(apply_predicate("lt", &[Value::Int(1), Value::Str("x".into())]), None);
    }

    #[test]
    fn approx_square_tolerance() {
        assert_eq!(apply_predicate("approx-square", &[Value::Float(30.0), Value::Float(33.0)]), Some(true));
        assert_eq!(apply_predicate("approx-square", &[Value::Float(30.0), Value::Float(40.0)]), Some(false));
    }

    #[test]
    fn transforms() {
        assert_eq!(apply_function("succ", &[Value::Int(2)]), Some(Value::Int(3)));
        assert_eq!(apply_function("add", &[Value::Int(2), Value::Float(0.5)]), Some(Value::Float(2.5)));
        assert_eq!(
            apply_function("concat", &[Value::Str("a".into()), Value::Str("b".into())]),
            Some(Value::Str("ab".into()))
        );
    }
}

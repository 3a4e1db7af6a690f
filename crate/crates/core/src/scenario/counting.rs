//! The counting model: initial state and trace extraction.

use crate::engine::Forest;
use crate::memory::{BranchState, MemoryError};
use crate::place::Place;
use crate::validate::CompiledProgram;
use crate::value::{Filler, InstanceId, Value};

/// Successor facts up to this number are placed in declarative memory.
pub const FACTS_UP_TO: i64 = 10;

/// A goal counting from `start` to `end`, plus the successor facts.
pub fn counting_state(p: &CompiledProgram, start: i64, end: i64) -> Result<(BranchState, InstanceId), MemoryError> {
    let h = &p.hierarchy;
    let mut b = BranchState::new(0);
    let buffer = b.create_instance(h, "Buffer", [], &[])?;
    let memory = b.create_instance(h, "Memory", [], &[])?;
    let int = |i: i64| Filler::Atom(Value::Int(i));
    let goal = b.create_instance(
        h,
        "CountGoal",
        [
            ("start".to_string(), int(start)),
            ("end".to_string(), int(end)),
            ("step".to_string(), Filler::Atom(Value::Sym("start".into()))),
        ],
        &[],
    )?;
    b.situate(h, goal, buffer, Place::point(0.0))?;
    for (i, n) in (0..FACTS_UP_TO).enumerate() {
        let fact = b.create_instance(h, "CountOrder", [("first".to_string(), int(n)), ("second".to_string(), int(n + 1))], &[])?;
        b.situate(h, fact, memory, Place::point(i as f64))?;
    }
    Ok((b, goal))
}

/// Fired rule names and the goal's count after each firing.
pub fn count_trace(b: &BranchState, goal: InstanceId) -> Vec<(String, Option<i64>)> {
    let mut count = None;
    let mut mutations = b.mutations().peekable();
    b.firings()
        .iter()
        .map(|f| {
            while let Some(m) = mutations.next_if(|m| m.time < f.time) {
                if m.instance == goal && m.role == "count" {
                    count = m.new.as_value().and_then(|v| match v {
                        Value::Int(i) => Some(*i),
                        _ => None,
                    });
                }
            }
            (f.construction.clone(), count)
        })
        .collect()
}

/// The single branch a deterministic counting run should produce.
pub fn only_branch(forest: &Forest) -> Option<&BranchState> {
    match forest.branches.as_slice() {
        [b] => Some(b),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run, SearchConfig};
    use crate::scenario::count_program;

    #[test]
    fn counts_from_two_to_four() {
        let p = count_program().unwrap();
        let (b, goal) = counting_state(&p, 2, 4).unwrap();
        let forest = run(&p, b, &SearchConfig::default());
        let b = only_branch(&forest).expect("one branch");
        let trace = count_trace(b, goal);
        let names: Vec<&str> = trace.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["start-rule", "count-rule", "count-rule", "stop-rule"]);
        let counts: Vec<Option<i64>> = trace.iter().map(|(_, c)| *c).collect();
        assert_eq!(counts, [Some(2), Some(3), Some(4), Some(4)]);
    }
}

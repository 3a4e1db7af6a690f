//! Lays an utterance out in a linear form context.

use thiserror::Error;

use crate::memory::{BranchState, MemoryError};
use crate::place::Place;
use crate::types::TypeHierarchy;
use crate::value::{Filler, InstanceId, Value};

/// The closed demo vocabulary.
pub const LEXICON: [&str; 9] = ["put", "remove", "move", "the", "small", "red", "square", "on", "left"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LayoutError {
    #[error("unknown word(s): {}", .0.join(", "))]
    UnknownWord(Vec<String>),
    #[error(transparent)]
    Memory(#[from] MemoryError),
}

/// The form context, one word per token and an `Utterance` spanning them.
#[derive(Debug, Clone, PartialEq)]
pub struct LaidOut {
    pub form: InstanceId,
    pub words: Vec<InstanceId>,
    pub utterance: Option<InstanceId>,
}

pub fn tokenize(text: &str) -> Result<Vec<String>, LayoutError> {
    let words: Vec<String> = text.split_whitespace().map(str::to_lowercase).collect();
    let unknown: Vec<String> = words.iter().filter(|w| !LEXICON.contains(&w.as_str())).cloned().collect();
    if unknown.is_empty() {
        Ok(words)
    } else {
        Err(LayoutError::UnknownWord(unknown))
    }
}

/// Word `i` goes to `point(i)`.
pub fn lay_out_utterance(h: &TypeHierarchy, b: &mut BranchState, text: &str) -> Result<LaidOut, LayoutError> {
    let tokens = tokenize(text)?;
    let form = b.create_instance(h, "Form", [], &[])?;
    let mut words = Vec::with_capacity(tokens.len());
    for (i, t) in tokens.iter().enumerate() {
        let w = b.create_instance(h, "Word", [("lemma".to_string(), Filler::Atom(Value::Sym(t.clone())))], &[])?;
        b.situate(h, w, form, Place::point(i as f64))?;
        words.push(w);
    }
    let utterance = match tokens.len() {
        0 => None,
        n => {
            let u = b.create_instance(h, "Utterance", [], &[])?;
            let span = Place::segment(0.0, (n - 1) as f64).expect("ordered endpoints");
            b.situate(h, u, form, span)?;
            Some(u)
        }
    };
    Ok(LaidOut { form, words, utterance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::eval_relation;
    use crate::scenario::demo_program;

    #[test]
    fn words_sit_at_consecutive_points() {
        let p = demo_program().unwrap();
        let h = &p.hierarchy;
        let mut b = BranchState::new(0);
        let l = lay_out_utterance(h, &mut b, "move the small red square on the left").unwrap();
        assert_eq!(l.words.len(), 8);
        for (i, w) in l.words.iter().enumerate() {
            assert_eq!(b.place_of(*w, l.form), Some(&Place::point(i as f64)));
        }
        let p3 = b.place_of(l.words[3], l.form).unwrap().clone();
        let p5 = b.place_of(l.words[5], l.form).unwrap().clone();
        assert_eq!(eval_relation(h, "Form", "before", &[p3.clone(), p5.clone()]), Ok(Value::Bool(true)));
        assert_eq!(eval_relation(h, "Form", "before", &[p5, p3]), Ok(Value::Bool(false)));
    }

    #[test]
    fn empty_and_unknown() {
        let p = demo_program().unwrap();
        let mut b = BranchState::new(0);
        let l = lay_out_utterance(&p.hierarchy, &mut b, "").unwrap();
        assert!(l.words.is_empty() && l.utterance.is_none());
        assert_eq!(b.present_in(l.form).count(), 0);
        let e = lay_out_utterance(&p.hierarchy, &mut b, "frobnicate the square").unwrap_err();
        assert_eq!(e, LayoutError::UnknownWord(vec!["frobnicate".into()]));
    }
}

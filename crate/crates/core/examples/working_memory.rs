//! Branch-local memory: instances, situations, mutation, forking and replay.

use scim::memory::BranchState;
use scim::validate::load_program;
use scim::value::{Filler, Value};

const GRAMMAR: &str = "
schema Word
  roles text: String ?stressed: Boolean
context Line inherits LinearContext
";

fn main() {
    let p = load_program(&[GRAMMAR]).expect("grammar validates");
    let h = &p.hierarchy;
    let mut b = BranchState::new(0);
    let line = b.create_instance(h, "Line", [], &[]).unwrap();
    let mut words = Vec::new();
    for w in ["move", "the", "square"] {
        let id = b.create_instance(h, "Word", [("text".to_string(), Filler::Atom(Value::Str(w.into())))], &[]).unwrap();
        let at = b.synthetic_point(line);
        b.situate(h, id, line, at).unwrap();
        words.push(id);
    }

    let mut fork = b.fork(1);
    fork.mutate_role(h, words[2], "stressed", Filler::Atom(Value::Bool(true))).unwrap();
    println!("parent sees {:?}", b.instance(words[2]).unwrap().filler("stressed"));
    println!("fork sees   {:?}", fork.instance(words[2]).unwrap().filler("stressed"));
    println!("fork clock {} vs parent clock {}", fork.clock(), b.clock());
    println!("replayed journal matches: {}", fork.replay().dump_string() == fork.dump_string());
    println!("fork journal: {} events, parent journal: {} events", fork.journal().len(), b.journal().len());
}

//! Counting from 2 to 4 as a production system.

use scim::engine::{run, SearchConfig};
use scim::scenario::counting::only_branch;
use scim::scenario::{count_program, count_trace, counting_state};

fn main() {
    let p = count_program().expect("bundled grammar validates");
    let (state, goal) = counting_state(&p, 2, 4).expect("initial state builds");
    let forest = run(&p, state, &SearchConfig::default());
    let branch = only_branch(&forest).expect("counting does not branch");
    for (rule, count) in count_trace(branch, goal) {
        println!("{rule:<12} count = {}", count.map_or("-".to_string(), |c| c.to_string()));
    }
}

//! Compare the indexed matcher with brute force on random programs, then
//! stress the engine invariants.

use scim::random::{oracle_suite, random_case, stress};

fn main() {
    let case = random_case(3);
    println!("a generated program:\n{}", case.source);
    let r = oracle_suite(42, 50);
    println!("oracle: {} ({} matches)", r.summary(), r.matches);
    let s = stress(2024, 5, 200);
    println!(
        "stress: {} firings over {} programs, {} dead, {} re-armed, {} violations",
        s.fired,
        s.programs,
        s.dead,
        s.rearmed,
        s.violations.len()
    );
}

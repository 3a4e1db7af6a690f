//! Parse a grammar, pretty-print it and validate it; then show what a
//! broken grammar is told.

use scim::syntax::parse_source;
use scim::validate::{load_program, validate};

const GRAMMAR: &str = "
enum Size { small, large }

schema Block
  roles size: Size ?on: Block
  constraints
    NOT(on = self)

context Table inherits SetContext

s-construction Stack
  constituents
    t: Table /I
    a: Block @t /I
    b: Block @t /I
  constraints
    a.size <- small
    ?a.on <-> b
";

fn main() {
    let program = parse_source(GRAMMAR).expect("grammar parses");
    println!("{program}");
    let compiled = validate(&program).expect("grammar validates");
    println!("{} s-construction(s): {:?}", compiled.constructions.len(), compiled.constructions.iter().map(|c| &c.name).collect::<Vec<_>>());

    let broken = "schema Loop inherits Loop\ns-construction S\n  constituents\n    x: Nowhere /I\n";
    match load_program(&[broken]) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected:\n{e}"),
    }
}

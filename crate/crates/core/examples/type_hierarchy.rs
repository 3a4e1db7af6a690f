//! Multiple inheritance and path-qualified role keys.

use scim::validate::load_program;

const GRAMMAR: &str = "
schema Figure
  roles width: Float height: Float
schema Colored
  roles hue: String
schema Rectangle inherits Figure
schema Square inherits Rectangle, Colored
  constraints
    Rectangle*Figure*width <-> Rectangle*Figure*height
";

fn main() {
    let p = load_program(&[GRAMMAR]).expect("grammar validates");
    let h = &p.hierarchy;
    println!("Square <= Figure: {}", h.subtype("Square", "Figure"));
    println!("Figure <= Square: {}", h.subtype("Figure", "Square"));
    println!("paths from Square to Figure: {:?}", h.inheritance_paths("Square", "Figure"));
    println!("roles of Square:");
    for (key, r) in h.effective_roles("Square").expect("known type") {
        println!("  {key:<24} declared by {:<8} {:?}", r.owner, r.ty);
    }
}

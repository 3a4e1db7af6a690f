//! Interpret the three imperatives in each bundled scene, with the
//! reference resolution behind each reading.

use scim::engine::SearchConfig;
use scim::scenario::{analyse, demo_program, parse_scene, SITUATION_1, SITUATION_2, SITUATION_3, SITUATION_3_NO_CIRCLES};

fn main() {
    let p = demo_program().expect("bundled grammar validates");
    let cfg = SearchConfig::default();
    let scenes = [("sit1", SITUATION_1), ("sit2", SITUATION_2), ("sit3", SITUATION_3), ("sit3_no_circles", SITUATION_3_NO_CIRCLES)];
    for (name, text) in scenes {
        let scene = parse_scene(text).expect("bundled scene parses");
        for verb in ["put", "remove", "move"] {
            let utterance = format!("{verb} the small red square on the left");
            let a = analyse(&p, &scene, &utterance, &cfg).expect("utterance lays out");
            println!("{name}: {utterance}");
            if let Some(r) = a.grounding.iter().find_map(|g| g.resolution.as_ref()) {
                let ranks: Vec<String> = r.ranked.iter().map(|c| format!("{}={:.3}", c.object, c.trust)).collect();
                println!("  candidates {}", ranks.join(" "));
            }
            if a.interpretations.is_empty() {
                println!("  no interpretation");
            }
            for (i, r) in a.interpretations.iter().enumerate() {
                println!("  {} {}", i + 1, r.line());
            }
        }
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scim::engine::{enumerate_matches, oracle_matches, run, score, SearchConfig};
use scim::memory::BranchState;
use scim::random::{check_oracle, oracle_suite, random_case, random_program, random_state, stress};
use scim::scenario::counting::only_branch;
use scim::scenario::{count_program, count_trace, counting_state};
use scim::validate::{load_program, CompiledProgram};
use scim::value::{Filler, Value};

const PAIRS: &str = "
schema W roles n: Integer
schema M
s-construction Join
  constituents
    a: W /I
    b: W /I
    m: M /O
  constraints
    lt(a.n, b.n)
";

fn words(p: &CompiledProgram, ns: &[i64]) -> BranchState {
    let mut b = BranchState::new(0);
    for n in ns {
        b.create_instance(&p.hierarchy, "W", [("n".to_string(), Filler::Atom(Value::Int(*n)))], &[]).unwrap();
    }
    b
}

#[test]
fn oracle_agrees_on_fifty_cases() {
    let r = oracle_suite(42, 50);
    assert_eq!(r.summary(), "50/50 pass", "{:?}", r.failures);
    assert!(r.matches > 0);
}

#[test]
fn oracle_examples() {
    let p = load_program(&[PAIRS]).unwrap();
    let sc = p.construction("Join").unwrap();
    let empty = BranchState::new(0);
    assert!(oracle_matches(&p.hierarchy, &empty, sc).is_empty());
    let b = words(&p, &[1, 2, 3]);
    // Ordered pairs with a.n < b.n: (1,2), (1,3), (2,3).
    assert_eq!(oracle_matches(&p.hierarchy, &b, sc).len(), 3);
    assert_eq!(enumerate_matches(&p.hierarchy, &b, sc), oracle_matches(&p.hierarchy, &b, sc));
}

#[test]
fn score_examples() {
    let p = load_program(&[PAIRS]).unwrap();
    let fresh = words(&p, &[1, 2]);
    assert_eq!(score(&p.hierarchy, &fresh, 0.01), 0.0);
    let forest = run(&p, fresh, &SearchConfig::default());
    let best = forest.best().unwrap();
    assert_eq!(best.firings().len(), 1);
    // Two lexical parents give capacity 2 at trust 1.
    assert!((best.score - (2.0 - 0.01)).abs() < 1e-12);
}

#[test]
fn budget_and_halting() {
    let p = load_program(&[PAIRS]).unwrap();
    let cfg = SearchConfig { max_firings: 1, ..SearchConfig::default() };
    let forest = run(&p, words(&p, &[1, 2, 3]), &cfg);
    assert!(forest.branches.iter().all(|b| b.incomplete && b.firings().len() == 1));
    let cfg = SearchConfig { halt_on_type: Some("M".into()), ..SearchConfig::default() };
    let forest = run(&p, words(&p, &[1, 2, 3]), &cfg);
    assert!(forest.branches.iter().all(|b| b.firings().len() == 1 && !b.incomplete));
    let cfg = SearchConfig { beam_width: 1, ..SearchConfig::default() };
    assert_eq!(run(&p, words(&p, &[1, 2, 3]), &cfg).branches.len(), 1);
}

#[test]
fn constructional_requirements_follow_ancestry() {
    let p = load_program(&["
schema W
schema M
s-construction Make
  constituents
    w: W /I
    m: M /O
s-construction AfterMake
  constructional
    p: Make
  constituents
    m: M /I
    o: M /O
  constraints
    p.w C p.w
s-construction NotAfterMake
  constructional
    not p: Make
  constituents
    m: M /I
    o: M /O
"])
    .unwrap();
    let h = &p.hierarchy;
    let mut b = BranchState::new(0);
    b.create_instance(h, "W", [], &[]).unwrap();
    let plain = b.create_instance(h, "M", [], &[]).unwrap();
    let after = p.construction("AfterMake").unwrap();
    let not_after = p.construction("NotAfterMake").unwrap();
    assert!(enumerate_matches(h, &b, after).is_empty());
    assert_eq!(enumerate_matches(h, &b, not_after)[0].inputs(), [plain]);
    let forest = run(&p, b, &SearchConfig { halt_on_type: None, max_firings: 3, ..SearchConfig::default() });
    for br in &forest.branches {
        for f in br.firings() {
            let derived = f.bindings.get("m").is_some_and(|m| br.instance(*m).unwrap().created_by.is_some());
            match f.construction.as_str() {
                "AfterMake" => assert!(derived),
                "NotAfterMake" => assert!(!derived || br.firings()[br.instance(f.bindings["m"]).unwrap().created_by.unwrap()].construction != "Make"),
                _ => {}
            }
        }
    }
}

#[test]
fn counting_is_byte_stable() {
    let p = count_program().unwrap();
    let go = || {
        let (b, goal) = counting_state(&p, 2, 4).unwrap();
        let forest = run(&p, b, &SearchConfig::default());
        let trace = count_trace(only_branch(&forest).unwrap(), goal);
        (forest.trace_json(), trace)
    };
    let (a, trace) = go();
    assert_eq!(a, go().0);
    assert_eq!(trace.len(), 4);
}

#[test]
fn stress_invariants_hold() {
    let r = stress(9, 5, 200);
    assert!(r.violations.is_empty(), "{:?}", r.violations);
    assert!(r.dead > 0 && r.rearmed > 0, "{r:?}");
}

proptest! {
    // Each case is a full random walk with every invariant checked per attempt.
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn stress_from_any_seed(seed in any::<u64>()) {
        let r = stress(seed, 1, 20);
        prop_assert!(r.violations.is_empty(), "{:?}", r.violations);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matcher_equals_oracle(seed in any::<u64>()) {
        let case = random_case(seed);
        prop_assert!(check_oracle(&case).is_ok(), "{}\n{:?}", case.source, check_oracle(&case));
    }

    #[test]
    fn scaling_capacities_keeps_the_order(seed in any::<u64>(), k in 0.1f64..10.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, p) = random_program(&mut rng);
        let b = random_state(&mut rng, &p);
        let cost = 0.01;
        let forest = run(&p, b, &SearchConfig { beam_width: 4, max_firings: 12, ..SearchConfig::default() });
        let h = &p.hierarchy;
        let scaled: Vec<f64> = forest.branches.iter().map(|b| score(h, &b.with_scaled_capacities(k), k * cost)).collect();
        for (b, s) in forest.branches.iter().zip(&scaled) {
            prop_assert!((s - k * b.score).abs() < 1e-9 * (1.0 + s.abs()));
        }
        for w in forest.branches.windows(2).zip(scaled.windows(2)) {
            let ((a, b), (sa, sb)) = ((&w.0[0], &w.0[1]), (w.1[0], w.1[1]));
            if a.score > b.score + 1e-9 {
                prop_assert!(sa > sb);
            }
        }
    }
}

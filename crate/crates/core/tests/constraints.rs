mod common;

use proptest::prelude::*;

use common::{check_distinctions, check_kleene_tables, kleene, unify_properties, VERDICTS};
use scim::constraint::Verdict;

#[test]
fn kleene_tables_up_to_arity_three() {
    assert_eq!(check_kleene_tables(), Ok(3 * (3 + 9 + 27) + 3));
}

#[test]
fn kleene_identities() {
    for a in VERDICTS {
        assert_eq!(a.not().not(), a);
        for b in VERDICTS {
            // De Morgan.
            assert_eq!(Verdict::and([a, b]).not(), Verdict::or([a.not(), b.not()]));
            assert_eq!(kleene("NAND", &[a, b]), Verdict::or([a.not(), b.not()]));
        }
    }
}

#[test]
fn equality_identification_and_filler_differ() {
    check_distinctions().unwrap();
}

fn filler() -> impl Strategy<Value = Option<i64>> {
    prop::option::weighted(0.6, 0..3i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn unify_is_commutative_idempotent_and_monotone(
        fillers in prop::collection::vec(filler(), 2..10),
        ops in prop::collection::vec((0..10usize, 0..10usize), 0..8),
        probe in (0..10usize, 0..10usize),
    ) {
        prop_assert_eq!(unify_properties(&fillers, &ops, probe), Ok(()));
    }
}

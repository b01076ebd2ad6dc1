mod common;

use std::collections::BTreeSet;

use caf_core::model::{parse_af, Acceptance, ArgSet, Semantics};
use caf_core::semantics::{
    accepted, extensions, grounded_extension, is_admissible, is_conflict_free,
};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn library(af: &caf_core::model::ArgumentationFramework, sem: Semantics) -> BTreeSet<ArgSet> {
    extensions(af, sem)
        .into_iter()
        .map(|e| e.into_members())
        .collect()
}

#[test]
fn extensions_match_powerset_filter() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let af = random_af(&mut rng, 8);
        for &sem in Semantics::ALL {
            assert_eq!(
                library(&af, sem),
                naive_extensions(&af, sem),
                "{sem} on {af:?}"
            );
        }
    }
}

#[test]
fn grounded_of_small_af() {
    // a6 absent, (a5,a1) present, configured by {a7}
    let af = parse_af(
        "arg(a1).\narg(a2).\narg(a3).\narg(a4).\narg(a5).\narg(a7).\n\
         att(a2,a1).\natt(a3,a1).\natt(a4,a2).\natt(a4,a3).\natt(a5,a1).\natt(a7,a5).\n",
    )
    .unwrap();
    let g = grounded_extension(&af).into_members();
    assert_eq!(g, set(&["a1", "a4", "a7"]));
    assert_eq!(naive_extensions(&af, Semantics::Grounded), [g].into());
}

#[test]
fn vacuous_skeptical_acceptance() {
    let af = parse_af("arg(a).\narg(b).\narg(c).\natt(a,b).\natt(b,c).\natt(c,a).\n").unwrap();
    assert!(library(&af, Semantics::Stable).is_empty());
    assert!(accepted(&af, Semantics::Stable, Acceptance::Skeptical, &set(&["a"])).unwrap());
    assert!(!accepted(&af, Semantics::Stable, Acceptance::Credulous, &set(&["a"])).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lattice_properties(seed in any::<u64>()) {
        let af = random_af(&mut ChaCha8Rng::seed_from_u64(seed), 7);
        let grounded = grounded_extension(&af).into_members();
        let complete = library(&af, Semantics::Complete);
        let preferred = library(&af, Semantics::Preferred);
        let stable = library(&af, Semantics::Stable);
        prop_assert!(complete.contains(&grounded));
        prop_assert!(complete.iter().all(|c| grounded.is_subset(c)));
        prop_assert!(stable.is_subset(&preferred));
        prop_assert!(preferred.is_subset(&complete));
        prop_assert!(!preferred.is_empty());
        for e in &complete {
            prop_assert!(is_admissible(&af, e).unwrap());
            prop_assert!(is_conflict_free(&af, e).unwrap());
        }
    }

    #[test]
    fn acceptance_agrees_with_listing(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let af = random_af(&mut rng, 6);
        let args: Vec<_> = af.arguments().iter().cloned().collect();
        let target: ArgSet = args.iter().filter(|_| rand::Rng::gen_bool(&mut rng, 0.3)).cloned().collect();
        for &sem in Semantics::ALL {
            for &acc in Acceptance::ALL {
                prop_assert_eq!(
                    accepted(&af, sem, acc, &target).unwrap(),
                    naive_accepts(&af, sem, acc, &target)
                );
            }
        }
    }
}

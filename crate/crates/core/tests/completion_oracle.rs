mod common;

use std::collections::BTreeSet;

use caf_core::completion::{count_completions, enumerate_completions};
use caf_core::controllability::configurations;
use caf_core::model::{configure, is_completion_of, parse_instance, Configuration};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn example_configured_counts() {
    let caf = parse_instance(RUNNING).unwrap().caf;
    let conf = Configuration::new([id("a7"), id("a9")]);
    let configured = configure(&caf, &conf).unwrap();
    let listed: BTreeSet<_> = enumerate_completions(&configured).collect();
    assert_eq!(listed.len(), 8);
    assert_eq!(count_completions(&configured).unwrap(), 8);
    assert_eq!(listed, naive_completions(&caf, conf.chosen()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn enumeration_matches_subset_oracle(seed in any::<u64>()) {
        let (caf, _) = random_caf(&mut ChaCha8Rng::seed_from_u64(seed), &SUITE_BOUNDS);
        for conf in configurations(&caf) {
            let configured = configure(&caf, &conf).unwrap();
            let listed: Vec<_> = enumerate_completions(&configured).collect();
            let unique: BTreeSet<_> = listed.iter().cloned().collect();
            prop_assert_eq!(unique.len(), listed.len(), "duplicates");
            prop_assert_eq!(count_completions(&configured).unwrap(), listed.len() as u128);
            prop_assert!(listed.iter().all(|af| is_completion_of(af, &configured)));
            prop_assert_eq!(unique, naive_completions(&caf, conf.chosen()));
        }
    }
}

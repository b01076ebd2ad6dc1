mod common;

use std::collections::BTreeSet;

use caf_core::controllability::decide;
use caf_core::encoding::*;
use caf_core::model::{
    configure, is_completion_of, parse_instance, Acceptance, ArgSet, Mode, Query, Semantics,
};
use caf_core::semantics::accepted;
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn stable_by_models(af: &caf_core::model::ArgumentationFramework) -> BTreeSet<ArgSet> {
    let cnf = to_cnf(&build_phi_st_r(af));
    let names: Vec<_> = af.arguments().iter().cloned().collect();
    let project: Vec<u32> = names
        .iter()
        .map(|x| {
            cnf.vars
                .get(&VarId::acc(x))
                .expect("every argument has an acc variable")
        })
        .collect();
    project_models(cnf.var_count(), &cnf.clauses, &project)
        .into_iter()
        .map(|m| {
            names
                .iter()
                .zip(m)
                .filter(|(_, b)| *b)
                .map(|(x, _)| x.clone())
                .collect()
        })
        .collect()
}

#[test]
fn pinned_formula_models_are_stable_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..250 {
        let af = random_af(&mut rng, 6);
        assert_eq!(
            stable_by_models(&af),
            naive_extensions(&af, Semantics::Stable)
        );
    }
}

#[test]
fn solvers_agree_with_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..150 {
        let (caf, target) = random_caf(&mut rng, &SUITE_BOUNDS);
        for &acc in Acceptance::ALL {
            let q =
                Query::new(&caf, Semantics::Stable, Mode::Possible, acc, target.clone()).unwrap();
            let expected = decide(&caf, &q).unwrap().answer;
            let v = match acc {
                Acceptance::Credulous => solve_credulous(&caf, &target).unwrap(),
                Acceptance::Skeptical => solve_skeptical(&caf, &target).unwrap(),
            };
            assert_eq!(v.answer, expected, "{acc} on {caf:?} / {target:?}");
            if let Some(w) = v.witness {
                let configured = configure(&caf, &w.configuration).unwrap();
                assert!(is_completion_of(&w.completion, &configured));
                assert!(accepted(&w.completion, Semantics::Stable, acc, &target).unwrap());
                if let Some(ext) = w.extension {
                    assert!(naive_extensions(&w.completion, Semantics::Stable).contains(&ext));
                    assert!(target.is_subset(&ext));
                }
            }
        }
    }
}

const TINY: CafBounds = CafBounds {
    fixed: 3,
    uncertain: 1,
    control: 2,
    sym: 1,
    uatt: 1,
    density: 0.3,
};

#[test]
fn query_formula_semantics_by_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..80 {
        let (caf, target) = random_caf(&mut rng, &TINY);
        for &acc in Acceptance::ALL {
            let qf = build_query_formula(&caf, &target, acc).unwrap();
            let q =
                Query::new(&caf, Semantics::Stable, Mode::Possible, acc, target.clone()).unwrap();
            assert_eq!(
                qf.eval_by_expansion().unwrap(),
                decide(&caf, &q).unwrap().answer
            );
        }
    }
}

/// Read literally, the escape disjunct lets the existential player switch
/// off both directions of a conflict and win outright.
#[test]
fn literal_escape_disjunct_is_unsound() {
    let caf = parse_instance("arg(a).\narg(b).\nsym(a,b).\narg(c).\natt(c,a).\n")
        .unwrap()
        .caf;
    let target = set(&["a"]);
    let q = Query::new(
        &caf,
        Semantics::Stable,
        Mode::Possible,
        Acceptance::Skeptical,
        target.clone(),
    )
    .unwrap();
    assert!(!decide(&caf, &q).unwrap().answer);

    let ours = build_query_formula(&caf, &target, Acceptance::Skeptical).unwrap();
    assert!(!ours.eval_by_expansion().unwrap());

    let phi = build_phi_st_caf(&caf);
    let goal = Formula::var(VarId::acc(&id("a")));
    let escape = Formula::and([
        Formula::not(Formula::var(VarId::att(&id("a"), &id("b")))),
        Formula::not(Formula::var(VarId::att(&id("b"), &id("a")))),
    ]);
    let literal = QuantifiedFormula {
        prefix: ours.prefix.clone(),
        matrix: Formula::or([Formula::implies(phi, goal), escape]),
    };
    assert!(literal.eval_by_expansion().unwrap());
}

#[test]
fn example_qdimacs_shape() {
    let caf = parse_instance(RUNNING).unwrap().caf;
    let t = set(&["a1"]);
    let text = emit_qdimacs(&build_query_formula(&caf, &t, Acceptance::Skeptical).unwrap());
    let d = parse_qdimacs(&text).unwrap();
    let shape: String = d.prefix.iter().map(|(q, _)| q.letter()).collect();
    assert_eq!(shape, "eeae");
    let universal = &d.prefix[2].1;
    let names: BTreeSet<String> = universal.iter().map(|n| d.varmap[n].to_string()).collect();
    assert_eq!(names, (1..=9).map(|i| format!("acc(a{i})")).collect());

    let cred = emit_qdimacs(&build_query_formula(&caf, &t, Acceptance::Credulous).unwrap());
    assert!(!cred.lines().any(|l| l.starts_with("a ")));
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (0..4usize).prop_map(|i| Formula::var(VarId::on(&id(&format!("x{i}"))))),
        any::<bool>().prop_map(Formula::Const),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::and),
            prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tseitin_preserves_models(f in formula_strategy()) {
        let cnf = to_cnf(&f);
        let originals: Vec<VarId> = f.vars().into_iter().collect();
        for mask in 0u32..1 << originals.len() {
            let value = |v: &VarId| originals.iter().position(|o| o == v).map(|i| mask >> i & 1 == 1);
            let expected = f.eval(&value).unwrap();
            let mut s = Solver::new();
            s.ensure_vars(cnf.var_count());
            let loaded = cnf.clauses.iter().all(|c| s.add_clause(c));
            let assumptions: Vec<i32> = originals
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let n = cnf.vars.get(v).unwrap() as i32;
                    if mask >> i & 1 == 1 { n } else { -n }
                })
                .collect();
            let sat = loaded && s.solve_with(&assumptions) == SolveResult::Sat;
            prop_assert_eq!(sat, expected, "{}", f);
        }
    }

    #[test]
    fn dimacs_round_trip(f in formula_strategy()) {
        let cnf = to_cnf(&f);
        let d = parse_dimacs(&emit_dimacs(&cnf)).unwrap();
        prop_assert_eq!(d.num_vars as usize, cnf.var_count());
        prop_assert_eq!(&d.clauses, &cnf.clauses);
        for (n, v) in cnf.vars.iter() {
            prop_assert_eq!(&d.varmap[&n], v);
        }
    }

    #[test]
    fn skeptical_candidates_are_coherent(seed in any::<u64>()) {
        let (caf, target) = random_caf(&mut ChaCha8Rng::seed_from_u64(seed), &SUITE_BOUNDS);
        let allowed: BTreeSet<VarId> = caf
            .uncertain_attacks()
            .iter()
            .chain(caf.symmetric_conflicts())
            .flat_map(|(a, b)| [VarId::att(a, b), VarId::att(b, a)])
            .collect();
        let mut bad = Vec::new();
        solve_skeptical_with(&caf, &target, &SolveOptions::default(), |c| {
            for (a, b) in caf.symmetric_conflicts() {
                if !(c[&VarId::att(a, b)] || c[&VarId::att(b, a)]) {
                    bad.push(format!("({a},{b}) undirected"));
                }
            }
            for (v, on) in c {
                if *on && matches!(v, VarId::Att(..)) && !allowed.contains(v) {
                    bad.push(format!("{v} outside the relation"));
                }
            }
        })
        .unwrap();
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }
}

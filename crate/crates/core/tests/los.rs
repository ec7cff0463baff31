use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ultravote::filters::enumerate_ultrafilters;
use ultravote::los::{
    close_sentence, eval, holds_along, los_verify, parse_formula, random_case, random_formula, random_structure,
    truth_set, ultraproduct, CaseShape, Env, Formula, LosError, Structure,
};

#[test]
fn print_then_parse_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let phi = random_formula(&mut rng, 6);
        let text = phi.to_string();
        assert_eq!(parse_formula(&text).unwrap(), phi, "{text}");
    }
}

#[test]
fn sugar_parses_to_core_connectives() {
    let parsed = parse_formula("forall x. (P(x) implies exists y. R(x, y) and not x = y)").unwrap();
    let expected = Formula::forall(
        "x",
        Formula::implies(
            Formula::rel("P", &["x"]),
            Formula::exists("y", Formula::and(Formula::rel("R", &["x", "y"]), Formula::not(Formula::eq("x", "y")))),
        ),
    );
    assert_eq!(parsed, expected);
}

#[test]
fn syntax_errors_carry_positions() {
    match parse_formula("P(x) or\n  R(x,") {
        Err(LosError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

/// Truth in the ultraproduct, along every ultrafilter, on the three-copy
/// products of small random structures.
#[test]
fn agreement_along_every_ultrafilter() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let family: Vec<Structure> = (0..3).map(|_| random_structure(&mut rng, 2)).collect();
        let phi = close_sentence(&random_formula(&mut rng, 4));
        for u in enumerate_ultrafilters(3).unwrap() {
            let r = los_verify(&family, &u, &phi, &Default::default()).unwrap();
            assert!(r.agree, "{phi}: {r:?}");
            // Along a principal ultrafilter, truth is truth in the chosen factor.
            let along = holds_along(&u, &family, &phi, &Default::default()).unwrap();
            assert_eq!(along, eval(&family[u.point()], &phi, &Env::new()).unwrap());
        }
    }
}

#[test]
fn ultraproduct_is_isomorphic_to_the_chosen_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let family: Vec<Structure> = (0..3).map(|_| random_structure(&mut rng, 3)).collect();
        for u in enumerate_ultrafilters(3).unwrap() {
            let up = ultraproduct(&family, &u).unwrap();
            assert_eq!(up.structure.size(), family[u.point()].size());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_instances_agree(seed in any::<u64>(), k in 0u64..1000) {
        let case = random_case(seed, k, CaseShape::default());
        let r = los_verify(&case.family, &case.ultrafilter, &case.formula, &case.choices).unwrap();
        prop_assert!(r.agree, "{}: {:?}", case.formula, r);
    }

    #[test]
    fn negation_complements_truth_sets(seed in any::<u64>()) {
        let case = random_case(seed, 0, CaseShape::default());
        let full = (1u32 << case.family.len()) - 1;
        let a = truth_set(&case.family, &case.formula, &case.choices).unwrap();
        let b = truth_set(&case.family, &Formula::not(case.formula.clone()), &case.choices).unwrap();
        prop_assert_eq!(a ^ b, full);
    }
}

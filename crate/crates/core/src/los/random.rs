use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Choices, Formula, Structure};
use crate::filters::{principal, FiniteUltrafilter};

/// One randomly generated truth-lemma instance.
#[derive(Debug, Clone)]
pub struct LosCase {
    pub family: Vec<Structure>,
    pub ultrafilter: FiniteUltrafilter,
    pub formula: Formula,
    pub choices: Choices,
}

/// Bounds for [`random_cases`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseShape {
    pub max_index: usize,
    pub max_universe: usize,
    pub max_height: usize,
}

impl Default for CaseShape {
    fn default() -> Self {
        CaseShape { max_index: 3, max_universe: 3, max_height: 5 }
    }
}

const VARS: [&str; 3] = ["x", "y", "z"];

/// `count` instances over the signature `P/1, R/2` and a constant `c`, with
/// free variables `x`, `y`, `z`. Case `k` is drawn from its own stream
/// seeded by `(seed, k)`, so any single case can be regenerated alone.
pub fn random_cases(seed: u64, count: usize, shape: CaseShape) -> Vec<LosCase> {
    (0..count).map(|k| random_case(seed, k as u64, shape)).collect()
}

pub fn random_case(seed: u64, k: u64, shape: CaseShape) -> LosCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    let index = rng.gen_range(1..=shape.max_index);
    let family: Vec<Structure> = (0..index).map(|_| random_structure(&mut rng, shape.max_universe)).collect();
    let ultrafilter = principal(index, rng.gen_range(0..index)).expect("point in range");
    let formula = random_formula(&mut rng, shape.max_height);
    let choices = VARS
        .iter()
        .map(|v| (v.to_string(), family.iter().map(|st| rng.gen_range(0..st.size())).collect()))
        .collect();
    LosCase { family, ultrafilter, formula, choices }
}

pub fn random_structure(rng: &mut impl Rng, max_universe: usize) -> Structure {
    let n = rng.gen_range(1..=max_universe);
    let mut st = Structure::new(n).expect("nonempty universe");
    let unary = (0..n).filter(|_| rng.gen_bool(0.5)).map(|x| vec![x]).collect();
    let binary = (0..n * n).filter(|_| rng.gen_bool(0.5)).map(|c| vec![c / n, c % n]).collect();
    st.add_relation("P", 1, unary).expect("valid relation");
    st.add_relation("R", 2, binary).expect("valid relation");
    st.add_constant("c", rng.gen_range(0..n)).expect("valid constant");
    st
}

/// A formula of height at most `max_height`, mixing the core connectives
/// with `and`, `implies` and `forall` expansions.
pub fn random_formula(rng: &mut impl Rng, max_height: usize) -> Formula {
    let terms = ["x", "y", "z", "c"];
    let term = |rng: &mut dyn rand::RngCore| *terms.choose(rng).expect("nonempty");
    if max_height <= 1 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..3) {
            0 => Formula::eq(term(rng), term(rng)),
            1 => Formula::rel("P", &[term(rng)]),
            _ => Formula::rel("R", &[term(rng), term(rng)]),
        };
    }
    let var = |rng: &mut dyn rand::RngCore| *VARS.choose(rng).expect("nonempty");
    // sugar costs extra height: and = 3 levels, implies = 2, forall = 3
    match rng.gen_range(0..6) {
        0 => Formula::not(random_formula(rng, max_height - 1)),
        1 => Formula::or(random_formula(rng, max_height - 1), random_formula(rng, max_height - 1)),
        2 => Formula::exists(var(rng), random_formula(rng, max_height - 1)),
        3 if max_height > 3 => Formula::and(random_formula(rng, max_height - 3), random_formula(rng, max_height - 3)),
        4 if max_height > 2 => Formula::implies(random_formula(rng, max_height - 2), random_formula(rng, max_height - 2)),
        5 if max_height > 3 => Formula::forall(var(rng), random_formula(rng, max_height - 3)),
        _ => Formula::exists(var(rng), random_formula(rng, max_height - 1)),
    }
}

/// Binds every variable of `x`, `y`, `z` free in `phi` by an existential
/// quantifier, leaving the constant `c` as the only free name.
pub fn close_sentence(phi: &Formula) -> Formula {
    phi.free_names()
        .into_iter()
        .filter(|n| VARS.contains(&n.as_str()))
        .fold(phi.clone(), |acc, v| Formula::exists(v, acc))
}

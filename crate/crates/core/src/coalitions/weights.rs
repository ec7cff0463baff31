use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_condition, make_weighted, CoalitionError, Condition, VotingSystem};
use crate::linear::{self, EliminationError, Feasibility, Inequality};

/// Largest assembly handed to exact elimination.
pub const MAX_WEIGHT_ASSEMBLY: usize = 10;

/// Nonnegative exact weights, one per member.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<BigRational>);

impl WeightVector {
    pub fn new(weights: Vec<BigRational>) -> Self {
        WeightVector(weights)
    }

    pub fn from_integers(weights: &[i64]) -> Self {
        WeightVector(weights.iter().map(|&w| BigRational::from_integer(w.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, member: usize) -> &BigRational {
        &self.0[member]
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigRational> {
        self.0.iter()
    }

    /// Weights rendered as `"3"` or `"5/2"`.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_strings()).finish()
    }
}

/// Finds weights `p` with `p(K) > p(K^c)` exactly on the efficacious
/// coalitions, or `None` when no such weights exist.
///
/// Weighted systems with nonnegative weights always satisfy C2, and the
/// realizable ones satisfy C1, so systems failing either are rejected
/// immediately. Otherwise the strict homogeneous system is scaled to
/// `p(K) - p(K^c) >= 1` over the minimal efficacious coalitions (supersets
/// follow from nonnegativity) plus `p >= 0`, and decided by Fourier–Motzkin
/// elimination.
pub fn weight_representable(vs: &VotingSystem) -> Result<Option<WeightVector>, CoalitionError> {
    let n = vs.size();
    if n > MAX_WEIGHT_ASSEMBLY {
        return Err(CoalitionError::ResourceGuard(format!(
            "weight representability is decided for assemblies of at most {MAX_WEIGHT_ASSEMBLY} members, got {n}"
        )));
    }
    if !check_condition(vs, Condition::C1) || !check_condition(vs, Condition::C2) {
        return Ok(None);
    }

    let full = vs.family().full();
    let mut rows: Vec<Inequality> = vs
        .family()
        .minimal_members()
        .into_iter()
        .map(|k| {
            let coeffs = (0..n)
                .map(|i| BigInt::from(if k >> i & 1 == 1 { 1 } else { -1 }))
                .collect();
            Inequality::new(coeffs, BigInt::one())
        })
        .collect();
    for i in 0..n {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs[i] = BigInt::one();
        rows.push(Inequality::new(coeffs, BigInt::zero()));
    }
    debug_assert!(vs.contains_mask(full));

    let solution = match linear::solve(n, &rows, linear::DEFAULT_ROW_LIMIT) {
        Ok(Feasibility::Infeasible) => return Ok(None),
        Ok(Feasibility::Feasible(x)) => x,
        Err(EliminationError::TooManyRows { limit, .. }) => {
            return Err(CoalitionError::ResourceGuard(format!("elimination exceeded {limit} rows")))
        }
        Err(e) => return Err(CoalitionError::Precondition(e.to_string())),
    };

    let weights = WeightVector(integral(solution));
    let rebuilt = make_weighted(n, &weights)?;
    if &rebuilt != vs {
        return Err(CoalitionError::Precondition(
            "elimination returned weights that do not reproduce the system".into(),
        ));
    }
    Ok(Some(weights))
}

/// Scales a rational vector by the lcm of its denominators.
fn integral(x: Vec<BigRational>) -> Vec<BigRational> {
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scale = BigRational::from_integer(lcm);
    x.into_iter().map(|v| v * &scale).collect()
}

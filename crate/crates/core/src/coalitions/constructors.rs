use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Assembly, CoalitionError, VotingSystem, WeightVector};
use crate::family;

/// Lines of the seven-point projective plane used by [`make_fano`].
pub const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

/// Simple majority, optionally with a chair whose side wins exact ties.
pub fn make_majority(n: usize, chair: Option<usize>) -> Result<VotingSystem, CoalitionError> {
    let assembly = Assembly::new(n)?;
    if let Some(c) = chair {
        assembly.check_member(c)?;
    }
    Ok(VotingSystem::from_predicate(assembly, |k| {
        let size = k.count_ones() as usize;
        2 * size > n || (2 * size == n && chair.is_some_and(|c| k >> c & 1 == 1))
    }))
}

/// Efficacious coalitions are exactly those containing the dictator `d`.
pub fn make_dictator(n: usize, d: usize) -> Result<VotingSystem, CoalitionError> {
    let assembly = Assembly::new(n)?;
    assembly.check_member(d)?;
    Ok(VotingSystem::from_predicate(assembly, |k| k >> d & 1 == 1))
}

/// Seven members; a coalition is efficacious iff it has at least five
/// members or contains one of the [`FANO_LINES`].
pub fn make_fano() -> VotingSystem {
    let lines: Vec<u32> = FANO_LINES.iter().map(|l| family::mask_of(l)).collect();
    VotingSystem::from_predicate(Assembly(7), |k| k.count_ones() >= 5 || lines.iter().any(|&l| k & l == l))
}

fn check_weights(n: usize, w: &WeightVector) -> Result<Assembly, CoalitionError> {
    let assembly = Assembly::new(n)?;
    if w.len() != n {
        return Err(CoalitionError::WeightLength { expected: n, found: w.len() });
    }
    if let Some((member, weight)) = w.iter().enumerate().find(|(_, x)| x.is_negative()) {
        return Err(CoalitionError::NegativeWeight { member, weight: weight.to_string() });
    }
    Ok(assembly)
}

fn weight_of(w: &WeightVector, mask: u32) -> BigRational {
    family::members(mask).into_iter().map(|i| w.get(i).clone()).sum()
}

/// `K` is efficacious iff `p(K) > p(K^c)`.
pub fn make_weighted(n: usize, w: &WeightVector) -> Result<VotingSystem, CoalitionError> {
    let assembly = check_weights(n, w)?;
    let total = weight_of(w, family::full_mask(n));
    Ok(VotingSystem::from_predicate(assembly, |k| {
        // p(K) > p(K^c)  <=>  2 p(K) > p(A)
        let pk = weight_of(w, k);
        &pk + &pk > total
    }))
}

/// True iff no coalition weighs exactly as much as its complement.
pub fn weighted_is_valid(n: usize, w: &WeightVector) -> Result<bool, CoalitionError> {
    check_weights(n, w)?;
    let full = family::full_mask(n);
    let total = weight_of(w, full);
    Ok((0..=full).all(|k| {
        let pk = weight_of(w, k);
        !(&pk + &pk - &total).is_zero()
    }))
}

#[cfg(test)]
mod tests {
    use super::super::{check_condition, Coalition, Condition};
    use super::*;

    fn w(xs: &[i64]) -> WeightVector {
        WeightVector::from_integers(xs)
    }

    #[test]
    fn chaired_majority_breaks_ties() {
        let vs = make_majority(4, Some(0)).unwrap();
        let a = vs.assembly();
        assert!(vs.is_efficacious(Coalition::new(a, &[0, 1]).unwrap()));
        assert!(!vs.is_efficacious(Coalition::new(a, &[2, 3]).unwrap()));
    }

    #[test]
    fn odd_majority_is_two_or_more() {
        let vs = make_majority(3, None).unwrap();
        let sizes: Vec<usize> = vs.efficacious().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![2, 2, 2, 3]);
    }

    #[test]
    fn chair_out_of_range() {
        assert!(matches!(make_majority(3, Some(3)), Err(CoalitionError::MemberOutOfRange { .. })));
        assert!(matches!(make_dictator(3, 5), Err(CoalitionError::MemberOutOfRange { .. })));
    }

    #[test]
    fn dictator_sizes() {
        let d = make_dictator(1, 0).unwrap();
        assert_eq!(d.family().to_member_lists(), vec![vec![0]]);
        assert_eq!(make_dictator(3, 1).unwrap().efficacious_count(), 4);
    }

    #[test]
    fn equal_weights_give_majority() {
        assert_eq!(make_weighted(3, &w(&[1, 1, 1])).unwrap(), make_majority(3, None).unwrap());
        assert!(weighted_is_valid(3, &w(&[1, 1, 1])).unwrap());
        assert!(!weighted_is_valid(2, &w(&[1, 1])).unwrap());
    }

    #[test]
    fn weights_two_one_one_tie() {
        // {0} weighs as much as {1, 2}: neither side is efficacious.
        assert!(!weighted_is_valid(3, &w(&[2, 1, 1])).unwrap());
        let vs = make_weighted(3, &w(&[2, 1, 1])).unwrap();
        assert_eq!(vs.family().to_member_lists(), vec![vec![0, 1], vec![0, 2], vec![0, 1, 2]]);
        assert!(!check_condition(&vs, Condition::C1));
    }

    #[test]
    fn weights_reproduce_chaired_majority() {
        assert!(weighted_is_valid(4, &w(&[3, 2, 2, 2])).unwrap());
        assert_eq!(make_weighted(4, &w(&[3, 2, 2, 2])).unwrap(), make_majority(4, Some(0)).unwrap());
    }

    #[test]
    fn negative_weight_rejected() {
        let err = make_weighted(2, &w(&[1, -1])).unwrap_err();
        assert!(matches!(err, CoalitionError::NegativeWeight { member: 1, .. }));
        assert!(matches!(make_weighted(3, &w(&[1, 1])), Err(CoalitionError::WeightLength { .. })));
    }

    #[test]
    fn valid_weights_give_c1_and_c2() {
        for ws in [[3, 1, 1, 1], [5, 2, 2, 1], [1, 1, 1, 0], [4, 3, 2, 2]] {
            let wv = w(&ws);
            if weighted_is_valid(4, &wv).unwrap() {
                let vs = make_weighted(4, &wv).unwrap();
                assert!(check_condition(&vs, Condition::C1), "{ws:?}");
                assert!(check_condition(&vs, Condition::C2), "{ws:?}");
            }
        }
    }
}

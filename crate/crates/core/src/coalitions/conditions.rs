use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Coalition, CoalitionError, VotingSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    C1,
    C2,
    C3,
    U1,
    U2,
}

impl Condition {
    pub const ALL: [Condition; 5] = [Condition::C1, Condition::C2, Condition::C3, Condition::U1, Condition::U2];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "C1" => Ok(Condition::C1),
            "C2" => Ok(Condition::C2),
            "C3" => Ok(Condition::C3),
            "U1" => Ok(Condition::U1),
            "U2" => Ok(Condition::U2),
            other => Err(format!("unknown condition `{other}` (expected C1, C2, C3, U1 or U2)")),
        }
    }
}

/// Exhaustive check of one condition.
///
/// U1 and U2 are checked as laws of an ultrafilter, i.e. on a nonempty family
/// of nonempty coalitions; without that framing the empty family and the full
/// power set would satisfy both laws vacuously.
pub fn check_condition(vs: &VotingSystem, cond: Condition) -> bool {
    match cond {
        Condition::C1 => c1(vs),
        Condition::C2 => c2(vs),
        Condition::C3 => c3(vs),
        Condition::U1 => ultrafilter_frame(vs) && u1(vs),
        Condition::U2 => ultrafilter_frame(vs) && u2(vs),
    }
}

/// C1 ∧ C2 ∧ C3.
pub fn is_ultrafilter(vs: &VotingSystem) -> bool {
    c1(vs) && c2(vs) && c3(vs)
}

fn c1(vs: &VotingSystem) -> bool {
    let full = vs.family().full();
    (0..=full).all(|k| vs.contains_mask(k) != vs.contains_mask(!k & full))
}

fn c2(vs: &VotingSystem) -> bool {
    // Closure under one-member extensions is equivalent to closure under all
    // supersets, by induction on the size of the difference.
    let n = vs.size();
    vs.family()
        .iter()
        .all(|k| (0..n).all(|i| vs.contains_mask(k | (1 << i))))
}

fn c3(vs: &VotingSystem) -> bool {
    let eff: Vec<u32> = vs.family().iter().collect();
    eff.iter()
        .enumerate()
        .all(|(a, &k)| eff[a..].iter().all(|&l| vs.contains_mask(k & l)))
}

fn ultrafilter_frame(vs: &VotingSystem) -> bool {
    !vs.family().is_empty() && !vs.contains_mask(0)
}

fn u1(vs: &VotingSystem) -> bool {
    let full = vs.family().full();
    (0..=full).all(|k| {
        let in_k = vs.contains_mask(k);
        (k..=full).all(|l| vs.contains_mask(k & l) == (in_k && vs.contains_mask(l)))
    })
}

fn u2(vs: &VotingSystem) -> bool {
    let full = vs.family().full();
    (0..=full).all(|k| {
        let in_k = vs.contains_mask(k);
        (k..=full).all(|l| vs.contains_mask(k | l) == (in_k || vs.contains_mask(l)))
    })
}

/// Two efficacious coalitions whose intersection is not efficacious.
///
/// Such a pair turns into three incompatible decisions: the jackpot goes to a
/// member of `first`, it goes to a member of `second`, and it does not go to
/// a member of `intersection`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncoherenceWitness {
    pub first: Coalition,
    pub second: Coalition,
    pub intersection: Coalition,
}

/// Returns a C3 violation, or `None` when C3 holds. Requires C1 ∧ C2.
pub fn incoherence_witness(vs: &VotingSystem) -> Result<Option<IncoherenceWitness>, CoalitionError> {
    if !c1(vs) || !c2(vs) {
        return Err(CoalitionError::Precondition(
            "incoherence witnesses are defined for systems satisfying C1 and C2".into(),
        ));
    }
    let n = vs.size();
    let eff: Vec<u32> = vs.family().iter().collect();
    for (a, &k) in eff.iter().enumerate() {
        for &l in &eff[a + 1..] {
            if !vs.contains_mask(k & l) {
                return Ok(Some(IncoherenceWitness {
                    first: Coalition::raw(k, n),
                    second: Coalition::raw(l, n),
                    intersection: Coalition::raw(k & l, n),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::{make_dictator, make_fano, make_majority, Assembly};
    use super::*;
    use crate::family::SubsetFamily;

    fn literal_c2(vs: &VotingSystem) -> bool {
        let full = vs.family().full();
        vs.family()
            .iter()
            .all(|k| (0..=full).filter(|l| l & k == k).all(|l| vs.contains_mask(l)))
    }

    #[test]
    fn majority_c1_depends_on_parity() {
        assert!(check_condition(&make_majority(3, None).unwrap(), Condition::C1));
        assert!(!check_condition(&make_majority(4, None).unwrap(), Condition::C1));
        assert!(check_condition(&make_majority(4, Some(2)).unwrap(), Condition::C1));
    }

    #[test]
    fn fano_breaks_c3_only() {
        let fano = make_fano();
        assert!(check_condition(&fano, Condition::C1));
        assert!(check_condition(&fano, Condition::C2));
        assert!(!check_condition(&fano, Condition::C3));
    }

    #[test]
    fn ultrafilter_examples() {
        assert!(is_ultrafilter(&make_dictator(5, 2).unwrap()));
        assert!(!is_ultrafilter(&make_majority(3, None).unwrap()));
        let empty = VotingSystem::new(Assembly::new(2).unwrap(), []).unwrap();
        assert!(!is_ultrafilter(&empty));
        assert!(!check_condition(&empty, Condition::C1));
    }

    #[test]
    fn u_laws_need_the_frame() {
        let empty = VotingSystem::new(Assembly::new(2).unwrap(), []).unwrap();
        assert!(!check_condition(&empty, Condition::U1));
        let everything = VotingSystem::from_family(SubsetFamily::power_set(2)).unwrap();
        assert!(!check_condition(&everything, Condition::U2));
    }

    #[test]
    fn single_step_c2_matches_literal_c2() {
        for bits in 0u32..(1 << 8) {
            let vs = VotingSystem::from_predicate(Assembly::new(3).unwrap(), |m| bits >> m & 1 == 1);
            assert_eq!(c2(&vs), literal_c2(&vs), "family {bits:#b}");
        }
    }

    #[test]
    fn witness_for_majority() {
        let w = incoherence_witness(&make_majority(3, None).unwrap()).unwrap().unwrap();
        assert_eq!(w.first.len(), 2);
        assert_eq!(w.second.len(), 2);
        assert_eq!(w.intersection, w.first.intersection(w.second));
        assert_eq!(w.intersection.len(), 1);
    }

    #[test]
    fn witness_none_for_dictator() {
        assert_eq!(incoherence_witness(&make_dictator(3, 0).unwrap()).unwrap(), None);
    }

    #[test]
    fn witness_for_fano() {
        let fano = make_fano();
        let w = incoherence_witness(&fano).unwrap().unwrap();
        assert!(fano.is_efficacious(w.first));
        assert!(fano.is_efficacious(w.second));
        assert!(!fano.is_efficacious(w.intersection));
    }

    #[test]
    fn witness_requires_c1_c2() {
        let maj4 = make_majority(4, None).unwrap();
        assert!(matches!(incoherence_witness(&maj4), Err(CoalitionError::Precondition(_))));
    }

    #[test]
    fn c1_halves_the_coalitions() {
        for vs in [make_majority(5, None).unwrap(), make_fano(), make_dictator(4, 3).unwrap()] {
            assert!(check_condition(&vs, Condition::C1));
            assert_eq!(vs.efficacious_count(), 1 << (vs.size() - 1));
        }
    }
}

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{collective_relation, find_cycle, Profile, ProfileError};
use crate::coalitions::{check_condition, Assembly, Coalition, Condition, VotingSystem};

/// Orders of the triple `(a, b, c)` = `(0, 1, 2)` indexed by label - 1.
const LABEL_ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [2, 0, 1], [2, 1, 0], [1, 2, 0], [1, 0, 2]];

/// A label in `ℤ/6`, written 1..=6.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankLabel(u8);

impl RankLabel {
    pub const ALL: [RankLabel; 6] = [RankLabel(0), RankLabel(1), RankLabel(2), RankLabel(3), RankLabel(4), RankLabel(5)];

    /// `label` in 1..=6; other integers are reduced mod 6.
    pub fn new(label: i64) -> Self {
        RankLabel((label - 1).rem_euclid(6) as u8)
    }

    pub fn value(self) -> u8 {
        self.0 + 1
    }

    pub fn plus(self, k: i64) -> Self {
        RankLabel(((self.0 as i64 + k).rem_euclid(6)) as u8)
    }

    /// The order of `triple` this label stands for, best first.
    pub fn order(self, triple: [usize; 3]) -> [usize; 3] {
        LABEL_ORDERS[self.0 as usize].map(|i| triple[i])
    }

    /// The label of a best-first order of the three candidates of `triple`.
    pub fn of_order(order: [usize; 3], triple: [usize; 3]) -> Option<RankLabel> {
        let local = order.map(|x| triple.iter().position(|&t| t == x));
        let local = [local[0]?, local[1]?, local[2]?];
        LABEL_ORDERS.iter().position(|o| *o == local).map(|i| RankLabel(i as u8))
    }
}

impl fmt::Debug for RankLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl fmt::Display for RankLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The partition of the assembly by the label each voter gives the triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelClasses {
    pub triple: [usize; 3],
    assembly: Assembly,
    classes: [u32; 6],
}

impl LabelClasses {
    /// `K(p)`.
    pub fn class(&self, p: RankLabel) -> Coalition {
        self.union(&[p])
    }

    /// `K(p, q, ...)`, the union of the classes of `labels`.
    pub fn union(&self, labels: &[RankLabel]) -> Coalition {
        let mask = labels.iter().fold(0, |m, l| m | self.classes[l.0 as usize]);
        Coalition::from_mask(self.assembly, mask).expect("class masks lie in the assembly")
    }

    /// `|K(1)|, ..., |K(6)|`.
    pub fn sizes(&self) -> [usize; 6] {
        self.classes.map(|m| m.count_ones() as usize)
    }
}

pub fn label_profile(p: &Profile, triple: [usize; 3]) -> Result<LabelClasses, ProfileError> {
    check_triple(p, triple)?;
    let assembly = Assembly::new(p.voters())?;
    let mut classes = [0u32; 6];
    for (v, r) in p.rankings().iter().enumerate() {
        let label = RankLabel::of_order(r.restrict(triple), triple).expect("restriction is an order of the triple");
        classes[label.0 as usize] |= 1 << v;
    }
    Ok(LabelClasses { triple, assembly, classes })
}

fn check_triple(p: &Profile, triple: [usize; 3]) -> Result<(), ProfileError> {
    let [a, b, c] = triple;
    if a == b || b == c || a == c || triple.iter().any(|&x| x >= p.candidates()) {
        return Err(ProfileError::BadTriple(triple));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ProfileCondition {
    S,
    T,
    V,
}

impl FromStr for ProfileCondition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "S" => Ok(ProfileCondition::S),
            "T" => Ok(ProfileCondition::T),
            "V" => Ok(ProfileCondition::V),
            other => Err(format!("unknown profile condition `{other}` (expected S, T or V)")),
        }
    }
}

impl fmt::Display for ProfileCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Evaluates (S), (T) or (V) literally over `p ∈ ℤ/6`:
///
/// * (S): some `K(p, p+1)` or `K(p, p+3)` is empty;
/// * (T): some `K(p, p+1)` is efficacious;
/// * (V): for some `p`, `K(p, p+1, p+2)` and `K(p+1, p+2, p+3)` are both
///   efficacious.
pub fn check_profile_condition(
    p: &Profile,
    vs: &VotingSystem,
    cond: ProfileCondition,
    triple: [usize; 3],
) -> Result<bool, ProfileError> {
    if vs.size() != p.voters() {
        return Err(ProfileError::SizeMismatch { voters: p.voters(), assembly: vs.size() });
    }
    let k = label_profile(p, triple)?;
    let holds = RankLabel::ALL.iter().any(|&q| match cond {
        ProfileCondition::S => k.union(&[q, q.plus(1)]).is_empty() || k.union(&[q, q.plus(3)]).is_empty(),
        ProfileCondition::T => vs.is_efficacious(k.union(&[q, q.plus(1)])),
        ProfileCondition::V => {
            vs.is_efficacious(k.union(&[q, q.plus(1), q.plus(2)]))
                && vs.is_efficacious(k.union(&[q.plus(1), q.plus(2), q.plus(3)]))
        }
    });
    Ok(holds)
}

/// Some candidate of the triple never occupies some rank `r ∈ {1, 2, 3}`
/// among the voters' rankings restricted to the triple.
pub fn sen_condition(p: &Profile, triple: [usize; 3]) -> Result<bool, ProfileError> {
    check_triple(p, triple)?;
    let mut occupied = [[false; 3]; 3];
    for r in p.rankings() {
        for (rank, x) in r.restrict(triple).into_iter().enumerate() {
            let t = triple.iter().position(|&y| y == x).expect("member of the triple");
            occupied[t][rank] = true;
        }
    }
    Ok(occupied.iter().any(|ranks| ranks.iter().any(|&o| !o)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub s: bool,
    pub t: bool,
    pub v: bool,
    /// The collective relation has no cycle.
    pub coherent: bool,
    /// `S ⇒ T`, `T ⇒ V` and `V ⇔ coherent` all hold.
    pub chain_ok: bool,
}

/// Conditions (S), (T), (V) for the three candidates of `p`, against the
/// coherence of the collective relation under `vs`.
pub fn coherence_theorem_check(p: &Profile, vs: &VotingSystem) -> Result<CoherenceReport, ProfileError> {
    if p.candidates() != 3 {
        return Err(ProfileError::Precondition(format!(
            "the coherence theorem is stated for 3 candidates, got {}",
            p.candidates()
        )));
    }
    if !check_condition(vs, Condition::C1) || !check_condition(vs, Condition::C2) {
        return Err(ProfileError::Precondition("the voting system must satisfy C1 and C2".into()));
    }
    let triple = [0, 1, 2];
    let s = check_profile_condition(p, vs, ProfileCondition::S, triple)?;
    let t = check_profile_condition(p, vs, ProfileCondition::T, triple)?;
    let v = check_profile_condition(p, vs, ProfileCondition::V, triple)?;
    let coherent = find_cycle(&collective_relation(p, vs)?).is_none();
    let chain_ok = (!s || t) && (!t || v) && v == coherent;
    Ok(CoherenceReport { s, t, v, coherent, chain_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalitions::{make_dictator, make_majority};

    fn from_labels(labels: &[i64]) -> Profile {
        let orders: Vec<Vec<usize>> = labels.iter().map(|&l| RankLabel::new(l).order([0, 1, 2]).to_vec()).collect();
        Profile::from_orders(3, &orders).unwrap()
    }

    #[test]
    fn label_table() {
        let t = [0, 1, 2];
        assert_eq!(RankLabel::new(1).order(t), [0, 1, 2]);
        assert_eq!(RankLabel::new(3).order(t), [2, 0, 1]);
        assert_eq!(RankLabel::new(6).order(t), [1, 0, 2]);
        for l in RankLabel::ALL {
            assert_eq!(RankLabel::of_order(l.order(t), t), Some(l));
            // p and p + 3 are reversed orders
            let mut rev = l.order(t);
            rev.reverse();
            assert_eq!(l.plus(3).order(t), rev);
            // p and p + 1 share the first or the last candidate
            let (o, q) = (l.order(t), l.plus(1).order(t));
            assert!(o[0] == q[0] || o[2] == q[2]);
        }
        assert_eq!(RankLabel::new(6).plus(1), RankLabel::new(1));
        assert_eq!(RankLabel::new(7), RankLabel::new(1));
    }

    #[test]
    fn labels_on_another_triple() {
        let p = Profile::from_orders(4, &[vec![3, 0, 2, 1]]).unwrap();
        // restricted to (3, 2, 1): 3 > 2 > 1 is a > b > c
        let k = label_profile(&p, [3, 2, 1]).unwrap();
        assert_eq!(k.sizes(), [1, 0, 0, 0, 0, 0]);
        assert!(matches!(label_profile(&p, [0, 0, 1]), Err(ProfileError::BadTriple(_))));
    }

    #[test]
    fn first_separating_profile() {
        let p = from_labels(&[1, 1, 1, 3, 5]);
        let k = label_profile(&p, [0, 1, 2]).unwrap();
        assert_eq!(k.sizes(), [3, 0, 1, 0, 1, 0]);
        let maj = make_majority(5, None).unwrap();
        assert!(check_profile_condition(&p, &maj, ProfileCondition::T, [0, 1, 2]).unwrap());
        assert!(!check_profile_condition(&p, &maj, ProfileCondition::S, [0, 1, 2]).unwrap());
        assert!(!sen_condition(&p, [0, 1, 2]).unwrap());
    }

    #[test]
    fn second_separating_profile() {
        let p = from_labels(&[1, 2, 3, 4, 5]);
        let k = label_profile(&p, [0, 1, 2]).unwrap();
        assert_eq!(k.sizes(), [1, 1, 1, 1, 1, 0]);
        let maj = make_majority(5, None).unwrap();
        assert!(check_profile_condition(&p, &maj, ProfileCondition::V, [0, 1, 2]).unwrap());
        assert!(!check_profile_condition(&p, &maj, ProfileCondition::T, [0, 1, 2]).unwrap());
        let report = coherence_theorem_check(&p, &maj).unwrap();
        assert!(report.v && report.coherent && report.chain_ok);
    }

    #[test]
    fn three_friends_are_incoherent() {
        let p = from_labels(&[1, 5, 3]);
        let report = coherence_theorem_check(&p, &make_majority(3, None).unwrap()).unwrap();
        assert_eq!(report, CoherenceReport { s: false, t: false, v: false, coherent: false, chain_ok: true });
    }

    #[test]
    fn unanimity() {
        let p = from_labels(&[2, 2, 2]);
        let k = label_profile(&p, [0, 1, 2]).unwrap();
        assert_eq!(k.class(RankLabel::new(2)).len(), 3);
        let maj = make_majority(3, None).unwrap();
        assert!(check_profile_condition(&p, &maj, ProfileCondition::S, [0, 1, 2]).unwrap());
        assert!(sen_condition(&p, [0, 1, 2]).unwrap());
        let report = coherence_theorem_check(&p, &make_dictator(3, 1).unwrap()).unwrap();
        assert!(report.s && report.t && report.v && report.coherent && report.chain_ok);
    }

    #[test]
    fn latin_square_violates_sen() {
        assert!(!sen_condition(&from_labels(&[1, 3, 5]), [0, 1, 2]).unwrap());
    }

    #[test]
    fn preconditions() {
        let p = from_labels(&[1, 2, 3, 4]);
        let err = coherence_theorem_check(&p, &make_majority(4, None).unwrap()).unwrap_err();
        assert!(matches!(err, ProfileError::Precondition(_)));
        let four = Profile::from_orders(4, &[vec![0, 1, 2, 3]]).unwrap();
        let err = coherence_theorem_check(&four, &make_dictator(1, 0).unwrap()).unwrap_err();
        assert!(matches!(err, ProfileError::Precondition(_)));
    }
}

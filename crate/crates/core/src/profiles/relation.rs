use std::collections::VecDeque;

use serde::Serialize;

use super::{Profile, ProfileError};
use crate::coalitions::VotingSystem;
use crate::family;

/// `count(x, y)` = number of voters ranking `x` above `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tally {
    voters: usize,
    counts: Vec<Vec<usize>>,
}

impl Tally {
    pub fn voters(&self) -> usize {
        self.voters
    }

    pub fn candidates(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, x: usize, y: usize) -> usize {
        self.counts[x][y]
    }
}

pub fn pairwise_tally(p: &Profile) -> Tally {
    let c = p.candidates();
    let mut counts = vec![vec![0; c]; c];
    for r in p.rankings() {
        let order = r.order();
        for (i, &x) in order.iter().enumerate() {
            for &y in &order[i + 1..] {
                counts[x][y] += 1;
            }
        }
    }
    Tally { voters: p.voters(), counts }
}

/// Strict collective preference: `prefers(x, y)` means `x` beats `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CollectiveRelation {
    strict: Vec<Vec<bool>>,
}

impl CollectiveRelation {
    /// From a square matrix; the diagonal is ignored.
    pub fn from_matrix(mut strict: Vec<Vec<bool>>) -> Self {
        for (i, row) in strict.iter_mut().enumerate() {
            row[i] = false;
        }
        CollectiveRelation { strict }
    }

    pub fn from_pairs(candidates: usize, pairs: &[(usize, usize)]) -> Self {
        let mut strict = vec![vec![false; candidates]; candidates];
        for &(x, y) in pairs {
            strict[x][y] = true;
        }
        CollectiveRelation::from_matrix(strict)
    }

    pub fn candidates(&self) -> usize {
        self.strict.len()
    }

    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.strict[x][y]
    }

    /// Exactly one direction holds for every pair of distinct candidates.
    pub fn is_total_asymmetric(&self) -> bool {
        let c = self.candidates();
        (0..c).all(|x| (x + 1..c).all(|y| self.strict[x][y] != self.strict[y][x]))
    }

    /// Pairs of distinct candidates on which neither direction holds.
    pub fn undecided_pairs(&self) -> Vec<(usize, usize)> {
        let c = self.candidates();
        (0..c)
            .flat_map(|x| (x + 1..c).map(move |y| (x, y)))
            .filter(|&(x, y)| !self.strict[x][y] && !self.strict[y][x])
            .collect()
    }

    /// The candidates from best to worst, when the relation is a strict
    /// total order.
    pub fn linear_order(&self) -> Option<Vec<usize>> {
        if !self.is_total_asymmetric() || find_cycle(self).is_some() {
            return None;
        }
        let c = self.candidates();
        let mut order: Vec<usize> = (0..c).collect();
        // In a strict total order the number of beaten candidates is unique.
        order.sort_by_key(|&x| std::cmp::Reverse((0..c).filter(|&y| self.strict[x][y]).count()));
        Some(order)
    }

    pub fn restrict(&self, members: &[usize]) -> CollectiveRelation {
        let strict = members
            .iter()
            .map(|&x| members.iter().map(|&y| self.strict[x][y]).collect())
            .collect();
        CollectiveRelation { strict }
    }
}

/// `x > y` iff the coalition of voters ranking `x` above `y` is efficacious.
/// Under a system violating C1 some pairs may stay undecided, or be decided
/// both ways; [`CollectiveRelation::is_total_asymmetric`] reports it.
pub fn collective_relation(p: &Profile, vs: &VotingSystem) -> Result<CollectiveRelation, ProfileError> {
    if vs.size() != p.voters() {
        return Err(ProfileError::SizeMismatch { voters: p.voters(), assembly: vs.size() });
    }
    let c = p.candidates();
    let mut strict = vec![vec![false; c]; c];
    for x in 0..c {
        for y in 0..c {
            if x == y {
                continue;
            }
            let members: Vec<usize> = (0..p.voters()).filter(|&v| p.ranking(v).prefers(x, y)).collect();
            strict[x][y] = vs.family().contains(family::mask_of(&members));
        }
    }
    Ok(CollectiveRelation { strict })
}

/// Simple majority by strict tally: `x > y` iff more than half the voters
/// rank `x` above `y`. Works for any number of voters; with an even number
/// a pair tied at half stays undecided.
pub fn majority_relation(p: &Profile) -> CollectiveRelation {
    let tally = pairwise_tally(p);
    let n = p.voters();
    let c = p.candidates();
    let strict = (0..c)
        .map(|x| (0..c).map(|y| x != y && 2 * tally.count(x, y) > n).collect())
        .collect();
    CollectiveRelation { strict }
}

/// A shortest directed cycle, listed from its least candidate.
///
/// Among cycles of minimal length the one with the least starting candidate
/// is chosen, and the path is found by breadth-first search visiting
/// candidates in increasing order, so the answer is deterministic.
pub fn find_cycle(r: &CollectiveRelation) -> Option<Vec<usize>> {
    let c = r.candidates();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..c {
        // Cycles whose least member is `start`.
        let mut parent = vec![usize::MAX; c];
        let mut queue = VecDeque::from([start]);
        let mut closing = None;
        'bfs: while let Some(x) = queue.pop_front() {
            for y in start..c {
                if !r.prefers(x, y) {
                    continue;
                }
                if y == start {
                    closing = Some(x);
                    break 'bfs;
                }
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if let Some(mut x) = closing {
            let mut cycle = vec![];
            while x != start {
                cycle.push(x);
                x = parent[x];
            }
            cycle.push(start);
            cycle.reverse();
            if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                best = Some(cycle);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalitions::{make_dictator, make_majority};

    fn friends() -> Profile {
        Profile::from_orders(3, &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap()
    }

    #[test]
    fn tally_is_complementary() {
        let p = friends();
        let t = pairwise_tally(&p);
        for x in 0..3 {
            for y in 0..3 {
                if x != y {
                    assert_eq!(t.count(x, y) + t.count(y, x), 3);
                }
            }
        }
        assert_eq!(t.count(0, 1), 2);
    }

    #[test]
    fn single_voter_tally() {
        let p = Profile::from_orders(3, &[vec![0, 1, 2]]).unwrap();
        let t = pairwise_tally(&p);
        assert_eq!((t.count(0, 1), t.count(1, 0)), (1, 0));
        assert_eq!((t.count(1, 2), t.count(0, 2)), (1, 1));
    }

    #[test]
    fn three_friends_cycle() {
        let r = collective_relation(&friends(), &make_majority(3, None).unwrap()).unwrap();
        assert!(r.is_total_asymmetric());
        assert_eq!(find_cycle(&r), Some(vec![0, 1, 2]));
        assert_eq!(r.linear_order(), None);
    }

    #[test]
    fn dictator_copies_the_dictator() {
        let p = friends();
        for d in 0..3 {
            let r = collective_relation(&p, &make_dictator(3, d).unwrap()).unwrap();
            assert_eq!(r.linear_order().unwrap(), p.ranking(d).order());
        }
    }

    #[test]
    fn size_mismatch() {
        let err = collective_relation(&friends(), &make_majority(5, None).unwrap()).unwrap_err();
        assert_eq!(err, ProfileError::SizeMismatch { voters: 3, assembly: 5 });
    }

    #[test]
    fn transitive_relation_has_no_cycle() {
        let r = CollectiveRelation::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(find_cycle(&r), None);
        assert_eq!(r.linear_order(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn embedded_triangle_is_found() {
        // 0 beats everyone; 1 > 2 > 3 > 1.
        let r = CollectiveRelation::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]);
        assert_eq!(find_cycle(&r), Some(vec![1, 2, 3]));
    }

    #[test]
    fn shortest_cycle_preferred() {
        // 0 > 1 > 2 > 3 > 0 plus the chord 2 > 0.
        let r = CollectiveRelation::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 0)]);
        assert_eq!(find_cycle(&r), Some(vec![0, 1, 2]));
    }

    #[test]
    fn even_majority_leaves_ties_undecided() {
        let p = Profile::from_orders(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let r = majority_relation(&p);
        assert_eq!(r.undecided_pairs(), vec![(0, 1)]);
        assert!(!r.is_total_asymmetric());
    }
}

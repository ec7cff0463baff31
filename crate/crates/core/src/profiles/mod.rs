//! Preference profiles and their collective relations.
//!
//! Voters rank the candidates by strict total orders. Under a voting system
//! on the assembly of voters, `x` is collectively preferred to `y` when the
//! coalition of voters ranking `x` above `y` is efficacious. For a triple of
//! candidates the six orders carry labels in `ℤ/6`, arranged so that labels
//! `p` and `p + 1` differ by one adjacent swap and `p + 3` is the reverse of
//! `p`:
//!
//! | label | order |
//! |-------|-----------|
//! | 1 | a > b > c |
//! | 2 | a > c > b |
//! | 3 | c > a > b |
//! | 4 | c > b > a |
//! | 5 | b > c > a |
//! | 6 | b > a > c |

mod election;
mod probability;
mod relation;
mod triple;

pub use election::{run_election, CandidateVotes, ElectionMethod, ElectionOutcome, PairResult};
pub use probability::{cycle_probability, MAX_PROBABILITY_VOTERS};
pub use relation::{collective_relation, find_cycle, majority_relation, pairwise_tally, CollectiveRelation, Tally};
pub use triple::{
    check_profile_condition, coherence_theorem_check, label_profile, sen_condition, CoherenceReport, LabelClasses,
    ProfileCondition, RankLabel,
};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coalitions::CoalitionError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("ranking {0:?} is not a permutation of the candidates")]
    NotPermutation(Vec<usize>),
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("candidate `{0}` is listed twice")]
    DuplicateCandidate(String),
    #[error("a profile needs at least one voter")]
    NoVoters,
    #[error("a profile needs at least one candidate")]
    NoCandidates,
    #[error("profile has {voters} voters but the voting system has {assembly} members")]
    SizeMismatch { voters: usize, assembly: usize },
    #[error("candidate triple {0:?} must consist of three distinct candidates")]
    BadTriple([usize; 3]),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("malformed profile document: {0}")]
    Format(String),
    #[error(transparent)]
    Coalition(#[from] CoalitionError),
}

/// A strict total order of candidates `0..c`, best first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    order: Vec<usize>,
    // position[x] = rank of x, 0 = best
    position: Vec<usize>,
}

impl Ranking {
    pub fn new(order: Vec<usize>) -> Result<Self, ProfileError> {
        let c = order.len();
        let mut position = vec![usize::MAX; c];
        for (rank, &x) in order.iter().enumerate() {
            if x >= c || position[x] != usize::MAX {
                return Err(ProfileError::NotPermutation(order));
            }
            position[x] = rank;
        }
        Ok(Ranking { order, position })
    }

    pub fn candidates(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Rank of `x`, 0 for the favourite.
    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.position[x] < self.position[y]
    }

    /// The three candidates of `triple` in this ranking's order.
    pub fn restrict(&self, triple: [usize; 3]) -> [usize; 3] {
        let mut t = triple;
        t.sort_by_key(|&x| self.position[x]);
        t
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(">"))
    }
}

/// One ranking per voter, together with the candidate names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    names: Vec<String>,
    rankings: Vec<Ranking>,
}

impl Profile {
    pub fn new(names: Vec<String>, rankings: Vec<Ranking>) -> Result<Self, ProfileError> {
        if names.is_empty() {
            return Err(ProfileError::NoCandidates);
        }
        if rankings.is_empty() {
            return Err(ProfileError::NoVoters);
        }
        let mut seen = HashMap::new();
        for name in &names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(ProfileError::DuplicateCandidate(name.clone()));
            }
        }
        if let Some(bad) = rankings.iter().find(|r| r.candidates() != names.len()) {
            return Err(ProfileError::NotPermutation(bad.order.clone()));
        }
        Ok(Profile { names, rankings })
    }

    /// Candidates named `a`, `b`, `c`, ... and rankings given by candidate
    /// index, best first.
    pub fn from_orders(candidates: usize, orders: &[Vec<usize>]) -> Result<Self, ProfileError> {
        let rankings = orders.iter().map(|o| Ranking::new(o.clone())).collect::<Result<_, _>>()?;
        Profile::new(default_names(candidates), rankings)
    }

    /// Builds the per-voter form from `(ranking, count)` groups; voters are
    /// numbered group by group.
    pub fn from_counts(names: Vec<String>, groups: &[(Ranking, usize)]) -> Result<Self, ProfileError> {
        let rankings = groups
            .iter()
            .flat_map(|(r, count)| std::iter::repeat_n(r.clone(), *count))
            .collect();
        Profile::new(names, rankings)
    }

    pub fn voters(&self) -> usize {
        self.rankings.len()
    }

    pub fn candidates(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn ranking(&self, voter: usize) -> &Ranking {
        &self.rankings[voter]
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    /// Maximal runs of equal consecutive rankings, in voter order.
    pub fn condensed(&self) -> Vec<(Ranking, usize)> {
        let mut out: Vec<(Ranking, usize)> = Vec::new();
        for r in &self.rankings {
            match out.last_mut() {
                Some((last, count)) if last == r => *count += 1,
                _ => out.push((r.clone(), 1)),
            }
        }
        out
    }

    pub fn candidate_index(&self, name: &str) -> Result<usize, ProfileError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ProfileError::UnknownCandidate(name.to_string()))
    }

    pub fn to_doc(&self) -> ProfileDoc {
        ProfileDoc {
            candidates: self.names.clone(),
            ballots: self
                .condensed()
                .into_iter()
                .map(|(r, count)| Ballot { ranking: r.order.iter().map(|&x| self.names[x].clone()).collect(), count })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("profile serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ProfileError> {
        let doc: ProfileDoc = serde_json::from_str(text).map_err(|e| ProfileError::Format(e.to_string()))?;
        doc.try_into()
    }
}

pub(crate) fn default_names(candidates: usize) -> Vec<String> {
    (0..candidates)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("c{i}")
            }
        })
        .collect()
}

/// JSON shape of a profile:
/// `{"candidates": ["A","B","C"], "ballots": [{"ranking": ["A","C","B"], "count": 23}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProfileDoc {
    pub candidates: Vec<String>,
    pub ballots: Vec<Ballot>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Ballot {
    pub ranking: Vec<String>,
    pub count: usize,
}

impl TryFrom<ProfileDoc> for Profile {
    type Error = ProfileError;

    fn try_from(doc: ProfileDoc) -> Result<Self, Self::Error> {
        let index: HashMap<&str, usize> = doc.candidates.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        if index.len() != doc.candidates.len() {
            let dup = doc
                .candidates
                .iter()
                .enumerate()
                .find(|(i, n)| index[n.as_str()] != *i)
                .map(|(_, n)| n.clone())
                .unwrap_or_default();
            return Err(ProfileError::DuplicateCandidate(dup));
        }
        let mut groups = Vec::with_capacity(doc.ballots.len());
        for ballot in &doc.ballots {
            let order = ballot
                .ranking
                .iter()
                .map(|name| index.get(name.as_str()).copied().ok_or_else(|| ProfileError::UnknownCandidate(name.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            if order.len() != doc.candidates.len() {
                return Err(ProfileError::Format(format!(
                    "ballot {:?} must rank all {} candidates strictly",
                    ballot.ranking,
                    doc.candidates.len()
                )));
            }
            groups.push((Ranking::new(order)?, ballot.count));
        }
        Profile::from_counts(doc.candidates, &groups)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranking_rejects_repeats() {
        assert!(Ranking::new(vec![0, 2, 1]).is_ok());
        assert!(matches!(Ranking::new(vec![0, 0, 1]), Err(ProfileError::NotPermutation(_))));
        assert!(matches!(Ranking::new(vec![0, 3, 1]), Err(ProfileError::NotPermutation(_))));
    }

    #[test]
    fn restriction_follows_the_ranking() {
        let r = Ranking::new(vec![3, 1, 0, 2]).unwrap();
        assert_eq!(r.restrict([0, 1, 2]), [1, 0, 2]);
        assert!(r.prefers(3, 2));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"candidates":["A","B","C"],"ballots":[{"ranking":["A","C","B"],"count":2},{"ranking":["C","B","A"],"count":1}]}"#;
        let p = Profile::from_json(text).unwrap();
        assert_eq!(p.voters(), 3);
        assert_eq!(p.ranking(2).order(), &[2, 1, 0]);
        let again = Profile::from_json(&p.to_json()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn json_errors_are_specific() {
        let unknown = r#"{"candidates":["A","B"],"ballots":[{"ranking":["A","Z"],"count":1}]}"#;
        assert_eq!(Profile::from_json(unknown), Err(ProfileError::UnknownCandidate("Z".into())));
        let tie = r#"{"candidates":["A","B","C"],"ballots":[{"ranking":["A","B"],"count":1}]}"#;
        assert!(matches!(Profile::from_json(tie), Err(ProfileError::Format(_))));
        let dup = r#"{"candidates":["A","A"],"ballots":[{"ranking":["A","A"],"count":1}]}"#;
        assert_eq!(Profile::from_json(dup), Err(ProfileError::DuplicateCandidate("A".into())));
        let empty = r#"{"candidates":["A","B"],"ballots":[{"ranking":["A","B"],"count":0}]}"#;
        assert_eq!(Profile::from_json(empty), Err(ProfileError::NoVoters));
    }

    #[test]
    fn condensed_form_groups_runs() {
        let p = Profile::from_orders(2, &[vec![0, 1], vec![0, 1], vec![1, 0]]).unwrap();
        let c = p.condensed();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].1, 2);
        assert_eq!(p.names(), &["a".to_string(), "b".to_string()]);
    }
}

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{find_cycle, majority_relation, pairwise_tally, Profile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElectionMethod {
    /// Most first places wins.
    Plurality,
    /// A first-place majority wins outright; otherwise the top two meet in a
    /// runoff decided by the full rankings.
    TwoRound,
    /// Simple majority on every pair.
    Pairwise,
}

impl FromStr for ElectionMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plurality" => Ok(ElectionMethod::Plurality),
            "two_round" | "two-round" => Ok(ElectionMethod::TwoRound),
            "pairwise" => Ok(ElectionMethod::Pairwise),
            other => Err(format!("unknown election method `{other}` (expected plurality, two_round or pairwise)")),
        }
    }
}

impl fmt::Display for ElectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElectionMethod::Plurality => "plurality",
            ElectionMethod::TwoRound => "two_round",
            ElectionMethod::Pairwise => "pairwise",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateVotes {
    pub candidate: String,
    pub votes: usize,
}

/// One pairwise contest; `winner` is the side with more votes, or the
/// earlier candidate on a tie.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairResult {
    pub winner: String,
    pub loser: String,
    pub winner_votes: usize,
    pub loser_votes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum ElectionOutcome {
    Plurality {
        voters: usize,
        first_places: Vec<CandidateVotes>,
        winner: String,
        votes: usize,
    },
    TwoRound {
        voters: usize,
        first_round: Vec<CandidateVotes>,
        /// Absent when a candidate won the first round outright.
        runoff: Option<Vec<CandidateVotes>>,
        winner: String,
        votes: usize,
    },
    Pairwise {
        voters: usize,
        contests: Vec<PairResult>,
        /// Best to worst, when the majority relation is a strict total order.
        ranking: Option<Vec<String>>,
        /// A shortest majority cycle, when there is one.
        cycle: Option<Vec<String>>,
    },
}

impl ElectionOutcome {
    pub fn winner(&self) -> Option<&str> {
        match self {
            ElectionOutcome::Plurality { winner, .. } | ElectionOutcome::TwoRound { winner, .. } => Some(winner),
            ElectionOutcome::Pairwise { ranking, .. } => ranking.as_ref().map(|r| r[0].as_str()),
        }
    }
}

/// Ties on votes are broken in favour of the lower candidate index.
pub fn run_election(p: &Profile, method: ElectionMethod) -> ElectionOutcome {
    let voters = p.voters();
    match method {
        ElectionMethod::Plurality => {
            let counts = first_places(p);
            let winner = leader(&counts, &(0..p.candidates()).collect::<Vec<_>>());
            ElectionOutcome::Plurality {
                voters,
                first_places: named(p, &counts),
                winner: p.name(winner).to_string(),
                votes: counts[winner],
            }
        }
        ElectionMethod::TwoRound => {
            let counts = first_places(p);
            let all: Vec<usize> = (0..p.candidates()).collect();
            let first = leader(&counts, &all);
            if 2 * counts[first] > voters || p.candidates() == 1 {
                return ElectionOutcome::TwoRound {
                    voters,
                    first_round: named(p, &counts),
                    runoff: None,
                    winner: p.name(first).to_string(),
                    votes: counts[first],
                };
            }
            let rest: Vec<usize> = all.into_iter().filter(|&x| x != first).collect();
            let second = leader(&counts, &rest);
            let tally = pairwise_tally(p);
            let (x, y) = (first.min(second), first.max(second));
            let (vx, vy) = (tally.count(x, y), tally.count(y, x));
            let (winner, votes) = if vx >= vy { (x, vx) } else { (y, vy) };
            ElectionOutcome::TwoRound {
                voters,
                first_round: named(p, &counts),
                runoff: Some(vec![
                    CandidateVotes { candidate: p.name(x).to_string(), votes: vx },
                    CandidateVotes { candidate: p.name(y).to_string(), votes: vy },
                ]),
                winner: p.name(winner).to_string(),
                votes,
            }
        }
        ElectionMethod::Pairwise => {
            let tally = pairwise_tally(p);
            let c = p.candidates();
            let mut contests = Vec::new();
            for x in 0..c {
                for y in x + 1..c {
                    let (vx, vy) = (tally.count(x, y), tally.count(y, x));
                    let (w, l, vw, vl) = if vx >= vy { (x, y, vx, vy) } else { (y, x, vy, vx) };
                    contests.push(PairResult {
                        winner: p.name(w).to_string(),
                        loser: p.name(l).to_string(),
                        winner_votes: vw,
                        loser_votes: vl,
                    });
                }
            }
            let relation = majority_relation(p);
            let names = |xs: Vec<usize>| xs.into_iter().map(|x| p.name(x).to_string()).collect::<Vec<_>>();
            ElectionOutcome::Pairwise {
                voters,
                contests,
                ranking: relation.linear_order().map(names),
                cycle: find_cycle(&relation).map(names),
            }
        }
    }
}

fn first_places(p: &Profile) -> Vec<usize> {
    let mut counts = vec![0; p.candidates()];
    for r in p.rankings() {
        counts[r.order()[0]] += 1;
    }
    counts
}

fn leader(counts: &[usize], among: &[usize]) -> usize {
    // max_by_key keeps the last maximum, so scan from the back
    *among.iter().rev().max_by_key(|&&x| counts[x]).expect("at least one candidate")
}

fn named(p: &Profile, counts: &[usize]) -> Vec<CandidateVotes> {
    counts
        .iter()
        .enumerate()
        .map(|(x, &votes)| CandidateVotes { candidate: p.name(x).to_string(), votes })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_go_to_the_lower_index() {
        let p = Profile::from_orders(3, &[vec![1, 0, 2], vec![2, 0, 1]]).unwrap();
        assert_eq!(run_election(&p, ElectionMethod::Plurality).winner(), Some("b"));
    }

    #[test]
    fn outright_majority_skips_the_runoff() {
        let p = Profile::from_orders(3, &[vec![1, 0, 2], vec![1, 2, 0], vec![0, 1, 2]]).unwrap();
        match run_election(&p, ElectionMethod::TwoRound) {
            ElectionOutcome::TwoRound { runoff, winner, votes, .. } => {
                assert_eq!(runoff, None);
                assert_eq!((winner.as_str(), votes), ("b", 2));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn runoff_uses_full_rankings() {
        // first places a:2 b:2 c:1; c's voter prefers b to a
        let p = Profile::from_orders(
            3,
            &[vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 1, 0]],
        )
        .unwrap();
        let out = run_election(&p, ElectionMethod::TwoRound);
        assert_eq!(out.winner(), Some("b"));
    }

    #[test]
    fn method_names() {
        assert_eq!("two-round".parse::<ElectionMethod>(), Ok(ElectionMethod::TwoRound));
        assert!("borda".parse::<ElectionMethod>().is_err());
        assert_eq!(ElectionMethod::Pairwise.to_string(), "pairwise");
    }
}

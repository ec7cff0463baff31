use serde::Serialize;
use ultravote::coalitions::{make_majority, VotingSystem};
use ultravote::profiles::{
    check_profile_condition, coherence_theorem_check, collective_relation, cycle_probability, find_cycle, majority_relation,
    pairwise_tally, run_election, CandidateVotes, ElectionMethod, ElectionOutcome, Profile, ProfileCondition,
};

use super::load_system;
use crate::error::{read, CliError};
use crate::output::{table, yes_no, Out, Verdict};
use crate::{ElectCmd, SystemArgs};

fn load_profile(path: &std::path::Path) -> Result<Profile, CliError> {
    Ok(Profile::from_json(&read(path)?)?)
}

/// The given system, or simple majority on the voters (chaired by voter 0
/// when their number is even, so that C1 holds).
fn system_for(p: &Profile, source: &SystemArgs) -> Result<VotingSystem, CliError> {
    match load_system(source)? {
        Some(vs) => Ok(vs),
        None => {
            let n = p.voters();
            Ok(make_majority(n, n.is_multiple_of(2).then_some(0))?)
        }
    }
}

fn vote_lines(votes: &[CandidateVotes]) -> String {
    votes.iter().map(|c| format!("  {}: {}\n", c.candidate, c.votes)).collect()
}

fn describe(outcome: &ElectionOutcome) -> String {
    match outcome {
        ElectionOutcome::Plurality { voters, first_places, winner, votes } => {
            format!("plurality, {voters} voters\n{}winner: {winner} with {votes}\n", vote_lines(first_places))
        }
        ElectionOutcome::TwoRound { voters, first_round, runoff, winner, votes } => {
            let mut s = format!("two-round, {voters} voters\nfirst round:\n{}", vote_lines(first_round));
            if let Some(r) = runoff {
                s.push_str(&format!("runoff:\n{}", vote_lines(r)));
            }
            s + &format!("winner: {winner} with {votes}\n")
        }
        ElectionOutcome::Pairwise { voters, contests, ranking, cycle } => {
            let mut s = format!("pairwise, {voters} voters\n");
            for c in contests {
                s.push_str(&format!("  {} beats {} {}-{}\n", c.winner, c.loser, c.winner_votes, c.loser_votes));
            }
            if let Some(r) = ranking {
                s.push_str(&format!("ranking: {}\n", r.join(" > ")));
            }
            if let Some(c) = cycle {
                s.push_str(&format!("cycle: {} > {}\n", c.join(" > "), c[0]));
            }
            s
        }
    }
}

#[derive(Serialize)]
struct TallyReport {
    candidates: Vec<String>,
    /// `counts[x][y]`: voters ranking `x` above `y`.
    counts: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct CycleReport {
    /// Pairs `[x, y]` with `x` collectively preferred to `y`.
    relation: Vec<[String; 2]>,
    undecided: Vec<[String; 2]>,
    cycle: Option<Vec<String>>,
}

#[derive(Serialize)]
struct TripleReport {
    triple: [String; 3],
    s: bool,
    t: bool,
    v: bool,
}

#[derive(Serialize)]
struct ProbabilityReport {
    voters: usize,
    probability: String,
    decimal: f64,
}

pub fn run(cmd: ElectCmd, out: &Out) -> Result<Verdict, CliError> {
    match cmd {
        ElectCmd::Run { method, profile } => {
            let method: ElectionMethod = method.parse().map_err(CliError::Usage)?;
            let outcome = run_election(&load_profile(&profile)?, method);
            out.emit(&outcome, || describe(&outcome));
            Ok(Verdict::Holds)
        }
        ElectCmd::Tally { profile } => {
            let p = load_profile(&profile)?;
            let t = pairwise_tally(&p);
            let c = p.candidates();
            let r = TallyReport {
                candidates: p.names().to_vec(),
                counts: (0..c).map(|x| (0..c).map(|y| if x == y { 0 } else { t.count(x, y) }).collect()).collect(),
            };
            out.emit(&r, || {
                let mut header = vec![""];
                header.extend(r.candidates.iter().map(String::as_str));
                let rows: Vec<Vec<String>> = (0..c)
                    .map(|x| {
                        std::iter::once(r.candidates[x].clone())
                            .chain((0..c).map(|y| if x == y { "-".into() } else { r.counts[x][y].to_string() }))
                            .collect()
                    })
                    .collect();
                table(&header, &rows)
            });
            Ok(Verdict::Holds)
        }
        ElectCmd::Cycles { profile, source } => {
            let p = load_profile(&profile)?;
            // without a system, the strict-majority relation, which needs no
            // coalition enumeration and so works for any number of voters
            let rel = match load_system(&source)? {
                Some(vs) => collective_relation(&p, &vs)?,
                None => majority_relation(&p),
            };
            let c = p.candidates();
            let name = |x: usize| p.name(x).to_string();
            let r = CycleReport {
                relation: (0..c)
                    .flat_map(|x| (0..c).map(move |y| (x, y)))
                    .filter(|&(x, y)| rel.prefers(x, y))
                    .map(|(x, y)| [name(x), name(y)])
                    .collect(),
                undecided: rel.undecided_pairs().into_iter().map(|(x, y)| [name(x), name(y)]).collect(),
                cycle: find_cycle(&rel).map(|cy| cy.into_iter().map(name).collect()),
            };
            out.emit(&r, || {
                let mut s: String = r.relation.iter().map(|[x, y]| format!("  {x} > {y}\n")).collect();
                for [x, y] in &r.undecided {
                    s.push_str(&format!("  {x} ? {y} (undecided)\n"));
                }
                match &r.cycle {
                    Some(cy) => s + &format!("cycle: {} > {}\n", cy.join(" > "), cy[0]),
                    None => s + "no cycle\n",
                }
            });
            Ok(Verdict::Holds)
        }
        ElectCmd::StvConditions { profile, source, triple } => {
            let p = load_profile(&profile)?;
            let vs = system_for(&p, &source)?;
            match triple {
                None if p.candidates() == 3 => {
                    let r = coherence_theorem_check(&p, &vs)?;
                    out.emit(&r, || {
                        format!(
                            "S: {}  T: {}  V: {}\ncollective relation acyclic: {}\nS => T => V <=> acyclic: {}\n",
                            yes_no(r.s),
                            yes_no(r.t),
                            yes_no(r.v),
                            yes_no(r.coherent),
                            yes_no(r.chain_ok)
                        )
                    });
                    Ok(Verdict::from_bool(r.chain_ok))
                }
                None => Err(CliError::Usage(format!(
                    "the profile has {} candidates; name three with --triple",
                    p.candidates()
                ))),
                Some(names) => {
                    let [a, b, c]: [String; 3] = names
                        .try_into()
                        .map_err(|_| CliError::Usage("--triple takes exactly three names".into()))?;
                    let idx = [p.candidate_index(&a)?, p.candidate_index(&b)?, p.candidate_index(&c)?];
                    let check = |cond| check_profile_condition(&p, &vs, cond, idx);
                    let r = TripleReport {
                        s: check(ProfileCondition::S)?,
                        t: check(ProfileCondition::T)?,
                        v: check(ProfileCondition::V)?,
                        triple: [a, b, c],
                    };
                    out.emit(&r, || {
                        format!(
                            "triple {}: S: {}  T: {}  V: {}\n",
                            r.triple.join(", "),
                            yes_no(r.s),
                            yes_no(r.t),
                            yes_no(r.v)
                        )
                    });
                    Ok(Verdict::Holds)
                }
            }
        }
        ElectCmd::Prob { voters } => {
            let p = cycle_probability(voters)?;
            let r = ProbabilityReport {
                voters,
                probability: p.to_string(),
                decimal: *p.numer() as f64 / *p.denom() as f64,
            };
            out.emit(&r, || format!("P(cycle, {voters} voters) = {} ≈ {:.6}", r.probability, r.decimal));
            Ok(Verdict::Holds)
        }
    }
}

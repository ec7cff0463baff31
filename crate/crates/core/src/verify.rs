//! End-to-end verification suites, one per acceptance criterion.
//!
//! Each suite returns a [`CriterionOutcome`] with a one-line summary; the
//! acceptance test and the command-line `verify all` both run [`run_all`].

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::{BigRational, Ratio};
use serde::Serialize;

use crate::additive::{build_diagonal, s_max, validate_diagonal, IntervalBasisFamily, Threshold};
use crate::banach::{
    banach_axioms_check, exact_limit, generalized_limit_estimate, SequenceWindow, Tail,
};
use crate::coalitions::{
    check_condition, enumerate_systems, find_dictator, guilbaud_report, incoherence_witness, is_ultrafilter,
    make_fano, make_majority, weight_representable, Condition, VotingSystem,
};
use crate::filters::{enumerate_filters, enumerate_ultrafilters, grille};
use crate::fintop::{count_correspondence, enumerate_topologies, normality_check, round_trip_check};
use crate::los::{close_sentence, los_verify, random_cases, transfer_check, CaseShape};
use crate::profiles::{
    coherence_theorem_check, cycle_probability, run_election, CoherenceReport, ElectionMethod, ElectionOutcome,
    Profile,
};
use crate::setlimits::{
    i_bracket, i_bracket_decomposition, limit_forms, limit_is_diagonal, limit_lemma_check, SetFamily,
};

/// Default seed of the randomized suites.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub const CONDORCET1: &str = include_str!("../data/condorcet1.json");
pub const CONDORCET2: &str = include_str!("../data/condorcet2.json");
pub const SEPARATION_T_NOT_S: &str = include_str!("../data/separation_t_not_s.json");
pub const SEPARATION_V_NOT_T: &str = include_str!("../data/separation_v_not_t.json");
pub const HALF_INTERVALS: &str = include_str!("../data/half_intervals.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(id: u8, name: &'static str, limit: Option<Duration>, run: impl FnOnce() -> (bool, String)) -> CriterionOutcome {
    let start = Instant::now();
    let (mut passed, mut detail) = run();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; exceeded the {}s budget", limit.as_secs_f64()));
        }
    }
    CriterionOutcome { id, name, passed, detail, elapsed }
}

fn error_outcome(e: impl fmt::Display) -> (bool, String) {
    (false, format!("error: {e}"))
}

/// Every suite, in criterion order.
pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    vec![
        equivalence_theorem(),
        guilbaud(),
        condorcet_probability(),
        historical_elections(),
        condition_separation(),
        coherence_theorem(),
        fano_system(),
        los_suite(seed),
        set_limits_suite(),
        additive_diagonal(),
        topology_correspondence(),
        banach_axioms(),
    ]
}

/// (C1 ∧ C2 ∧ C3) ⇔ (U1 ∧ U2) over every family of coalitions, `n <= 4`.
pub fn equivalence_theorem() -> CriterionOutcome {
    timed(1, "ultrafilter equivalence", Some(Duration::from_secs(60)), || {
        let mut families = 0usize;
        let mut discrepancies = 0usize;
        for n in 1..=4 {
            let systems = match enumerate_systems(n, &[]) {
                Ok(s) => s,
                Err(e) => return error_outcome(e),
            };
            for vs in systems {
                families += 1;
                let u = check_condition(&vs, Condition::U1) && check_condition(&vs, Condition::U2);
                if is_ultrafilter(&vs) != u {
                    discrepancies += 1;
                }
            }
        }
        (discrepancies == 0, format!("{families} families for 1 <= n <= 4, {discrepancies} discrepancies"))
    })
}

/// C1 ∧ C2 ∧ C3 systems are dictatorial for `n <= 4`, and an unpruned
/// enumeration finds the same number of them.
pub fn guilbaud() -> CriterionOutcome {
    timed(2, "dictatorship of coherent systems", None, || {
        let mut ok = true;
        let mut counts = Vec::new();
        for n in 1..=4 {
            let report = match guilbaud_report(n) {
                Ok(r) => r,
                Err(e) => return error_outcome(e),
            };
            let oracle = match enumerate_systems(n, &[]) {
                Ok(all) => all.filter(is_ultrafilter).count(),
                Err(e) => return error_outcome(e),
            };
            ok &= report.holds() && report.systems == oracle && oracle == n;
            counts.push(report.systems);
        }
        (ok, format!("systems for n = 1..4: {counts:?}, all dictatorial with singleton intersection: {ok}"))
    })
}

pub fn condorcet_probability() -> CriterionOutcome {
    timed(3, "Condorcet probability", Some(Duration::from_secs(1)), || match cycle_probability(3) {
        Ok(p) => (p == Ratio::new(1, 18), format!("P(3 voters) = {p}")),
        Err(e) => error_outcome(e),
    })
}

pub fn load_profile(text: &str) -> Profile {
    Profile::from_json(text).expect("bundled profile parses")
}

fn winner_votes(o: &ElectionOutcome) -> Option<(String, usize)> {
    match o {
        ElectionOutcome::Plurality { winner, votes, .. } | ElectionOutcome::TwoRound { winner, votes, .. } => {
            Some((winner.clone(), *votes))
        }
        ElectionOutcome::Pairwise { .. } => None,
    }
}

fn contest_triples(o: &ElectionOutcome) -> Vec<(String, String, usize)> {
    match o {
        ElectionOutcome::Pairwise { contests, .. } => {
            contests.iter().map(|c| (c.winner.clone(), c.loser.clone(), c.winner_votes)).collect()
        }
        _ => Vec::new(),
    }
}

/// The two sixty-voter examples.
pub fn historical_elections() -> CriterionOutcome {
    timed(4, "historical elections", None, || {
        let p1 = load_profile(CONDORCET1);
        let plurality = run_election(&p1, ElectionMethod::Plurality);
        let two_round = run_election(&p1, ElectionMethod::TwoRound);
        let pairwise = run_election(&p1, ElectionMethod::Pairwise);
        let s = |x: &str| x.to_string();
        let mut ok = winner_votes(&plurality) == Some((s("A"), 23)) && winner_votes(&two_round) == Some((s("B"), 35));
        let mut c1 = contest_triples(&pairwise);
        c1.sort();
        ok &= c1 == vec![(s("B"), s("A"), 35), (s("C"), s("A"), 37), (s("C"), s("B"), 41)];
        ok &= matches!(&pairwise, ElectionOutcome::Pairwise { ranking: Some(r), cycle: None, .. }
            if r == &vec![s("C"), s("B"), s("A")]);

        let p2 = load_profile(CONDORCET2);
        let pairwise2 = run_election(&p2, ElectionMethod::Pairwise);
        let mut c2 = contest_triples(&pairwise2);
        c2.sort();
        ok &= c2 == vec![(s("A"), s("B"), 33), (s("B"), s("C"), 42), (s("C"), s("A"), 35)];
        ok &= matches!(&pairwise2, ElectionOutcome::Pairwise { ranking: None, cycle: Some(_), .. });
        (
            ok,
            "example 1: plurality A (23), two-round B (35), pairwise C>B>A (41/35/37); example 2: cycle 33/42/35".into(),
        )
    })
}

pub fn separation_report(text: &str) -> CoherenceReport {
    let p = load_profile(text);
    let vs = make_majority(p.voters(), None).expect("small assembly");
    coherence_theorem_check(&p, &vs).expect("odd majority satisfies C1 and C2")
}

/// Two five-voter profiles separating (T) from (S) and (V) from (T).
pub fn condition_separation() -> CriterionOutcome {
    timed(5, "condition separation", None, || {
        let first = separation_report(SEPARATION_T_NOT_S);
        let second = separation_report(SEPARATION_V_NOT_T);
        let ok = first.t && !first.s && second.v && !second.t;
        (
            ok,
            format!(
                "labels 1,1,1,3,5: S={} T={}; labels 1,2,3,4,5: T={} V={}",
                first.s, first.t, second.t, second.v
            ),
        )
    })
}

fn all_profiles(voters: usize) -> impl Iterator<Item = Profile> {
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    (0..6usize.pow(voters as u32)).map(move |mut code| {
        let orders: Vec<Vec<usize>> = (0..voters)
            .map(|_| {
                let o = ORDERS[code % 6].to_vec();
                code /= 6;
                o
            })
            .collect();
        Profile::from_orders(3, &orders).expect("valid orders")
    })
}

/// (V) ⇔ coherence and S ⇒ T ⇒ V, for three candidates, up to four
/// voters and every C1 ∧ C2 system.
pub fn coherence_theorem() -> CriterionOutcome {
    timed(6, "coherence theorem", Some(Duration::from_secs(300)), || {
        let (mut cases, mut violations) = (0usize, 0usize);
        for n in 1..=4 {
            let systems: Vec<VotingSystem> = match enumerate_systems(n, &[Condition::C1, Condition::C2]) {
                Ok(s) => s.collect(),
                Err(e) => return error_outcome(e),
            };
            for p in all_profiles(n) {
                for vs in &systems {
                    cases += 1;
                    match coherence_theorem_check(&p, vs) {
                        Ok(r) if r.chain_ok => {}
                        _ => violations += 1,
                    }
                }
            }
        }
        (violations == 0, format!("{cases} (profile, system) pairs, {violations} violations"))
    })
}

/// Conditions, dictator and weights of the seven-member plane system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanoReport {
    pub members: usize,
    pub efficacious: usize,
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    pub dictator: Option<usize>,
    pub weights: Option<Vec<String>>,
    /// Two efficacious lines whose common point is not efficacious.
    pub incoherence: Option<[Vec<usize>; 3]>,
}

pub fn fano_report() -> FanoReport {
    let vs = make_fano();
    FanoReport {
        members: vs.size(),
        efficacious: vs.efficacious_count(),
        c1: check_condition(&vs, Condition::C1),
        c2: check_condition(&vs, Condition::C2),
        c3: check_condition(&vs, Condition::C3),
        dictator: find_dictator(&vs),
        weights: weight_representable(&vs).expect("seven members is within budget").map(|w| w.to_strings()),
        incoherence: incoherence_witness(&vs)
            .expect("C1 and C2 hold")
            .map(|w| [w.first.members(), w.second.members(), w.intersection.members()]),
    }
}

pub fn fano_system() -> CriterionOutcome {
    timed(7, "Fano system", None, || {
        let r = fano_report();
        let ok = r.c1 && r.c2 && !r.c3 && r.dictator.is_none() && r.weights.is_none();
        (
            ok,
            format!(
                "C1={} C2={} C3={} dictator={:?} weights={}",
                r.c1,
                r.c2,
                r.c3,
                r.dictator,
                if r.weights.is_some() { "found" } else { "none" }
            ),
        )
    })
}

/// Seeded random truth-lemma instances plus transfer on constant families.
pub fn los_suite(seed: u64) -> CriterionOutcome {
    timed(8, "truth lemma", None, || {
        let cases = random_cases(seed, 200, CaseShape::default());
        let (mut agree, mut transfer) = (0usize, 0usize);
        for case in &cases {
            match los_verify(&case.family, &case.ultrafilter, &case.formula, &case.choices) {
                Ok(r) if r.agree => agree += 1,
                Ok(_) => {}
                Err(e) => return error_outcome(e),
            }
            let sentence = close_sentence(&case.formula);
            match transfer_check(&case.family[0], case.family.len(), &case.ultrafilter, &sentence) {
                Ok(true) => transfer += 1,
                Ok(false) => {}
                Err(e) => return error_outcome(e),
            }
        }
        let n = cases.len();
        (agree == n && transfer == n, format!("seed {seed}: agreement {agree}/{n}, transfer {transfer}/{n}"))
    })
}

/// Every family on `|I| <= 3` indices over `|E| <= 4` points, against
/// every filter.
pub fn set_limits_suite() -> CriterionOutcome {
    timed(9, "set limits", None, || {
        let (mut checked, mut failures) = (0usize, 0usize);
        for indices in 1..=3usize {
            let filters = match enumerate_filters(indices) {
                Ok(f) => f,
                Err(e) => return error_outcome(e),
            };
            let ultras = enumerate_ultrafilters(indices).expect("small ground");
            for universe in 1..=4usize {
                let labels: Vec<String> = (0..universe).map(|x| x.to_string()).collect();
                let subsets = 1u32 << universe;
                for code in 0..subsets.pow(indices as u32) {
                    let masks: Vec<u32> = (0..indices).map(|i| code / subsets.pow(i as u32) % subsets).collect();
                    let fam = SetFamily::from_masks(labels.clone(), masks).expect("within bounds");
                    let forms: Vec<_> = filters.iter().map(|f| limit_forms(&fam, f).expect("matching index set")).collect();
                    for (a, fa) in forms.iter().enumerate() {
                        checked += 1;
                        let mut ok = fa.consistent() && fa.liminf_filter & !fa.limsup_filter == 0;
                        if filters[a].is_ultrafilter() {
                            ok &= fa.liminf_filter == fa.limsup_filter;
                        }
                        ok &= filters[a].family().is_subfamily_of(grille(&filters[a]).family());
                        for (b, fb) in forms.iter().enumerate() {
                            if filters[a].is_coarser_than(&filters[b]) {
                                ok &= fa.liminf_filter & !fb.liminf_filter == 0
                                    && fb.limsup_filter & !fa.limsup_filter == 0;
                            }
                        }
                        failures += usize::from(!ok);
                    }
                    for u in &ultras {
                        let ok = limit_lemma_check(&fam, u).unwrap_or(false) && limit_is_diagonal(&fam, u).unwrap_or(false);
                        failures += usize::from(!ok);
                    }
                    let full = (1u32 << universe) - 1;
                    let brackets_ok = (0..=full)
                        .all(|f_set| (0..=full).all(|m| i_bracket(&fam, f_set, m) == i_bracket_decomposition(&fam, f_set, m)));
                    failures += usize::from(!brackets_ok);
                }
            }
        }
        (failures == 0, format!("{checked} (family, filter) pairs, {failures} failures"))
    })
}

pub fn additive_diagonal() -> CriterionOutcome {
    timed(10, "additive diagonal", None, || {
        let fam = match IntervalBasisFamily::from_json(HALF_INTERVALS) {
            Ok(f) => f,
            Err(e) => return error_outcome(e),
        };
        let d = match build_diagonal(&fam, 16, Threshold::default()) {
            Ok(d) => d,
            Err(e) => return error_outcome(e),
        };
        let check = validate_diagonal(&fam, &d);
        let bound = fam.sample().map(|m| s_max(fam.basis(m).expect("sample member"), m)).max().unwrap_or(0);
        let ok = check.ok && check.sums_cover_to >= 16 && check.s <= bound;
        (
            ok,
            format!(
                "D = {:?}, D + D covers [0, {}], s(D) = {} <= {}, validator {}",
                d.set,
                check.sums_cover_to,
                check.s,
                bound,
                if check.ok { "confirms" } else { "rejects" }
            ),
        )
    })
}

pub fn topology_correspondence() -> CriterionOutcome {
    timed(11, "topologies and preorders", None, || {
        let mut ok = true;
        let mut counts = Vec::new();
        for (k, expected) in [(1, 1), (2, 4), (3, 29), (4, 355)] {
            let c = match count_correspondence(k) {
                Ok(c) => c,
                Err(e) => return error_outcome(e),
            };
            ok &= c.equal && c.topologies == expected;
            counts.push(c.topologies);
            ok &= round_trip_check(k).map(|r| r.holds()).unwrap_or(false);
        }
        let topologies = enumerate_topologies(4).expect("k = 4 is within bounds");
        let agreeing = topologies
            .iter()
            .filter(|t| normality_check(t).map(|r| r.agree && r.extremal_agree).unwrap_or(false))
            .count();
        ok &= agreeing == topologies.len();
        (
            ok,
            format!(
                "counts {counts:?}, round trips hold for k <= 4, normality agrees on {agreeing}/{}",
                topologies.len()
            ),
        )
    })
}

pub fn banach_axioms() -> CriterionOutcome {
    timed(12, "Banach limits", None, || {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let alternating = SequenceWindow::periodic(vec![r(0, 1), r(1, 1)]).expect("nonempty pattern");
        let inputs = vec![
            alternating.clone(),
            SequenceWindow::constant(r(1, 1)),
            SequenceWindow::new(vec![r(5, 1), r(-2, 1)], Some(Tail::Periodic(vec![r(1, 3), r(2, 1), r(-1, 2)])))
                .expect("valid"),
            SequenceWindow::new((1..=8).map(|n| r(1, n)).collect(), Some(Tail::Constant(r(0, 1)))).expect("valid"),
            SequenceWindow::new(vec![r(3, 1)], Some(Tail::Periodic(vec![r(1, 1), r(1, 1), r(4, 1), r(0, 1)])))
                .expect("valid"),
        ];
        let coefficients = vec![(r(1, 1), r(1, 1)), (r(2, 3), r(-5, 1)), (r(0, 1), r(7, 2)), (r(-1, 1), r(0, 1))];
        let report = match banach_axioms_check(&inputs, &coefficients) {
            Ok(r) => r,
            Err(e) => return error_outcome(e),
        };
        let half = exact_limit(&alternating).ok() == Some(r(1, 2))
            && generalized_limit_estimate(&alternating.shift().expect("periodic")).value == Some(r(1, 2));
        (
            report.holds() && half,
            format!(
                "linearity {} ({} cases), positivity {}, shift {}, normalization {}, sandwich {}; alternating 0/1 -> {}",
                report.linearity,
                report.linear_cases,
                report.positivity,
                report.shift_invariance,
                report.normalization,
                report.sandwich,
                if half { "1/2" } else { "wrong value" }
            ),
        )
    })
}

use num_rational::Ratio;
use proptest::prelude::*;
use ultravote::coalitions::{enumerate_systems, make_majority, Condition};
use ultravote::profiles::{
    coherence_theorem_check, collective_relation, cycle_probability, find_cycle, majority_relation,
    pairwise_tally, run_election, ElectionMethod, Profile, Ranking,
};

const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Share of the `6^n` profiles whose strict pairwise majorities form a
/// three-cycle, by direct counting.
fn cycle_share(n: usize) -> Ratio<u64> {
    let total = 6u64.pow(n as u32);
    let mut cyclic = 0;
    for code in 0..total {
        let mut beats = [[0usize; 3]; 3];
        let mut c = code;
        for _ in 0..n {
            let o = ORDERS[(c % 6) as usize];
            c /= 6;
            for i in 0..3 {
                for j in i + 1..3 {
                    beats[o[i]][o[j]] += 1;
                }
            }
        }
        let wins = |x: usize, y: usize| 2 * beats[x][y] > n;
        if (wins(0, 1) && wins(1, 2) && wins(2, 0)) || (wins(1, 0) && wins(2, 1) && wins(0, 2)) {
            cyclic += 1;
        }
    }
    Ratio::new(cyclic, total)
}

#[test]
fn cycle_probability_matches_direct_count() {
    let expected = [(1, 0, 1), (2, 0, 1), (3, 1, 18), (4, 0, 1), (5, 5, 72), (6, 5, 1296), (7, 875, 11664)];
    for (n, num, den) in expected {
        let p = cycle_probability(n).unwrap();
        assert_eq!(p, Ratio::new(num, den), "n = {n}");
        assert_eq!(p, cycle_share(n), "n = {n}");
    }
    assert!(cycle_probability(8).is_err());
}

fn has_cycle_by_closure(prefers: &dyn Fn(usize, usize) -> bool, c: usize) -> bool {
    let mut reach = vec![vec![false; c]; c];
    for (x, row) in reach.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = prefers(x, y);
        }
    }
    for k in 0..c {
        for i in 0..c {
            for j in 0..c {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..c).any(|x| reach[x][x])
}

fn profile_strategy() -> impl Strategy<Value = Profile> {
    (2usize..=5, 1usize..=9).prop_flat_map(|(c, n)| {
        proptest::collection::vec(Just((0..c).collect::<Vec<_>>()).prop_shuffle(), n)
            .prop_map(move |orders| Profile::from_orders(c, &orders).unwrap())
    })
}

proptest! {
    #[test]
    fn find_cycle_agrees_with_transitive_closure(p in profile_strategy()) {
        let r = majority_relation(&p);
        let c = p.candidates();
        let cyclic = has_cycle_by_closure(&|x, y| r.prefers(x, y), c);
        let found = find_cycle(&r);
        prop_assert_eq!(found.is_some(), cyclic);
        if let Some(cycle) = found {
            for (i, &x) in cycle.iter().enumerate() {
                prop_assert!(r.prefers(x, cycle[(i + 1) % cycle.len()]));
            }
        }
    }

    #[test]
    fn tallies_are_complementary(p in profile_strategy()) {
        let t = pairwise_tally(&p);
        for x in 0..p.candidates() {
            for y in 0..p.candidates() {
                if x != y {
                    prop_assert_eq!(t.count(x, y) + t.count(y, x), p.voters());
                }
            }
        }
    }

    #[test]
    fn majority_matches_collective_relation_for_odd_voters(p in profile_strategy()) {
        if p.voters() % 2 == 1 {
            let vs = make_majority(p.voters(), None).unwrap();
            prop_assert_eq!(collective_relation(&p, &vs).unwrap(), majority_relation(&p));
        }
    }

    #[test]
    fn profile_json_round_trip(p in profile_strategy()) {
        prop_assert_eq!(Profile::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn winners_are_candidates(p in profile_strategy()) {
        for m in [ElectionMethod::Plurality, ElectionMethod::TwoRound] {
            let w = run_election(&p, m).winner().map(str::to_string);
            prop_assert!(w.is_some_and(|w| p.names().contains(&w)));
        }
    }

    #[test]
    fn coherence_chain_on_five_voters(codes in proptest::collection::vec(0usize..6, 5)) {
        let orders: Vec<Vec<usize>> = codes.iter().map(|&c| ORDERS[c].to_vec()).collect();
        let p = Profile::from_orders(3, &orders).unwrap();
        for vs in enumerate_systems(5, &[Condition::C1, Condition::C2]).unwrap().step_by(7) {
            let r = coherence_theorem_check(&p, &vs).unwrap();
            prop_assert!(r.chain_ok, "{:?}", r);
        }
    }
}

#[test]
fn ranking_rejects_non_permutations() {
    assert!(Ranking::new(vec![0, 0, 1]).is_err());
    assert!(Ranking::new(vec![0, 2]).is_err());
}

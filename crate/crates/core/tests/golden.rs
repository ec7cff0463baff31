//! Byte-for-byte comparison of report JSON against `golden/`.
//! Set `UPDATE_GOLDEN=1` to rewrite the files after an intended change.

use std::path::PathBuf;

use serde::Serialize;
use ultravote::profiles::{run_election, ElectionMethod};
use ultravote::verify::{
    fano_report, load_profile, separation_report, CONDORCET1, CONDORCET2, SEPARATION_T_NOT_S, SEPARATION_V_NOT_T,
};

fn check(name: &str, value: &impl Serialize) {
    let rendered = serde_json::to_string_pretty(value).unwrap() + "\n";
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &rendered).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(rendered, expected, "{name} differs from its golden file");
}

#[test]
fn condorcet_first_example() {
    let p = load_profile(CONDORCET1);
    check("condorcet1_plurality.json", &run_election(&p, ElectionMethod::Plurality));
    check("condorcet1_two_round.json", &run_election(&p, ElectionMethod::TwoRound));
    check("condorcet1_pairwise.json", &run_election(&p, ElectionMethod::Pairwise));
}

#[test]
fn condorcet_second_example() {
    let p = load_profile(CONDORCET2);
    check("condorcet2_pairwise.json", &run_election(&p, ElectionMethod::Pairwise));
}

#[test]
fn separating_profiles() {
    check("separation_t_not_s.json", &separation_report(SEPARATION_T_NOT_S));
    check("separation_v_not_t.json", &separation_report(SEPARATION_V_NOT_T));
}

#[test]
fn fano() {
    check("fano.json", &fano_report());
}

use serde::Serialize;
use ultravote::fintop::{
    count_correspondence, nasse_of, normality_check, random_round_trip, round_trip_check, FiniteTopology,
    NormalityReport, MAX_ENUMERATION_POINTS,
};

use crate::error::{read, CliError};
use crate::output::{yes_no, Out, Verdict};
use crate::TopoCmd;

#[derive(Serialize)]
struct NormalReport {
    #[serde(flatten)]
    report: NormalityReport,
    /// `nasse[x][y] = 1` when every open set containing `x` contains `y`.
    nasse: Vec<Vec<u8>>,
}

pub fn run(cmd: TopoCmd, seed: u64, out: &Out) -> Result<Verdict, CliError> {
    match cmd {
        TopoCmd::Count { k } => {
            let c = count_correspondence(k)?;
            out.emit(&c, || format!("k = {k}: {} topologies, {} preorders\n", c.topologies, c.preorders));
            Ok(Verdict::from_bool(c.equal))
        }
        TopoCmd::Normal { file } => {
            let topo = FiniteTopology::from_json(&read(&file)?)?;
            let r = NormalReport { report: normality_check(&topo)?, nasse: nasse_of(&topo).matrix() };
            let n = r.report;
            out.emit(&r, || {
                let rows: String = r
                    .nasse
                    .iter()
                    .map(|row| row.iter().map(u8::to_string).collect::<Vec<_>>().join(" ") + "\n")
                    .collect();
                format!(
                    "specialization preorder:\n{rows}normal: {} (via preorder: {})\n\
                     extremally disconnected: {} (via preorder: {})\n",
                    yes_no(n.normal_direct),
                    yes_no(n.nasse_condition),
                    yes_no(n.extremally_disconnected_direct),
                    yes_no(n.extremal_nasse_condition)
                )
            });
            Ok(Verdict::from_bool(n.agree && n.extremal_agree))
        }
        TopoCmd::Roundtrip { k, random: None } => {
            if k > MAX_ENUMERATION_POINTS {
                return Err(CliError::Usage(format!(
                    "exhaustive round trips stop at k = {MAX_ENUMERATION_POINTS}; use --random N for larger k"
                )));
            }
            let r = round_trip_check(k)?;
            out.emit(&r, || {
                format!(
                    "k = {k}: {} preorders round-trip: {}; {} topologies round-trip: {}\n",
                    r.preorders,
                    yes_no(r.preorder_round_trip),
                    r.topologies,
                    yes_no(r.topology_round_trip)
                )
            });
            Ok(Verdict::from_bool(r.holds()))
        }
        TopoCmd::Roundtrip { k, random: Some(samples) } => {
            let r = random_round_trip(seed, k, samples)?;
            out.emit(&r, || format!("k = {k}: {}/{} random preorders round-trip (seed {seed})\n", r.passed, r.samples));
            Ok(Verdict::from_bool(r.holds()))
        }
    }
}

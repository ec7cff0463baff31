use serde::Serialize;
use ultravote::coalitions::{
    check_condition, find_dictator, guilbaud_report, is_ultrafilter, make_weighted, weight_representable,
    weighted_is_valid, Condition, SystemDoc, VotingSystem, WeightVector,
};
use ultravote::verify::fano_report;

use super::{members, require_system};
use crate::error::CliError;
use crate::output::{table, yes_no, Out, Verdict};
use crate::VoteCmd;

#[derive(Serialize)]
struct ConditionReport {
    n: usize,
    efficacious: usize,
    c1: bool,
    c2: bool,
    c3: bool,
    u1: bool,
    u2: bool,
    ultrafilter: bool,
}

fn conditions(vs: &VotingSystem) -> ConditionReport {
    ConditionReport {
        n: vs.size(),
        efficacious: vs.efficacious_count(),
        c1: check_condition(vs, Condition::C1),
        c2: check_condition(vs, Condition::C2),
        c3: check_condition(vs, Condition::C3),
        u1: check_condition(vs, Condition::U1),
        u2: check_condition(vs, Condition::U2),
        ultrafilter: is_ultrafilter(vs),
    }
}

#[derive(Serialize)]
struct WeightsReport {
    representable: bool,
    weights: Option<Vec<String>>,
}

#[derive(Serialize)]
struct WeightedSystem {
    weights: Vec<i64>,
    valid: bool,
    c1: bool,
    c2: bool,
    system: SystemDoc,
}

pub fn run(cmd: VoteCmd, out: &Out) -> Result<Verdict, CliError> {
    match cmd {
        VoteCmd::Check(source) => {
            let r = conditions(&require_system(&source)?);
            out.emit(&r, || {
                let rows = [("C1", r.c1), ("C2", r.c2), ("C3", r.c3), ("U1", r.u1), ("U2", r.u2)]
                    .iter()
                    .map(|(c, b)| vec![c.to_string(), yes_no(*b).to_string()])
                    .collect::<Vec<_>>();
                format!(
                    "{} members, {} efficacious coalitions\n{}ultrafilter: {}\n",
                    r.n,
                    r.efficacious,
                    table(&["condition", "holds"], &rows),
                    yes_no(r.ultrafilter)
                )
            });
            Ok(Verdict::Holds)
        }
        VoteCmd::Dictator(source) => {
            let d = find_dictator(&require_system(&source)?);
            out.emit(&serde_json::json!({ "dictator": d }), || match d {
                Some(d) => format!("dictator: member {d}"),
                None => "no dictator".into(),
            });
            Ok(Verdict::Holds)
        }
        VoteCmd::Weights { source: _, weights: Some(ws) } => {
            let n = ws.len();
            let wv = WeightVector::from_integers(&ws);
            let vs = make_weighted(n, &wv)?;
            let r = WeightedSystem {
                valid: weighted_is_valid(n, &wv)?,
                c1: check_condition(&vs, Condition::C1),
                c2: check_condition(&vs, Condition::C2),
                system: SystemDoc::from(&vs),
                weights: ws,
            };
            out.emit(&r, || {
                let lists: Vec<String> = r.system.efficacious.iter().map(|c| members(c)).collect();
                format!(
                    "weights {:?}: {}\nC1: {}  C2: {}\nefficacious: {}\n",
                    r.weights,
                    if r.valid { "no coalition ties its complement" } else { "some coalition ties its complement" },
                    yes_no(r.c1),
                    yes_no(r.c2),
                    lists.join(" ")
                )
            });
            Ok(Verdict::Holds)
        }
        VoteCmd::Weights { source, weights: None } => {
            let w = weight_representable(&require_system(&source)?)?;
            let r = WeightsReport { representable: w.is_some(), weights: w.map(|w| w.to_strings()) };
            out.emit(&r, || match &r.weights {
                Some(w) => format!("weighted by ({})", w.join(", ")),
                None => "no weights represent this system".into(),
            });
            Ok(Verdict::Holds)
        }
        VoteCmd::Fano => {
            let r = fano_report();
            out.emit(&r, || {
                let mut s = format!(
                    "{} members, {} efficacious coalitions\nC1: {}  C2: {}  C3: {}\ndictator: {}\nweights: {}\n",
                    r.members,
                    r.efficacious,
                    yes_no(r.c1),
                    yes_no(r.c2),
                    yes_no(r.c3),
                    r.dictator.map_or("none".into(), |d| d.to_string()),
                    r.weights.as_ref().map_or("none".into(), |w| w.join(", "))
                );
                if let Some([a, b, c]) = &r.incoherence {
                    s.push_str(&format!(
                        "{} and {} are efficacious, {} is not\n",
                        members(a),
                        members(b),
                        members(c)
                    ));
                }
                s
            });
            Ok(Verdict::from_bool(r.c1 && r.c2 && !r.c3 && r.dictator.is_none() && r.weights.is_none()))
        }
        VoteCmd::Guilbaud { n } => {
            let r = guilbaud_report(n)?;
            out.emit(&r, || {
                format!(
                    "{} systems, {}",
                    r.systems,
                    if r.all_dictatorial { "all dictatorial" } else { "not all dictatorial" }
                )
            });
            Ok(Verdict::from_bool(r.holds()))
        }
    }
}

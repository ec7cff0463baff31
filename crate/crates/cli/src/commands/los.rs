use serde::Serialize;
use ultravote::filters::principal;
use ultravote::los::{
    close_sentence, eval, los_verify, parse_formula, random_cases, transfer_check, CaseShape, Choices, Env, LosReport,
    Structure, StructureDoc,
};

use crate::error::{read, CliError};
use crate::output::{yes_no, Out, Verdict};
use crate::LosCmd;

#[derive(Serialize)]
struct ParseReport {
    formula: String,
    height: usize,
    free: Vec<String>,
}

#[derive(Serialize)]
struct EvalReport {
    formula: String,
    holds: bool,
}

#[derive(Serialize)]
struct SuiteReport {
    seed: u64,
    cases: usize,
    agreement: usize,
    transfer: usize,
    /// Indices of the cases that disagreed.
    failures: Vec<usize>,
}

#[derive(Serialize)]
struct InstanceReport {
    point: usize,
    formula: String,
    #[serde(flatten)]
    report: LosReport,
}

fn split_assignment(text: &str) -> Result<(&str, &str), CliError> {
    text.split_once('=')
        .filter(|(v, e)| !v.is_empty() && !e.is_empty())
        .ok_or_else(|| CliError::Usage(format!("expected VAR=VALUE, got `{text}`")))
}

fn element(st: &Structure, label: &str) -> Result<usize, CliError> {
    (0..st.size())
        .find(|&x| st.label(x) == label)
        .ok_or_else(|| CliError::Invalid(format!("`{label}` is not an element of the structure")))
}

pub fn run(cmd: LosCmd, seed: u64, out: &Out) -> Result<Verdict, CliError> {
    match cmd {
        LosCmd::Parse { formula } => {
            let phi = parse_formula(&formula)?;
            let r = ParseReport { formula: phi.to_string(), height: phi.height(), free: phi.free_names().into_iter().collect() };
            out.emit(&r, || format!("{}\nheight {}, free names: {}\n", r.formula, r.height, super::names(&r.free)));
            Ok(Verdict::Holds)
        }
        LosCmd::Eval { structure, formula, assign } => {
            let st = Structure::from_json(&read(&structure)?)?;
            let phi = parse_formula(&formula)?;
            let mut env = Env::new();
            for a in &assign {
                let (v, label) = split_assignment(a)?;
                env.bind(v, element(&st, label)?);
            }
            let r = EvalReport { formula: phi.to_string(), holds: eval(&st, &phi, &env)? };
            out.emit(&r, || format!("{}: {}\n", r.formula, if r.holds { "true" } else { "false" }));
            Ok(Verdict::Holds)
        }
        LosCmd::Check { family: None, count, .. } => {
            let cases = random_cases(seed, count, CaseShape::default());
            let mut r = SuiteReport { seed, cases: count, agreement: 0, transfer: 0, failures: Vec::new() };
            for (k, case) in cases.iter().enumerate() {
                let agree = los_verify(&case.family, &case.ultrafilter, &case.formula, &case.choices)?.agree;
                let sentence = close_sentence(&case.formula);
                let transfer = transfer_check(&case.family[0], case.family.len(), &case.ultrafilter, &sentence)?;
                r.agreement += usize::from(agree);
                r.transfer += usize::from(transfer);
                if !(agree && transfer) {
                    r.failures.push(k);
                }
            }
            let ok = r.failures.is_empty();
            out.emit(&r, || {
                format!(
                    "seed {seed}: {} cases, agreement {}/{}, transfer {}/{}\n{}\n",
                    r.cases,
                    r.agreement,
                    r.cases,
                    r.transfer,
                    r.cases,
                    out.verdict(ok)
                )
            });
            Ok(Verdict::from_bool(ok))
        }
        LosCmd::Check { family: Some(path), point, formula, choose, .. } => {
            let docs: Vec<StructureDoc> =
                serde_json::from_str(&read(&path)?).map_err(|e| CliError::Malformed(e.to_string()))?;
            let family = docs.iter().map(Structure::from_doc).collect::<Result<Vec<_>, _>>()?;
            let point = point.expect("clap requires --point with --family");
            let phi = parse_formula(&formula.expect("clap requires --formula with --family"))?;
            let u = principal(family.len(), point)?;
            let mut choices = Choices::new();
            for c in &choose {
                let (v, labels) = split_assignment(c)?;
                let labels: Vec<&str> = labels.split(',').collect();
                if labels.len() != family.len() {
                    return Err(CliError::Usage(format!(
                        "--choose {v} lists {} elements for {} structures",
                        labels.len(),
                        family.len()
                    )));
                }
                let xs = family.iter().zip(labels).map(|(st, l)| element(st, l)).collect::<Result<Vec<_>, _>>()?;
                choices.insert(v.to_string(), xs);
            }
            let report = los_verify(&family, &u, &phi, &choices)?;
            let r = InstanceReport { point, formula: phi.to_string(), report };
            out.emit(&r, || {
                format!(
                    "{} along the ultrafilter at {point}\nin the ultraproduct: {}\nalong U: {}\nby induction ({} steps): {}\n{}\n",
                    r.formula,
                    yes_no(report.lhs),
                    yes_no(report.rhs),
                    report.steps,
                    yes_no(report.induction),
                    out.verdict(report.agree)
                )
            });
            Ok(Verdict::from_bool(report.agree))
        }
    }
}

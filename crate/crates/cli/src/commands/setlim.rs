use serde::Serialize;
use ultravote::filters::{enumerate_ultrafilters, FiniteFilter};
use ultravote::setlimits::{limit_is_diagonal, limit_lemma_check, set_limits, ultrafilter_limit, SetFamily};

use super::names;
use crate::error::{read, CliError};
use crate::output::{yes_no, Out, Verdict};
use crate::SetlimCmd;

#[derive(Serialize)]
struct LimitsReport {
    kernel: Vec<usize>,
    liminf: Vec<String>,
    limsup: Vec<String>,
    lim: Option<Vec<String>>,
}

#[derive(Serialize)]
struct LemmaRow {
    point: usize,
    limit: Vec<String>,
    lemma: bool,
    diagonal: bool,
}

pub fn run(cmd: SetlimCmd, out: &Out) -> Result<Verdict, CliError> {
    match cmd {
        SetlimCmd::Limits { family, kernel } => {
            let fam = SetFamily::from_json(&read(&family)?)?;
            // without a kernel, the trivial filter {I}
            let kernel = kernel.unwrap_or_else(|| (0..fam.indices()).collect());
            let f = FiniteFilter::generated(fam.indices(), std::slice::from_ref(&kernel))?;
            let pair = set_limits(&fam, &f)?;
            let r = LimitsReport {
                kernel,
                liminf: fam.labels_of(pair.liminf),
                limsup: fam.labels_of(pair.limsup),
                lim: pair.lim.map(|m| fam.labels_of(m)),
            };
            out.emit(&r, || {
                let mut s = format!("liminf = {}\nlimsup = {}\n", names(&r.liminf), names(&r.limsup));
                match &r.lim {
                    Some(l) => s.push_str(&format!("lim = {}\n", names(l))),
                    None => s.push_str("no limit\n"),
                }
                s
            });
            Ok(Verdict::Holds)
        }
        SetlimCmd::DiagonalLemma { family } => {
            let fam = SetFamily::from_json(&read(&family)?)?;
            let mut rows = Vec::new();
            for u in enumerate_ultrafilters(fam.indices())? {
                rows.push(LemmaRow {
                    point: u.point(),
                    limit: fam.labels_of(ultrafilter_limit(&fam, &u)?),
                    lemma: limit_lemma_check(&fam, &u)?,
                    diagonal: limit_is_diagonal(&fam, &u)?,
                });
            }
            let ok = rows.iter().all(|r| r.lemma && r.diagonal);
            out.emit(&rows, || {
                let mut s: String = rows
                    .iter()
                    .map(|r| {
                        format!(
                            "  U at {}: lim = {}, I[F, lim] in U for all F: {}, diagonal: {}\n",
                            r.point,
                            names(&r.limit),
                            yes_no(r.lemma),
                            yes_no(r.diagonal)
                        )
                    })
                    .collect();
                s.push_str(&format!("{}\n", out.verdict(ok)));
                s
            });
            Ok(Verdict::from_bool(ok))
        }
    }
}

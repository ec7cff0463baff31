use ultravote::additive::{build_diagonal, validate_diagonal, Diagonal, IntervalBasisFamily, Threshold};

use crate::error::{read, CliError};
use crate::output::{yes_no, Out, Verdict};
use crate::DiagCmd;

pub fn run(cmd: DiagCmd, out: &Out) -> Result<Verdict, CliError> {
    match cmd {
        DiagCmd::Build { family, horizon, threshold } => {
            let fam = IntervalBasisFamily::from_json(&read(&family)?)?;
            let t = Threshold { early_witnesses: threshold, ..Threshold::default() };
            let d = build_diagonal(&fam, horizon, t)?;
            out.emit(&d, || {
                format!(
                    "D = {:?}\nevery prefix witnessed up to N' = {}; s = {} (local bound {})\n",
                    d.set, d.covered, d.s, d.local_bound
                )
            });
            Ok(Verdict::Holds)
        }
        DiagCmd::Validate { family, diagonal } => {
            let fam = IntervalBasisFamily::from_json(&read(&family)?)?;
            let d: Diagonal =
                serde_json::from_str(&read(&diagonal)?).map_err(|e| CliError::Malformed(e.to_string()))?;
            let c = validate_diagonal(&fam, &d);
            out.emit(&c, || {
                format!(
                    "prefixes witnessed: {}\nwitnesses match: {}\nD + D covers the horizon: {}\ns = {} <= {}: {}\n{}\n",
                    yes_no(c.prefixes_witnessed),
                    yes_no(c.witnesses_match),
                    yes_no(c.covers_horizon),
                    c.s,
                    c.local_bound,
                    yes_no(c.bound_holds),
                    out.verdict(c.ok)
                )
            });
            Ok(Verdict::from_bool(c.ok))
        }
    }
}

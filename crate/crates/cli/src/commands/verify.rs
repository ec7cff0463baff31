use ultravote::verify::run_all;

use crate::error::CliError;
use crate::output::{Out, Verdict};

pub fn run(seed: u64, out: &Out) -> Result<Verdict, CliError> {
    let outcomes = run_all(seed);
    let ok = outcomes.iter().all(|o| o.passed);
    out.emit(&outcomes, || {
        let mut s = String::new();
        for o in &outcomes {
            let line = o.to_string();
            // recolor the leading tag
            let rest = line.split_once(' ').map_or("", |(_, r)| r);
            s.push_str(&format!("[{}] {rest}\n", out.verdict(o.passed)));
        }
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        s + &format!("{} passed, {failed} failed\n", outcomes.len() - failed)
    });
    Ok(Verdict::from_bool(ok))
}

use num_rational::BigRational;
use serde::Serialize;
use ultravote::banach::{banach_axioms_check, generalized_limit_estimate, AxiomReport, LimitEstimate, LimitStatus, SequenceWindow};

use crate::error::{read, CliError};
use crate::output::{yes_no, Out, Verdict};
use crate::BanachCmd;

#[derive(Serialize)]
struct CheckReport {
    estimate: LimitEstimate,
    /// Axioms on the sequence, its shift and the constant 1; exact inputs only.
    axioms: Option<AxiomReport>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn run(cmd: BanachCmd, out: &Out) -> Result<Verdict, CliError> {
    let BanachCmd::Check { seq } = cmd;
    let x = SequenceWindow::from_json(&read(&seq)?)?;
    let estimate = generalized_limit_estimate(&x);
    let axioms = if x.is_exact() {
        let inputs = [x.shift()?, SequenceWindow::constant(q(1, 1)), x];
        let coefficients = [(q(1, 1), q(1, 1)), (q(2, 3), q(-5, 1)), (q(0, 1), q(7, 2))];
        Some(banach_axioms_check(&inputs, &coefficients)?)
    } else {
        None
    };
    let ok = estimate.sandwich_holds() && axioms.as_ref().is_none_or(AxiomReport::holds);
    let r = CheckReport { estimate, axioms };
    out.emit(&r, || {
        let e = &r.estimate;
        let status = match e.status {
            LimitStatus::Exact => "exact".to_string(),
            LimitStatus::Converged { tolerance } => format!("converged (tolerance {tolerance:e})"),
            LimitStatus::Diverged => "diverged".to_string(),
            LimitStatus::Undetermined => "undetermined".to_string(),
        };
        let mut s = format!("status: {status}\n");
        if let Some(v) = &e.value {
            s.push_str(&format!("limit: {v}\n"));
        }
        s.push_str(&format!(
            "inf {} <= liminf {} <= limsup {} <= sup {} ({} terms)\n",
            e.inf, e.liminf_est, e.limsup_est, e.sup, e.sampled
        ));
        if let Some(a) = &r.axioms {
            s.push_str(&format!(
                "linearity: {} ({} cases)\npositivity: {}\nshift invariance: {}\nnormalization: {}\nsandwich: {}\n",
                yes_no(a.linearity),
                a.linear_cases,
                yes_no(a.positivity),
                yes_no(a.shift_invariance),
                yes_no(a.normalization),
                yes_no(a.sandwich)
            ));
        }
        s + &out.verdict(ok) + "\n"
    });
    Ok(Verdict::from_bool(ok))
}

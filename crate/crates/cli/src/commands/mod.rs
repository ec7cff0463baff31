pub mod banach;
pub mod diag;
pub mod elect;
pub mod los;
pub mod setlim;
pub mod topo;
pub mod ultra;
pub mod verify;
pub mod vote;

use ultravote::coalitions::{make_fano, make_majority, VotingSystem};

use crate::error::{read, CliError};
use crate::SystemArgs;

/// The system named by `args`, or `None` when no source was given.
pub fn load_system(args: &SystemArgs) -> Result<Option<VotingSystem>, CliError> {
    if let Some(path) = &args.system {
        return Ok(Some(VotingSystem::from_json(&read(path)?)?));
    }
    if let Some(n) = args.majority {
        return Ok(Some(make_majority(n, args.chair)?));
    }
    if args.fano {
        return Ok(Some(make_fano()));
    }
    Ok(None)
}

pub fn require_system(args: &SystemArgs) -> Result<VotingSystem, CliError> {
    load_system(args)?.ok_or_else(|| CliError::Usage("give one of --system, --majority or --fano".into()))
}

pub fn members(list: &[usize]) -> String {
    let items: Vec<String> = list.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn names(list: &[String]) -> String {
    format!("{{{}}}", list.join(", "))
}

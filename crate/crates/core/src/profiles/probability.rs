use num_rational::Ratio;

use super::triple::RankLabel;
use super::ProfileError;

pub const MAX_PROBABILITY_VOTERS: usize = 7;

/// Probability that simple majority among three candidates is cyclic when
/// each voter independently picks one of the six orders uniformly.
///
/// All `6^voters` assignments are enumerated. A pair tied at exactly half
/// the voters is decided neither way, so a cycle needs three strict
/// majorities.
pub fn cycle_probability(voters: usize) -> Result<Ratio<u64>, ProfileError> {
    if voters == 0 {
        return Err(ProfileError::NoVoters);
    }
    if voters > MAX_PROBABILITY_VOTERS {
        return Err(ProfileError::ResourceGuard(format!(
            "cycle probability enumerates 6^voters profiles and is limited to {MAX_PROBABILITY_VOTERS} voters, got {voters}"
        )));
    }
    // For each label: does it rank a over b, b over c, c over a?
    let votes: Vec<[u32; 3]> = RankLabel::ALL
        .iter()
        .map(|l| {
            let o = l.order([0, 1, 2]);
            let pos = |x: usize| o.iter().position(|&y| y == x).expect("in order");
            [(pos(0) < pos(1)) as u32, (pos(1) < pos(2)) as u32, (pos(2) < pos(0)) as u32]
        })
        .collect();

    let n = voters as u32;
    let total = 6u64.pow(n);
    let mut cyclic = 0u64;
    let mut labels = vec![0usize; voters];
    loop {
        let mut forward = [0u32; 3];
        for &l in &labels {
            for k in 0..3 {
                forward[k] += votes[l][k];
            }
        }
        // a>b>c>a or its reverse, each by strict majority
        if forward.iter().all(|&f| 2 * f > n) || forward.iter().all(|&f| 2 * (n - f) > n) {
            cyclic += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == voters {
                return Ok(Ratio::new(cyclic, total));
            }
            labels[i] += 1;
            if labels[i] < 6 {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

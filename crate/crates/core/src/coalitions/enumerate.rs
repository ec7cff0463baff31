use serde::Serialize;

use super::{check_condition, make_dictator, Assembly, CoalitionError, Condition, VotingSystem};
use crate::family::{self, SubsetFamily};

/// The dictator of `vs`, if `vs` is exactly a dictatorial system.
pub fn find_dictator(vs: &VotingSystem) -> Option<usize> {
    let n = vs.size();
    (0..n).find(|&d| {
        vs.contains_mask(1 << d) && make_dictator(n, d).map(|dict| &dict == vs).unwrap_or(false)
    })
}

/// Streams every voting system on `0..n` satisfying all `required`
/// conditions, each exactly once, in a fixed order.
///
/// When C1 is required the search picks one coalition from each
/// complementary pair (`2^(2^(n-1))` candidates); otherwise all `2^(2^n)`
/// families are visited. Assemblies are capped at 5 when both C1 and C2 are
/// required and at 4 otherwise.
pub fn enumerate_systems(
    n: usize,
    required: &[Condition],
) -> Result<impl Iterator<Item = VotingSystem>, CoalitionError> {
    let assembly = Assembly::new(n)?;
    let needs_c1 = required.contains(&Condition::C1);
    let cap = if needs_c1 && required.contains(&Condition::C2) { 5 } else { 4 };
    if n > cap {
        return Err(CoalitionError::ResourceGuard(format!(
            "enumeration for required {required:?} is limited to assemblies of at most {cap} members"
        )));
    }
    let required: Vec<Condition> = required.to_vec();
    let full = family::full_mask(n);

    let candidates: Box<dyn Iterator<Item = SubsetFamily>> = if needs_c1 {
        // Representatives: coalitions without the top member; their
        // complements contain it.
        let reps: Vec<u32> = (0..=full).filter(|m| m >> (n - 1) & 1 == 0).collect();
        let choices = 1u64 << reps.len();
        Box::new((0..choices).map(move |pick| {
            SubsetFamily::from_masks(
                n,
                reps.iter()
                    .enumerate()
                    .map(|(i, &r)| if pick >> i & 1 == 1 { r } else { !r & full }),
            )
        }))
    } else {
        let families = 1u64 << (1u32 << n);
        Box::new((0..families).map(move |bits| SubsetFamily::from_predicate(n, |m| bits >> m & 1 == 1)))
    };

    Ok(candidates
        .map(move |fam| VotingSystem { assembly, efficacious: fam })
        .filter(move |vs| required.iter().all(|&c| check_condition(vs, c))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuilbaudReport {
    pub n: usize,
    /// Number of systems satisfying C1, C2 and C3.
    pub systems: usize,
    /// Dictators found, in enumeration order.
    pub dictators: Vec<usize>,
    pub all_dictatorial: bool,
    /// The intersection of all efficacious coalitions is efficacious and a
    /// singleton in every system.
    pub intersections_singleton: bool,
}

impl GuilbaudReport {
    pub fn holds(&self) -> bool {
        self.all_dictatorial && self.intersections_singleton
    }
}

/// Enumerates the C1 ∧ C2 ∧ C3 systems on `0..n` and checks each is
/// dictatorial through its smallest efficacious coalition.
pub fn guilbaud_report(n: usize) -> Result<GuilbaudReport, CoalitionError> {
    if n > 4 {
        return Err(CoalitionError::ResourceGuard(format!(
            "Guilbaud verification is limited to assemblies of at most 4 members, got {n}"
        )));
    }
    let mut report = GuilbaudReport {
        n,
        systems: 0,
        dictators: Vec::new(),
        all_dictatorial: true,
        intersections_singleton: true,
    };
    for vs in enumerate_systems(n, &[Condition::C1, Condition::C2, Condition::C3])? {
        report.systems += 1;
        match find_dictator(&vs) {
            Some(d) => report.dictators.push(d),
            None => report.all_dictatorial = false,
        }
        let meet = vs.family().meet();
        if meet.count_ones() != 1 || !vs.contains_mask(meet) {
            report.intersections_singleton = false;
        }
    }
    Ok(report)
}

pub fn guilbaud_verify(n: usize) -> Result<bool, CoalitionError> {
    guilbaud_report(n).map(|r| r.holds())
}

#[cfg(test)]
mod tests {
    use super::super::{is_ultrafilter, make_fano, make_majority};
    use super::*;

    #[test]
    fn dictator_detection() {
        assert_eq!(find_dictator(&make_dictator(4, 1).unwrap()), Some(1));
        assert_eq!(find_dictator(&make_majority(3, None).unwrap()), None);
        assert_eq!(find_dictator(&make_fano()), None);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_systems(2, &[Condition::C1, Condition::C2]).unwrap().count(), 2);
        assert_eq!(
            enumerate_systems(3, &[Condition::C1, Condition::C2, Condition::C3]).unwrap().count(),
            3
        );
        // {∅} alone also satisfies C1; C2 rules it out.
        assert_eq!(enumerate_systems(1, &[Condition::C1]).unwrap().count(), 2);
        assert_eq!(enumerate_systems(1, &[Condition::C1, Condition::C2]).unwrap().count(), 1);
        // self-dual monotone families on 3 and 4 members
        assert_eq!(enumerate_systems(3, &[Condition::C1, Condition::C2]).unwrap().count(), 4);
        assert_eq!(enumerate_systems(4, &[Condition::C1, Condition::C2]).unwrap().count(), 12);
    }

    #[test]
    fn unconstrained_enumeration_visits_every_family() {
        assert_eq!(enumerate_systems(2, &[]).unwrap().count(), 16);
        let all: Vec<_> = enumerate_systems(2, &[]).unwrap().collect();
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(all.len(), dedup.len());
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(enumerate_systems(5, &[Condition::C1]), Err(CoalitionError::ResourceGuard(_))));
        assert!(enumerate_systems(5, &[Condition::C1, Condition::C2]).is_ok());
        assert!(matches!(
            enumerate_systems(6, &[Condition::C1, Condition::C2]),
            Err(CoalitionError::ResourceGuard(_))
        ));
    }

    #[test]
    fn guilbaud_small_assemblies() {
        for n in 1..=4 {
            let r = guilbaud_report(n).unwrap();
            assert!(r.holds(), "n = {n}: {r:?}");
            assert_eq!(r.systems, n);
        }
        assert!(guilbaud_verify(5).is_err());
    }

    #[test]
    fn enumerated_ultrafilters_are_dictators() {
        for vs in enumerate_systems(4, &[Condition::C1, Condition::C2, Condition::C3]).unwrap() {
            assert!(is_ultrafilter(&vs));
            assert!(find_dictator(&vs).is_some());
        }
    }
}

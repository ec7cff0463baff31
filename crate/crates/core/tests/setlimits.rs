use proptest::prelude::*;
use ultravote::filters::{enumerate_filters, enumerate_ultrafilters, FiniteFilter};
use ultravote::setlimits::{
    index_set, is_diagonal_truncated, set_limits, ultrafilter_limit, SetFamily,
};

/// liminf and limsup by their definitions as unions of intersections and
/// intersections of unions over the filter's members.
fn oracle(fam: &SetFamily, f: &FiniteFilter) -> (u32, u32) {
    let full = (1u32 << fam.universe()) - 1;
    let mut liminf = 0;
    let mut limsup = full;
    for j in f.members() {
        let idx: Vec<usize> = (0..fam.indices()).filter(|&i| j >> i & 1 == 1).collect();
        liminf |= idx.iter().fold(full, |m, &i| m & fam.set(i));
        limsup &= idx.iter().fold(0, |m, &i| m | fam.set(i));
    }
    (liminf, limsup)
}

fn family(universe: usize, masks: &[u32]) -> SetFamily {
    let labels = (0..universe).map(|x| format!("p{x}")).collect();
    SetFamily::from_masks(labels, masks.iter().map(|m| m & ((1 << universe) - 1)).collect()).unwrap()
}

proptest! {
    #[test]
    fn limits_match_definitions(universe in 1usize..=6, masks in proptest::collection::vec(any::<u32>(), 1..=4)) {
        let fam = family(universe, &masks);
        for f in enumerate_filters(fam.indices()).unwrap() {
            let pair = set_limits(&fam, &f).unwrap();
            prop_assert_eq!((pair.liminf, pair.limsup), oracle(&fam, &f));
        }
    }

    #[test]
    fn ultrafilter_limit_is_the_chosen_set(universe in 1usize..=6, masks in proptest::collection::vec(any::<u32>(), 1..=5)) {
        let fam = family(universe, &masks);
        for u in enumerate_ultrafilters(fam.indices()).unwrap() {
            let l = ultrafilter_limit(&fam, &u).unwrap();
            prop_assert_eq!(l, fam.set(u.point()));
            prop_assert!(is_diagonal_truncated(l, &fam, 1).unwrap());
        }
    }

    #[test]
    fn index_sets_partition_membership(universe in 1usize..=6, masks in proptest::collection::vec(any::<u32>(), 1..=5)) {
        let fam = family(universe, &masks);
        for x in 0..universe {
            let ix = index_set(&fam, x).unwrap();
            for i in 0..fam.indices() {
                prop_assert_eq!(ix >> i & 1 == 1, fam.set(i) >> x & 1 == 1);
            }
        }
    }
}

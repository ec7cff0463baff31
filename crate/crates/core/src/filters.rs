//! Filters, ultrafilters and grilles on a finite index set `0..n`.
//!
//! A filter is a nonempty family of nonempty subsets closed under supersets
//! and pairwise intersection. On a finite set every filter is the family of
//! supersets of its kernel (the intersection of its members), and every
//! ultrafilter is principal: the sets containing one fixed point. The grille
//! of a filter is the family of sets meeting all of its members; it is the
//! union of the ultrafilters finer than the filter, while the filter is their
//! intersection.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{self, SubsetFamily};

/// Largest index set handled by this module.
pub const MAX_FILTER_GROUND: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilterError {
    #[error("index set size {0} is outside 1..={MAX_FILTER_GROUND}")]
    GroundSize(usize),
    #[error("point {point} is outside an index set of size {size}")]
    PointOutOfRange { point: usize, size: usize },
    #[error("not a filter: {0}")]
    NotAFilter(String),
    #[error("not an ultrafilter: {0}")]
    NotAnUltrafilter(String),
    #[error("expected {expected} parts, one per index of the outer ultrafilter, got {found}")]
    PartCount { expected: usize, found: usize },
    #[error("parts overlap at point {0}")]
    PartsOverlap(usize),
    #[error("point {0} belongs to no part")]
    PartsDoNotCover(usize),
    #[error("a part lists {members} points but its ultrafilter lives on {ground}")]
    PartSize { members: usize, ground: usize },
    #[error("malformed filter document: {0}")]
    Format(String),
}

fn check_ground(n: usize) -> Result<(), FilterError> {
    if (1..=MAX_FILTER_GROUND).contains(&n) {
        Ok(())
    } else {
        Err(FilterError::GroundSize(n))
    }
}

fn check_points(n: usize, points: &[usize]) -> Result<u32, FilterError> {
    if let Some(&p) = points.iter().find(|&&p| p >= n) {
        return Err(FilterError::PointOutOfRange { point: p, size: n });
    }
    Ok(family::mask_of(points))
}

/// A filter on `0..n`, stored extensionally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteFilter {
    sets: SubsetFamily,
}

impl FiniteFilter {
    /// Validates an explicit family.
    ///
    /// Closure under pairwise intersection of a finite upward-closed family
    /// is checked through its kernel: such a family is intersection-closed
    /// iff it equals the supersets of the intersection of its members.
    pub fn from_family(sets: SubsetFamily) -> Result<Self, FilterError> {
        check_ground(sets.ground())?;
        if sets.is_empty() {
            return Err(FilterError::NotAFilter("the family is empty".into()));
        }
        if sets.contains(0) {
            return Err(FilterError::NotAFilter("the empty set is a member".into()));
        }
        let n = sets.ground();
        if let Some(k) = sets.iter().find(|&k| (0..n).any(|i| !sets.contains(k | 1 << i))) {
            return Err(FilterError::NotAFilter(format!(
                "{:?} is a member but one of its supersets is not",
                family::members(k)
            )));
        }
        let kernel = sets.meet();
        if !sets.contains(kernel) {
            return Err(FilterError::NotAFilter(
                "not closed under intersection: the intersection of all members is missing".into(),
            ));
        }
        Ok(FiniteFilter { sets })
    }

    pub fn from_sets(ground: usize, sets: &[Vec<usize>]) -> Result<Self, FilterError> {
        check_ground(ground)?;
        let masks = sets.iter().map(|s| check_points(ground, s)).collect::<Result<Vec<_>, _>>()?;
        FiniteFilter::from_family(SubsetFamily::from_masks(ground, masks))
    }

    /// The filter generated by `generators`: supersets of their intersection.
    /// No generators give the trivial filter `{I}`.
    pub fn generated(ground: usize, generators: &[Vec<usize>]) -> Result<Self, FilterError> {
        check_ground(ground)?;
        let mut kernel = family::full_mask(ground);
        for g in generators {
            kernel &= check_points(ground, g)?;
        }
        if kernel == 0 {
            return Err(FilterError::NotAFilter("the generators have empty intersection".into()));
        }
        Ok(FiniteFilter::above(ground, kernel))
    }

    pub(crate) fn above(ground: usize, kernel: u32) -> Self {
        FiniteFilter { sets: SubsetFamily::from_predicate(ground, |m| m & kernel == kernel) }
    }

    /// `{I}`.
    pub fn trivial(ground: usize) -> Result<Self, FilterError> {
        FiniteFilter::generated(ground, &[])
    }

    /// The sets with as many points as `I`. On a finite index set that is
    /// `I` alone, so this is the trivial filter.
    pub fn uniform(ground: usize) -> Result<Self, FilterError> {
        FiniteFilter::trivial(ground)
    }

    pub fn ground(&self) -> usize {
        self.sets.ground()
    }

    pub fn family(&self) -> &SubsetFamily {
        &self.sets
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.sets.contains(mask)
    }

    pub fn contains_set(&self, points: &[usize]) -> bool {
        points.iter().all(|&p| p < self.ground()) && self.sets.contains(family::mask_of(points))
    }

    /// Intersection of all members, itself a member.
    pub fn kernel(&self) -> u32 {
        self.sets.meet()
    }

    /// Every member of `self` is a member of `other`.
    pub fn is_coarser_than(&self, other: &FiniteFilter) -> bool {
        self.sets.is_subfamily_of(&other.sets)
    }

    /// Exactly one of `X` and its complement is a member, for every `X`.
    pub fn is_ultrafilter(&self) -> bool {
        let full = self.sets.full();
        (0..=full).all(|x| self.sets.contains(x) != self.sets.contains(!x & full))
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.sets.iter()
    }

    pub fn to_member_lists(&self) -> Vec<Vec<usize>> {
        self.sets.to_member_lists()
    }
}

impl fmt::Debug for FiniteFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteFilter(n={}, kernel={:?})", self.ground(), family::members(self.kernel()))
    }
}

/// A filter with the ultrafilter law; on a finite set always principal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteUltrafilter {
    filter: FiniteFilter,
    point: usize,
}

impl FiniteUltrafilter {
    pub fn from_filter(filter: FiniteFilter) -> Result<Self, FilterError> {
        if !filter.is_ultrafilter() {
            return Err(FilterError::NotAnUltrafilter(format!(
                "kernel {:?} is not a single point",
                family::members(filter.kernel())
            )));
        }
        let point = filter.kernel().trailing_zeros() as usize;
        Ok(FiniteUltrafilter { filter, point })
    }

    pub fn ground(&self) -> usize {
        self.filter.ground()
    }

    /// The point every member contains.
    pub fn point(&self) -> usize {
        self.point
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.filter.contains(mask)
    }

    pub fn as_filter(&self) -> &FiniteFilter {
        &self.filter
    }

    pub fn family(&self) -> &SubsetFamily {
        self.filter.family()
    }
}

impl fmt::Debug for FiniteUltrafilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U_{}(n={})", self.point, self.ground())
    }
}

/// `U_x = {X ⊆ I : x ∈ X}`.
pub fn principal(ground: usize, x: usize) -> Result<FiniteUltrafilter, FilterError> {
    check_ground(ground)?;
    check_points(ground, &[x])?;
    Ok(FiniteUltrafilter { filter: FiniteFilter::above(ground, 1 << x), point: x })
}

/// All ultrafilters on `0..ground`: the principal ones, each re-checked
/// against the ultrafilter law.
pub fn enumerate_ultrafilters(ground: usize) -> Result<Vec<FiniteUltrafilter>, FilterError> {
    check_ground(ground)?;
    (0..ground)
        .map(|x| FiniteUltrafilter::from_filter(principal(ground, x)?.filter))
        .collect()
}

/// Every filter on `0..ground`, one per nonempty kernel, in kernel order.
pub fn enumerate_filters(ground: usize) -> Result<Vec<FiniteFilter>, FilterError> {
    check_ground(ground)?;
    Ok((1..=family::full_mask(ground)).map(|k| FiniteFilter::above(ground, k)).collect())
}

/// Sets meeting every member of a filter.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Grille {
    sets: SubsetFamily,
}

impl Grille {
    pub fn ground(&self) -> usize {
        self.sets.ground()
    }

    pub fn family(&self) -> &SubsetFamily {
        &self.sets
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.sets.contains(mask)
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.sets.iter()
    }
}

impl fmt::Debug for Grille {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grille({:?})", self.sets)
    }
}

/// `G = {Y : X ∩ Y ≠ ∅ for every X ∈ F}`, by direct scan of `F`.
pub fn grille(f: &FiniteFilter) -> Grille {
    let members: Vec<u32> = f.members().collect();
    Grille { sets: SubsetFamily::from_predicate(f.ground(), |y| members.iter().all(|&x| x & y != 0)) }
}

/// The ultrafilters containing `f`: the principal ones at points of its
/// kernel.
pub fn finer_ultrafilters(f: &FiniteFilter) -> Vec<FiniteUltrafilter> {
    (0..f.ground())
        .map(|x| principal(f.ground(), x).expect("point in range"))
        .filter(|u| f.is_coarser_than(u.as_filter()))
        .collect()
}

/// One summand of a Grimeisen sum: the points `members` of the combined
/// index set, carrying `ultrafilter` (on `0..members.len()`, local index
/// `j` standing for `members[j]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumPart {
    pub members: Vec<usize>,
    pub ultrafilter: FiniteUltrafilter,
}

/// `K` belongs to the sum iff `{p : K ∩ I_p ∈ U_p} ∈ U`.
///
/// The parts must be pairwise disjoint and cover `0..ground`.
pub fn grimeisen_sum(
    outer: &FiniteUltrafilter,
    parts: &[SumPart],
    ground: usize,
) -> Result<FiniteUltrafilter, FilterError> {
    check_ground(ground)?;
    if parts.len() != outer.ground() {
        return Err(FilterError::PartCount { expected: outer.ground(), found: parts.len() });
    }
    let mut owner = vec![None; ground];
    for (p, part) in parts.iter().enumerate() {
        if part.members.len() != part.ultrafilter.ground() {
            return Err(FilterError::PartSize { members: part.members.len(), ground: part.ultrafilter.ground() });
        }
        for &x in &part.members {
            check_points(ground, &[x])?;
            if owner[x].replace(p).is_some() {
                return Err(FilterError::PartsOverlap(x));
            }
        }
    }
    if let Some(x) = owner.iter().position(Option::is_none) {
        return Err(FilterError::PartsDoNotCover(x));
    }

    let sets = SubsetFamily::from_predicate(ground, |k| {
        let mut decided = 0u32;
        for (p, part) in parts.iter().enumerate() {
            let local = part
                .members
                .iter()
                .enumerate()
                .fold(0u32, |m, (j, &x)| if k >> x & 1 == 1 { m | 1 << j } else { m });
            if part.ultrafilter.contains(local) {
                decided |= 1 << p;
            }
        }
        outer.contains(decided)
    });
    FiniteUltrafilter::from_filter(FiniteFilter::from_family(sets)?)
}

/// Index of `(i, j)` in `I × J`.
pub fn product_index(i: usize, j: usize, i_size: usize) -> usize {
    i + j * i_size
}

/// `K ⊆ I × J` belongs iff `{j : {i : (i, j) ∈ K} ∈ U} ∈ V`; the pair
/// `(i, j)` is point [`product_index`]`(i, j, |I|)`.
pub fn ordinal_product(u: &FiniteUltrafilter, v: &FiniteUltrafilter) -> Result<FiniteUltrafilter, FilterError> {
    let (ni, nj) = (u.ground(), v.ground());
    let ground = ni * nj;
    check_ground(ground)?;
    let sets = SubsetFamily::from_predicate(ground, |k| {
        let mut l = 0u32;
        for j in 0..nj {
            let slice = (0..ni).fold(0u32, |m, i| if k >> product_index(i, j, ni) & 1 == 1 { m | 1 << i } else { m });
            if u.contains(slice) {
                l |= 1 << j;
            }
        }
        v.contains(l)
    });
    FiniteUltrafilter::from_filter(FiniteFilter::from_family(sets)?)
}

/// The horizontal slices `I × {j}` of `I × J`, each carrying `u`, as parts
/// of a Grimeisen sum over `v`.
pub fn slice_parts(u: &FiniteUltrafilter, j_size: usize) -> Vec<SumPart> {
    let ni = u.ground();
    (0..j_size)
        .map(|j| SumPart { members: (0..ni).map(|i| product_index(i, j, ni)).collect(), ultrafilter: u.clone() })
        .collect()
}

/// JSON shape of a family of sets on `0..n`: `{"n": 3, "sets": [[0,1], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyDoc {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl FamilyDoc {
    pub fn of(sets: &SubsetFamily) -> Self {
        FamilyDoc { n: sets.ground(), sets: sets.to_member_lists() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal filter axioms, quadratic in the family size.
    fn literal_filter(sets: &SubsetFamily) -> bool {
        let full = sets.full();
        let members: Vec<u32> = sets.iter().collect();
        !members.is_empty()
            && !sets.contains(0)
            && members.iter().all(|&x| (0..=full).filter(|y| y & x == x).all(|y| sets.contains(y)))
            && members.iter().all(|&x| members.iter().all(|&y| sets.contains(x & y)))
    }

    #[test]
    fn kernel_check_matches_literal_axioms() {
        for bits in 0u32..(1 << 8) {
            let fam = SubsetFamily::from_predicate(3, |m| bits >> m & 1 == 1);
            assert_eq!(FiniteFilter::from_family(fam.clone()).is_ok(), literal_filter(&fam), "{fam:?}");
        }
    }

    #[test]
    fn principal_examples() {
        let u = principal(3, 1).unwrap();
        assert_eq!(u.family().len(), 4);
        assert!(u.contains(0b110));
        assert!(!u.contains(0b101));
        assert!(matches!(principal(3, 3), Err(FilterError::PointOutOfRange { .. })));
    }

    #[test]
    fn ultrafilters_are_the_points() {
        assert_eq!(enumerate_ultrafilters(3).unwrap().len(), 3);
        assert_eq!(enumerate_ultrafilters(1).unwrap().len(), 1);
        for u in enumerate_ultrafilters(4).unwrap() {
            assert!(u.as_filter().is_ultrafilter());
        }
        assert!(matches!(enumerate_ultrafilters(17), Err(FilterError::GroundSize(17))));
    }

    #[test]
    fn all_filters_on_three_points() {
        let by_kernel = enumerate_filters(3).unwrap();
        let mut literal = 0;
        for bits in 0u32..(1 << 8) {
            let fam = SubsetFamily::from_predicate(3, |m| bits >> m & 1 == 1);
            if literal_filter(&fam) {
                literal += 1;
                assert!(by_kernel.iter().any(|f| f.family() == &fam));
            }
        }
        assert_eq!(literal, by_kernel.len());
    }

    #[test]
    fn filter_rejections() {
        assert!(matches!(FiniteFilter::from_sets(3, &[]), Err(FilterError::NotAFilter(_))));
        assert!(matches!(FiniteFilter::from_sets(2, &[vec![], vec![0], vec![1], vec![0, 1]]), Err(FilterError::NotAFilter(_))));
        // {0,1} and {1,2} with supersets but without {1}
        let err = FiniteFilter::from_sets(3, &[vec![0, 1], vec![1, 2], vec![0, 1, 2]]).unwrap_err();
        assert!(err.to_string().contains("intersection"));
        assert!(matches!(FiniteFilter::generated(3, &[vec![0], vec![1]]), Err(FilterError::NotAFilter(_))));
    }

    #[test]
    fn grille_examples() {
        let top = FiniteFilter::trivial(3).unwrap();
        assert_eq!(grille(&top).family().len(), 7);
        let u = principal(3, 2).unwrap();
        assert_eq!(grille(u.as_filter()).family(), u.family());
        let f = FiniteFilter::generated(3, &[vec![0, 1]]).unwrap();
        let g = grille(&f);
        for y in 0u32..8 {
            assert_eq!(g.contains(y), y & 0b011 != 0);
        }
    }

    #[test]
    fn finer_ultrafilters_examples() {
        let f = FiniteFilter::generated(3, &[vec![0, 1]]).unwrap();
        let points: Vec<usize> = finer_ultrafilters(&f).iter().map(|u| u.point()).collect();
        assert_eq!(points, vec![0, 1]);
        assert_eq!(finer_ultrafilters(principal(3, 2).unwrap().as_filter()).len(), 1);
        assert_eq!(finer_ultrafilters(&FiniteFilter::trivial(4).unwrap()).len(), 4);
    }

    #[test]
    fn uniform_filter_is_trivial() {
        let f = FiniteFilter::uniform(4).unwrap();
        assert_eq!(f.to_member_lists(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn sum_of_principals_is_principal() {
        let outer = principal(2, 1).unwrap();
        let parts = vec![
            SumPart { members: vec![0, 2], ultrafilter: principal(2, 1).unwrap() },
            SumPart { members: vec![3, 1], ultrafilter: principal(2, 0).unwrap() },
        ];
        let sum = grimeisen_sum(&outer, &parts, 4).unwrap();
        assert_eq!(sum.point(), 3);
    }

    #[test]
    fn sum_rejects_bad_parts() {
        let outer = principal(2, 0).unwrap();
        let u = principal(2, 0).unwrap();
        let overlap = vec![
            SumPart { members: vec![0, 1], ultrafilter: u.clone() },
            SumPart { members: vec![1, 2], ultrafilter: u.clone() },
        ];
        assert_eq!(grimeisen_sum(&outer, &overlap, 3), Err(FilterError::PartsOverlap(1)));
        let gap = vec![
            SumPart { members: vec![0, 1], ultrafilter: u.clone() },
            SumPart { members: vec![3, 2], ultrafilter: u.clone() },
        ];
        assert_eq!(grimeisen_sum(&outer, &gap, 5), Err(FilterError::PartsDoNotCover(4)));
        assert!(matches!(grimeisen_sum(&outer, &gap[..1], 4), Err(FilterError::PartCount { .. })));
    }

    #[test]
    fn product_of_principals() {
        let p = ordinal_product(&principal(2, 1).unwrap(), &principal(2, 0).unwrap()).unwrap();
        assert_eq!(p.point(), product_index(1, 0, 2));
    }

    #[test]
    fn product_is_a_sum_over_slices() {
        for ni in 1..=3 {
            for nj in 1..=3 {
                for u in enumerate_ultrafilters(ni).unwrap() {
                    for v in enumerate_ultrafilters(nj).unwrap() {
                        let prod = ordinal_product(&u, &v).unwrap();
                        let sum = grimeisen_sum(&v, &slice_parts(&u, nj), ni * nj).unwrap();
                        assert_eq!(prod, sum);
                    }
                }
            }
        }
    }

    #[test]
    fn product_order_matters() {
        // The raw families on the encoded points differ, but transposing the
        // coordinates maps one onto the other: principal products commute.
        let u = principal(2, 1).unwrap();
        let v = principal(3, 0).unwrap();
        let uv = ordinal_product(&u, &v).unwrap();
        let vu = ordinal_product(&v, &u).unwrap();
        assert_ne!(uv.family(), vu.family());
        let transpose = |x: usize| product_index(x / 3, x % 3, 2);
        assert_eq!(transpose(vu.point()), uv.point());
    }
}

//! Extensional families of subsets of a small ground set `0..n`.
//!
//! A subset is a bit mask (`u32`, bit `i` set iff `i` is a member) and a
//! family is stored as a bitmap over all `2^n` masks. Voting systems, filters
//! and topologies all sit on top of this representation, so equality and
//! counting are exact.

use std::fmt;

/// Largest ground set a [`SubsetFamily`] can live on.
pub const MAX_GROUND: usize = 24;

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Members of a mask in increasing order.
pub fn members(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Mask of a list of members. Callers are responsible for range checks.
pub fn mask_of(items: &[usize]) -> u32 {
    items.iter().fold(0u32, |m, &i| m | (1 << i))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    ground: usize,
    words: Vec<u64>,
}

impl SubsetFamily {
    /// The empty family on `0..ground`.
    ///
    /// Panics if `ground > MAX_GROUND`; public constructors higher up check
    /// the bound and report it as an error first.
    pub fn empty(ground: usize) -> Self {
        assert!(ground <= MAX_GROUND, "ground set too large for a bitmap family");
        let bits = 1usize << ground;
        SubsetFamily {
            ground,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    /// Every subset of `0..ground`.
    pub fn power_set(ground: usize) -> Self {
        Self::from_predicate(ground, |_| true)
    }

    pub fn from_predicate(ground: usize, mut keep: impl FnMut(u32) -> bool) -> Self {
        let mut fam = Self::empty(ground);
        for mask in 0..=full_mask(ground) {
            if keep(mask) {
                fam.insert(mask);
            }
        }
        fam
    }

    pub fn from_masks(ground: usize, masks: impl IntoIterator<Item = u32>) -> Self {
        let mut fam = Self::empty(ground);
        for m in masks {
            fam.insert(m);
        }
        fam
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.ground
    }

    #[inline]
    pub fn full(&self) -> u32 {
        full_mask(self.ground)
    }

    #[inline]
    pub fn contains(&self, mask: u32) -> bool {
        let i = mask as usize;
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, mask: u32) {
        debug_assert!(mask <= self.full());
        let i = mask as usize;
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, mask: u32) {
        let i = mask as usize;
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Member masks in increasing numeric order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let full = self.full() as usize;
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
            .filter(move |&m| m <= full)
            .map(|m| m as u32)
        })
    }

    pub fn is_subfamily_of(&self, other: &SubsetFamily) -> bool {
        self.ground == other.ground
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &SubsetFamily) -> SubsetFamily {
        assert_eq!(self.ground, other.ground);
        SubsetFamily {
            ground: self.ground,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &SubsetFamily) -> SubsetFamily {
        assert_eq!(self.ground, other.ground);
        SubsetFamily {
            ground: self.ground,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Intersection of all members; the full set for an empty family.
    pub fn meet(&self) -> u32 {
        self.iter().fold(self.full(), |acc, m| acc & m)
    }

    /// Closes the family under supersets.
    pub fn upward_closure(&self) -> SubsetFamily {
        let mut out = self.clone();
        // Masks are visited in increasing order and every one-step superset
        // is numerically larger, so a single pass suffices.
        for mask in 0..=self.full() {
            if out.contains(mask) {
                for i in 0..self.ground {
                    let sup = mask | (1 << i);
                    if sup != mask {
                        out.insert(sup);
                    }
                }
            }
        }
        out
    }

    /// Members that contain no other member.
    pub fn minimal_members(&self) -> Vec<u32> {
        self.iter()
            .filter(|&m| {
                // proper submasks of m
                let mut sub = m.wrapping_sub(1) & m;
                while sub != m {
                    if self.contains(sub) {
                        return false;
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & m;
                }
                true
            })
            .collect()
    }

    /// Member lists, sorted by mask.
    pub fn to_member_lists(&self) -> Vec<Vec<usize>> {
        self.iter().map(members).collect()
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetFamily(n={}, ", self.ground)?;
        f.debug_set().entries(self.iter().map(members)).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterates_in_mask_order() {
        let fam = SubsetFamily::from_masks(3, [6, 1, 7]);
        assert_eq!(fam.iter().collect::<Vec<_>>(), vec![1, 6, 7]);
        assert_eq!(fam.len(), 3);
    }

    #[test]
    fn upward_closure_of_single_point() {
        let fam = SubsetFamily::from_masks(3, [0b010]);
        let up = fam.upward_closure();
        assert_eq!(up.iter().collect::<Vec<_>>(), vec![2, 3, 6, 7]);
    }

    #[test]
    fn minimal_members_skip_supersets() {
        let fam = SubsetFamily::from_masks(3, [0b011, 0b111, 0b100, 0b101]);
        assert_eq!(fam.minimal_members(), vec![0b011, 0b100]);
    }

    #[test]
    fn meet_of_empty_family_is_full() {
        assert_eq!(SubsetFamily::empty(4).meet(), 0b1111);
    }
}

//! Limits of indexed set families along filters, in the discrete case.
//!
//! For a family `(E_i)_{i ∈ I}` of subsets of a finite universe `E`, a filter
//! `F` on `I` with grille `G`, and `I(x) = {i : x ∈ E_i}`:
//!
//! * `liminf_F E = ⋂_{J ∈ G} ⋃_{i ∈ J} E_i = ⋃_{J ∈ F} ⋂_{i ∈ J} E_i`,
//!   the points with `I(x) ∈ F`;
//! * `limsup_F E = ⋂_{J ∈ F} ⋃_{i ∈ J} E_i = ⋃_{J ∈ G} ⋂_{i ∈ J} E_i`,
//!   the points with `I(x) ∈ G`.
//!
//! Along an ultrafilter the two coincide. `I[F, M]` collects the indices
//! where `E_i` and `M` agree on the finite set `F`; a set `D` is a diagonal
//! when every finite piece of it is shared by "many" members, here at least
//! `q` of them, since on a finite index set the cardinal condition collapses.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::filters::{grille, FiniteFilter, FiniteUltrafilter, MAX_FILTER_GROUND};
use crate::family;
use crate::los::ElementDoc;

/// Largest universe whose subsets are enumerated.
pub const MAX_UNIVERSE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetLimitError {
    #[error("universe size {0} is outside 1..={MAX_UNIVERSE}")]
    UniverseSize(usize),
    #[error("index set size {0} is outside 1..={MAX_FILTER_GROUND}")]
    IndexSize(usize),
    #[error("point {0} is not in the universe")]
    NotInUniverse(String),
    #[error("filter lives on {filter} indices but the family has {family}")]
    IndexMismatch { filter: usize, family: usize },
    #[error("threshold must be at least 1")]
    ZeroThreshold,
    #[error("the formulas for the limits disagree: {0}")]
    Inconsistent(String),
    #[error("malformed set family document: {0}")]
    Format(String),
}

/// `(E_i)_{i ∈ I}` over the universe `0..universe`, sets stored as masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    labels: Vec<String>,
    sets: Vec<u32>,
}

impl SetFamily {
    pub fn new(universe: usize, sets: &[Vec<usize>]) -> Result<Self, SetLimitError> {
        let labels = (0..universe).map(|x| x.to_string()).collect();
        let masks = sets
            .iter()
            .map(|s| match s.iter().find(|&&x| x >= universe) {
                Some(x) => Err(SetLimitError::NotInUniverse(x.to_string())),
                None => Ok(family::mask_of(s)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        SetFamily::from_masks(labels, masks)
    }

    pub fn from_masks(labels: Vec<String>, sets: Vec<u32>) -> Result<Self, SetLimitError> {
        if labels.is_empty() || labels.len() > MAX_UNIVERSE {
            return Err(SetLimitError::UniverseSize(labels.len()));
        }
        if sets.is_empty() || sets.len() > MAX_FILTER_GROUND {
            return Err(SetLimitError::IndexSize(sets.len()));
        }
        let full = family::full_mask(labels.len());
        if let Some(&bad) = sets.iter().find(|&&m| m & !full != 0) {
            return Err(SetLimitError::NotInUniverse(format!("{}", (bad & !full).trailing_zeros())));
        }
        Ok(SetFamily { labels, sets })
    }

    pub fn universe(&self) -> usize {
        self.labels.len()
    }

    pub fn indices(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, i: usize) -> u32 {
        self.sets[i]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// Labels of the points of `mask`.
    pub fn labels_of(&self, mask: u32) -> Vec<String> {
        family::members(mask).into_iter().map(|x| self.labels[x].clone()).collect()
    }

    fn full(&self) -> u32 {
        family::full_mask(self.universe())
    }

    fn all_indices(&self) -> u32 {
        family::full_mask(self.indices())
    }

    pub fn from_json(text: &str) -> Result<Self, SetLimitError> {
        let doc: SetFamilyDoc = serde_json::from_str(text).map_err(|e| SetLimitError::Format(e.to_string()))?;
        SetFamily::from_doc(&doc)
    }

    pub fn from_doc(doc: &SetFamilyDoc) -> Result<Self, SetLimitError> {
        let labels: Vec<String> = doc.universe.iter().map(ToString::to_string).collect();
        let mut sets = Vec::with_capacity(doc.sets.len());
        for i in 0..doc.sets.len() {
            let members = doc
                .sets
                .get(&i.to_string())
                .ok_or_else(|| SetLimitError::Format(format!("sets must be keyed 0..{}; `{i}` is missing", doc.sets.len())))?;
            let mut mask = 0u32;
            for e in members {
                let x = doc
                    .universe
                    .iter()
                    .position(|u| u == e)
                    .ok_or_else(|| SetLimitError::NotInUniverse(e.to_string()))?;
                mask |= 1 << x;
            }
            sets.push(mask);
        }
        SetFamily::from_masks(labels, sets)
    }
}

/// JSON shape of a family: `{"universe": [...], "sets": {"0": [...], "1": [...]}}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SetFamilyDoc {
    pub universe: Vec<ElementDoc>,
    pub sets: BTreeMap<String, Vec<ElementDoc>>,
}

/// `I(x) = {i : x ∈ E_i}`.
pub fn index_set(fam: &SetFamily, x: usize) -> Result<u32, SetLimitError> {
    if x >= fam.universe() {
        return Err(SetLimitError::NotInUniverse(x.to_string()));
    }
    Ok((0..fam.indices()).fold(0, |m, i| if fam.sets[i] >> x & 1 == 1 { m | 1 << i } else { m }))
}

fn union_over(fam: &SetFamily, j: u32) -> u32 {
    family::members(j).into_iter().fold(0, |m, i| m | fam.sets[i])
}

fn intersection_over(fam: &SetFamily, j: u32) -> u32 {
    family::members(j).into_iter().fold(fam.full(), |m, i| m & fam.sets[i])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LimitPair {
    pub liminf: u32,
    pub limsup: u32,
    /// Present when the two agree.
    pub lim: Option<u32>,
}

/// The three descriptions of each limit: through the grille, through the
/// filter, and pointwise through `I(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LimitForms {
    pub liminf_grille: u32,
    pub liminf_filter: u32,
    pub liminf_pointwise: u32,
    pub limsup_filter: u32,
    pub limsup_grille: u32,
    pub limsup_pointwise: u32,
}

impl LimitForms {
    pub fn consistent(&self) -> bool {
        self.liminf_grille == self.liminf_filter
            && self.liminf_filter == self.liminf_pointwise
            && self.limsup_filter == self.limsup_grille
            && self.limsup_grille == self.limsup_pointwise
    }
}

pub fn limit_forms(fam: &SetFamily, f: &FiniteFilter) -> Result<LimitForms, SetLimitError> {
    if f.ground() != fam.indices() {
        return Err(SetLimitError::IndexMismatch { filter: f.ground(), family: fam.indices() });
    }
    let g = grille(f);
    let full = fam.full();
    let liminf_grille = g.members().fold(full, |acc, j| acc & union_over(fam, j));
    let limsup_filter = f.members().fold(full, |acc, j| acc & union_over(fam, j));
    let liminf_filter = f.members().fold(0, |acc, j| acc | intersection_over(fam, j));
    let limsup_grille = g.members().fold(0, |acc, j| acc | intersection_over(fam, j));
    let mut liminf_pointwise = 0;
    let mut limsup_pointwise = 0;
    for x in 0..fam.universe() {
        let ix = index_set(fam, x)?;
        if f.contains(ix) {
            liminf_pointwise |= 1 << x;
        }
        if g.contains(ix) {
            limsup_pointwise |= 1 << x;
        }
    }
    Ok(LimitForms { liminf_grille, liminf_filter, liminf_pointwise, limsup_filter, limsup_grille, limsup_pointwise })
}

/// `liminf_F` and `limsup_F`, from the grille formulas, after checking them
/// against the filter formulas and the pointwise description.
pub fn set_limits(fam: &SetFamily, f: &FiniteFilter) -> Result<LimitPair, SetLimitError> {
    let forms = limit_forms(fam, f)?;
    if !forms.consistent() {
        return Err(SetLimitError::Inconsistent(format!("{forms:?}")));
    }
    let (liminf, limsup) = (forms.liminf_grille, forms.limsup_filter);
    Ok(LimitPair { liminf, limsup, lim: (liminf == limsup).then_some(liminf) })
}

/// `lim_U E`.
pub fn ultrafilter_limit(fam: &SetFamily, u: &FiniteUltrafilter) -> Result<u32, SetLimitError> {
    let pair = set_limits(fam, u.as_filter())?;
    pair.lim.ok_or_else(|| SetLimitError::Inconsistent("liminf and limsup differ along an ultrafilter".into()))
}

/// `I[F, M] = {i : F ∩ M = F ∩ E_i}`.
pub fn i_bracket(fam: &SetFamily, f_set: u32, m: u32) -> u32 {
    (0..fam.indices()).fold(0, |acc, i| if f_set & m == f_set & fam.sets[i] { acc | 1 << i } else { acc })
}

/// `I[F, M] = ⋂_{x ∈ F ∩ M} I(x) ∩ ⋂_{x ∈ F \ M} (I \ I(x))`.
pub fn i_bracket_decomposition(fam: &SetFamily, f_set: u32, m: u32) -> u32 {
    let all = fam.all_indices();
    family::members(f_set & fam.full()).into_iter().fold(all, |acc, x| {
        let ix = index_set(fam, x).expect("x in universe");
        if m >> x & 1 == 1 {
            acc & ix
        } else {
            acc & !ix & all
        }
    })
}

/// With `L = lim_U E`: `I[F, L] ∈ U` for every `F ⊆ E`.
pub fn limit_lemma_check(fam: &SetFamily, u: &FiniteUltrafilter) -> Result<bool, SetLimitError> {
    let l = ultrafilter_limit(fam, u)?;
    Ok((0..=fam.full()).all(|f_set| u.contains(i_bracket(fam, f_set, l))))
}

/// Every `F ⊆ E` has `|I[F, D]| >= q`.
pub fn is_diagonal_truncated(d: u32, fam: &SetFamily, q: usize) -> Result<bool, SetLimitError> {
    if q == 0 {
        return Err(SetLimitError::ZeroThreshold);
    }
    Ok((0..=fam.full()).all(|f_set| i_bracket(fam, f_set, d).count_ones() as usize >= q))
}

/// `lim_U E` is a diagonal of the family at threshold 1.
pub fn limit_is_diagonal(fam: &SetFamily, u: &FiniteUltrafilter) -> Result<bool, SetLimitError> {
    let l = ultrafilter_limit(fam, u)?;
    is_diagonal_truncated(l, fam, 1)
}

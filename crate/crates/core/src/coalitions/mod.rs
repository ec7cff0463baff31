//! Generalized voting systems on a finite assembly.
//!
//! An assembly is the member set `0..n`. A voting system is an explicit
//! family of *efficacious* coalitions: on a yes/no question the side whose
//! coalition is efficacious carries the decision. The classical conditions
//! are
//!
//! * **C1**: a coalition is efficacious iff its complement is not;
//! * **C2**: every superset of an efficacious coalition is efficacious;
//! * **C3**: the intersection of two efficacious coalitions is efficacious;
//!
//! and the ultrafilter laws **U1** (`K ∩ L ∈ E ⇔ K ∈ E ∧ L ∈ E`) and **U2**
//! (`K ∪ L ∈ E ⇔ K ∈ E ∨ L ∈ E`). A system satisfying C1, C2 and C3 is
//! dictatorial on a finite assembly.

mod conditions;
mod constructors;
mod enumerate;
mod weights;

pub use conditions::{check_condition, incoherence_witness, is_ultrafilter, Condition, IncoherenceWitness};
pub use constructors::{make_dictator, make_fano, make_majority, make_weighted, weighted_is_valid, FANO_LINES};
pub use enumerate::{enumerate_systems, find_dictator, guilbaud_report, guilbaud_verify, GuilbaudReport};
pub use weights::{weight_representable, WeightVector, MAX_WEIGHT_ASSEMBLY};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{self, SubsetFamily, MAX_GROUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoalitionError {
    #[error("assembly size {0} is outside 1..={MAX_GROUND}")]
    AssemblySize(usize),
    #[error("member {member} is outside an assembly of size {size}")]
    MemberOutOfRange { member: usize, size: usize },
    #[error("coalition belongs to an assembly of size {found}, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("negative weight {weight} for member {member}")]
    NegativeWeight { member: usize, weight: String },
    #[error("weight vector has {found} entries for an assembly of size {expected}")]
    WeightLength { expected: usize, found: usize },
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed voting system document: {0}")]
    Format(String),
}

/// A finite assembly `0..n` with `1 <= n <= 24`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assembly(usize);

impl Assembly {
    pub fn new(size: usize) -> Result<Self, CoalitionError> {
        if (1..=MAX_GROUND).contains(&size) {
            Ok(Assembly(size))
        } else {
            Err(CoalitionError::AssemblySize(size))
        }
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn check_member(self, member: usize) -> Result<(), CoalitionError> {
        if member < self.0 {
            Ok(())
        } else {
            Err(CoalitionError::MemberOutOfRange { member, size: self.0 })
        }
    }

    pub fn full(self) -> Coalition {
        Coalition { members: family::full_mask(self.0), size: self.0 }
    }

    pub fn empty(self) -> Coalition {
        Coalition { members: 0, size: self.0 }
    }

    /// All `2^n` coalitions in mask order.
    pub fn coalitions(self) -> impl Iterator<Item = Coalition> {
        let size = self.0;
        (0..=family::full_mask(size)).map(move |members| Coalition { members, size })
    }
}

/// A subset of an assembly, stored as a bit pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition {
    members: u32,
    size: usize,
}

impl Coalition {
    pub fn new(assembly: Assembly, members: &[usize]) -> Result<Self, CoalitionError> {
        for &m in members {
            assembly.check_member(m)?;
        }
        Ok(Coalition { members: family::mask_of(members), size: assembly.size() })
    }

    pub fn from_mask(assembly: Assembly, mask: u32) -> Result<Self, CoalitionError> {
        if mask & !family::full_mask(assembly.size()) != 0 {
            let member = (32 - mask.leading_zeros() - 1) as usize;
            return Err(CoalitionError::MemberOutOfRange { member, size: assembly.size() });
        }
        Ok(Coalition { members: mask, size: assembly.size() })
    }

    pub(crate) fn raw(mask: u32, size: usize) -> Self {
        Coalition { members: mask, size }
    }

    pub fn mask(self) -> u32 {
        self.members
    }

    pub fn assembly_size(self) -> usize {
        self.size
    }

    pub fn len(self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.members == 0
    }

    pub fn contains(self, member: usize) -> bool {
        member < self.size && self.members >> member & 1 == 1
    }

    pub fn members(self) -> Vec<usize> {
        family::members(self.members)
    }

    /// The opposing coalition `A \ K`.
    pub fn complement(self) -> Coalition {
        Coalition { members: !self.members & family::full_mask(self.size), size: self.size }
    }

    pub fn intersection(self, other: Coalition) -> Coalition {
        debug_assert_eq!(self.size, other.size);
        Coalition { members: self.members & other.members, size: self.size }
    }

    pub fn union(self, other: Coalition) -> Coalition {
        debug_assert_eq!(self.size, other.size);
        Coalition { members: self.members | other.members, size: self.size }
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.members & !other.members == 0
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

/// `complement(K) = A \ K`.
pub fn complement(c: Coalition) -> Coalition {
    c.complement()
}

/// An assembly together with its explicit family of efficacious coalitions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VotingSystem {
    assembly: Assembly,
    efficacious: SubsetFamily,
}

impl VotingSystem {
    pub fn new(assembly: Assembly, efficacious: impl IntoIterator<Item = Coalition>) -> Result<Self, CoalitionError> {
        let mut fam = SubsetFamily::empty(assembly.size());
        for c in efficacious {
            if c.size != assembly.size() {
                return Err(CoalitionError::SizeMismatch { expected: assembly.size(), found: c.size });
            }
            fam.insert(c.members);
        }
        Ok(VotingSystem { assembly, efficacious: fam })
    }

    pub fn from_family(family: SubsetFamily) -> Result<Self, CoalitionError> {
        let assembly = Assembly::new(family.ground())?;
        Ok(VotingSystem { assembly, efficacious: family })
    }

    pub fn from_predicate(assembly: Assembly, pred: impl FnMut(u32) -> bool) -> Self {
        VotingSystem { assembly, efficacious: SubsetFamily::from_predicate(assembly.size(), pred) }
    }

    pub fn assembly(&self) -> Assembly {
        self.assembly
    }

    pub fn size(&self) -> usize {
        self.assembly.size()
    }

    pub fn family(&self) -> &SubsetFamily {
        &self.efficacious
    }

    pub fn is_efficacious(&self, c: Coalition) -> bool {
        c.size == self.size() && self.efficacious.contains(c.members)
    }

    pub(crate) fn contains_mask(&self, mask: u32) -> bool {
        self.efficacious.contains(mask)
    }

    pub fn efficacious_count(&self) -> usize {
        self.efficacious.len()
    }

    /// Efficacious coalitions in mask order.
    pub fn efficacious(&self) -> impl Iterator<Item = Coalition> + '_ {
        let size = self.size();
        self.efficacious.iter().map(move |m| Coalition::raw(m, size))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SystemDoc::from(self)).expect("voting system serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CoalitionError> {
        let doc: SystemDoc = serde_json::from_str(text).map_err(|e| CoalitionError::Format(e.to_string()))?;
        doc.try_into()
    }
}

impl fmt::Debug for VotingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VotingSystem(n={}, ", self.size())?;
        f.debug_set().entries(self.efficacious()).finish()?;
        write!(f, ")")
    }
}

/// JSON shape of a voting system: `{"n": 3, "efficacious": [[0,1], ...]}`,
/// coalitions listed in increasing bit-pattern order with sorted members.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SystemDoc {
    pub n: usize,
    pub efficacious: Vec<Vec<usize>>,
}

impl From<&VotingSystem> for SystemDoc {
    fn from(vs: &VotingSystem) -> Self {
        SystemDoc { n: vs.size(), efficacious: vs.efficacious.to_member_lists() }
    }
}

impl TryFrom<SystemDoc> for VotingSystem {
    type Error = CoalitionError;

    fn try_from(doc: SystemDoc) -> Result<Self, Self::Error> {
        let assembly = Assembly::new(doc.n)?;
        let coalitions = doc
            .efficacious
            .iter()
            .map(|members| Coalition::new(assembly, members))
            .collect::<Result<Vec<_>, _>>()?;
        VotingSystem::new(assembly, coalitions)
    }
}

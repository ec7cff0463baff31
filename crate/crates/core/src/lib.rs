//! Generalized voting systems, finite ultrafilters and their uses.
//!
//! * [`coalitions`]: voting systems on finite assemblies, the conditions
//!   C1/C2/C3/U1/U2, weighted and Fano systems, Guilbaud's theorem.
//! * [`profiles`]: preference profiles, collective relations, the conditions
//!   (S)/(T)/(V) on a candidate triple, historical election methods.
//! * [`filters`]: filters, ultrafilters and grilles on finite index sets,
//!   Grimeisen sums and ordinal products.
//! * [`los`]: a first-order language, finite structures, ultraproducts and
//!   the truth lemma.
//! * [`setlimits`]: limits of set families along filters, diagonals.
//! * [`additive`]: interval bases, representation counts, prefix diagonals.
//! * [`fintop`]: finite topologies and their specialization preorders.
//! * [`banach`]: Cesàro means and generalized limits of eventually periodic
//!   sequences.
//! * [`verify`]: the end-to-end verification suites.

pub mod additive;
pub mod banach;
pub mod coalitions;
pub mod family;
pub mod filters;
pub mod fintop;
pub mod linear;
pub mod los;
pub mod profiles;
pub mod setlimits;
pub mod verify;

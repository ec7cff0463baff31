//! Finite topologies and their specialization preorders.
//!
//! The nasse of a topology on `0..k` is the relation `x T y` iff every open
//! set containing `x` also contains `y`. It is a preorder, and the open sets
//! are recovered as the `T`-forward-closed sets: `x ∈ U` and `x T y` imply
//! `y ∈ U`. On the two-point space with opens `∅, {0}, {0, 1}` this gives
//! `1 T 0` and not `0 T 1`.
//!
//! Relations compose left to right: `x (R S) z` iff `x R y` and `y S z` for
//! some `y`. With that reading, normality is `T T⁻¹ ⊆ T⁻¹ T` and extremal
//! disconnectedness is the reverse inclusion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family;

/// Largest point set accepted by the types in this module.
pub const MAX_POINTS: usize = 8;
/// Largest point set for the exhaustive enumerators.
pub const MAX_ENUMERATION_POINTS: usize = 4;
/// Largest point set for the brute-force normality check.
pub const MAX_NORMALITY_POINTS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FintopError {
    #[error("point sets are limited to {MAX_POINTS} points, got {0}")]
    TooManyPoints(usize),
    #[error("set {set:?} is not a subset of 0..{k}")]
    OutOfRange { set: Vec<usize>, k: usize },
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("not a preorder: {0}")]
    NotAPreorder(String),
    #[error("{0}")]
    ResourceGuard(String),
    #[error("malformed topology document: {0}")]
    Format(String),
}

fn check_points(k: usize) -> Result<(), FintopError> {
    if k > MAX_POINTS {
        Err(FintopError::TooManyPoints(k))
    } else {
        Ok(())
    }
}

/// Open sets on `0..k`, stored as sorted bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    k: usize,
    opens: Vec<u32>,
}

impl FiniteTopology {
    /// Checks that `opens` contains `∅` and the full set and is closed under
    /// pairwise unions and intersections.
    pub fn from_masks(k: usize, opens: impl IntoIterator<Item = u32>) -> Result<Self, FintopError> {
        check_points(k)?;
        let full = family::full_mask(k);
        let mut opens: Vec<u32> = opens.into_iter().collect();
        if let Some(&bad) = opens.iter().find(|&&u| u & !full != 0) {
            return Err(FintopError::OutOfRange { set: family::members(bad), k });
        }
        opens.sort_unstable();
        opens.dedup();
        let has = |m: u32| opens.binary_search(&m).is_ok();
        if !has(0) {
            return Err(FintopError::NotATopology("the empty set is not open".into()));
        }
        if !has(full) {
            return Err(FintopError::NotATopology("the whole space is not open".into()));
        }
        for &u in &opens {
            for &v in &opens {
                if !has(u | v) {
                    return Err(FintopError::NotATopology(format!(
                        "{:?} ∪ {:?} is not open",
                        family::members(u),
                        family::members(v)
                    )));
                }
                if !has(u & v) {
                    return Err(FintopError::NotATopology(format!(
                        "{:?} ∩ {:?} is not open",
                        family::members(u),
                        family::members(v)
                    )));
                }
            }
        }
        Ok(FiniteTopology { k, opens })
    }

    pub fn new(k: usize, opens: &[Vec<usize>]) -> Result<Self, FintopError> {
        check_points(k)?;
        let masks = opens
            .iter()
            .map(|u| {
                if u.iter().any(|&x| x >= k) {
                    Err(FintopError::OutOfRange { set: u.clone(), k })
                } else {
                    Ok(family::mask_of(u))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteTopology::from_masks(k, masks)
    }

    pub fn discrete(k: usize) -> Result<Self, FintopError> {
        check_points(k)?;
        Ok(FiniteTopology { k, opens: (0..=family::full_mask(k)).collect() })
    }

    pub fn indiscrete(k: usize) -> Result<Self, FintopError> {
        check_points(k)?;
        let full = family::full_mask(k);
        let mut opens = vec![0, full];
        opens.dedup();
        Ok(FiniteTopology { k, opens })
    }

    pub fn points(&self) -> usize {
        self.k
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    pub fn is_open(&self, mask: u32) -> bool {
        self.opens.binary_search(&mask).is_ok()
    }

    pub fn is_closed(&self, mask: u32) -> bool {
        self.is_open(!mask & family::full_mask(self.k))
    }

    pub fn closed_sets(&self) -> Vec<u32> {
        let full = family::full_mask(self.k);
        let mut c: Vec<u32> = self.opens.iter().map(|&u| !u & full).collect();
        c.sort_unstable();
        c
    }

    /// Smallest closed set containing `mask`.
    pub fn closure(&self, mask: u32) -> u32 {
        self.closed_sets()
            .into_iter()
            .filter(|&c| c & mask == mask)
            .fold(family::full_mask(self.k), |acc, c| acc & c)
    }

    pub fn to_member_lists(&self) -> Vec<Vec<usize>> {
        self.opens.iter().map(|&u| family::members(u)).collect()
    }

    pub fn to_doc(&self) -> TopologyDoc {
        TopologyDoc { points: self.k, opens: self.to_member_lists() }
    }

    pub fn from_doc(doc: &TopologyDoc) -> Result<Self, FintopError> {
        FiniteTopology::new(doc.points, &doc.opens)
    }

    pub fn from_json(text: &str) -> Result<Self, FintopError> {
        let doc: TopologyDoc = serde_json::from_str(text).map_err(|e| FintopError::Format(e.to_string()))?;
        FiniteTopology::from_doc(&doc)
    }
}

/// JSON shape: `{"points": 2, "opens": [[], [0], [0, 1]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyDoc {
    pub points: usize,
    pub opens: Vec<Vec<usize>>,
}

/// A reflexive, transitive relation; row `x` is the mask of all `y` with
/// `x T y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    rows: Vec<u32>,
}

impl Preorder {
    pub fn from_rows(rows: Vec<u32>) -> Result<Self, FintopError> {
        let k = rows.len();
        check_points(k)?;
        let full = family::full_mask(k);
        for (x, &r) in rows.iter().enumerate() {
            if r & !full != 0 {
                return Err(FintopError::OutOfRange { set: family::members(r), k });
            }
            if r >> x & 1 == 0 {
                return Err(FintopError::NotAPreorder(format!("{x} is not related to itself")));
            }
        }
        for x in 0..k {
            for y in family::members(rows[x]) {
                if rows[y] & !rows[x] != 0 {
                    let z = (rows[y] & !rows[x]).trailing_zeros();
                    return Err(FintopError::NotAPreorder(format!(
                        "{x} T {y} and {y} T {z} but not {x} T {z}"
                    )));
                }
            }
        }
        Ok(Preorder { rows })
    }

    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Self, FintopError> {
        let k = matrix.len();
        check_points(k)?;
        let mut rows = Vec::with_capacity(k);
        for (x, row) in matrix.iter().enumerate() {
            if row.len() != k {
                return Err(FintopError::NotAPreorder(format!("row {x} has {} entries, expected {k}", row.len())));
            }
            rows.push(row.iter().enumerate().filter(|(_, &b)| b).fold(0u32, |m, (y, _)| m | 1 << y));
        }
        Preorder::from_rows(rows)
    }

    pub fn equality(k: usize) -> Result<Self, FintopError> {
        check_points(k)?;
        Ok(Preorder { rows: (0..k).map(|x| 1 << x).collect() })
    }

    pub fn total(k: usize) -> Result<Self, FintopError> {
        check_points(k)?;
        Ok(Preorder { rows: vec![family::full_mask(k); k] })
    }

    /// Reflexive-transitive closure of an arbitrary relation given by rows.
    pub fn closure_of(rows: &[u32]) -> Result<Self, FintopError> {
        let k = rows.len();
        check_points(k)?;
        let full = family::full_mask(k);
        let mut r: Vec<u32> = rows.iter().enumerate().map(|(x, &m)| (m & full) | 1 << x).collect();
        // Warshall on bit rows.
        for y in 0..k {
            for x in 0..k {
                if r[x] >> y & 1 == 1 {
                    r[x] |= r[y];
                }
            }
        }
        Ok(Preorder { rows: r })
    }

    pub fn points(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let k = self.points();
        (0..k).map(|x| (0..k).map(|y| self.holds(x, y) as u8).collect()).collect()
    }
}

/// `x T y` iff every open set containing `x` contains `y`.
pub fn nasse_of(topo: &FiniteTopology) -> Preorder {
    let k = topo.points();
    let rows = (0..k)
        .map(|x| {
            topo.opens()
                .iter()
                .filter(|&&u| u >> x & 1 == 1)
                .fold(family::full_mask(k), |acc, &u| acc & u)
        })
        .collect();
    let p = Preorder { rows };
    debug_assert!(Preorder::from_rows(p.rows.clone()).is_ok());
    p
}

/// The opens are the `T`-forward-closed sets.
pub fn topo_of(pre: &Preorder) -> FiniteTopology {
    let k = pre.points();
    let opens = (0..=family::full_mask(k))
        .filter(|&u| family::members(u).into_iter().all(|x| pre.rows[x] & !u == 0))
        .collect();
    FiniteTopology { k, opens }
}

/// Every topology on `0..k`, found by testing each family of subsets that
/// contains `∅` and the full set for closure under union and intersection.
pub fn enumerate_topologies(k: usize) -> Result<Vec<FiniteTopology>, FintopError> {
    if k > MAX_ENUMERATION_POINTS {
        return Err(FintopError::ResourceGuard(format!(
            "topology enumeration is limited to {MAX_ENUMERATION_POINTS} points, got {k}"
        )));
    }
    let full = family::full_mask(k);
    // Candidate members other than ∅ and the full set.
    let middle: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for pick in 0u64..(1 << middle.len()) {
        let mut opens = vec![0, full];
        opens.extend(middle.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &m)| m));
        if let Ok(t) = FiniteTopology::from_masks(k, opens) {
            out.push(t);
        }
    }
    Ok(out)
}

/// Every preorder on `0..k`, found by testing each reflexive relation
/// matrix for transitivity.
pub fn enumerate_preorders(k: usize) -> Result<Vec<Preorder>, FintopError> {
    if k > MAX_ENUMERATION_POINTS {
        return Err(FintopError::ResourceGuard(format!(
            "preorder enumeration is limited to {MAX_ENUMERATION_POINTS} points, got {k}"
        )));
    }
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|x| (0..k).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
    let mut out = Vec::new();
    for pick in 0u64..(1 << cells.len()) {
        let mut rows: Vec<u32> = (0..k).map(|x| 1 << x).collect();
        for (i, &(x, y)) in cells.iter().enumerate() {
            if pick >> i & 1 == 1 {
                rows[x] |= 1 << y;
            }
        }
        if let Ok(p) = Preorder::from_rows(rows) {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorrespondenceCount {
    pub k: usize,
    pub topologies: usize,
    pub preorders: usize,
    pub equal: bool,
}

pub fn count_correspondence(k: usize) -> Result<CorrespondenceCount, FintopError> {
    let topologies = enumerate_topologies(k)?.len();
    let preorders = enumerate_preorders(k)?.len();
    Ok(CorrespondenceCount { k, topologies, preorders, equal: topologies == preorders })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub k: usize,
    pub preorders: usize,
    pub topologies: usize,
    /// `nasse_of(topo_of(p)) = p` for every enumerated preorder.
    pub preorder_round_trip: bool,
    /// `topo_of(nasse_of(t)) = t` for every enumerated topology.
    pub topology_round_trip: bool,
}

impl RoundTripReport {
    pub fn holds(&self) -> bool {
        self.preorder_round_trip && self.topology_round_trip
    }
}

/// Both round trips over every preorder and topology on `0..k`.
pub fn round_trip_check(k: usize) -> Result<RoundTripReport, FintopError> {
    let pres = enumerate_preorders(k)?;
    let topos = enumerate_topologies(k)?;
    Ok(RoundTripReport {
        k,
        preorders: pres.len(),
        topologies: topos.len(),
        preorder_round_trip: pres.iter().all(|p| &nasse_of(&topo_of(p)) == p),
        topology_round_trip: topos.iter().all(|t| &topo_of(&nasse_of(t)) == t),
    })
}

/// A random preorder: the reflexive-transitive closure of a relation with
/// each off-diagonal pair present with probability `density`.
pub fn random_preorder<R: Rng>(rng: &mut R, k: usize, density: f64) -> Result<Preorder, FintopError> {
    check_points(k)?;
    let rows: Vec<u32> = (0..k)
        .map(|x| (0..k).filter(|&y| y != x && rng.gen_bool(density)).fold(0u32, |m, y| m | 1 << y))
        .collect();
    Preorder::closure_of(&rows)
}

/// Round trips on sampled preorders, for sizes beyond exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RandomRoundTripReport {
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    /// Samples where `nasse_of(topo_of(p)) = p` and the topology maps back
    /// to itself.
    pub passed: usize,
}

impl RandomRoundTripReport {
    pub fn holds(&self) -> bool {
        self.passed == self.samples
    }
}

/// `samples` preorders on `0..k` from a ChaCha8 stream seeded by `seed`,
/// with densities cycling through sparse to dense.
pub fn random_round_trip(seed: u64, k: usize, samples: usize) -> Result<RandomRoundTripReport, FintopError> {
    const DENSITIES: [f64; 4] = [0.1, 0.25, 0.5, 0.75];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for s in 0..samples {
        let p = random_preorder(&mut rng, k, DENSITIES[s % DENSITIES.len()])?;
        let t = topo_of(&p);
        if nasse_of(&t) == p && topo_of(&nasse_of(&t)) == t {
            passed += 1;
        }
    }
    Ok(RandomRoundTripReport { k, samples, seed, passed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    /// Disjoint closed sets have disjoint open neighbourhoods.
    pub normal_direct: bool,
    /// `T T⁻¹ ⊆ T⁻¹ T`.
    pub nasse_condition: bool,
    pub agree: bool,
    /// The closure of every open set is open.
    pub extremally_disconnected_direct: bool,
    /// `T⁻¹ T ⊆ T T⁻¹`.
    pub extremal_nasse_condition: bool,
    pub extremal_agree: bool,
}

/// Pairs `(x, z)` with a common `T`-successor: `x T y` and `z T y`.
fn common_successor(t: &Preorder) -> Vec<u32> {
    let k = t.points();
    (0..k)
        .map(|x| (0..k).filter(|&z| t.rows[x] & t.rows[z] != 0).fold(0u32, |m, z| m | 1 << z))
        .collect()
}

/// Pairs `(x, z)` with a common `T`-predecessor: `y T x` and `y T z`.
fn common_predecessor(t: &Preorder) -> Vec<u32> {
    let k = t.points();
    (0..k)
        .map(|x| {
            (0..k)
                .filter(|&z| (0..k).any(|y| t.holds(y, x) && t.holds(y, z)))
                .fold(0u32, |m, z| m | 1 << z)
        })
        .collect()
}

fn included(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

pub fn normality_check(topo: &FiniteTopology) -> Result<NormalityReport, FintopError> {
    if topo.points() > MAX_NORMALITY_POINTS {
        return Err(FintopError::ResourceGuard(format!(
            "normality is checked on at most {MAX_NORMALITY_POINTS} points, got {}",
            topo.points()
        )));
    }
    let closed = topo.closed_sets();
    let opens = topo.opens();
    let normal_direct = closed.iter().all(|&a| {
        closed.iter().filter(|&&b| a & b == 0).all(|&b| {
            opens
                .iter()
                .filter(|&&u| u & a == a)
                .any(|&u| opens.iter().any(|&v| v & b == b && u & v == 0))
        })
    });
    let extremally_disconnected_direct = opens.iter().all(|&u| topo.is_open(topo.closure(u)));

    let t = nasse_of(topo);
    let tt_inv = common_successor(&t);
    let t_inv_t = common_predecessor(&t);
    let nasse_condition = included(&tt_inv, &t_inv_t);
    let extremal_nasse_condition = included(&t_inv_t, &tt_inv);
    Ok(NormalityReport {
        normal_direct,
        nasse_condition,
        agree: normal_direct == nasse_condition,
        extremally_disconnected_direct,
        extremal_nasse_condition,
        extremal_agree: extremally_disconnected_direct == extremal_nasse_condition,
    })
}

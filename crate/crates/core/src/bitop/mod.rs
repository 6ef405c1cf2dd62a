//! Finite bitopological spaces and the prime-filter duality for CRDSA.
//!
//! Point sets are `u128` bitmasks (bit `i` is point `i`), so spaces have at
//! most [`MAX_POINTS`] points. Topologies are stored as their full, sorted
//! family of open sets.

mod base;
mod morphism;
mod spectrum;

use serde_json::{json, Value};
use thiserror::Error;

use crate::crdsa::CrdsaError;
use crate::finalg::FinalgError;

pub use base::{
    check_crdsa_base, pairwise_properties, phi_plus_iso_check, BaseReport, ConditionCheck,
    PairwiseReport, PhiIsoReport, ZeroDimEquivalence,
};
pub use morphism::{
    check_morphism, induced_point_map, is_bicontinuous, psi_roundtrip, BoundaryCheck,
    MorphismReport, PsiReport,
};
pub use spectrum::{
    base_lattice, prime_filters, prime_filters_brute, prime_filters_join_irreducible, spectrum,
    PrimeFilter, Spectrum, BRUTE_FORCE_LIMIT,
};

pub type PointSet = u128;

pub const MAX_POINTS: usize = 128;

/// Cap on the size of a generated topology.
pub const MAX_OPENS: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BitopError {
    #[error(transparent)]
    Algebra(#[from] FinalgError),
    #[error(transparent)]
    Crdsa(#[from] CrdsaError),
    #[error("not a bounded distributive lattice: {0}")]
    NotLattice(String),
    #[error("space has {points} points, more than {cap}")]
    TooManyPoints { points: usize, cap: usize },
    #[error("generated topology exceeds {cap} open sets")]
    TooManyOpens { cap: usize },
    #[error("point {point} outside a ground set of size {ground}")]
    PointOutOfRange { point: usize, ground: usize },
    #[error("topology index must be 1 or 2, got {0}")]
    BadTopologyIndex(usize),
    #[error("family is not a topology: {0}")]
    NotTopology(String),
    #[error("map is not total: {0}")]
    MapNotTotal(String),
    #[error("map is not bi-continuous: preimage of {open:?} is not open in topology {topology}")]
    NotBiContinuous { topology: usize, open: Vec<usize> },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("independent checks disagree: {0}")]
    RouteMismatch(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

pub fn full_set(n: usize) -> PointSet {
    if n >= MAX_POINTS {
        PointSet::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub fn points_of(set: PointSet) -> Vec<usize> {
    (0..MAX_POINTS).filter(|&i| set >> i & 1 == 1).collect()
}

pub fn set_of<I: IntoIterator<Item = usize>>(points: I) -> PointSet {
    points.into_iter().fold(0, |acc, p| acc | 1u128 << p)
}

/// A topology on `{0, .., ground_size-1}` given by all its open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    ground_size: usize,
    opens: Vec<PointSet>,
}

impl FiniteTopology {
    /// The topology generated by `family`: closes `family ∪ {∅, X}` under
    /// pairwise union and intersection.
    pub fn generate(ground_size: usize, family: &[PointSet]) -> Result<Self, BitopError> {
        check_ground(ground_size)?;
        let full = full_set(ground_size);
        let mut opens: Vec<PointSet> = vec![0, full];
        for &s in family {
            if s & !full != 0 {
                return Err(BitopError::PointOutOfRange {
                    point: (s & !full).trailing_zeros() as usize,
                    ground: ground_size,
                });
            }
            opens.push(s);
        }
        opens.sort_unstable();
        opens.dedup();
        let mut seen: std::collections::HashSet<PointSet> = opens.iter().copied().collect();
        let mut i = 0;
        while i < opens.len() {
            let a = opens[i];
            for j in 0..=i {
                let b = opens[j];
                for c in [a | b, a & b] {
                    if seen.insert(c) {
                        if seen.len() > MAX_OPENS {
                            return Err(BitopError::TooManyOpens { cap: MAX_OPENS });
                        }
                        opens.push(c);
                    }
                }
            }
            i += 1;
        }
        opens.sort_unstable();
        Ok(FiniteTopology { ground_size, opens })
    }

    /// Accepts `opens` as is after checking the topology axioms on all pairs.
    pub fn from_opens(ground_size: usize, opens: &[PointSet]) -> Result<Self, BitopError> {
        check_ground(ground_size)?;
        let full = full_set(ground_size);
        let mut opens = opens.to_vec();
        opens.sort_unstable();
        opens.dedup();
        let set: std::collections::HashSet<PointSet> = opens.iter().copied().collect();
        if !set.contains(&0) || !set.contains(&full) {
            return Err(BitopError::NotTopology(
                "missing ∅ or the ground set".into(),
            ));
        }
        if let Some(&s) = opens.iter().find(|&&s| s & !full != 0) {
            return Err(BitopError::NotTopology(format!(
                "{:?} leaves the ground set",
                points_of(s)
            )));
        }
        for &a in &opens {
            for &b in &opens {
                if !set.contains(&(a | b)) || !set.contains(&(a & b)) {
                    return Err(BitopError::NotTopology(format!(
                        "not closed at {:?}, {:?}",
                        points_of(a),
                        points_of(b)
                    )));
                }
            }
        }
        Ok(FiniteTopology { ground_size, opens })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn full(&self) -> PointSet {
        full_set(self.ground_size)
    }

    /// Open sets in increasing bitset order.
    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    /// Closed sets in increasing bitset order.
    pub fn closed_sets(&self) -> Vec<PointSet> {
        let mut c: Vec<PointSet> = self.opens.iter().map(|&u| self.complement(u)).collect();
        c.sort_unstable();
        c
    }

    pub fn complement(&self, u: PointSet) -> PointSet {
        self.full() & !u
    }

    pub fn is_open(&self, u: PointSet) -> bool {
        self.opens.binary_search(&u).is_ok()
    }

    pub fn is_closed(&self, u: PointSet) -> bool {
        self.is_open(self.complement(u))
    }

    pub fn is_clopen(&self, u: PointSet) -> bool {
        self.is_open(u) && self.is_closed(u)
    }

    pub fn interior(&self, u: PointSet) -> PointSet {
        self.opens
            .iter()
            .filter(|&&o| o & !u == 0)
            .fold(0, |acc, &o| acc | o)
    }

    pub fn closure(&self, u: PointSet) -> PointSet {
        self.complement(self.interior(self.complement(u)))
    }

    pub fn boundary(&self, u: PointSet) -> PointSet {
        self.closure(u) & !self.interior(u)
    }

    pub fn is_t0(&self) -> bool {
        (0..self.ground_size)
            .all(|x| (0..x).all(|y| self.opens.iter().any(|&o| (o >> x & 1) != (o >> y & 1))))
    }

    /// True if every open set is a union of members of `family`.
    pub fn is_basis(&self, family: &[PointSet]) -> bool {
        family.iter().all(|&b| self.is_open(b))
            && self.opens.iter().all(|&o| {
                family
                    .iter()
                    .filter(|&&b| b & !o == 0)
                    .fold(0, |acc, &b| acc | b)
                    == o
            })
    }
}

fn check_ground(ground_size: usize) -> Result<(), BitopError> {
    if ground_size > MAX_POINTS {
        return Err(BitopError::TooManyPoints {
            points: ground_size,
            cap: MAX_POINTS,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Closure,
    Interior,
    Boundary,
}

/// `(X, t1, t2)` with designated bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitopSpace {
    ground_size: usize,
    t1: FiniteTopology,
    t2: FiniteTopology,
    base1: Vec<PointSet>,
    base2: Vec<PointSet>,
}

impl BitopSpace {
    /// Topologies are generated from the given families, which become the
    /// designated bases.
    pub fn new(
        ground_size: usize,
        base1: &[PointSet],
        base2: &[PointSet],
    ) -> Result<Self, BitopError> {
        let t1 = FiniteTopology::generate(ground_size, base1)?;
        let t2 = FiniteTopology::generate(ground_size, base2)?;
        let canon = |b: &[PointSet]| {
            let mut v = b.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        Ok(BitopSpace {
            ground_size,
            t1,
            t2,
            base1: canon(base1),
            base2: canon(base2),
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn full(&self) -> PointSet {
        full_set(self.ground_size)
    }

    pub fn t1(&self) -> &FiniteTopology {
        &self.t1
    }

    pub fn t2(&self) -> &FiniteTopology {
        &self.t2
    }

    pub fn base1(&self) -> &[PointSet] {
        &self.base1
    }

    pub fn base2(&self) -> &[PointSet] {
        &self.base2
    }

    pub fn topology(&self, which: usize) -> Result<&FiniteTopology, BitopError> {
        match which {
            1 => Ok(&self.t1),
            2 => Ok(&self.t2),
            _ => Err(BitopError::BadTopologyIndex(which)),
        }
    }

    pub fn region_operator(
        &self,
        which: usize,
        kind: Region,
        u: PointSet,
    ) -> Result<PointSet, BitopError> {
        let t = self.topology(which)?;
        if u & !self.full() != 0 {
            return Err(BitopError::PointOutOfRange {
                point: (u & !self.full()).trailing_zeros() as usize,
                ground: self.ground_size,
            });
        }
        Ok(match kind {
            Region::Closure => t.closure(u),
            Region::Interior => t.interior(u),
            Region::Boundary => t.boundary(u),
        })
    }

    /// `t1 ∩ δ2`
    pub fn open1_closed2(&self) -> Vec<PointSet> {
        self.t1
            .opens
            .iter()
            .copied()
            .filter(|&u| self.t2.is_closed(u))
            .collect()
    }

    /// `t2 ∩ δ1`
    pub fn open2_closed1(&self) -> Vec<PointSet> {
        self.t2
            .opens
            .iter()
            .copied()
            .filter(|&u| self.t1.is_closed(u))
            .collect()
    }

    pub fn to_json_value(&self) -> Value {
        let family =
            |b: &[PointSet]| -> Vec<Vec<usize>> { b.iter().map(|&s| points_of(s)).collect() };
        json!({
            "points": self.ground_size,
            "t1_base": family(&self.base1),
            "t2_base": family(&self.base2),
        })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(value: &Value) -> Result<Self, BitopError> {
        let err = |m: &str| BitopError::Json(m.to_string());
        let n = value
            .get("points")
            .and_then(Value::as_u64)
            .ok_or_else(|| err("`points` must be a nonnegative integer"))? as usize;
        check_ground(n)?;
        let family = |key: &str| -> Result<Vec<PointSet>, BitopError> {
            let sets = value
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| err(&format!("`{key}` must be a list of point lists")))?;
            sets.iter()
                .map(|s| {
                    let pts = s
                        .as_array()
                        .ok_or_else(|| err(&format!("`{key}` entries must be lists")))?;
                    pts.iter().try_fold(0u128, |acc, p| {
                        let p = p
                            .as_u64()
                            .ok_or_else(|| err("points are nonnegative integers"))?
                            as usize;
                        if p >= n {
                            return Err(BitopError::PointOutOfRange {
                                point: p,
                                ground: n,
                            });
                        }
                        Ok(acc | 1u128 << p)
                    })
                })
                .collect()
        };
        BitopSpace::new(n, &family("t1_base")?, &family("t2_base")?)
    }

    pub fn from_json(text: &str) -> Result<Self, BitopError> {
        let v: Value = serde_json::from_str(text).map_err(|e| BitopError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

pub fn point_map_to_json(map: &[usize]) -> String {
    json!({ "map": map }).to_string()
}

pub fn point_map_from_json(text: &str) -> Result<Vec<usize>, BitopError> {
    let v: Value = serde_json::from_str(text).map_err(|e| BitopError::Json(e.to_string()))?;
    v.get("map")
        .and_then(Value::as_array)
        .ok_or_else(|| BitopError::Json("`map` must be a list".into()))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| BitopError::Json("map entries are point indices".into()))
        })
        .collect()
}

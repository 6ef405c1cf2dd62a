//! Three-state node partitions and their vector form.
//!
//! A [`TernaryPartition`] records, for a finite set of labelled nodes, which
//! nodes are known good and which are known bad; every other node is unknown.
//! A [`TernaryVector`] is the same information written as a word over the
//! three-element chain `0 < S < 1`. [`alpha`] and [`alpha_inverse`] translate
//! between the two and preserve the full double Stone signature.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound on the number of nodes when materializing all
/// `3^n` elements.
pub const DEFAULT_MAX_NODES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TernaryError {
    #[error("node set must be nonempty")]
    EmptyNodeSet,
    #[error("duplicate node label `{0}`")]
    DuplicateLabel(String),
    #[error("label `{0}` is not a member of the node set")]
    UnknownLabel(String),
    #[error("node `{0}` is both good and bad")]
    Overlap(String),
    #[error("operands are defined over different node sets")]
    NodeSetMismatch,
    #[error("invalid ternary digit `{0}` (expected one of 0, S, 1)")]
    BadDigit(char),
    #[error("vector length {found} does not match n = {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{nodes} nodes exceeds the cap of {cap}")]
    TooManyNodes { nodes: usize, cap: usize },
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// One coordinate of `C_3`, ordered `Zero < Mid < One`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trit {
    Zero,
    /// The core element, printed `S`.
    Mid,
    One,
}

impl Trit {
    pub const ALL: [Trit; 3] = [Trit::Zero, Trit::Mid, Trit::One];

    #[inline]
    pub fn digit(self) -> usize {
        match self {
            Trit::Zero => 0,
            Trit::Mid => 1,
            Trit::One => 2,
        }
    }

    #[inline]
    pub fn from_digit(d: usize) -> Option<Trit> {
        match d {
            0 => Some(Trit::Zero),
            1 => Some(Trit::Mid),
            2 => Some(Trit::One),
            _ => None,
        }
    }

    #[inline]
    pub fn join(self, other: Trit) -> Trit {
        self.max(other)
    }

    #[inline]
    pub fn meet(self, other: Trit) -> Trit {
        self.min(other)
    }

    /// Pseudocomplement: `0 -> 1`, `S -> 0`, `1 -> 0`.
    #[inline]
    pub fn star(self) -> Trit {
        match self {
            Trit::Zero => Trit::One,
            _ => Trit::Zero,
        }
    }

    /// Dual pseudocomplement: `0 -> 1`, `S -> 1`, `1 -> 0`.
    #[inline]
    pub fn plus(self) -> Trit {
        match self {
            Trit::One => Trit::Zero,
            _ => Trit::One,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Trit::Zero => '0',
            Trit::Mid => 'S',
            Trit::One => '1',
        }
    }

    pub fn from_char(c: char) -> Result<Trit, TernaryError> {
        match c {
            '0' => Ok(Trit::Zero),
            'S' => Ok(Trit::Mid),
            '1' => Ok(Trit::One),
            other => Err(TernaryError::BadDigit(other)),
        }
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A nonempty set of node labels kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    labels: Vec<String>,
}

impl NodeSet {
    pub fn new<I, S>(labels: I) -> Result<Self, TernaryError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen = BTreeSet::new();
        for label in labels {
            let label = label.into();
            if !seen.insert(label.clone()) {
                return Err(TernaryError::DuplicateLabel(label));
            }
        }
        if seen.is_empty() {
            return Err(TernaryError::EmptyNodeSet);
        }
        Ok(NodeSet {
            labels: seen.into_iter().collect(),
        })
    }

    /// Nodes labelled `"1"`, `"2"`, ..., `"n"`.
    pub fn numbered(n: usize) -> Result<Self, TernaryError> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels
            .binary_search_by(|probe| probe.as_str().cmp(label))
            .ok()
    }

    fn subset<'a, I>(&self, members: I) -> Result<FixedBitSet, TernaryError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for label in members {
            let i = self
                .position(label)
                .ok_or_else(|| TernaryError::UnknownLabel(label.to_string()))?;
            bits.insert(i);
        }
        Ok(bits)
    }
}

/// A pair of disjoint node subsets `(good, bad)`.
///
/// Ordered by `p <= q` iff `p.good ⊆ q.good` and `q.bad ⊆ p.bad`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryPartition {
    nodes: Arc<NodeSet>,
    good: FixedBitSet,
    bad: FixedBitSet,
}

impl TernaryPartition {
    /// Validates and builds a partition from label lists.
    pub fn new<'a, G, B>(nodes: Arc<NodeSet>, good: G, bad: B) -> Result<Self, TernaryError>
    where
        G: IntoIterator<Item = &'a str>,
        B: IntoIterator<Item = &'a str>,
    {
        if nodes.is_empty() {
            return Err(TernaryError::EmptyNodeSet);
        }
        let good = nodes.subset(good)?;
        let bad = nodes.subset(bad)?;
        if let Some(i) = good.intersection(&bad).next() {
            return Err(TernaryError::Overlap(nodes.labels[i].clone()));
        }
        Ok(TernaryPartition { nodes, good, bad })
    }

    /// `(J, ∅)`.
    pub fn top(nodes: Arc<NodeSet>) -> Self {
        let mut good = FixedBitSet::with_capacity(nodes.len());
        good.insert_range(..);
        let bad = FixedBitSet::with_capacity(nodes.len());
        TernaryPartition { nodes, good, bad }
    }

    /// `(∅, J)`.
    pub fn bottom(nodes: Arc<NodeSet>) -> Self {
        let good = FixedBitSet::with_capacity(nodes.len());
        let mut bad = FixedBitSet::with_capacity(nodes.len());
        bad.insert_range(..);
        TernaryPartition { nodes, good, bad }
    }

    /// `(∅, ∅)`, every node unknown.
    pub fn core(nodes: Arc<NodeSet>) -> Self {
        let n = nodes.len();
        TernaryPartition {
            nodes,
            good: FixedBitSet::with_capacity(n),
            bad: FixedBitSet::with_capacity(n),
        }
    }

    /// Every partition of `nodes`, in increasing order of the vector index.
    pub fn all(nodes: Arc<NodeSet>, max_nodes: usize) -> Result<Vec<Self>, TernaryError> {
        let n = nodes.len();
        let vectors = TernaryVector::all(n, max_nodes)?;
        Ok(vectors
            .iter()
            .map(|v| alpha_inverse(Arc::clone(&nodes), v).expect("lengths agree"))
            .collect())
    }

    pub fn nodes(&self) -> &Arc<NodeSet> {
        &self.nodes
    }

    pub fn good_labels(&self) -> impl Iterator<Item = &str> {
        self.good.ones().map(|i| self.nodes.labels[i].as_str())
    }

    pub fn bad_labels(&self) -> impl Iterator<Item = &str> {
        self.bad.ones().map(|i| self.nodes.labels[i].as_str())
    }

    /// Nodes that are neither good nor bad.
    pub fn unknown_labels(&self) -> impl Iterator<Item = &str> {
        (0..self.nodes.len())
            .filter(|&i| !self.good.contains(i) && !self.bad.contains(i))
            .map(|i| self.nodes.labels[i].as_str())
    }

    fn same_nodes(&self, other: &Self) -> Result<(), TernaryError> {
        if Arc::ptr_eq(&self.nodes, &other.nodes) || self.nodes == other.nodes {
            Ok(())
        } else {
            Err(TernaryError::NodeSetMismatch)
        }
    }

    fn complement(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut c = set.clone();
        c.toggle_range(..);
        c
    }

    pub fn join(&self, other: &Self) -> Result<Self, TernaryError> {
        self.same_nodes(other)?;
        let mut good = self.good.clone();
        good.union_with(&other.good);
        let mut bad = self.bad.clone();
        bad.intersect_with(&other.bad);
        Ok(TernaryPartition {
            nodes: Arc::clone(&self.nodes),
            good,
            bad,
        })
    }

    pub fn meet(&self, other: &Self) -> Result<Self, TernaryError> {
        self.same_nodes(other)?;
        let mut good = self.good.clone();
        good.intersect_with(&other.good);
        let mut bad = self.bad.clone();
        bad.union_with(&other.bad);
        Ok(TernaryPartition {
            nodes: Arc::clone(&self.nodes),
            good,
            bad,
        })
    }

    /// `(good, bad)^* = (bad, bad^c)`.
    pub fn pseudocomplement(&self) -> Self {
        TernaryPartition {
            nodes: Arc::clone(&self.nodes),
            good: self.bad.clone(),
            bad: self.complement(&self.bad),
        }
    }

    /// `(good, bad)^+ = (good^c, good)`.
    pub fn dual_pseudocomplement(&self) -> Self {
        TernaryPartition {
            nodes: Arc::clone(&self.nodes),
            good: self.complement(&self.good),
            bad: self.good.clone(),
        }
    }

    pub fn leq(&self, other: &Self) -> Result<bool, TernaryError> {
        self.same_nodes(other)?;
        Ok(self.good.is_subset(&other.good) && other.bad.is_subset(&self.bad))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PartitionJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TernaryError> {
        let raw: PartitionJson =
            serde_json::from_str(text).map_err(|e| TernaryError::Json(e.to_string()))?;
        let nodes = Arc::new(NodeSet::new(raw.nodes)?);
        TernaryPartition::new(
            nodes,
            raw.good.iter().map(String::as_str),
            raw.bad.iter().map(String::as_str),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    nodes: Vec<String>,
    good: Vec<String>,
    bad: Vec<String>,
}

impl From<&TernaryPartition> for PartitionJson {
    fn from(p: &TernaryPartition) -> Self {
        PartitionJson {
            nodes: p.nodes.labels.clone(),
            good: p.good_labels().map(str::to_string).collect(),
            bad: p.bad_labels().map(str::to_string).collect(),
        }
    }
}

impl fmt::Display for TernaryPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let good: Vec<_> = self.good_labels().collect();
        let bad: Vec<_> = self.bad_labels().collect();
        write!(f, "({{{}}},{{{}}})", good.join(","), bad.join(","))
    }
}

/// An element of `C_3^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryVector {
    word: Vec<Trit>,
}

impl TernaryVector {
    pub fn new(word: Vec<Trit>) -> Self {
        assert!(!word.is_empty(), "ternary vectors have positive length");
        TernaryVector { word }
    }

    pub fn constant(n: usize, t: Trit) -> Self {
        Self::new(vec![t; n])
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[Trit] {
        &self.word
    }

    /// Base-3 value with the first coordinate most significant.
    pub fn index(&self) -> usize {
        self.word.iter().fold(0, |acc, t| acc * 3 + t.digit())
    }

    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut word = vec![Trit::Zero; n];
        for slot in word.iter_mut().rev() {
            *slot = Trit::from_digit(index % 3).expect("digit below 3");
            index /= 3;
        }
        debug_assert_eq!(index, 0, "index out of range for n");
        TernaryVector { word }
    }

    /// All `3^n` vectors in index order.
    pub fn all(n: usize, max_nodes: usize) -> Result<Vec<Self>, TernaryError> {
        if n == 0 {
            return Err(TernaryError::EmptyNodeSet);
        }
        if n > max_nodes {
            return Err(TernaryError::TooManyNodes {
                nodes: n,
                cap: max_nodes,
            });
        }
        Ok((0..3usize.pow(n as u32))
            .map(|i| Self::from_index(n, i))
            .collect())
    }

    fn zip(&self, other: &Self, f: impl Fn(Trit, Trit) -> Trit) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        TernaryVector {
            word: self
                .word
                .iter()
                .zip(&other.word)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(Trit) -> Trit) -> Self {
        TernaryVector {
            word: self.word.iter().map(|&a| f(a)).collect(),
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        self.zip(other, Trit::join)
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.zip(other, Trit::meet)
    }

    pub fn star(&self) -> Self {
        self.map(Trit::star)
    }

    pub fn plus(&self) -> Self {
        self.map(Trit::plus)
    }

    /// Pointwise order.
    pub fn leq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.word.iter().zip(&other.word).all(|(a, b)| a <= b)
    }

    pub fn is_boolean(&self) -> bool {
        !self.word.contains(&Trit::Mid)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&VectorJson {
            n: self.len(),
            word: self.to_string(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TernaryError> {
        let raw: VectorJson =
            serde_json::from_str(text).map_err(|e| TernaryError::Json(e.to_string()))?;
        let v: TernaryVector = raw.word.parse()?;
        if v.len() != raw.n {
            return Err(TernaryError::LengthMismatch {
                expected: raw.n,
                found: v.len(),
            });
        }
        Ok(v)
    }
}

impl PartialOrd for TernaryVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.leq(other), other.leq(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.word {
            write!(f, "{}", t.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for TernaryVector {
    type Err = TernaryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let word = s
            .chars()
            .map(Trit::from_char)
            .collect::<Result<Vec<_>, _>>()?;
        if word.is_empty() {
            return Err(TernaryError::EmptyNodeSet);
        }
        Ok(TernaryVector { word })
    }
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    n: usize,
    word: String,
}

/// Coordinate `i` is `1` for good nodes, `0` for bad nodes and `S` otherwise,
/// with coordinates in node label order.
pub fn alpha(p: &TernaryPartition) -> TernaryVector {
    let word = (0..p.nodes.len())
        .map(|i| {
            if p.good.contains(i) {
                Trit::One
            } else if p.bad.contains(i) {
                Trit::Zero
            } else {
                Trit::Mid
            }
        })
        .collect();
    TernaryVector { word }
}

pub fn alpha_inverse(
    nodes: Arc<NodeSet>,
    v: &TernaryVector,
) -> Result<TernaryPartition, TernaryError> {
    if v.len() != nodes.len() {
        return Err(TernaryError::LengthMismatch {
            expected: nodes.len(),
            found: v.len(),
        });
    }
    let n = nodes.len();
    let mut good = FixedBitSet::with_capacity(n);
    let mut bad = FixedBitSet::with_capacity(n);
    for (i, t) in v.word.iter().enumerate() {
        match t {
            Trit::One => good.insert(i),
            Trit::Zero => bad.insert(i),
            Trit::Mid => {}
        }
    }
    Ok(TernaryPartition { nodes, good, bad })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j2() -> Arc<NodeSet> {
        Arc::new(NodeSet::numbered(2).unwrap())
    }

    fn part(nodes: &Arc<NodeSet>, good: &[&str], bad: &[&str]) -> TernaryPartition {
        TernaryPartition::new(Arc::clone(nodes), good.iter().copied(), bad.iter().copied()).unwrap()
    }

    #[test]
    fn construction_and_errors() {
        let j = j2();
        let p = part(&j, &["1"], &["2"]);
        assert_eq!(p.to_string(), "({1},{2})");
        assert_eq!(part(&j, &[], &[]), TernaryPartition::core(Arc::clone(&j)));

        let j1 = Arc::new(NodeSet::numbered(1).unwrap());
        assert_eq!(
            TernaryPartition::new(j1, ["1"], ["1"]),
            Err(TernaryError::Overlap("1".into()))
        );
        assert_eq!(
            TernaryPartition::new(Arc::clone(&j), ["3"], []),
            Err(TernaryError::UnknownLabel("3".into()))
        );
        assert_eq!(
            NodeSet::new(Vec::<String>::new()),
            Err(TernaryError::EmptyNodeSet)
        );
        assert_eq!(
            NodeSet::new(["a", "a"]),
            Err(TernaryError::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn labels_sorted_lexicographically() {
        let ns = NodeSet::new(["b", "10", "2", "a"]).unwrap();
        assert_eq!(ns.labels(), ["10", "2", "a", "b"]);
    }

    #[test]
    fn join_examples() {
        let j = j2();
        let bottom = TernaryPartition::bottom(Arc::clone(&j));
        let p = part(&j, &["1"], &["2"]);
        assert_eq!(p.join(&bottom).unwrap(), p);
        let a = part(&j, &["1"], &[]);
        let b = part(&j, &["2"], &[]);
        assert_eq!(a.join(&b).unwrap(), part(&j, &["1", "2"], &[]));
        // cross-check against the vector join "1S" v "S1" = "11"
        assert_eq!(alpha(&a).join(&alpha(&b)).to_string(), "11");
        let s = TernaryPartition::core(Arc::clone(&j));
        assert_eq!(s.join(&part(&j, &[], &["1"])).unwrap(), s);
    }

    #[test]
    fn meet_examples() {
        let j = j2();
        let a = part(&j, &["1"], &[]);
        let b = part(&j, &["2"], &[]);
        assert_eq!(a.meet(&b).unwrap(), TernaryPartition::core(Arc::clone(&j)));
        assert_eq!(alpha(&a).meet(&alpha(&b)).to_string(), "SS");
        let top = TernaryPartition::top(Arc::clone(&j));
        for p in TernaryPartition::all(Arc::clone(&j), DEFAULT_MAX_NODES).unwrap() {
            assert_eq!(top.meet(&p).unwrap(), p);
        }
        let bottom = TernaryPartition::bottom(Arc::clone(&j));
        assert_eq!(part(&j, &["1"], &["2"]).meet(&bottom).unwrap(), bottom);
    }

    #[test]
    fn pseudocomplement_examples() {
        let j = j2();
        assert_eq!(
            part(&j, &["1"], &["2"]).pseudocomplement(),
            part(&j, &["2"], &["1"])
        );
        let j1 = Arc::new(NodeSet::numbered(1).unwrap());
        let s = TernaryPartition::core(Arc::clone(&j1));
        assert_eq!(
            s.pseudocomplement(),
            TernaryPartition::bottom(Arc::clone(&j1))
        );
        assert_eq!(
            TernaryPartition::bottom(Arc::clone(&j)).pseudocomplement(),
            TernaryPartition::top(Arc::clone(&j))
        );
    }

    #[test]
    fn dual_pseudocomplement_examples() {
        let j = j2();
        assert_eq!(
            part(&j, &["1"], &[]).dual_pseudocomplement(),
            part(&j, &["2"], &["1"])
        );
        let j1 = Arc::new(NodeSet::numbered(1).unwrap());
        let s = TernaryPartition::core(Arc::clone(&j1));
        assert_eq!(
            s.dual_pseudocomplement(),
            TernaryPartition::top(Arc::clone(&j1))
        );
        assert_eq!(
            TernaryPartition::top(Arc::clone(&j)).dual_pseudocomplement(),
            TernaryPartition::bottom(Arc::clone(&j))
        );
    }

    #[test]
    fn leq_examples() {
        let j = j2();
        let bottom = TernaryPartition::bottom(Arc::clone(&j));
        assert!(bottom.leq(&part(&j, &["1"], &["2"])).unwrap());
        assert!(!part(&j, &["1"], &[]).leq(&part(&j, &["2"], &[])).unwrap());
        let j1 = Arc::new(NodeSet::numbered(1).unwrap());
        let s = TernaryPartition::core(Arc::clone(&j1));
        assert!(s.leq(&TernaryPartition::top(j1)).unwrap());
    }

    #[test]
    fn mismatched_node_sets() {
        let a = TernaryPartition::top(j2());
        let b = TernaryPartition::top(Arc::new(NodeSet::numbered(3).unwrap()));
        assert_eq!(a.join(&b), Err(TernaryError::NodeSetMismatch));
        assert_eq!(a.leq(&b), Err(TernaryError::NodeSetMismatch));
        // equal but separately allocated node sets are compatible
        let c = TernaryPartition::bottom(j2());
        assert!(c.leq(&a).unwrap());
    }

    #[test]
    fn alpha_examples() {
        let j = j2();
        assert_eq!(alpha(&part(&j, &["1"], &["2"])).to_string(), "10");
        assert_eq!(alpha(&part(&j, &[], &[])).to_string(), "SS");
        assert_eq!(alpha(&part(&j, &["2"], &["1"])).to_string(), "01");
        let v: TernaryVector = "S0".parse().unwrap();
        let p = alpha_inverse(Arc::clone(&j), &v).unwrap();
        assert_eq!(p, part(&j, &[], &["2"]));
        assert_eq!(p.unknown_labels().collect::<Vec<_>>(), ["1"]);
    }

    #[test]
    fn vector_index_and_parse() {
        let v: TernaryVector = "1S0".parse().unwrap();
        assert_eq!(v.index(), 2 * 9 + 3);
        assert_eq!(TernaryVector::from_index(3, 21), v);
        assert_eq!(
            "1s".parse::<TernaryVector>(),
            Err(TernaryError::BadDigit('s'))
        );
        assert_eq!("".parse::<TernaryVector>(), Err(TernaryError::EmptyNodeSet));
        assert!(matches!(
            TernaryVector::all(13, DEFAULT_MAX_NODES),
            Err(TernaryError::TooManyNodes { .. })
        ));
        assert_eq!(TernaryVector::all(2, 2).unwrap().len(), 9);
    }

    #[test]
    fn json_forms_are_byte_exact() {
        let p = r#"{"nodes":["1","2"],"good":["1"],"bad":["2"]}"#;
        assert_eq!(TernaryPartition::from_json(p).unwrap().to_json(), p);
        let v = r#"{"n":2,"word":"10"}"#;
        assert_eq!(TernaryVector::from_json(v).unwrap().to_json(), v);
        assert!(matches!(
            TernaryVector::from_json(r#"{"n":3,"word":"10"}"#),
            Err(TernaryError::LengthMismatch {
                expected: 3,
                found: 2
            })
        ));
        assert!(matches!(
            TernaryPartition::from_json(r#"{"nodes":["1"],"good":["1"],"bad":["1"]}"#),
            Err(TernaryError::Overlap(_))
        ));
    }
}

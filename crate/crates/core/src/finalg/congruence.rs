use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{for_each_tuple, Elem, FiniteAlgebra};

/// An equivalence relation on a carrier, stored as canonical blocks:
/// each block sorted, blocks ordered by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionRelation {
    blocks: Vec<Vec<Elem>>,
}

impl PartitionRelation {
    /// `Δ`, all singleton blocks.
    pub fn identity(size: usize) -> Self {
        PartitionRelation {
            blocks: (0..size).map(|e| vec![e]).collect(),
        }
    }

    /// `∇`, a single block.
    pub fn total(size: usize) -> Self {
        PartitionRelation {
            blocks: vec![(0..size).collect()],
        }
    }

    /// Builds from arbitrary blocks; returns `None` unless they partition
    /// `0..size`.
    pub fn from_blocks(size: usize, blocks: Vec<Vec<Elem>>) -> Option<Self> {
        let mut seen = vec![false; size];
        for block in &blocks {
            if block.is_empty() {
                return None;
            }
            for &e in block {
                if e >= size || seen[e] {
                    return None;
                }
                seen[e] = true;
            }
        }
        if seen.iter().all(|&s| s) {
            Some(Self::canonical(blocks))
        } else {
            None
        }
    }

    /// The kernel `{(a, b) | f(a) = f(b)}` of a map.
    pub fn kernel(map: &[Elem]) -> Self {
        Self::from_labels(map)
    }

    fn from_labels(labels: &[usize]) -> Self {
        let mut by_label: std::collections::BTreeMap<usize, Vec<Elem>> = Default::default();
        for (e, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(e);
        }
        Self::canonical(by_label.into_values().collect())
    }

    fn canonical(mut blocks: Vec<Vec<Elem>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        PartitionRelation { blocks }
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_total(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Block index of every element.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.size()];
        for (i, block) in self.blocks.iter().enumerate() {
            for &e in block {
                labels[e] = i;
            }
        }
        labels
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.blocks
            .iter()
            .any(|blk| blk.contains(&a) && blk.contains(&b))
    }

    /// `a θ b ⟹ f(.., a, ..) θ f(.., b, ..)` for every operation and every
    /// argument position, which together with transitivity gives full
    /// compatibility.
    pub fn is_compatible(&self, alg: &FiniteAlgebra) -> bool {
        if self.size() != alg.size() {
            return false;
        }
        let labels = self.labels();
        let mut args = Vec::new();
        for (op, (_, arity)) in alg.signature().iter().enumerate() {
            for pos in 0..arity {
                let mut ok = true;
                for_each_tuple(alg.size(), arity - 1, |rest| {
                    if !ok {
                        return;
                    }
                    for block in &self.blocks {
                        let rep = block[0];
                        args.clear();
                        args.extend_from_slice(&rest[..pos]);
                        args.push(rep);
                        args.extend_from_slice(&rest[pos..]);
                        let base = labels[alg.apply(op, &args)];
                        for &other in &block[1..] {
                            args[pos] = other;
                            if labels[alg.apply(op, &args)] != base {
                                ok = false;
                                return;
                            }
                        }
                    }
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for PartitionRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|e| e.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Outcome of a simplicity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    /// A congruence other than `Δ` and `∇` when one exists.
    pub witness: Option<PartitionRelation>,
}

impl FiniteAlgebra {
    /// Least congruence containing `pairs`.
    ///
    /// Every merge is queued and pushed through each operation in each
    /// argument position (other arguments ranging over the carrier) until
    /// nothing new merges.
    pub fn congruence_generated(&self, pairs: &[(Elem, Elem)]) -> PartitionRelation {
        let mut uf = UnionFind::new(self.size());
        let mut queue: Vec<(Elem, Elem)> = Vec::new();
        for &(a, b) in pairs {
            assert!(a < self.size() && b < self.size(), "pair outside carrier");
            if uf.union(a, b) {
                queue.push((a, b));
            }
        }
        let mut args = Vec::new();
        let mut merges = Vec::new();
        while let Some((a, b)) = queue.pop() {
            for (op, (_, arity)) in self.signature().iter().enumerate() {
                for pos in 0..arity {
                    for_each_tuple(self.size(), arity - 1, |rest| {
                        args.clear();
                        args.extend_from_slice(&rest[..pos]);
                        args.push(a);
                        args.extend_from_slice(&rest[pos..]);
                        let fa = self.apply(op, &args);
                        args[pos] = b;
                        let fb = self.apply(op, &args);
                        if fa != fb {
                            merges.push((fa, fb));
                        }
                    });
                    for (x, y) in merges.drain(..) {
                        if uf.union(x, y) {
                            queue.push((x, y));
                        }
                    }
                }
            }
        }
        let labels: Vec<usize> = (0..self.size()).map(|e| uf.find(e)).collect();
        PartitionRelation::from_labels(&labels)
    }

    pub fn is_simple(&self) -> SimplicityReport {
        for a in self.elements() {
            for b in a + 1..self.size() {
                let theta = self.congruence_generated(&[(a, b)]);
                if !theta.is_total() {
                    return SimplicityReport {
                        simple: false,
                        witness: Some(theta),
                    };
                }
            }
        }
        SimplicityReport {
            simple: true,
            witness: None,
        }
    }

    /// The whole congruence lattice, as joins of principal congruences.
    pub fn congruences(&self) -> Vec<PartitionRelation> {
        let mut principal = BTreeSet::new();
        for a in self.elements() {
            for b in a + 1..self.size() {
                principal.insert(self.congruence_generated(&[(a, b)]));
            }
        }
        let mut all: BTreeSet<PartitionRelation> = principal.clone();
        all.insert(PartitionRelation::identity(self.size()));
        let mut frontier: Vec<PartitionRelation> = all.iter().cloned().collect();
        while let Some(theta) = frontier.pop() {
            for p in &principal {
                let joined = self.join_congruences(&theta, p);
                if all.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        all.into_iter().collect()
    }

    pub fn join_congruences(
        &self,
        a: &PartitionRelation,
        b: &PartitionRelation,
    ) -> PartitionRelation {
        let pairs: Vec<(Elem, Elem)> = a
            .blocks()
            .iter()
            .chain(b.blocks())
            .flat_map(|blk| blk[1..].iter().map(move |&e| (blk[0], e)))
            .collect();
        self.congruence_generated(&pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{z3, Signature};

    #[test]
    fn z3_principal_congruences_are_total() {
        let z = z3();
        assert!(z.congruence_generated(&[(0, 2)]).is_total());
        assert!(z.congruence_generated(&[(0, 1)]).is_total());
        let report = z.is_simple();
        assert!(report.simple);
        assert_eq!(report.witness, None);
    }

    #[test]
    fn empty_generator_gives_identity() {
        let z = z3();
        assert!(z.congruence_generated(&[]).is_identity());
        assert_eq!(z.congruences().len(), 2);
    }

    #[test]
    fn from_blocks_validates() {
        assert!(PartitionRelation::from_blocks(3, vec![vec![0], vec![1, 2]]).is_some());
        assert!(PartitionRelation::from_blocks(3, vec![vec![0], vec![1]]).is_none());
        assert!(PartitionRelation::from_blocks(3, vec![vec![0, 1], vec![1, 2]]).is_none());
        let k = PartitionRelation::kernel(&[1, 0, 1]);
        assert_eq!(k.blocks(), [vec![0, 2], vec![1]]);
        assert_eq!(k.to_string(), "{0,2}|{1}");
    }

    #[test]
    fn compatibility_predicate() {
        // parity on Z4 under addition is a congruence, {0,1}{2,3} is not
        let sig = Signature::new([("add", 2)]).unwrap();
        let z4 = FiniteAlgebra::from_fn(4, sig, |_, a| (a[0] + a[1]) % 4).unwrap();
        let parity = PartitionRelation::kernel(&[0, 1, 0, 1]);
        assert!(parity.is_compatible(&z4));
        let halves = PartitionRelation::kernel(&[0, 0, 1, 1]);
        assert!(!halves.is_compatible(&z4));
        assert_eq!(z4.congruence_generated(&[(0, 2)]), parity);
        assert_eq!(z4.congruences().len(), 3);
        let report = z4.is_simple();
        assert!(!report.simple);
        assert_eq!(report.witness, Some(parity));
    }
}

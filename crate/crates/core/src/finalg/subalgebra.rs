use std::collections::{BTreeSet, VecDeque};

use super::{for_each_tuple_in, Elem, ElementSet, FinalgError, FiniteAlgebra, Term};

impl FiniteAlgebra {
    pub fn eval_term(&self, term: &Term, assignment: &[Elem]) -> Result<Elem, FinalgError> {
        term.eval(self, assignment)
    }

    /// Least subuniverse containing `generators` (and every constant).
    pub fn subalgebra_closure(&self, generators: &ElementSet) -> ElementSet {
        let mut start: Vec<Elem> = generators.iter().collect();
        for (op, (_, arity)) in self.signature.iter().enumerate() {
            if arity == 0 {
                start.push(self.apply(op, &[]));
            }
        }
        self.close_from(ElementSet::empty(self.size), &start)
    }

    /// Closes `closed ∪ extra`, assuming `closed` is already a subuniverse.
    ///
    /// Each element is processed once: every operation is applied to all
    /// tuples that contain it in some position and otherwise draw from the
    /// current members. A tuple is therefore evaluated no later than when
    /// its last-added component is processed.
    pub(crate) fn close_from(&self, closed: ElementSet, extra: &[Elem]) -> ElementSet {
        let mut set = closed;
        let mut members: Vec<Elem> = set.iter().collect();
        let mut queue: VecDeque<Elem> = VecDeque::new();
        for &e in extra {
            if set.insert(e) {
                members.push(e);
                queue.push_back(e);
            }
        }
        let mut args = Vec::new();
        let mut found = Vec::new();
        while let Some(e) = queue.pop_front() {
            for (op, (_, arity)) in self.signature.iter().enumerate() {
                if arity == 0 {
                    continue;
                }
                for pos in 0..arity {
                    for_each_tuple_in(&members, arity - 1, |rest| {
                        args.clear();
                        args.extend_from_slice(&rest[..pos]);
                        args.push(e);
                        args.extend_from_slice(&rest[pos..]);
                        let r = self.apply(op, &args);
                        if !set.contains(r) {
                            found.push(r);
                        }
                    });
                    for r in found.drain(..) {
                        if set.insert(r) {
                            members.push(r);
                            queue.push_back(r);
                        }
                    }
                }
            }
        }
        set
    }

    /// True if `set` is closed under every operation (constants included).
    pub fn is_subuniverse(&self, set: &ElementSet) -> bool {
        let members: Vec<Elem> = set.iter().collect();
        self.signature.iter().enumerate().all(|(op, (_, arity))| {
            let mut closed = true;
            for_each_tuple_in(&members, arity, |args| {
                if closed && !set.contains(self.apply(op, args)) {
                    closed = false;
                }
            });
            closed
        })
    }

    /// Every subuniverse in canonical order.
    ///
    /// Starts from the subuniverse generated by the constants and repeatedly
    /// adjoins one element to a known subuniverse. Any subuniverse is reached
    /// this way by adjoining its own elements one at a time. The empty set is
    /// included when the signature has no constants.
    pub fn enumerate_subalgebras(&self, cap: usize) -> Result<Vec<ElementSet>, FinalgError> {
        if self.size > cap {
            return Err(FinalgError::CapExceeded {
                size: self.size,
                cap,
            });
        }
        let bottom = self.subalgebra_closure(&ElementSet::empty(self.size));
        let mut seen = BTreeSet::new();
        seen.insert(bottom.clone());
        let mut queue = vec![bottom];
        while let Some(current) = queue.pop() {
            for a in self.elements() {
                if current.contains(a) {
                    continue;
                }
                let next = self.close_from(current.clone(), &[a]);
                if !seen.contains(&next) {
                    seen.insert(next.clone());
                    queue.push(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// An irredundant generating set: greedy in element order, then pruned.
    pub fn generating_set(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = self.subalgebra_closure(&ElementSet::empty(self.size));
        for a in self.elements() {
            if !current.contains(a) {
                gens.push(a);
                current = self.close_from(current, &[a]);
            }
        }
        let mut i = 0;
        while i < gens.len() {
            let mut rest = gens.clone();
            rest.remove(i);
            let span =
                self.subalgebra_closure(&ElementSet::from_elems(self.size, rest.iter().copied()));
            if span.is_full() {
                gens = rest;
            } else {
                i += 1;
            }
        }
        gens
    }
}

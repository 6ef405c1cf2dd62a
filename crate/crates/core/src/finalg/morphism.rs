use super::{for_each_tuple_in, Elem, FinalgError, FiniteAlgebra};

/// Partial map built during homomorphism search.
#[derive(Clone)]
struct PartialHom {
    image: Vec<Option<Elem>>,
    domain: Vec<Elem>,
    used: Vec<bool>,
}

impl PartialHom {
    fn new(source: usize, target: usize) -> Self {
        PartialHom {
            image: vec![None; source],
            domain: Vec::new(),
            used: vec![false; target],
        }
    }

    /// Records `a ↦ b`. Fails on a clash with an existing value, or on a
    /// repeated image when `injective` is set.
    fn assign(&mut self, a: Elem, b: Elem, injective: bool, fresh: &mut Vec<Elem>) -> bool {
        match self.image[a] {
            Some(existing) => existing == b,
            None => {
                if injective && self.used[b] {
                    return false;
                }
                self.image[a] = Some(b);
                self.used[b] = true;
                self.domain.push(a);
                fresh.push(a);
                true
            }
        }
    }
}

struct Search<'a> {
    source: &'a FiniteAlgebra,
    target: &'a FiniteAlgebra,
    generators: Vec<Elem>,
    injective: bool,
    stop_at_first: bool,
    found: Vec<Vec<Elem>>,
}

impl<'a> Search<'a> {
    /// Propagates the map through every operation until the domain is a
    /// subuniverse. Returns false on a clash.
    fn extend(&self, hom: &mut PartialHom, mut fresh: Vec<Elem>) -> bool {
        let (src, tgt) = (self.source, self.target);
        for (op, (_, arity)) in src.signature().iter().enumerate() {
            if arity == 0
                && !hom.assign(
                    src.apply(op, &[]),
                    tgt.apply(op, &[]),
                    self.injective,
                    &mut fresh,
                )
            {
                return false;
            }
        }
        let mut args = Vec::new();
        let mut img_args = Vec::new();
        let mut pending = Vec::new();
        while let Some(e) = fresh.pop() {
            for (op, (_, arity)) in src.signature().iter().enumerate() {
                if arity == 0 {
                    continue;
                }
                for pos in 0..arity {
                    let domain = hom.domain.clone();
                    for_each_tuple_in(&domain, arity - 1, |rest| {
                        args.clear();
                        args.extend_from_slice(&rest[..pos]);
                        args.push(e);
                        args.extend_from_slice(&rest[pos..]);
                        img_args.clear();
                        img_args.extend(args.iter().map(|&a| hom.image[a].expect("in domain")));
                        pending.push((src.apply(op, &args), tgt.apply(op, &img_args)));
                    });
                    for (a, b) in pending.drain(..) {
                        if !hom.assign(a, b, self.injective, &mut fresh) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, hom: PartialHom, next: usize) {
        if self.stop_at_first && !self.found.is_empty() {
            return;
        }
        let Some(&g) = self.generators.get(next) else {
            if hom.domain.len() == self.source.size() {
                self.found
                    .push(hom.image.iter().map(|b| b.expect("total")).collect());
            }
            return;
        };
        if hom.image[g].is_some() {
            self.run(hom, next + 1);
            return;
        }
        for b in self.target.elements() {
            let mut candidate = hom.clone();
            let mut fresh = Vec::new();
            if candidate.assign(g, b, self.injective, &mut fresh)
                && self.extend(&mut candidate, fresh)
            {
                self.run(candidate, next + 1);
            }
        }
    }
}

impl FiniteAlgebra {
    fn search_homs(
        &self,
        target: &FiniteAlgebra,
        injective: bool,
        stop_at_first: bool,
    ) -> Result<Vec<Vec<Elem>>, FinalgError> {
        self.check_signature(target)?;
        let mut search = Search {
            source: self,
            target,
            generators: self.generating_set(),
            injective,
            stop_at_first,
            found: Vec::new(),
        };
        let mut start = PartialHom::new(self.size(), target.size());
        if search.extend(&mut start, Vec::new()) {
            search.run(start, 0);
        }
        let mut found = search.found;
        found.sort();
        Ok(found)
    }

    /// Every homomorphism into `target`, each as the list of images, sorted.
    pub fn homomorphisms(&self, target: &FiniteAlgebra) -> Result<Vec<Vec<Elem>>, FinalgError> {
        self.search_homs(target, false, false)
    }

    /// Every automorphism, identity included, sorted.
    pub fn automorphisms(&self) -> Vec<Vec<Elem>> {
        self.search_homs(self, true, false)
            .expect("an algebra shares its own signature")
    }

    /// An isomorphism onto `other` if one exists.
    pub fn is_isomorphic(&self, other: &FiniteAlgebra) -> Result<Option<Vec<Elem>>, FinalgError> {
        self.check_signature(other)?;
        if self.size() != other.size() {
            return Ok(None);
        }
        Ok(self.search_homs(other, true, true)?.into_iter().next())
    }

    /// True if `map` preserves every operation into `target`.
    pub fn is_homomorphism(&self, target: &FiniteAlgebra, map: &[Elem]) -> bool {
        if map.len() != self.size() || map.iter().any(|&b| b >= target.size()) {
            return false;
        }
        if self.check_signature(target).is_err() {
            return false;
        }
        let all: Vec<Elem> = self.elements().collect();
        let mut img = Vec::new();
        self.signature().iter().enumerate().all(|(op, (_, arity))| {
            let mut ok = true;
            for_each_tuple_in(&all, arity, |args| {
                if ok {
                    img.clear();
                    img.extend(args.iter().map(|&a| map[a]));
                    ok = map[self.apply(op, args)] == target.apply(op, &img);
                }
            });
            ok
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::finalg::{z3, FinalgError, FiniteAlgebra, Signature};

    fn z4_additive() -> FiniteAlgebra {
        let sig = Signature::new([("add", 2), ("zero", 0)]).unwrap();
        FiniteAlgebra::from_fn(4, sig, |n, a| match n {
            "add" => (a[0] + a[1]) % 4,
            _ => 0,
        })
        .unwrap()
    }

    #[test]
    fn z3_is_rigid() {
        assert_eq!(z3().automorphisms(), vec![vec![0, 1, 2]]);
        assert_eq!(z3().homomorphisms(&z3()).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn z4_group_automorphisms() {
        let z4 = z4_additive();
        assert_eq!(z4.automorphisms(), vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]);
        // x ↦ kx for k = 0..3
        assert_eq!(z4.homomorphisms(&z4).unwrap().len(), 4);
        for h in z4.homomorphisms(&z4).unwrap() {
            assert!(z4.is_homomorphism(&z4, &h));
        }
        assert!(!z4.is_homomorphism(&z4, &[0, 2, 1, 3]));
    }

    #[test]
    fn isomorphism_and_signature_checks() {
        let z4 = z4_additive();
        let relabeled = z4.relabeled(&[0, 3, 1, 2]).unwrap();
        let iso = z4.is_isomorphic(&relabeled).unwrap().unwrap();
        assert!(z4.is_homomorphism(&relabeled, &iso));
        assert_eq!(z4.homomorphisms(&z3()), Err(FinalgError::SignatureMismatch));
        assert_eq!(z4.is_isomorphic(&z3()), Err(FinalgError::SignatureMismatch));
    }
}

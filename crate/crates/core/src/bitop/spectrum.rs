use super::{full_set, BitopError, BitopSpace, PointSet, MAX_POINTS};
use crate::finalg::{
    lattice_law_violation, Elem, ElementSet, FinalgError, FiniteAlgebra, Signature,
    DEFAULT_CARRIER_CAP,
};

/// Carriers up to this size are scanned subset by subset.
pub const BRUTE_FORCE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeFilter {
    pub members: ElementSet,
}

struct Lattice<'a> {
    alg: &'a FiniteAlgebra,
    join: usize,
    meet: usize,
    bottom: Elem,
}

impl<'a> Lattice<'a> {
    fn new(alg: &'a FiniteAlgebra) -> Result<Self, BitopError> {
        if alg.size() > DEFAULT_CARRIER_CAP {
            return Err(FinalgError::CapExceeded {
                size: alg.size(),
                cap: DEFAULT_CARRIER_CAP,
            }
            .into());
        }
        if let Some((law, w)) = lattice_law_violation(alg, "join", "meet")? {
            return Err(BitopError::NotLattice(format!("{law} fails at {w:?}")));
        }
        let join = alg.symbol("join")?;
        let meet = alg.symbol("meet")?;
        let f = |op, a, b| alg.apply(op, &[a, b]);
        for x in alg.elements() {
            for y in alg.elements() {
                for z in alg.elements() {
                    if f(meet, x, f(join, y, z)) != f(join, f(meet, x, y), f(meet, x, z)) {
                        return Err(BitopError::NotLattice(format!(
                            "distributivity fails at {:?}",
                            [x, y, z]
                        )));
                    }
                }
            }
        }
        let bottom = alg.elements().fold(0, |acc, x| f(meet, acc, x));
        Ok(Lattice {
            alg,
            join,
            meet,
            bottom,
        })
    }

    fn join(&self, a: Elem, b: Elem) -> Elem {
        self.alg.apply(self.join, &[a, b])
    }

    fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.alg.apply(self.meet, &[a, b])
    }

    fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    fn is_prime_filter(&self, f: &ElementSet) -> bool {
        let elems: Vec<Elem> = self.alg.elements().collect();
        if f.is_empty() || f.contains(self.bottom) {
            return false;
        }
        for &a in &elems {
            for &b in &elems {
                let (ja, jb) = (self.join(a, b), self.meet(a, b));
                if f.contains(a) && self.leq(a, b) && !f.contains(b) {
                    return false;
                }
                if f.contains(a) && f.contains(b) && !f.contains(jb) {
                    return false;
                }
                if f.contains(ja) && !f.contains(a) && !f.contains(b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Every subset of the carrier, tested against the prime filter axioms.
pub fn prime_filters_brute(l: &FiniteAlgebra) -> Result<Vec<PrimeFilter>, BitopError> {
    let lat = Lattice::new(l)?;
    let m = l.size();
    if m > BRUTE_FORCE_LIMIT {
        return Err(FinalgError::CapExceeded {
            size: m,
            cap: BRUTE_FORCE_LIMIT,
        }
        .into());
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << m {
        let members = ElementSet::from_elems(m, (0..m).filter(|&i| mask >> i & 1 == 1));
        if lat.is_prime_filter(&members) {
            out.push(PrimeFilter { members });
        }
    }
    out.sort();
    Ok(out)
}

/// The principal filters `↑j` of the join-irreducible elements `j`, each
/// verified to be prime.
pub fn prime_filters_join_irreducible(l: &FiniteAlgebra) -> Result<Vec<PrimeFilter>, BitopError> {
    let lat = Lattice::new(l)?;
    let mut out = Vec::new();
    for j in l.elements() {
        if j == lat.bottom {
            continue;
        }
        let reducible = l.elements().any(|a| {
            l.elements()
                .any(|b| a != j && b != j && lat.join(a, b) == j)
        });
        if reducible {
            continue;
        }
        let members = ElementSet::from_elems(l.size(), l.elements().filter(|&x| lat.leq(j, x)));
        if !lat.is_prime_filter(&members) {
            return Err(BitopError::NotLattice(format!(
                "↑{j} is not a prime filter"
            )));
        }
        out.push(PrimeFilter { members });
    }
    out.sort();
    Ok(out)
}

/// All prime filters in increasing bitset order: by subset scan when the
/// carrier has at most [`BRUTE_FORCE_LIMIT`] elements, otherwise from the
/// join-irreducibles.
pub fn prime_filters(l: &FiniteAlgebra) -> Result<Vec<PrimeFilter>, BitopError> {
    if l.size() <= BRUTE_FORCE_LIMIT {
        prime_filters_brute(l)
    } else {
        prime_filters_join_irreducible(l)
    }
}

/// `pf(L)` with `Φ+(a) = {x | a ∈ x}` and `Φ-(a)` its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub filters: Vec<PrimeFilter>,
    phi_plus: Vec<PointSet>,
    pub space: BitopSpace,
}

impl Spectrum {
    pub fn points(&self) -> usize {
        self.filters.len()
    }

    pub fn phi_plus(&self, a: Elem) -> PointSet {
        self.phi_plus[a]
    }

    pub fn phi_minus(&self, a: Elem) -> PointSet {
        full_set(self.points()) & !self.phi_plus[a]
    }

    /// Index of the point whose filter is `members`.
    pub fn point_of(&self, members: &ElementSet) -> Option<usize> {
        self.filters.iter().position(|f| &f.members == members)
    }
}

pub fn spectrum(l: &FiniteAlgebra) -> Result<Spectrum, BitopError> {
    let filters = prime_filters(l)?;
    if filters.len() > MAX_POINTS {
        return Err(BitopError::TooManyPoints {
            points: filters.len(),
            cap: MAX_POINTS,
        });
    }
    let phi_plus: Vec<PointSet> = l
        .elements()
        .map(|a| {
            filters
                .iter()
                .enumerate()
                .filter(|(_, f)| f.members.contains(a))
                .fold(0, |acc, (i, _)| acc | 1u128 << i)
        })
        .collect();
    let full = full_set(filters.len());
    let phi_minus: Vec<PointSet> = phi_plus.iter().map(|&u| full & !u).collect();
    let space = BitopSpace::new(filters.len(), &phi_plus, &phi_minus)?;
    Ok(Spectrum {
        filters,
        phi_plus,
        space,
    })
}

/// `(family, ∪, ∩)` as an algebra with `join` and `meet`; element `i` is the
/// `i`-th set in increasing bitset order.
pub fn base_lattice(family: &[PointSet]) -> Result<(FiniteAlgebra, Vec<PointSet>), BitopError> {
    let mut sets = family.to_vec();
    sets.sort_unstable();
    sets.dedup();
    let index = |s: PointSet| sets.binary_search(&s).ok();
    for &a in &sets {
        for &b in &sets {
            if index(a | b).is_none() || index(a & b).is_none() {
                return Err(BitopError::NotLattice(
                    "family is not closed under union and intersection".into(),
                ));
            }
        }
    }
    let sig = Signature::new([("join", 2), ("meet", 2)]).expect("distinct symbols");
    let alg = FiniteAlgebra::from_fn(sets.len(), sig, |name, a| {
        let (x, y) = (sets[a[0]], sets[a[1]]);
        index(if name == "join" { x | y } else { x & y }).expect("closed")
    })?;
    Ok((alg, sets))
}

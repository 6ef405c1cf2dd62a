//! Core regular double Stone algebras.
//!
//! Algebras here use the signature `join, meet, star, plus, zero, k, one`
//! of type `<2,2,1,1,0,0,0>`: the core element `k` is a constant, so `{0, 1}`
//! is not a subuniverse of `C_3`.

mod boolean;
mod structure;

use serde::Serialize;
use thiserror::Error;

use crate::finalg::{lattice_law_violation, Elem, FinalgError, FiniteAlgebra, Signature, Term};
use crate::ternary::{TernaryVector, Trit};

pub use boolean::{
    boolean_center_embed, boolean_extend, boolean_subuniverses, coordinate_partitions,
    enumerate_crdsa_subalgebras, subalgebra_report_json, CrdsaSubalgebra,
};
pub use structure::{
    center, decomposition_check, dense_core, iso_via_centers, subdirect_embedding, Center,
    DecompositionReport, DenseCore, SubdirectReport,
};

/// Largest `n` for which `C_3^n` tables are materialized.
pub const MAX_POWER: usize = 6;

/// Largest `n` accepted by [`enumerate_crdsa_subalgebras`].
pub const MAX_ENUMERATION_POWER: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrdsaError {
    #[error(transparent)]
    Algebra(#[from] FinalgError),
    #[error("signature lacks `{0}`")]
    MissingSymbol(String),
    #[error("not a CRDSA: {0}")]
    NotCrdsa(String),
    #[error("not a Boolean subuniverse: {0}")]
    NotBoolean(String),
    #[error("power {n} exceeds the cap of {cap}")]
    PowerCap { n: usize, cap: usize },
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("independent constructions disagree: {0}")]
    RouteMismatch(String),
}

/// Operation names of the double Stone signature, in table order.
pub const DSA_SYMBOLS: [(&str, usize); 6] = [
    ("join", 2),
    ("meet", 2),
    ("star", 1),
    ("plus", 1),
    ("zero", 0),
    ("one", 0),
];

pub fn crdsa_signature() -> Signature {
    Signature::new([
        ("join", 2),
        ("meet", 2),
        ("star", 1),
        ("plus", 1),
        ("zero", 0),
        ("k", 0),
        ("one", 0),
    ])
    .expect("distinct symbols")
}

pub fn dsa_signature() -> Signature {
    Signature::new(DSA_SYMBOLS).expect("distinct symbols")
}

pub fn boolean_signature() -> Signature {
    Signature::new([
        ("join", 2),
        ("meet", 2),
        ("compl", 1),
        ("zero", 0),
        ("one", 0),
    ])
    .expect("distinct symbols")
}

/// `C_3^n` with elements numbered by [`TernaryVector::index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C3Power {
    n: usize,
    algebra: FiniteAlgebra,
}

impl C3Power {
    pub fn new(n: usize) -> Result<Self, CrdsaError> {
        if n == 0 {
            return Err(CrdsaError::ZeroPower);
        }
        if n > MAX_POWER {
            return Err(CrdsaError::PowerCap { n, cap: MAX_POWER });
        }
        let size = 3usize.pow(n as u32);
        let vectors: Vec<TernaryVector> =
            (0..size).map(|i| TernaryVector::from_index(n, i)).collect();
        let algebra = FiniteAlgebra::from_fn(size, crdsa_signature(), |name, a| match name {
            "join" => vectors[a[0]].join(&vectors[a[1]]).index(),
            "meet" => vectors[a[0]].meet(&vectors[a[1]]).index(),
            "star" => vectors[a[0]].star().index(),
            "plus" => vectors[a[0]].plus().index(),
            "zero" => 0,
            "k" => TernaryVector::constant(n, Trit::Mid).index(),
            "one" => size - 1,
            _ => unreachable!("CRDSA signature"),
        })?;
        Ok(C3Power { n, algebra })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn vector(&self, e: Elem) -> TernaryVector {
        TernaryVector::from_index(self.n, e)
    }

    pub fn element(&self, v: &TernaryVector) -> Elem {
        assert_eq!(v.len(), self.n, "vector length differs from power");
        v.index()
    }

    /// Parses a word such as `"1S0"`.
    pub fn parse(&self, word: &str) -> Result<Elem, CrdsaError> {
        let v: TernaryVector = word
            .parse()
            .map_err(|e| CrdsaError::NotCrdsa(format!("bad element `{word}`: {e}")))?;
        if v.len() != self.n {
            return Err(CrdsaError::NotCrdsa(format!(
                "element `{word}` has length {}, expected {}",
                v.len(),
                self.n
            )));
        }
        Ok(v.index())
    }

    pub fn names(&self) -> Vec<TernaryVector> {
        self.algebra.elements().map(|e| self.vector(e)).collect()
    }

    pub fn instance(&self) -> CrdsaInstance {
        CrdsaInstance::new(self.algebra.clone())
            .expect("C_3^n is a CRDSA")
            .with_names(self.names())
    }
}

/// `((x ∨ z) ∧ y*) ∨ ((x ∨ z++) ∧ ((x ∧ z) ∨ y+) ∧ z**)`, a Mal'cev term for
/// `C_3`.
pub fn c3_malcev_term() -> Term {
    "(join (meet (join v0 v2) (star v1)) \
     (meet (meet (join v0 (plus (plus v2))) (join (meet v0 v2) (plus v1))) (star (star v2))))"
        .parse()
        .expect("valid term")
}

/// `C_2^n` as a double Stone algebra (no core constant): `x* = x+ = x'`.
pub fn c2_power_dsa(n: usize) -> Result<FiniteAlgebra, CrdsaError> {
    if n == 0 {
        return Err(CrdsaError::ZeroPower);
    }
    let size = 1usize << n;
    let full = size - 1;
    Ok(FiniteAlgebra::from_fn(
        size,
        dsa_signature(),
        |name, a| match name {
            "join" => a[0] | a[1],
            "meet" => a[0] & a[1],
            "star" | "plus" => full & !a[0],
            "zero" => 0,
            "one" => full,
            _ => unreachable!(),
        },
    )?)
}

/// The four-element chain `0 < a < b < 1` with its double pseudocomplements.
pub fn c4_chain_dsa() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(4, dsa_signature(), |name, a| match name {
        "join" => a[0].max(a[1]),
        "meet" => a[0].min(a[1]),
        "star" => usize::from(a[0] == 0) * 3,
        "plus" => usize::from(a[0] != 3) * 3,
        "zero" => 0,
        "one" => 3,
        _ => unreachable!(),
    })
    .expect("well-formed tables")
}

/// One axiom evaluated over the whole carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub counterexample: Option<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
    /// Elements that are both dense and dually dense.
    pub core: Vec<Elem>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn failed(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// Handles to the double Stone operations of an algebra.
#[derive(Clone, Copy)]
pub(crate) struct DsaOps<'a> {
    pub alg: &'a FiniteAlgebra,
    join: usize,
    meet: usize,
    star: usize,
    plus: usize,
    pub zero: Elem,
    pub one: Elem,
    pub k: Option<Elem>,
}

impl<'a> DsaOps<'a> {
    pub fn new(alg: &'a FiniteAlgebra) -> Result<Self, CrdsaError> {
        for (name, arity) in DSA_SYMBOLS {
            if !alg.signature().contains(name, arity) {
                return Err(CrdsaError::MissingSymbol(name.to_string()));
            }
        }
        let k = if alg.signature().contains("k", 0) {
            Some(alg.constant("k")?)
        } else {
            None
        };
        Ok(DsaOps {
            alg,
            join: alg.symbol("join")?,
            meet: alg.symbol("meet")?,
            star: alg.symbol("star")?,
            plus: alg.symbol("plus")?,
            zero: alg.constant("zero")?,
            one: alg.constant("one")?,
            k,
        })
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.alg.apply(self.join, &[a, b])
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.alg.apply(self.meet, &[a, b])
    }

    #[inline]
    pub fn star(&self, a: Elem) -> Elem {
        self.alg.apply(self.star, &[a])
    }

    #[inline]
    pub fn plus(&self, a: Elem) -> Elem {
        self.alg.apply(self.plus, &[a])
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    pub fn core(&self) -> Vec<Elem> {
        self.alg
            .elements()
            .filter(|&x| self.star(x) == self.zero && self.plus(x) == self.one)
            .collect()
    }
}

fn first_failure<const N: usize>(
    size: usize,
    mut law: impl FnMut([Elem; N]) -> bool,
) -> Option<Vec<Elem>> {
    let mut idx = [0usize; N];
    loop {
        if !law(idx) {
            return Some(idx.to_vec());
        }
        let mut pos = N;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < size {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Checks every CRDSA axiom and reports a counterexample for each failure.
///
/// The signature must contain the double Stone operations; the constant `k`
/// is optional, and when present must name the unique core element.
pub fn validate_crdsa(alg: &FiniteAlgebra) -> Result<ValidationReport, CrdsaError> {
    let ops = DsaOps::new(alg)?;
    let m = alg.size();
    let mut checks = Vec::new();
    let mut push = |axiom: &str, counterexample: Option<Vec<Elem>>| {
        checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            passed: counterexample.is_none(),
            counterexample,
        });
    };

    let lattice = lattice_law_violation(alg, "join", "meet")?;
    push("lattice", lattice.map(|(_, w)| w.to_vec()));
    push(
        "distributive",
        first_failure(m, |[x, y, z]| {
            ops.meet(x, ops.join(y, z)) == ops.join(ops.meet(x, y), ops.meet(x, z))
        }),
    );
    push(
        "bounds",
        first_failure(m, |[x]| {
            ops.join(x, ops.zero) == x && ops.meet(x, ops.one) == x
        }),
    );
    push(
        "pseudocomplement",
        first_failure(m, |[x, y]| {
            ops.leq(y, ops.star(x)) == (ops.meet(y, x) == ops.zero)
        }),
    );
    push(
        "dual pseudocomplement",
        first_failure(m, |[x, y]| {
            ops.leq(ops.plus(x), y) == (ops.join(y, x) == ops.one)
        }),
    );
    push(
        "stone identity",
        first_failure(m, |[x]| {
            ops.join(ops.star(x), ops.star(ops.star(x))) == ops.one
        }),
    );
    push(
        "dual stone identity",
        first_failure(m, |[x]| {
            ops.meet(ops.plus(x), ops.plus(ops.plus(x))) == ops.zero
        }),
    );
    push(
        "regular",
        first_failure(m, |[x, y]| {
            !(ops.star(x) == ops.star(y) && ops.plus(x) == ops.plus(y)) || x == y
        }),
    );
    push(
        "regular inequality",
        first_failure(m, |[x, y]| {
            ops.leq(ops.meet(x, ops.plus(x)), ops.join(y, ops.star(y)))
        }),
    );

    let core = ops.core();
    push(
        "core nonempty",
        if core.is_empty() {
            Some(Vec::new())
        } else {
            None
        },
    );
    push(
        "core singleton",
        if core.len() > 1 {
            Some(core.clone())
        } else {
            None
        },
    );
    if let Some(k) = ops.k {
        push(
            "k is the core element",
            if core == [k] { None } else { Some(vec![k]) },
        );
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport {
        checks,
        core,
        passed,
    })
}

/// A validated CRDSA in the full signature with `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrdsaInstance {
    algebra: FiniteAlgebra,
    element_names: Option<Vec<TernaryVector>>,
}

impl CrdsaInstance {
    pub fn new(algebra: FiniteAlgebra) -> Result<Self, CrdsaError> {
        if algebra.signature() != &crdsa_signature() {
            return Err(CrdsaError::Algebra(FinalgError::SignatureMismatch));
        }
        let report = validate_crdsa(&algebra)?;
        if let Some(bad) = report.failed().next() {
            return Err(CrdsaError::NotCrdsa(format!(
                "{} fails at {:?}",
                bad.axiom, bad.counterexample
            )));
        }
        Ok(CrdsaInstance {
            algebra,
            element_names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<TernaryVector>) -> Self {
        assert_eq!(names.len(), self.algebra.size(), "one name per element");
        self.element_names = Some(names);
        self
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn names(&self) -> Option<&[TernaryVector]> {
        self.element_names.as_deref()
    }

    pub fn name(&self, e: Elem) -> String {
        match &self.element_names {
            Some(names) => names[e].to_string(),
            None => e.to_string(),
        }
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    pub fn core_element(&self) -> Elem {
        self.algebra.constant("k").expect("validated signature")
    }

    pub(crate) fn ops(&self) -> DsaOps<'_> {
        DsaOps::new(&self.algebra).expect("validated signature")
    }

    /// The subalgebra on a closed subset, keeping vector names.
    pub fn subalgebra(&self, set: &crate::finalg::ElementSet) -> Result<CrdsaInstance, CrdsaError> {
        let (alg, embedding) = self.algebra.subalgebra(set)?;
        let mut inst = CrdsaInstance::new(alg)?;
        if let Some(names) = &self.element_names {
            inst = inst.with_names(embedding.iter().map(|&e| names[e].clone()).collect());
        }
        Ok(inst)
    }
}

/// A validated Boolean algebra in the signature `join, meet, compl, zero, one`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanInstance {
    algebra: FiniteAlgebra,
}

impl BooleanInstance {
    pub fn new(algebra: FiniteAlgebra) -> Result<Self, CrdsaError> {
        if algebra.signature() != &boolean_signature() {
            return Err(CrdsaError::Algebra(FinalgError::SignatureMismatch));
        }
        if let Some((law, w)) = lattice_law_violation(&algebra, "join", "meet")? {
            return Err(CrdsaError::NotBoolean(format!("{law} fails at {w:?}")));
        }
        let f = |name: &str, args: &[Elem]| algebra.apply_named(name, args).expect("signature");
        let zero = f("zero", &[]);
        let one = f("one", &[]);
        for x in algebra.elements() {
            let c = f("compl", &[x]);
            if f("meet", &[x, c]) != zero || f("join", &[x, c]) != one {
                return Err(CrdsaError::NotBoolean(format!("{x} has no complement")));
            }
            if f("join", &[x, zero]) != x || f("meet", &[x, one]) != x {
                return Err(CrdsaError::NotBoolean("bounds".into()));
            }
            for y in algebra.elements() {
                for z in algebra.elements() {
                    let lhs = f("meet", &[x, f("join", &[y, z])]);
                    let rhs = f("join", &[f("meet", &[x, y]), f("meet", &[x, z])]);
                    if lhs != rhs {
                        return Err(CrdsaError::NotBoolean(format!(
                            "distributivity fails at {:?}",
                            [x, y, z]
                        )));
                    }
                }
            }
        }
        Ok(BooleanInstance { algebra })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    pub(crate) fn op(&self, name: &str, args: &[Elem]) -> Elem {
        self.algebra
            .apply_named(name, args)
            .expect("Boolean signature")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c3_power_tables() {
        let c = C3Power::new(3).unwrap();
        let x = c.parse("1S0").unwrap();
        let alg = c.algebra();
        assert_eq!(
            c.vector(alg.apply_named("star", &[x]).unwrap()).to_string(),
            "001"
        );
        assert_eq!(
            c.vector(alg.apply_named("plus", &[x]).unwrap()).to_string(),
            "011"
        );
        assert_eq!(c.vector(alg.constant("k").unwrap()).to_string(), "SSS");
        assert_eq!(c.vector(alg.constant("one").unwrap()).to_string(), "111");
        assert_eq!(C3Power::new(0), Err(CrdsaError::ZeroPower));
        assert!(matches!(C3Power::new(7), Err(CrdsaError::PowerCap { .. })));
        assert!(c.parse("1S").is_err());
    }

    #[test]
    fn c3_malcev_identities() {
        let c = C3Power::new(1).unwrap();
        let m = c3_malcev_term();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(m.eval(c.algebra(), &[x, y, y]).unwrap(), x);
                assert_eq!(m.eval(c.algebra(), &[x, x, y]).unwrap(), y);
            }
        }
        assert_eq!(m.eval(c.algebra(), &[1, 2, 2]).unwrap(), 1);
    }

    #[test]
    fn c3_squared_passes_validation() {
        let report = validate_crdsa(C3Power::new(2).unwrap().algebra()).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.core, [4]);
    }

    #[test]
    fn c2_squared_has_no_core() {
        let report = validate_crdsa(&c2_power_dsa(2).unwrap()).unwrap();
        assert!(!report.passed);
        let failed: Vec<&str> = report.failed().map(|c| c.axiom.as_str()).collect();
        assert_eq!(failed, ["core nonempty"]);
        assert!(report.core.is_empty());
    }

    #[test]
    fn c4_chain_is_not_regular() {
        let report = validate_crdsa(&c4_chain_dsa()).unwrap();
        let regular = report.check("regular").unwrap();
        assert!(!regular.passed);
        // the two middle elements share both images
        assert_eq!(regular.counterexample, Some(vec![1, 2]));
        assert!(!report.check("regular inequality").unwrap().passed);
        assert!(report.check("stone identity").unwrap().passed);
        assert_eq!(report.core, [1, 2]);
    }

    #[test]
    fn validation_needs_double_stone_symbols() {
        let alg = crate::finalg::z3();
        assert_eq!(
            validate_crdsa(&alg),
            Err(CrdsaError::MissingSymbol("join".into()))
        );
    }

    #[test]
    fn wrong_core_constant_is_caught() {
        let c = C3Power::new(1).unwrap();
        let alg = c.algebra();
        let bad = FiniteAlgebra::from_fn(3, crdsa_signature(), |name, a| {
            if name == "k" {
                2
            } else {
                alg.apply_named(name, a).unwrap()
            }
        })
        .unwrap();
        let report = validate_crdsa(&bad).unwrap();
        let failed: Vec<&str> = report.failed().map(|c| c.axiom.as_str()).collect();
        assert_eq!(failed, ["k is the core element"]);
        assert!(CrdsaInstance::new(bad).is_err());
    }

    #[test]
    fn boolean_instance_rejects_non_complemented() {
        let chain = FiniteAlgebra::from_fn(3, boolean_signature(), |name, a| match name {
            "join" => a[0].max(a[1]),
            "meet" => a[0].min(a[1]),
            "compl" => 2 - a[0],
            "zero" => 0,
            _ => 2,
        })
        .unwrap();
        assert!(matches!(
            BooleanInstance::new(chain),
            Err(CrdsaError::NotBoolean(_))
        ));
    }
}

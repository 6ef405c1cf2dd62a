use serde::Serialize;

use super::{
    lattice_law_violation, Elem, ElementSet, FinalgError, FiniteAlgebra, PartitionRelation, Term,
};

/// How congruence-distributivity of the generated variety is established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributivityWitness {
    /// A ternary term satisfying `t(x,x,y) = t(x,y,x) = t(y,x,x) = x`.
    Majority(Term),
    /// `join` and `meet` form a lattice reduct; the lattice laws are checked.
    LatticeReduct,
}

/// The four conditions of the finite primality criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimalityReport {
    pub no_proper_subalgebras: bool,
    /// Least proper subuniverse in canonical order, when condition (1) fails.
    pub proper_subalgebra: Option<Vec<Elem>>,
    pub simple: bool,
    pub nontrivial_congruence: Option<PartitionRelation>,
    pub rigid: bool,
    pub nontrivial_automorphism: Option<Vec<Elem>>,
    /// Mal'cev identities `m(x,y,y) = x` and `m(x,x,y) = y` on all pairs.
    pub malcev_holds: bool,
    /// First `(x, y)` where the Mal'cev identities fail.
    pub malcev_counterexample: Option<(Elem, Elem)>,
    pub distributive_holds: bool,
    /// Which route established distributivity, or why it failed.
    pub distributive_route: String,
    pub arithmetical: bool,
    pub primal: bool,
}

impl FiniteAlgebra {
    /// Evaluates the four primality conditions: no proper subalgebras,
    /// simplicity, rigidity, and an arithmetical variety witnessed by a
    /// Mal'cev term plus either a majority term or a lattice reduct.
    pub fn check_primal(
        &self,
        malcev: &Term,
        distributivity: &DistributivityWitness,
        cap: usize,
    ) -> Result<PrimalityReport, FinalgError> {
        malcev.check(self, 3)?;
        if let DistributivityWitness::Majority(t) = distributivity {
            t.check(self, 3)?;
        }

        let subs = self.enumerate_subalgebras(cap)?;
        let proper_subalgebra = subs.iter().find(|s| !s.is_full()).map(ElementSet::to_vec);

        let simplicity = self.is_simple();

        let autos = self.automorphisms();
        let identity: Vec<Elem> = self.elements().collect();
        let nontrivial_automorphism = autos.into_iter().find(|a| *a != identity);

        let malcev_counterexample = self.first_pair(|x, y| {
            Ok(malcev.eval(self, &[x, y, y])? == x && malcev.eval(self, &[x, x, y])? == y)
        })?;

        let (distributive_holds, distributive_route) = match distributivity {
            DistributivityWitness::Majority(t) => {
                let bad = self.first_pair(|x, y| {
                    Ok(t.eval(self, &[x, x, y])? == x
                        && t.eval(self, &[x, y, x])? == x
                        && t.eval(self, &[y, x, x])? == x)
                })?;
                match bad {
                    None => (true, format!("majority term {t}")),
                    Some((x, y)) => (false, format!("majority term fails at ({x}, {y})")),
                }
            }
            DistributivityWitness::LatticeReduct => {
                match lattice_law_violation(self, "join", "meet") {
                    Ok(None) => (true, "lattice reduct (join, meet)".to_string()),
                    Ok(Some((law, w))) => (false, format!("lattice reduct fails {law} at {w:?}")),
                    Err(e) => (false, format!("no lattice reduct: {e}")),
                }
            }
        };

        let malcev_holds = malcev_counterexample.is_none();
        let arithmetical = malcev_holds && distributive_holds;
        let no_proper_subalgebras = proper_subalgebra.is_none();
        let rigid = nontrivial_automorphism.is_none();
        Ok(PrimalityReport {
            no_proper_subalgebras,
            proper_subalgebra,
            simple: simplicity.simple,
            nontrivial_congruence: simplicity.witness,
            rigid,
            nontrivial_automorphism,
            malcev_holds,
            malcev_counterexample,
            distributive_holds,
            distributive_route,
            arithmetical,
            primal: no_proper_subalgebras && simplicity.simple && rigid && arithmetical,
        })
    }

    fn first_pair(
        &self,
        mut ok: impl FnMut(Elem, Elem) -> Result<bool, FinalgError>,
    ) -> Result<Option<(Elem, Elem)>, FinalgError> {
        for x in self.elements() {
            for y in self.elements() {
                if !ok(x, y)? {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }
}

/// `x - y + z`
pub fn ring_malcev_term() -> Term {
    "(add (add v0 (neg v1)) v2)".parse().expect("valid term")
}

/// `z - (z - y)(z - x)^2`
pub fn ring_majority_term() -> Term {
    "(add v2 (neg (mul (add v2 (neg v1)) (mul (add v2 (neg v0)) (add v2 (neg v0))))))"
        .parse()
        .expect("valid term")
}

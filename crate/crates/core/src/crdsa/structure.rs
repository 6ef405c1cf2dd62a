use serde::Serialize;

use super::{boolean_signature, BooleanInstance, C3Power, CrdsaError, CrdsaInstance};
use crate::finalg::{Elem, ElementSet, FiniteAlgebra};

/// The central elements `{a | a* = a+}` and the Boolean algebra they form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Center {
    pub members: ElementSet,
    /// Element `i` of the Boolean algebra is `embedding[i]` of the source.
    pub embedding: Vec<Elem>,
    pub boolean: BooleanInstance,
}

pub fn center(a: &CrdsaInstance) -> Center {
    let ops = a.ops();
    let members = ElementSet::from_elems(
        a.size(),
        a.algebra()
            .elements()
            .filter(|&x| ops.star(x) == ops.plus(x)),
    );
    let embedding = members.to_vec();
    let mut position = vec![usize::MAX; a.size()];
    for (i, &e) in embedding.iter().enumerate() {
        position[e] = i;
    }
    let alg = FiniteAlgebra::from_fn(embedding.len(), boolean_signature(), |name, args| {
        let x = |i: usize| embedding[args[i]];
        position[match name {
            "join" => ops.join(x(0), x(1)),
            "meet" => ops.meet(x(0), x(1)),
            "compl" => ops.star(x(0)),
            "zero" => ops.zero,
            "one" => ops.one,
            _ => unreachable!(),
        }]
    })
    .expect("the center is closed under the induced operations");
    let boolean = BooleanInstance::new(alg).expect("the center of a regular DSA is Boolean");
    Center {
        members,
        embedding,
        boolean,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseCore {
    /// `x* = 0`
    pub dense: ElementSet,
    /// `x+ = 1`
    pub dual_dense: ElementSet,
    pub core: ElementSet,
}

pub fn dense_core(a: &CrdsaInstance) -> DenseCore {
    let ops = a.ops();
    let m = a.size();
    let dense = ElementSet::from_elems(
        m,
        a.algebra().elements().filter(|&x| ops.star(x) == ops.zero),
    );
    let dual_dense = ElementSet::from_elems(
        m,
        a.algebra().elements().filter(|&x| ops.plus(x) == ops.one),
    );
    let core = dense.intersection(&dual_dense);
    DenseCore {
        dense,
        dual_dense,
        core,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// `x = x** ∧ (x++ ∨ k)` for every `x`.
    pub meet_form_holds: bool,
    /// `x = x++ ∨ (x** ∧ k)` for every `x`.
    pub join_form_holds: bool,
    pub counterexample: Option<Elem>,
    /// The `{join, meet}` closure of `center ∪ {k}` is the whole carrier.
    pub lattice_generation_holds: bool,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.meet_form_holds && self.join_form_holds && self.lattice_generation_holds
    }
}

pub fn decomposition_check(a: &CrdsaInstance) -> DecompositionReport {
    let ops = a.ops();
    let k = a.core_element();
    let mut meet_form_holds = true;
    let mut join_form_holds = true;
    let mut counterexample = None;
    for x in a.algebra().elements() {
        let ss = ops.star(ops.star(x));
        let pp = ops.plus(ops.plus(x));
        let meet_ok = ops.meet(ss, ops.join(pp, k)) == x;
        let join_ok = ops.join(pp, ops.meet(ss, k)) == x;
        meet_form_holds &= meet_ok;
        join_form_holds &= join_ok;
        if !(meet_ok && join_ok) && counterexample.is_none() {
            counterexample = Some(x);
        }
    }
    let lattice = a
        .algebra()
        .reduct(&["join", "meet"])
        .expect("CRDSA signature has join and meet");
    let mut gens = center(a).members;
    gens.insert(k);
    let lattice_generation_holds = lattice.subalgebra_closure(&gens).is_full();
    DecompositionReport {
        meet_form_holds,
        join_form_holds,
        counterexample,
        lattice_generation_holds,
    }
}

/// Decides `A ≅ B` by comparing their centers as Boolean algebras.
pub fn iso_via_centers(a: &CrdsaInstance, b: &CrdsaInstance) -> Result<bool, CrdsaError> {
    let ca = center(a);
    let cb = center(b);
    Ok(ca
        .boolean
        .algebra()
        .is_isomorphic(cb.boolean.algebra())?
        .is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdirectReport {
    /// Every homomorphism onto `C_3`, as image lists over `{0, S, 1}` = `{0, 1, 2}`.
    pub homomorphisms: Vec<Vec<Elem>>,
    pub injective: bool,
    pub surjective_coordinates: Vec<bool>,
}

impl SubdirectReport {
    pub fn factors(&self) -> usize {
        self.homomorphisms.len()
    }

    pub fn is_subdirect(&self) -> bool {
        self.injective && self.surjective_coordinates.iter().all(|&s| s)
    }

    /// Image of `x` under the product map.
    pub fn product_image(&self, x: Elem) -> Vec<Elem> {
        self.homomorphisms.iter().map(|h| h[x]).collect()
    }
}

/// Maps `A` into `C_3^m` through all `m` homomorphisms `A → C_3`.
pub fn subdirect_embedding(a: &FiniteAlgebra) -> Result<SubdirectReport, CrdsaError> {
    let c3 = C3Power::new(1)?;
    let homomorphisms = a.homomorphisms(c3.algebra())?;
    let mut images: Vec<Vec<Elem>> = a
        .elements()
        .map(|x| homomorphisms.iter().map(|h| h[x]).collect())
        .collect();
    images.sort();
    images.dedup();
    let injective = images.len() == a.size();
    let surjective_coordinates = homomorphisms
        .iter()
        .map(|h| (0..3).all(|v| h.contains(&v)))
        .collect();
    Ok(SubdirectReport {
        homomorphisms,
        injective,
        surjective_coordinates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagonal() -> CrdsaInstance {
        let c = C3Power::new(2).unwrap();
        let set = ElementSet::from_elems(9, ["00", "SS", "11"].map(|w| c.parse(w).unwrap()));
        c.instance().subalgebra(&set).unwrap()
    }

    #[test]
    fn center_examples() {
        let c1 = C3Power::new(1).unwrap().instance();
        assert_eq!(center(&c1).members.to_vec(), [0, 2]);

        let c2 = C3Power::new(2).unwrap();
        let cen = center(&c2.instance());
        let words: Vec<String> = cen
            .members
            .iter()
            .map(|e| c2.vector(e).to_string())
            .collect();
        assert_eq!(words, ["00", "01", "10", "11"]);
        assert_eq!(cen.boolean.size(), 4);

        let d = diagonal();
        let names: Vec<String> = center(&d).members.iter().map(|e| d.name(e)).collect();
        assert_eq!(names, ["00", "11"]);
    }

    #[test]
    fn dense_core_examples() {
        let c1 = C3Power::new(1).unwrap().instance();
        let dc = dense_core(&c1);
        assert_eq!(dc.dense.to_vec(), [1, 2]);
        assert_eq!(dc.dual_dense.to_vec(), [0, 1]);
        assert_eq!(dc.core.to_vec(), [1]);

        let c2 = C3Power::new(2).unwrap();
        assert_eq!(
            dense_core(&c2.instance()).core.to_vec(),
            [c2.parse("SS").unwrap()]
        );
    }

    #[test]
    fn x_join_x_star_is_dense() {
        for n in 1..=3 {
            let inst = C3Power::new(n).unwrap().instance();
            let ops = inst.ops();
            let dense = dense_core(&inst).dense;
            for x in inst.algebra().elements() {
                assert!(dense.contains(ops.join(x, ops.star(x))));
            }
        }
    }

    #[test]
    fn decomposition_of_1s0() {
        let c = C3Power::new(3).unwrap();
        let inst = c.instance();
        let ops = inst.ops();
        let x = c.parse("1S0").unwrap();
        let ss = ops.star(ops.star(x));
        assert_eq!(c.vector(ss).to_string(), "110");
        let rhs = ops.join(ops.plus(ops.plus(x)), inst.core_element());
        assert_eq!(c.vector(rhs).to_string(), "1SS");
        assert_eq!(ops.meet(ss, rhs), x);
        assert!(decomposition_check(&inst).holds());
    }

    #[test]
    fn subdirect_examples() {
        let d = diagonal();
        let report = subdirect_embedding(d.algebra()).unwrap();
        // both projections restrict to the same map on the diagonal
        assert_eq!(report.homomorphisms, vec![vec![0, 1, 2]]);
        assert!(report.is_subdirect());

        let c3 = C3Power::new(3).unwrap();
        let report = subdirect_embedding(c3.algebra()).unwrap();
        assert_eq!(report.factors(), 3);
        assert!(report.is_subdirect());
    }

    #[test]
    fn iso_via_centers_examples() {
        let c1 = C3Power::new(1).unwrap().instance();
        let c2 = C3Power::new(2).unwrap().instance();
        assert!(iso_via_centers(&diagonal(), &c1).unwrap());
        assert!(iso_via_centers(&c1, &diagonal()).unwrap());
        assert!(!iso_via_centers(&c1, &c2).unwrap());
    }
}

use serde::Serialize;

use super::{points_of, spectrum, BitopError, BitopSpace, FiniteTopology, PointSet};
use crate::crdsa::{crdsa_signature, validate_crdsa, CrdsaInstance, ValidationReport};
use crate::finalg::{Elem, FiniteAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroDimEquivalence {
    pub t1_is_t0: bool,
    pub t2_is_t0: bool,
    pub pairwise_hausdorff: bool,
    /// Distinct points lie in disjoint members of `t1 ∪ t2`.
    pub disjoint_separation: bool,
}

impl ZeroDimEquivalence {
    pub fn agree(&self) -> bool {
        let v = [
            self.t1_is_t0,
            self.t2_is_t0,
            self.pairwise_hausdorff,
            self.disjoint_separation,
        ];
        v.iter().all(|&b| b == v[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseReport {
    pub hausdorff: bool,
    /// A pair of points no separating opens exist for.
    pub hausdorff_witness: Option<(usize, usize)>,
    pub zero_dimensional: bool,
    pub compact_by_subcover: bool,
    pub compact_by_closed_sets: bool,
    pub stone: bool,
    /// Present on pairwise zero-dimensional spaces.
    pub zero_dim_equivalence: Option<ZeroDimEquivalence>,
}

impl PairwiseReport {
    pub fn compactness_agrees(&self) -> bool {
        self.compact_by_subcover == self.compact_by_closed_sets
    }
}

fn separated(a: &FiniteTopology, b: &FiniteTopology, x: usize, y: usize) -> bool {
    a.opens()
        .iter()
        .filter(|&&u| u >> x & 1 == 1 && u >> y & 1 == 0)
        .any(|&u| b.opens().iter().any(|&v| v >> y & 1 == 1 && u & v == 0))
}

/// A subfamily of `family` covering `target` with at most one member per
/// point, or `None` if `family` does not cover `target`.
fn finite_subcover(target: PointSet, family: &[PointSet]) -> Option<Vec<PointSet>> {
    let mut chosen = Vec::new();
    let mut covered = 0;
    for p in points_of(target) {
        if covered >> p & 1 == 1 {
            continue;
        }
        let &u = family.iter().find(|&&u| u >> p & 1 == 1)?;
        covered |= u;
        chosen.push(u);
    }
    Some(chosen)
}

/// `target` is compact in `t`: every cover of it by `t`-opens has a finite
/// subcover. The cover tested is the largest one, all of `t` except sets
/// containing `target`, falling back to all of `t`.
fn compact_in(target: PointSet, t: &FiniteTopology) -> bool {
    let proper: Vec<PointSet> = t
        .opens()
        .iter()
        .copied()
        .filter(|&u| target & !u != 0)
        .collect();
    finite_subcover(target, &proper)
        .or_else(|| finite_subcover(target, t.opens()))
        .is_some_and(|c| c.iter().fold(0, |a, &u| a | u) & target == target)
}

pub fn pairwise_properties(s: &BitopSpace) -> PairwiseReport {
    let n = s.ground_size();
    let (t1, t2) = (s.t1(), s.t2());
    let mut hausdorff_witness = None;
    'pairs: for x in 0..n {
        for y in 0..n {
            if x != y && !separated(t1, t2, x, y) && !separated(t2, t1, x, y) {
                hausdorff_witness = Some((x.min(y), x.max(y)));
                break 'pairs;
            }
        }
    }
    let hausdorff = hausdorff_witness.is_none();

    let b1 = s.open1_closed2();
    let b2 = s.open2_closed1();
    let zero_dimensional = t1.is_basis(&b1) && t2.is_basis(&b2);

    let mut all_opens: Vec<PointSet> = t1.opens().iter().chain(t2.opens()).copied().collect();
    all_opens.sort_unstable();
    all_opens.dedup();
    let full = s.full();
    let proper: Vec<PointSet> = all_opens.iter().copied().filter(|&u| u != full).collect();
    let compact_by_subcover = [&proper, &all_opens]
        .into_iter()
        .filter(|fam| fam.iter().fold(0, |a, &u| a | u) == full)
        .all(|fam| finite_subcover(full, fam).is_some());
    let compact_by_closed_sets = t1.closed_sets().iter().all(|&c| compact_in(c, t2))
        && t2.closed_sets().iter().all(|&c| compact_in(c, t1));

    let zero_dim_equivalence = zero_dimensional.then(|| {
        let disjoint_separation = (0..n).all(|x| {
            (0..n).all(|y| {
                x == y
                    || all_opens.iter().any(|&u| {
                        u >> x & 1 == 1 && all_opens.iter().any(|&v| v >> y & 1 == 1 && u & v == 0)
                    })
            })
        });
        ZeroDimEquivalence {
            t1_is_t0: t1.is_t0(),
            t2_is_t0: t2.is_t0(),
            pairwise_hausdorff: hausdorff,
            disjoint_separation,
        }
    });

    PairwiseReport {
        hausdorff,
        hausdorff_witness,
        zero_dimensional,
        compact_by_subcover,
        compact_by_closed_sets,
        stone: hausdorff && zero_dimensional && compact_by_subcover,
        zero_dim_equivalence,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub index: usize,
    pub name: String,
    pub passed: bool,
    /// Offending sets, as point lists.
    pub witness: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseReport {
    /// False when the space is not pairwise zero-dimensional; nothing else
    /// is evaluated then.
    pub applicable: bool,
    /// `B1 = t1 ∩ δ2` in increasing bitset order.
    #[serde(serialize_with = "ser_family")]
    pub base1: Vec<PointSet>,
    /// The designated bases equal `t1 ∩ δ2` and `t2 ∩ δ1`.
    pub base1_matches: bool,
    pub base2_matches: bool,
    /// `B2 = {u^c | u ∈ B1}`.
    pub complement_duality: bool,
    pub conditions: Vec<ConditionCheck>,
    /// `k(B1)`
    #[serde(serialize_with = "ser_family")]
    pub core: Vec<PointSet>,
    /// The regularity condition agrees with its `*`/`+` formulation.
    pub regularity_forms_agree: bool,
    #[serde(skip)]
    pub algebra: Option<FiniteAlgebra>,
    pub validation: Option<ValidationReport>,
    /// `u** = Cl1(u) ∈ B1` for every `u`.
    pub double_star_is_closure: Option<bool>,
    /// `(u+)^c` is the pseudocomplement of `u^c` in `B2`, and `(u*)^c` its
    /// dual pseudocomplement.
    pub complements_transfer: Option<bool>,
    /// `u` is dense iff `Bd1(u) = u^c`, dually dense iff `Bd2(u^c) = u`.
    pub density_by_boundary: Option<bool>,
}

fn ser_family<S: serde::Serializer>(f: &[PointSet], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(f.iter().map(|&u| points_of(u)))
}

impl BaseReport {
    pub fn all_conditions_pass(&self) -> bool {
        self.applicable && self.conditions.iter().all(|c| c.passed)
    }

    pub fn failed_conditions(&self) -> Vec<usize> {
        self.conditions
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.index)
            .collect()
    }

    /// The base algebra as a validated CRDSA.
    pub fn instance(&self) -> Option<CrdsaInstance> {
        self.algebra
            .clone()
            .and_then(|a| CrdsaInstance::new(a).ok())
    }

    /// Element index of `u` in the base algebra.
    pub fn element_of(&self, u: PointSet) -> Option<Elem> {
        self.base1.binary_search(&u).ok()
    }

    /// Passes all six conditions and the base algebra validates.
    pub fn holds(&self) -> bool {
        self.all_conditions_pass() && self.validation.as_ref().is_some_and(|v| v.passed)
    }
}

fn condition(
    index: usize,
    name: &str,
    bad: impl IntoIterator<Item = Vec<PointSet>>,
) -> ConditionCheck {
    let witness = bad
        .into_iter()
        .next()
        .map(|sets| sets.into_iter().map(points_of).collect());
    ConditionCheck {
        index,
        name: name.to_string(),
        passed: witness.is_none(),
        witness,
    }
}

/// Evaluates the six conditions for `(t1 ∩ δ2, ∪, ∩, ∅, X)` to be a CRDSA
/// and, when they hold, builds that algebra with `u* = Cl1(u)^c` and
/// `u+ = Cl2(u^c)`.
pub fn check_crdsa_base(s: &BitopSpace) -> BaseReport {
    let (t1, t2) = (s.t1(), s.t2());
    let full = s.full();
    let c = |u: PointSet| full & !u;
    let b1 = s.open1_closed2();
    let b2 = s.open2_closed1();
    let mut report = BaseReport {
        applicable: pairwise_properties(s).zero_dimensional,
        base1_matches: s.base1() == b1.as_slice(),
        base2_matches: s.base2() == b2.as_slice(),
        complement_duality: {
            let mut comp: Vec<PointSet> = b1.iter().map(|&u| c(u)).collect();
            comp.sort_unstable();
            comp == b2
        },
        base1: b1.clone(),
        conditions: Vec::new(),
        core: Vec::new(),
        regularity_forms_agree: true,
        algebra: None,
        validation: None,
        double_star_is_closure: None,
        complements_transfer: None,
        density_by_boundary: None,
    };
    if !report.applicable {
        return report;
    }
    let in_b1 = |u: PointSet| b1.binary_search(&u).is_ok();
    let in_b2 = |u: PointSet| b2.binary_search(&u).is_ok();

    let cond1 = condition(
        1,
        "Int1(v) ∈ B1 for v ∈ B2",
        b2.iter()
            .filter(|&&v| !in_b1(t1.interior(v)))
            .map(|&v| vec![v]),
    );
    let cond2 = condition(
        2,
        "Int2(u) ∈ B2 for u ∈ B1",
        b1.iter()
            .filter(|&&u| !in_b2(t2.interior(u)))
            .map(|&u| vec![u]),
    );
    let cond3 = condition(
        3,
        "Cl1(u)^c is t1-clopen",
        b1.iter()
            .filter(|&&u| !t1.is_clopen(c(t1.closure(u))))
            .map(|&u| vec![u]),
    );
    let cond4 = condition(
        4,
        "Int2(u) is t2-clopen",
        b1.iter()
            .filter(|&&u| !t2.is_clopen(t2.interior(u)))
            .map(|&u| vec![u]),
    );
    let pairs = || b1.iter().flat_map(|&u| b1.iter().map(move |&w| (u, w)));
    let cond5 = condition(
        5,
        "Cl1 and Int2 jointly injective on B1",
        pairs()
            .filter(|&(u, w)| {
                u != w && t1.closure(u) == t1.closure(w) && t2.interior(u) == t2.interior(w)
            })
            .map(|(u, w)| vec![u, w]),
    );
    let star_plus_form_fails = pairs().any(|(u, w)| {
        u != w && c(t1.closure(u)) == c(t1.closure(w)) && t2.closure(c(u)) == t2.closure(c(w))
    });
    report.regularity_forms_agree = star_plus_form_fails != cond5.passed;

    let core: Vec<PointSet> = b1
        .iter()
        .copied()
        .filter(|&u| t1.boundary(u) == c(u) && t2.boundary(c(u)) == u)
        .collect();
    let cond6 = condition(6, "k(B1) nonempty", core.is_empty().then(Vec::new));
    report.core = core;
    report.conditions = vec![cond1, cond2, cond3, cond4, cond5, cond6];
    if !report.all_conditions_pass() {
        return report;
    }

    let idx = |u: PointSet| {
        b1.binary_search(&u)
            .expect("closed under the base operations")
    };
    let star = |u: PointSet| c(t1.closure(u));
    let plus = |u: PointSet| t2.closure(c(u));
    let k = report.core[0];
    let alg = FiniteAlgebra::from_fn(b1.len(), crdsa_signature(), |name, a| match name {
        "join" => idx(b1[a[0]] | b1[a[1]]),
        "meet" => idx(b1[a[0]] & b1[a[1]]),
        "star" => idx(star(b1[a[0]])),
        "plus" => idx(plus(b1[a[0]])),
        "zero" => idx(0),
        "k" => idx(k),
        "one" => idx(full),
        _ => unreachable!(),
    })
    .expect("well-formed tables");
    report.validation = validate_crdsa(&alg).ok();
    report.algebra = Some(alg);

    report.double_star_is_closure = Some(b1.iter().all(|&u| {
        let cl = t1.closure(u);
        star(star(u)) == cl && in_b1(cl)
    }));
    report.complements_transfer = Some(b1.iter().all(|&u| {
        let uc = c(u);
        let disjoint: Vec<PointSet> = b2.iter().copied().filter(|&v| v & uc == 0).collect();
        let pseudo = disjoint.iter().fold(0, |a, &v| a | v);
        let covering: Vec<PointSet> = b2.iter().copied().filter(|&v| v | uc == full).collect();
        let dual_pseudo = covering.iter().fold(full, |a, &v| a & v);
        in_b2(pseudo) && pseudo == c(plus(u)) && in_b2(dual_pseudo) && dual_pseudo == c(star(u))
    }));
    report.density_by_boundary = Some(b1.iter().all(|&u| {
        (star(u) == 0) == (t1.boundary(u) == c(u)) && (plus(u) == full) == (t2.boundary(c(u)) == u)
    }));
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiIsoReport {
    pub points: usize,
    pub passed: bool,
    /// First violated identity.
    pub violation: Option<String>,
    /// `map[a]` is the base algebra element `Φ+(a)`.
    pub map: Vec<Elem>,
}

/// Checks that `Φ+` is a CRDSA isomorphism from `l` onto the base algebra of
/// its spectrum.
pub fn phi_plus_iso_check(l: &CrdsaInstance) -> Result<PhiIsoReport, BitopError> {
    let sp = spectrum(l.algebra())?;
    let report = check_crdsa_base(&sp.space);
    let fail = |msg: String, map: Vec<Elem>| PhiIsoReport {
        points: sp.points(),
        passed: false,
        violation: Some(msg),
        map,
    };
    if !report.holds() {
        return Ok(fail(
            format!(
                "base algebra is not a CRDSA (conditions {:?} fail)",
                report.failed_conditions()
            ),
            Vec::new(),
        ));
    }
    let base = report.algebra.as_ref().expect("built when conditions pass");
    let mut map = Vec::with_capacity(l.size());
    for a in l.algebra().elements() {
        match report.element_of(sp.phi_plus(a)) {
            Some(e) => map.push(e),
            None => return Ok(fail(format!("Φ+({a}) is not in B1"), map)),
        }
    }
    let mut seen = map.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != base.size() || map.len() != base.size() {
        return Ok(fail("Φ+ is not a bijection onto B1".into(), map));
    }
    let src = l.algebra();
    for (op, (name, arity)) in src.signature().iter().enumerate() {
        let tgt = base.symbol(name)?;
        let mut violation = None;
        crate::finalg::for_each_tuple(src.size(), arity, |args| {
            if violation.is_some() {
                return;
            }
            let img: Vec<Elem> = args.iter().map(|&a| map[a]).collect();
            if map[src.apply(op, args)] != base.apply(tgt, &img) {
                violation = Some(format!("Φ+ does not preserve {name} at {args:?}"));
            }
        });
        if let Some(v) = violation {
            return Ok(fail(v, map));
        }
    }
    let k = sp.phi_plus(l.core_element());
    if !report.core.contains(&k) {
        return Ok(fail("Φ+(k) is not in k(B1)".into(), map));
    }
    Ok(PhiIsoReport {
        points: sp.points(),
        passed: true,
        violation: None,
        map,
    })
}

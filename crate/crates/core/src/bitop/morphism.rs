use serde::Serialize;

use super::{
    base_lattice, check_crdsa_base, points_of, spectrum, BitopError, BitopSpace, PointSet, Spectrum,
};
use crate::crdsa::{crdsa_signature, CrdsaInstance};
use crate::finalg::{Elem, ElementSet, FiniteAlgebra};

fn preimage(f: &[usize], u: PointSet) -> PointSet {
    f.iter()
        .enumerate()
        .filter(|&(_, &y)| u >> y & 1 == 1)
        .fold(0, |acc, (x, _)| acc | 1u128 << x)
}

fn check_total(f: &[usize], s: &BitopSpace, t: &BitopSpace) -> Result<(), BitopError> {
    if f.len() != s.ground_size() {
        return Err(BitopError::MapNotTotal(format!(
            "{} images for {} points",
            f.len(),
            s.ground_size()
        )));
    }
    if let Some((x, &y)) = f.iter().enumerate().find(|&(_, &y)| y >= t.ground_size()) {
        return Err(BitopError::MapNotTotal(format!(
            "point {x} maps to {y}, outside {} points",
            t.ground_size()
        )));
    }
    Ok(())
}

/// Preimages of `t`-opens are `s`-open, in both topologies.
pub fn is_bicontinuous(f: &[usize], s: &BitopSpace, t: &BitopSpace) -> Result<(), BitopError> {
    check_total(f, s, t)?;
    for (which, (src, tgt)) in [(s.t1(), t.t1()), (s.t2(), t.t2())].into_iter().enumerate() {
        if let Some(&u) = tgt.opens().iter().find(|&&u| !src.is_open(preimage(f, u))) {
            return Err(BitopError::NotBiContinuous {
                topology: which + 1,
                open: points_of(u),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryCheck {
    /// The base element of the target, as points.
    pub u: Vec<usize>,
    /// `f^-1(Bd1(u)) ⊆ Cl1(f^-1(u))`
    pub bd1: bool,
    /// `f^-1(Bd2(u^c)) ⊆ Cl2(f^-1(u^c))`
    pub bd2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub boundary: Vec<BoundaryCheck>,
    pub boundary_holds: bool,
    pub boundary_failure: Option<String>,
    /// The preimage map preserves the operations and the core directly.
    pub direct_holds: bool,
    pub direct_failure: Option<String>,
    /// `preimage_map[i]` is the source base element `f^-1(D1[i])`.
    pub preimage_map: Vec<Elem>,
}

impl MorphismReport {
    pub fn is_crdsa_homomorphism(&self) -> bool {
        self.boundary_holds
    }
}

/// Decides whether `f^-1` is a CRDSA homomorphism from the base algebra of
/// `t` to that of `s`, once by the boundary containments and once by
/// evaluating the preimage map on the operations. The two must agree.
pub fn check_morphism(
    f: &[usize],
    s: &BitopSpace,
    t: &BitopSpace,
) -> Result<MorphismReport, BitopError> {
    check_total(f, s, t)?;
    let bs = check_crdsa_base(s);
    let bt = check_crdsa_base(t);
    for (name, r) in [("source", &bs), ("target", &bt)] {
        if !r.holds() {
            return Err(BitopError::NotApplicable(format!(
                "{name} base is not a CRDSA (conditions {:?} fail)",
                r.failed_conditions()
            )));
        }
    }
    is_bicontinuous(f, s, t)?;

    let (s1, s2, t1, t2) = (s.t1(), s.t2(), t.t1(), t.t2());
    let tc = |u: PointSet| t.full() & !u;
    let mut boundary = Vec::new();
    let mut boundary_failure = None;
    for &u in &bt.base1 {
        let bd1 = preimage(f, t1.boundary(u)) & !s1.closure(preimage(f, u)) == 0;
        let bd2 = preimage(f, t2.boundary(tc(u))) & !s2.closure(preimage(f, tc(u))) == 0;
        if boundary_failure.is_none() {
            if !bd1 {
                boundary_failure = Some(format!(
                    "Bd_1 containment fails for u = {:?}: f^-1(Bd_1(u)) = {:?} ⊄ Cl_1(f^-1(u)) = {:?}",
                    points_of(u),
                    points_of(preimage(f, t1.boundary(u))),
                    points_of(s1.closure(preimage(f, u)))
                ));
            } else if !bd2 {
                boundary_failure = Some(format!(
                    "Bd_2 containment fails for u = {:?}: f^-1(Bd_2(u^c)) = {:?} ⊄ Cl_2(f^-1(u^c)) = {:?}",
                    points_of(u),
                    points_of(preimage(f, t2.boundary(tc(u)))),
                    points_of(s2.closure(preimage(f, tc(u))))
                ));
            }
        }
        boundary.push(BoundaryCheck {
            u: points_of(u),
            bd1,
            bd2,
        });
    }
    let boundary_holds = boundary_failure.is_none();

    let src = bs.algebra.as_ref().expect("holds");
    let tgt = bt.algebra.as_ref().expect("holds");
    let mut preimage_map = Vec::with_capacity(bt.base1.len());
    for &u in &bt.base1 {
        match bs.element_of(preimage(f, u)) {
            Some(e) => preimage_map.push(e),
            None => {
                return Err(BitopError::RouteMismatch(format!(
                    "preimage of {:?} is not a source base element",
                    points_of(u)
                )))
            }
        }
    }
    let mut direct_failure = None;
    'ops: for (op, (name, arity)) in tgt.signature().iter().enumerate() {
        let sop = src.symbol(name)?;
        let elems: Vec<Elem> = tgt.elements().collect();
        let tuples: Vec<Vec<Elem>> = match arity {
            0 => vec![vec![]],
            1 => elems.iter().map(|&a| vec![a]).collect(),
            _ => elems
                .iter()
                .flat_map(|&a| elems.iter().map(move |&b| vec![a, b]))
                .collect(),
        };
        for args in tuples {
            let img: Vec<Elem> = args.iter().map(|&a| preimage_map[a]).collect();
            if preimage_map[tgt.apply(op, &args)] != src.apply(sop, &img) {
                let sets: Vec<Vec<usize>> = args.iter().map(|&a| points_of(bt.base1[a])).collect();
                direct_failure = Some(format!("f^-1 does not preserve {name} at {sets:?}"));
                break 'ops;
            }
        }
    }
    let direct_holds = direct_failure.is_none();
    if direct_holds != boundary_holds {
        return Err(BitopError::RouteMismatch(format!(
            "boundary route says {boundary_holds}, direct route says {direct_holds}"
        )));
    }
    Ok(MorphismReport {
        boundary,
        boundary_holds,
        boundary_failure,
        direct_holds,
        direct_failure,
        preimage_map,
    })
}

/// For a lattice homomorphism `h: L → L'`, the point map
/// `pf(L') → pf(L)`, `x ↦ h^-1(x)`.
pub fn induced_point_map(
    h: &[Elem],
    source: &Spectrum,
    target: &Spectrum,
) -> Result<Vec<usize>, BitopError> {
    let m = h.len();
    target
        .filters
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let pre = ElementSet::from_elems(m, (0..m).filter(|&a| x.members.contains(h[a])));
            source.point_of(&pre).ok_or_else(|| {
                BitopError::MapNotTotal(format!("preimage of point {i} is not a prime filter"))
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub points: usize,
    /// `psi[x]` is the point of the double dual `{u ∈ B1 | x ∈ u}`.
    pub psi: Vec<usize>,
    pub bijective: bool,
    pub bi_homeomorphism: bool,
    /// `Ψ^-1(Φ+(u)) = u` for every base element `u`.
    pub phi_inverse_identity: bool,
    /// Morphism checks of `Ψ` and of its inverse; `None` when a base is not
    /// a CRDSA.
    pub morphism: Option<MorphismReport>,
    pub inverse_morphism: Option<MorphismReport>,
    pub morphism_skipped: Option<String>,
    /// `L → B+ → base of the double dual` is a CRDSA isomorphism; `None`
    /// when `L` is not a CRDSA in the full signature.
    pub composite_iso: Option<bool>,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.bijective
            && self.bi_homeomorphism
            && self.phi_inverse_identity
            && self
                .morphism
                .as_ref()
                .is_none_or(MorphismReport::is_crdsa_homomorphism)
            && self
                .inverse_morphism
                .as_ref()
                .is_none_or(MorphismReport::is_crdsa_homomorphism)
            && self.composite_iso.unwrap_or(true)
    }
}

/// Builds `X = pf(L)`, the spectrum of its base lattice, and the map `Ψ`
/// between them, and checks the round trip.
pub fn psi_roundtrip(l: &FiniteAlgebra) -> Result<PsiReport, BitopError> {
    let x = spectrum(l)?;
    let b1 = x.space.open1_closed2();
    let (lattice, sets) = base_lattice(&b1)?;
    let xx = spectrum(&lattice)?;
    let psi: Vec<usize> = (0..x.points())
        .map(|p| {
            let members = ElementSet::from_elems(
                sets.len(),
                (0..sets.len()).filter(|&i| sets[i] >> p & 1 == 1),
            );
            xx.point_of(&members).ok_or_else(|| {
                BitopError::MapNotTotal(format!("Ψ({p}) is not a prime filter of the base"))
            })
        })
        .collect::<Result<_, _>>()?;
    let mut sorted = psi.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let bijective = sorted.len() == psi.len() && psi.len() == xx.points();
    let inverse: Vec<usize> = if bijective {
        let mut inv = vec![0; psi.len()];
        for (p, &q) in psi.iter().enumerate() {
            inv[q] = p;
        }
        inv
    } else {
        Vec::new()
    };
    let bi_homeomorphism = bijective
        && is_bicontinuous(&psi, &x.space, &xx.space).is_ok()
        && is_bicontinuous(&inverse, &xx.space, &x.space).is_ok();
    let phi_inverse_identity = (0..sets.len()).all(|i| preimage(&psi, xx.phi_plus(i)) == sets[i]);

    let (mut morphism, mut inverse_morphism, mut morphism_skipped) = (None, None, None);
    if bijective {
        match check_morphism(&psi, &x.space, &xx.space) {
            Ok(r) => {
                morphism = Some(r);
                inverse_morphism = Some(check_morphism(&inverse, &xx.space, &x.space)?);
            }
            Err(BitopError::NotApplicable(why)) => morphism_skipped = Some(why),
            Err(e) => return Err(e),
        }
    }

    let composite_iso = (l.signature() == &crdsa_signature())
        .then(|| CrdsaInstance::new(l.clone()).ok())
        .flatten()
        .map(|inst| composite_is_iso(&inst, &x, &sets, &xx));

    Ok(PsiReport {
        points: x.points(),
        psi,
        bijective,
        bi_homeomorphism,
        phi_inverse_identity,
        morphism,
        inverse_morphism,
        morphism_skipped,
        composite_iso,
    })
}

fn composite_is_iso(l: &CrdsaInstance, x: &Spectrum, sets: &[PointSet], xx: &Spectrum) -> bool {
    let report = check_crdsa_base(&xx.space);
    let Some(base) = report.algebra.as_ref().filter(|_| report.holds()) else {
        return false;
    };
    let map: Option<Vec<Elem>> = l
        .algebra()
        .elements()
        .map(|a| {
            let i = sets.binary_search(&x.phi_plus(a)).ok()?;
            report.element_of(xx.phi_plus(i))
        })
        .collect();
    let Some(map) = map else {
        return false;
    };
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == base.size() && l.algebra().is_homomorphism(base, &map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crdsa::C3Power;

    fn c3_space() -> Spectrum {
        spectrum(C3Power::new(1).unwrap().algebra()).unwrap()
    }

    #[test]
    fn identity_on_c3() {
        let s = c3_space().space;
        let r = check_morphism(&[0, 1], &s, &s).unwrap();
        assert!(r.is_crdsa_homomorphism() && r.direct_holds);
        assert_eq!(r.preimage_map, [0, 1, 2]);
    }

    #[test]
    fn constant_map_fails_second_boundary() {
        let s = c3_space().space;
        let r = check_morphism(&[1, 1], &s, &s).unwrap();
        assert!(!r.is_crdsa_homomorphism());
        assert!(!r.direct_holds);
        let failing: Vec<&BoundaryCheck> =
            r.boundary.iter().filter(|b| !(b.bd1 && b.bd2)).collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].u, [1]);
        assert!(failing[0].bd1 && !failing[0].bd2);
        assert!(r.boundary_failure.unwrap().starts_with("Bd_2"));
        // the image of S is sent to the image of 1
        assert_eq!(r.preimage_map[1], 2);
    }

    #[test]
    fn non_continuous_and_partial_maps() {
        let s = c3_space().space;
        assert!(matches!(
            check_morphism(&[1, 0], &s, &s),
            Err(BitopError::NotBiContinuous { .. })
        ));
        assert!(matches!(
            check_morphism(&[0], &s, &s),
            Err(BitopError::MapNotTotal(_))
        ));
        assert!(matches!(
            check_morphism(&[0, 2], &s, &s),
            Err(BitopError::MapNotTotal(_))
        ));
    }

    #[test]
    fn projection_induces_a_morphism() {
        let c2 = C3Power::new(2).unwrap();
        let c1 = C3Power::new(1).unwrap();
        let h: Vec<Elem> = c2
            .algebra()
            .elements()
            .map(|e| {
                c1.element(&crate::ternary::TernaryVector::new(vec![
                    c2.vector(e).word()[0],
                ]))
            })
            .collect();
        assert!(c2.algebra().is_homomorphism(c1.algebra(), &h));
        let (x2, x1) = (spectrum(c2.algebra()).unwrap(), c3_space());
        let f = induced_point_map(&h, &x2, &x1).unwrap();
        let r = check_morphism(&f, &x1.space, &x2.space).unwrap();
        assert!(r.is_crdsa_homomorphism());
    }

    #[test]
    fn psi_on_c3() {
        let r = psi_roundtrip(C3Power::new(1).unwrap().algebra()).unwrap();
        assert!(r.passed(), "{r:?}");
        // F1 ↦ {X} = point 0, F2 ↦ {{F2}, X} = point 1 of the double dual
        assert_eq!(r.psi, [0, 1]);
        assert!(r.morphism.is_some() && r.inverse_morphism.is_some());
        assert_eq!(r.composite_iso, Some(true));
    }

    #[test]
    fn psi_on_c2() {
        let (c2, _) = base_lattice(&[0, 1]).unwrap();
        let r = psi_roundtrip(&c2).unwrap();
        assert!(r.bijective && r.bi_homeomorphism && r.phi_inverse_identity);
        assert!(r.morphism.is_none());
        assert!(r.morphism_skipped.is_some());
        assert_eq!(r.composite_iso, None);
    }
}

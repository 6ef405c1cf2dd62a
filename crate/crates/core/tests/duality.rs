use crdsa_core::bitop::{
    base_lattice, check_crdsa_base, check_morphism, is_bicontinuous, pairwise_properties,
    prime_filters, prime_filters_brute, prime_filters_join_irreducible, psi_roundtrip, spectrum,
    Region,
};
use crdsa_core::crdsa::{c2_power_dsa, enumerate_crdsa_subalgebras, C3Power};
use crdsa_core::{BitopError, BitopSpace, FiniteAlgebra};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn chain(n: usize) -> FiniteAlgebra {
    let family: Vec<u128> = (0..n).map(|i| (1u128 << i) - 1).collect();
    base_lattice(&family).unwrap().0
}

#[test]
fn prime_filter_constructions_agree() {
    let mut lattices: Vec<FiniteAlgebra> = (2..=16).map(chain).collect();
    lattices.push(c2_power_dsa(2).unwrap().reduct(&["join", "meet"]).unwrap());
    lattices.push(c2_power_dsa(3).unwrap().reduct(&["join", "meet"]).unwrap());
    lattices.push(c2_power_dsa(4).unwrap().reduct(&["join", "meet"]).unwrap());
    for s in enumerate_crdsa_subalgebras(2).unwrap() {
        lattices.push(s.instance.algebra().clone());
    }
    for l in &lattices {
        assert_eq!(
            prime_filters_brute(l).unwrap(),
            prime_filters_join_irreducible(l).unwrap(),
            "size {}",
            l.size()
        );
    }
    assert_eq!(prime_filters(&chain(20)).unwrap().len(), 19);
}

#[test]
fn spectra_invariants() {
    for n in 1..=3 {
        let sp = spectrum(C3Power::new(n).unwrap().algebra()).unwrap();
        let s = &sp.space;
        for a in 0..3usize.pow(n as u32) {
            assert_eq!(sp.phi_minus(a), s.full() & !sp.phi_plus(a));
        }
        let p = pairwise_properties(s);
        assert!(p.stone && p.compactness_agrees());
        let r = check_crdsa_base(s);
        assert!(r.base1_matches && r.base2_matches && r.complement_duality);
        assert_eq!(r.density_by_boundary, Some(true));
        assert_eq!(r.double_star_is_closure, Some(true));
        assert_eq!(r.complements_transfer, Some(true));
        assert!(r.regularity_forms_agree);
        assert_eq!(r.core, [sp.phi_plus(r_core_index(n))]);
    }
}

fn r_core_index(n: usize) -> usize {
    C3Power::new(n).unwrap().algebra().constant("k").unwrap()
}

#[test]
fn boolean_spectra_fail_only_the_core_condition() {
    for n in 1..=3 {
        let b = c2_power_dsa(n).unwrap().reduct(&["join", "meet"]).unwrap();
        let sp = spectrum(&b).unwrap();
        assert_eq!(sp.points(), n);
        assert!(pairwise_properties(&sp.space).stone);
        assert_eq!(check_crdsa_base(&sp.space).failed_conditions(), [6]);
        let psi = psi_roundtrip(&b).unwrap();
        assert!(psi.bijective && psi.bi_homeomorphism && psi.phi_inverse_identity);
        assert!(psi.morphism.is_none());
    }
}

#[test]
fn four_chain_base_is_not_regular() {
    // a 4-element chain as a lattice: its spectrum's base fails regularity
    let sp = spectrum(&chain(4)).unwrap();
    let r = check_crdsa_base(&sp.space);
    assert!(r.failed_conditions().contains(&5));
    assert!(r.regularity_forms_agree);
}

#[test]
fn region_operator_errors() {
    let sp = spectrum(C3Power::new(1).unwrap().algebra()).unwrap();
    assert!(matches!(
        sp.space.region_operator(0, Region::Interior, 0),
        Err(BitopError::BadTopologyIndex(0))
    ));
    assert!(matches!(
        sp.space.region_operator(1, Region::Interior, 0b100),
        Err(BitopError::PointOutOfRange { .. })
    ));
}

fn all_maps(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..from {
        out = out
            .into_iter()
            .flat_map(|m: Vec<usize>| {
                (0..to).map(move |y| {
                    let mut m = m.clone();
                    m.push(y);
                    m
                })
            })
            .collect();
    }
    out
}

/// Every map between spectra of `C_3` and `C_3^2`: bi-continuous ones get a
/// verdict with both routes agreeing, the rest are rejected as such.
#[test]
fn every_map_between_small_spectra() {
    let spaces: Vec<BitopSpace> = (1..=2)
        .map(|n| spectrum(C3Power::new(n).unwrap().algebra()).unwrap().space)
        .collect();
    let mut verdicts = [0usize; 2];
    for s in &spaces {
        for t in &spaces {
            for f in all_maps(s.ground_size(), t.ground_size()) {
                match check_morphism(&f, s, t) {
                    Ok(r) => {
                        assert_eq!(r.boundary_holds, r.direct_holds);
                        verdicts[usize::from(r.is_crdsa_homomorphism())] += 1;
                    }
                    Err(BitopError::NotBiContinuous { .. }) => {
                        assert!(is_bicontinuous(&f, s, t).is_err());
                    }
                    Err(e) => panic!("{f:?}: {e}"),
                }
            }
        }
    }
    assert!(verdicts[0] > 0 && verdicts[1] > 0, "{verdicts:?}");
}

#[test]
fn randomized_maps_into_c3_cubed() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let spaces: Vec<BitopSpace> = (1..=3)
        .map(|n| spectrum(C3Power::new(n).unwrap().algebra()).unwrap().space)
        .collect();
    let mut checked = 0;
    for _ in 0..400 {
        let s = &spaces[rng.gen_range(0..spaces.len())];
        let t = &spaces[rng.gen_range(0..spaces.len())];
        let f: Vec<usize> = (0..s.ground_size())
            .map(|_| rng.gen_range(0..t.ground_size()))
            .collect();
        match check_morphism(&f, s, t) {
            Ok(r) => {
                assert_eq!(r.boundary_holds, r.direct_holds);
                checked += 1;
            }
            Err(BitopError::NotBiContinuous { .. }) => {}
            Err(e) => panic!("{f:?}: {e}"),
        }
    }
    assert!(checked > 0);
}

#[test]
fn psi_on_c3_powers() {
    for n in 1..=3 {
        let r = psi_roundtrip(C3Power::new(n).unwrap().algebra()).unwrap();
        assert!(r.passed(), "n = {n}");
        assert_eq!(r.points, 2 * n);
        assert_eq!(r.composite_iso, Some(true));
    }
}

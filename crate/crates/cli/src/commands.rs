use std::path::Path;

use crdsa_core::bitop::{
    check_crdsa_base, check_morphism, pairwise_properties, point_map_from_json, points_of,
    spectrum as build_spectrum,
};
use crdsa_core::crdsa::{
    boolean_center_embed, center as center_of, decomposition_check, dense_core,
    enumerate_crdsa_subalgebras, subalgebra_report_json,
};
use crdsa_core::{
    validate_crdsa, BitopError, BitopSpace, C3Power, CrdsaError, CrdsaInstance,
    DistributivityWitness, ElementSet, Term,
};
use serde_json::{json, Value};

use crate::fixtures::{carrier_cap, read, Fixture, Loaded};
use crate::{CliError, Output};

fn names(src: &Loaded, set: &ElementSet) -> Vec<String> {
    set.iter().map(|e| src.name(e)).collect()
}

pub fn subalgebras(src: &Loaded, crdsa_only: bool) -> Result<Output, CliError> {
    if crdsa_only {
        let n = match src.fixture {
            Some(Fixture::C3) => 1,
            Some(Fixture::C3Pow(n)) => n,
            _ => {
                return Err(CliError::Usage(
                    "--crdsa-only needs a power of C_3 (--power or --fixture c3pow:<n>)".into(),
                ))
            }
        };
        let subs = enumerate_crdsa_subalgebras(n)?;
        return Ok(Output::pass(subalgebra_report_json(n, &subs)));
    }
    let subs = src.algebra.enumerate_subalgebras(carrier_cap()?)?;
    let lists: Vec<Vec<String>> = subs.iter().map(|s| names(src, s)).collect();
    Ok(Output::pass(
        json!({ "count": subs.len(), "subalgebras": lists }),
    ))
}

pub fn primal(
    src: &Loaded,
    malcev: Option<&str>,
    majority: Option<&str>,
) -> Result<Output, CliError> {
    let parse = |raw: &str| {
        raw.parse::<Term>()
            .map_err(|e| CliError::Usage(format!("term `{raw}`: {e}")))
    };
    let defaults = src.fixture.and_then(Fixture::primality_witnesses);
    let m = match (malcev, &defaults) {
        (Some(raw), _) => parse(raw)?,
        (None, Some((m, _))) => m.clone(),
        (None, None) => return Err(CliError::Usage("this algebra needs --malcev".into())),
    };
    let d = match (majority, defaults) {
        (Some(raw), _) => DistributivityWitness::Majority(parse(raw)?),
        (None, Some((_, d))) => d,
        (None, None) => DistributivityWitness::LatticeReduct,
    };
    let report = src.algebra.check_primal(&m, &d, carrier_cap()?)?;
    let mut json = serde_json::to_value(&report).expect("serializable report");
    json["malcev_term"] = json!(m.to_string());
    Ok(Output::verdict(json, report.primal, || {
        primal_failure(src, &report)
    }))
}

pub fn validate(src: &Loaded) -> Result<Output, CliError> {
    let report = validate_crdsa(&src.algebra)?;
    let failed: Vec<String> = report.failed().map(|c| c.axiom.clone()).collect();
    Ok(Output::verdict(
        serde_json::to_value(&report).expect("serializable report"),
        report.passed,
        || format!("axioms fail: {}", failed.join(", ")),
    ))
}

pub fn center(src: &Loaded) -> Result<Output, CliError> {
    let inst = CrdsaInstance::new(src.algebra.clone())?;
    let c = center_of(&inst);
    let d = dense_core(&inst);
    let decomposition = decomposition_check(&inst);
    let json = json!({
        "center": names(src, &c.members),
        "center_size": c.members.len(),
        "dense": names(src, &d.dense),
        "dual_dense": names(src, &d.dual_dense),
        "core": names(src, &d.core),
        "decomposition": decomposition,
    });
    Ok(Output::verdict(json, decomposition.holds(), || {
        format!("decomposition fails at {:?}", decomposition.counterexample)
    }))
}

pub fn show(src: &Loaded) -> Result<Output, CliError> {
    let mut json = src.algebra.to_json_value();
    if let Some(n) = &src.names {
        json["names"] = json!(n);
    }
    Ok(Output::pass(json))
}

/// `⟨B⟩` in `C_3^n` for `B` given as `{0,1}`-words.
pub fn embed(n: usize, words: &[String]) -> Result<Output, CliError> {
    let c = C3Power::new(n)?;
    let mut b = ElementSet::empty(c.algebra().size());
    for w in words {
        b.insert(
            c.parse(w)
                .map_err(|e| CliError::Input(format!("`{w}`: {e}")))?,
        );
    }
    let word = |e| c.vector(e).to_string();
    match boolean_center_embed(&c, &b) {
        Ok((elements, inst)) => {
            let size = center_of(&inst).members.len();
            Ok(Output::pass(json!({
                "n": n,
                "center": b.iter().map(word).collect::<Vec<_>>(),
                "elements": elements.iter().map(word).collect::<Vec<_>>(),
                "iso_class": format!("C3^{}", size.trailing_zeros()),
            })))
        }
        Err(CrdsaError::NotBoolean(why)) => Ok(Output::fail(
            json!({ "n": n, "center": b.iter().map(word).collect::<Vec<_>>(), "error": why }),
            format!("not a Boolean subuniverse: {why}"),
        )),
        Err(e) => Err(e.into()),
    }
}

/// The spectrum as a space document, or with filters and `Φ+` when `details`.
pub fn spectrum(src: &Loaded, details: bool) -> Result<Output, CliError> {
    let sp = build_spectrum(&src.algebra)?;
    if !details {
        return Ok(Output::pass(sp.space.to_json_value()));
    }
    let filters: Vec<Vec<String>> = sp.filters.iter().map(|f| names(src, &f.members)).collect();
    let phi_plus: Vec<Value> = src
        .algebra
        .elements()
        .map(|a| json!({ "element": src.name(a), "points": points_of(sp.phi_plus(a)) }))
        .collect();
    let pairwise = pairwise_properties(&sp.space);
    Ok(Output::pass(json!({
        "filters": filters,
        "phi_plus": phi_plus,
        "pairwise": pairwise,
        "space": sp.space.to_json_value(),
    })))
}

pub fn load_space(path: &Path) -> Result<BitopSpace, CliError> {
    BitopSpace::from_json(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn check_base(space: &Path) -> Result<Output, CliError> {
    let s = load_space(space)?;
    let report = check_crdsa_base(&s);
    let failed = report.failed_conditions();
    let mut json = serde_json::to_value(&report).expect("serializable report");
    json["failed_conditions"] = json!(failed);
    Ok(Output::verdict(json, report.holds(), || {
        if !report.applicable {
            "the space is not pairwise zero-dimensional".to_string()
        } else if failed.is_empty() {
            "the base algebra does not validate".to_string()
        } else {
            format!("conditions {failed:?} fail")
        }
    }))
}

pub fn check_map(space_x: &Path, space_y: &Path, map: &Path) -> Result<Output, CliError> {
    let x = load_space(space_x)?;
    let y = load_space(space_y)?;
    let f = point_map_from_json(&read(map)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", map.display())))?;
    match check_morphism(&f, &x, &y) {
        Ok(report) => {
            let passed = report.is_crdsa_homomorphism();
            let mut json = serde_json::to_value(&report).expect("serializable report");
            json["bicontinuous"] = json!(true);
            json["crdsa_homomorphism"] = json!(passed);
            Ok(Output::verdict(json, passed, || {
                report.boundary_failure.clone().unwrap_or_default()
            }))
        }
        Err(
            e @ (BitopError::NotBiContinuous { .. }
            | BitopError::NotApplicable(_)
            | BitopError::RouteMismatch(_)),
        ) => {
            let bicontinuous = !matches!(e, BitopError::NotBiContinuous { .. });
            Ok(Output::fail(
                json!({
                    "bicontinuous": bicontinuous,
                    "crdsa_homomorphism": false,
                    "error": e.to_string(),
                }),
                e.to_string(),
            ))
        }
        Err(e) => Err(e.into()),
    }
}

fn primal_failure(src: &Loaded, r: &crdsa_core::PrimalityReport) -> String {
    if let Some(sub) = &r.proper_subalgebra {
        let sub: Vec<String> = sub.iter().map(|&e| src.name(e)).collect();
        format!(
            "condition (1) fails: proper subuniverse {{{}}}",
            sub.join(", ")
        )
    } else if let Some(theta) = &r.nontrivial_congruence {
        format!("condition (2) fails: congruence {theta}")
    } else if let Some(a) = &r.nontrivial_automorphism {
        format!("condition (3) fails: automorphism {a:?}")
    } else if let Some((x, y)) = r.malcev_counterexample {
        format!("condition (4) fails: Mal'cev identities at ({x}, {y})")
    } else {
        format!("condition (4) fails: {}", r.distributive_route)
    }
}

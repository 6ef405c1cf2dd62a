use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use crdsa_core::bitop::{
    base_lattice, check_crdsa_base, check_morphism, induced_point_map, pairwise_properties,
    phi_plus_iso_check, points_of, prime_filters_brute, prime_filters_join_irreducible,
    psi_roundtrip, spectrum, BRUTE_FORCE_LIMIT,
};
use crdsa_core::crdsa::{
    boolean_center_embed, boolean_subuniverses, center, decomposition_check,
    enumerate_crdsa_subalgebras, iso_via_centers, subdirect_embedding,
};
use crdsa_core::finalg::{ring_majority_term, ring_malcev_term, z3};
use crdsa_core::ternary::{alpha, alpha_inverse};
use crdsa_core::{
    c3_malcev_term, validate_crdsa, C3Power, DistributivityWitness, NodeSet, TernaryPartition,
    TernaryVector,
};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::fixtures::carrier_cap;
use crate::CliError;

pub const TOOL: &str = "crdsa";
pub const MIN_N: usize = 1;
pub const MAX_N: usize = 3;

/// Subalgebra counts of `C_3^n` (equivalently, Boolean subuniverses of
/// `C_2^n`) for `n = 1, 2, 3`.
const SUBALGEBRA_COUNTS: [usize; 3] = [1, 2, 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    /// Library operation the check exercises.
    pub operation: String,
    pub inputs: String,
    /// SHA-256 of `inputs`.
    pub inputs_digest: String,
    pub verdict: Verdict,
    pub witness: Value,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub max_n: usize,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    /// SHA-256 of the report with every `wall_time_ms` removed.
    pub determinism_hash: String,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// The report as JSON without timings or the hash itself.
pub fn timing_free(report: &VerificationReport) -> Value {
    let mut v = serde_json::to_value(report).expect("serializable report");
    let obj = v.as_object_mut().expect("object");
    obj.remove("determinism_hash");
    if let Some(Value::Array(checks)) = obj.get_mut("checks") {
        for c in checks {
            c.as_object_mut().expect("object").remove("wall_time_ms");
        }
    }
    v
}

type Run = Box<dyn Fn() -> Result<Value, Value>>;

struct Check {
    id: String,
    anchor: &'static str,
    operation: &'static str,
    inputs: String,
    run: Run,
}

fn check(
    id: impl Into<String>,
    anchor: &'static str,
    operation: &'static str,
    inputs: impl Into<String>,
    run: impl Fn() -> Result<Value, Value> + 'static,
) -> Check {
    Check {
        id: id.into(),
        anchor,
        operation,
        inputs: inputs.into(),
        run: Box::new(run),
    }
}

fn ensure(cond: bool, witness: impl FnOnce() -> Value) -> Result<(), Value> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn err<E: std::fmt::Display>(e: E) -> Value {
    json!({ "error": e.to_string() })
}

fn power(n: usize) -> Result<C3Power, Value> {
    C3Power::new(n).map_err(err)
}

fn primality_checks(cap: usize) -> Vec<Check> {
    let mut out = vec![check(
        "finalg.primal.c3",
        "C_3 is primal",
        "FiniteAlgebra::check_primal",
        format!(
            "fixture=c3;malcev={};distributivity=lattice",
            c3_malcev_term()
        ),
        move || {
            let c = power(1)?;
            let r = c
                .algebra()
                .check_primal(
                    &c3_malcev_term(),
                    &DistributivityWitness::LatticeReduct,
                    cap,
                )
                .map_err(err)?;
            let w = serde_json::to_value(&r).expect("serializable");
            ensure(r.primal, || w.clone())?;
            Ok(json!({ "primal": true }))
        },
    )];
    out.push(check(
        "finalg.malcev.c3",
        "Mal'cev identities for C_3",
        "Term::eval",
        format!("fixture=c3;malcev={}", c3_malcev_term()),
        || {
            let c = power(1)?;
            let m = c3_malcev_term();
            let mut triples = 0;
            for x in 0..3 {
                for y in 0..3 {
                    for z in 0..3 {
                        let v = m.eval(c.algebra(), &[x, y, z]).map_err(err)?;
                        ensure(
                            y != z || v == x,
                            || json!({ "triple": [x, y, z], "value": v }),
                        )?;
                        ensure(
                            x != y || v == z,
                            || json!({ "triple": [x, y, z], "value": v }),
                        )?;
                        triples += 1;
                    }
                }
            }
            Ok(json!({ "triples": triples }))
        },
    ));
    out.push(check(
        "finalg.primal.z3",
        "Z_3 is primal",
        "FiniteAlgebra::check_primal",
        format!(
            "fixture=z3;malcev={};majority={}",
            ring_malcev_term(),
            ring_majority_term()
        ),
        move || {
            let r = z3()
                .check_primal(
                    &ring_malcev_term(),
                    &DistributivityWitness::Majority(ring_majority_term()),
                    cap,
                )
                .map_err(err)?;
            let w = serde_json::to_value(&r).expect("serializable");
            ensure(r.primal, || w.clone())?;
            Ok(json!({ "primal": true }))
        },
    ));
    out.push(check(
        "finalg.primal.c3_without_k",
        "C_3 without k has a proper subalgebra",
        "FiniteAlgebra::check_primal",
        format!("fixture=c3;without=k;malcev={}", c3_malcev_term()),
        move || {
            let c = power(1)?;
            let alg = c.algebra().without("k").map_err(err)?;
            let r = alg
                .check_primal(
                    &c3_malcev_term(),
                    &DistributivityWitness::LatticeReduct,
                    cap,
                )
                .map_err(err)?;
            let zero_one = vec![0, 2];
            ensure(
                !r.no_proper_subalgebras && r.proper_subalgebra.as_ref() == Some(&zero_one),
                || json!({ "proper_subalgebra": r.proper_subalgebra }),
            )?;
            Ok(json!({ "proper_subalgebra": ["0", "1"] }))
        },
    ));
    out.push(check(
        "finalg.simple.c3",
        "C_3 is simple",
        "FiniteAlgebra::congruence_generated",
        "fixture=c3",
        || {
            let c = power(1)?;
            for a in 0..3 {
                for b in 0..3 {
                    let cg = c.algebra().congruence_generated(&[(a, b)]);
                    ensure(
                        a == b || cg.is_total(),
                        || json!({ "pair": [a, b], "cg": cg.to_string() }),
                    )?;
                }
            }
            Ok(json!({ "pairs": 6 }))
        },
    ));
    out
}

fn congruence_check() -> Check {
    check(
        "finalg.congruences.c3pow2",
        "Con(C_3^2) has four elements",
        "FiniteAlgebra::congruences",
        "fixture=c3pow:2",
        || {
            let c = power(2)?;
            let con = c.algebra().congruences();
            let blocks: Vec<usize> = con.iter().map(|t| t.num_blocks()).collect();
            ensure(con.len() == 4, || json!({ "count": con.len() }))?;
            Ok(json!({ "count": 4, "blocks": blocks }))
        },
    )
}

fn per_n_checks(n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check(
        format!("ternary.alpha.n{n}"),
        "alpha is an isomorphism from NS_J onto C_3^J",
        "ternary::alpha",
        format!("nodes={n}"),
        move || {
            let nodes = Arc::new(NodeSet::numbered(n).map_err(err)?);
            let parts = TernaryPartition::all(Arc::clone(&nodes), 12).map_err(err)?;
            let vecs: Vec<TernaryVector> = parts.iter().map(alpha).collect();
            let mut idx: Vec<usize> = vecs.iter().map(TernaryVector::index).collect();
            idx.sort_unstable();
            idx.dedup();
            ensure(
                idx.len() == 3usize.pow(n as u32),
                || json!({ "distinct": idx.len() }),
            )?;
            for (p, v) in parts.iter().zip(&vecs) {
                let back = alpha_inverse(Arc::clone(&nodes), v).map_err(err)?;
                ensure(&back == p, || json!({ "inverse_fails_at": v.to_string() }))?;
                ensure(
                    alpha(&p.pseudocomplement()) == v.star(),
                    || json!({ "star": v.to_string() }),
                )?;
                ensure(
                    alpha(&p.dual_pseudocomplement()) == v.plus(),
                    || json!({ "plus": v.to_string() }),
                )?;
                for (q, w) in parts.iter().zip(&vecs) {
                    let at = || json!({ "pair": [v.to_string(), w.to_string()] });
                    ensure(p.leq(q).map_err(err)? == v.leq(w), at)?;
                    ensure(alpha(&p.join(q).map_err(err)?) == v.join(w), at)?;
                    ensure(alpha(&p.meet(q).map_err(err)?) == v.meet(w), at)?;
                }
            }
            Ok(json!({ "elements": parts.len() }))
        },
    ));
    out.push(check(
        format!("crdsa.validate.n{n}"),
        "C_3^n satisfies the CRDSA axioms with a single core element",
        "crdsa::validate_crdsa",
        format!("fixture=c3pow:{n}"),
        move || {
            let c = power(n)?;
            let r = validate_crdsa(c.algebra()).map_err(err)?;
            let failed: Vec<String> = r.failed().map(|a| a.axiom.clone()).collect();
            ensure(
                r.passed && r.core.len() == 1,
                || json!({ "failed": failed, "core": r.core }),
            )?;
            Ok(json!({ "axioms": r.checks.len(), "core": c.vector(r.core[0]).to_string() }))
        },
    ));
    out.push(check(
        format!("crdsa.boolean_centers.n{n}"),
        "every Boolean subuniverse B is the center of <B>",
        "crdsa::boolean_center_embed",
        format!("fixture=c3pow:{n}"),
        move || {
            let c = power(n)?;
            let bs = boolean_subuniverses(&c);
            let expected = SUBALGEBRA_COUNTS[n - 1];
            ensure(
                bs.len() == expected,
                || json!({ "count": bs.len(), "expected": expected }),
            )?;
            for b in &bs {
                let (_, inst) = boolean_center_embed(&c, b).map_err(err)?;
                let names = inst.names().expect("named");
                let mut got: Vec<String> = center(&inst)
                    .members
                    .iter()
                    .map(|e| names[e].to_string())
                    .collect();
                let mut want: Vec<String> = b.iter().map(|e| c.vector(e).to_string()).collect();
                got.sort();
                want.sort();
                ensure(got == want, || json!({ "b": want, "center": got }))?;
            }
            Ok(json!({ "count": bs.len() }))
        },
    ));
    out.push(check(
        format!("crdsa.subalgebras.n{n}"),
        "every subalgebra of C_3^n is isomorphic to some C_3^k",
        "crdsa::enumerate_crdsa_subalgebras",
        format!("fixture=c3pow:{n}"),
        move || {
            let c = power(n)?;
            let subs = enumerate_crdsa_subalgebras(n).map_err(err)?;
            let expected = SUBALGEBRA_COUNTS[n - 1];
            ensure(
                subs.len() == expected,
                || json!({ "count": subs.len(), "expected": expected }),
            )?;
            let generic = c
                .algebra()
                .enumerate_subalgebras(carrier_cap().map_err(err)?)
                .map_err(err)?;
            let ours: Vec<_> = subs.iter().map(|s| s.elements.clone()).collect();
            ensure(
                generic == ours,
                || json!({ "generic_count": generic.len() }),
            )?;
            let mut classes = Vec::new();
            for s in &subs {
                let model = power(s.rank)?;
                let iso = s
                    .instance
                    .algebra()
                    .is_isomorphic(model.algebra())
                    .map_err(err)?;
                ensure(
                    iso.is_some(),
                    || json!({ "size": s.elements.len(), "rank": s.rank }),
                )?;
                classes.push(format!("C3^{}", s.rank));
            }
            Ok(json!({ "count": subs.len(), "iso_classes": classes }))
        },
    ));
    out.push(check(
        format!("crdsa.decomposition.n{n}"),
        "x = x** ∧ (x++ ∨ k) = x++ ∨ (x** ∧ k), and C(A) ∪ {k} generates A as a lattice",
        "crdsa::decomposition_check",
        format!("fixture=c3pow:{n}"),
        move || {
            let c = power(n)?;
            let r = decomposition_check(&c.instance());
            let w = serde_json::to_value(&r).expect("serializable");
            ensure(r.holds(), || w.clone())?;
            Ok(json!({ "elements": c.algebra().size() }))
        },
    ));
    out.push(check(
        format!("bitop.spectrum.n{n}"),
        "pf(C_3^n) has 2n points and is a pairwise Stone space",
        "bitop::spectrum",
        format!("fixture=c3pow:{n}"),
        move || {
            let c = power(n)?;
            let ji = prime_filters_join_irreducible(c.algebra()).map_err(err)?;
            if c.algebra().size() <= BRUTE_FORCE_LIMIT {
                let brute = prime_filters_brute(c.algebra()).map_err(err)?;
                ensure(
                    brute == ji,
                    || json!({ "brute": brute.len(), "join_irreducible": ji.len() }),
                )?;
            }
            let sp = spectrum(c.algebra()).map_err(err)?;
            ensure(sp.points() == 2 * n, || json!({ "points": sp.points() }))?;
            let p = pairwise_properties(&sp.space);
            let w = serde_json::to_value(&p).expect("serializable");
            ensure(p.stone && p.compactness_agrees(), || w.clone())?;
            Ok(json!({ "points": sp.points(), "stone": true }))
        },
    ));
    out.push(check(
        format!("bitop.base.n{n}"),
        "the six base conditions hold on pf(C_3^n)",
        "bitop::check_crdsa_base",
        format!("fixture=c3pow:{n}"),
        move || {
            let c = power(n)?;
            let sp = spectrum(c.algebra()).map_err(err)?;
            let r = check_crdsa_base(&sp.space);
            ensure(
                r.holds(),
                || json!({ "failed_conditions": r.failed_conditions() }),
            )?;
            ensure(
                r.double_star_is_closure == Some(true)
                    && r.complements_transfer == Some(true)
                    && r.density_by_boundary == Some(true),
                || {
                    json!({ "double_star_is_closure": r.double_star_is_closure,
                           "complements_transfer": r.complements_transfer,
                           "density_by_boundary": r.density_by_boundary })
                },
            )?;
            Ok(json!({ "base_size": r.base1.len(), "core": points_of(r.core[0]) }))
        },
    ));
    out.push(check(
        format!("bitop.phi_iso.n{n}"),
        "Φ+ is a CRDSA isomorphism onto the base algebra",
        "bitop::phi_plus_iso_check",
        format!("fixture=c3pow:{n}"),
        move || {
            let c = power(n)?;
            let r = phi_plus_iso_check(&c.instance()).map_err(err)?;
            ensure(r.passed, || json!({ "violation": r.violation }))?;
            Ok(json!({ "points": r.points }))
        },
    ));
    out.push(check(
        format!("bitop.morphism.identity.n{n}"),
        "the identity of pf(C_3^n) induces a CRDSA homomorphism",
        "bitop::check_morphism",
        format!("fixture=c3pow:{n};map=identity"),
        move || {
            let c = power(n)?;
            let sp = spectrum(c.algebra()).map_err(err)?;
            let id: Vec<usize> = (0..sp.points()).collect();
            let r = check_morphism(&id, &sp.space, &sp.space).map_err(err)?;
            ensure(r.is_crdsa_homomorphism() && r.direct_holds, || {
                json!({ "boundary_failure": r.boundary_failure, "direct_failure": r.direct_failure })
            })?;
            Ok(json!({ "points": sp.points() }))
        },
    ));
    out.push(check(
        format!("bitop.psi.n{n}"),
        "Ψ is a bi-homeomorphism onto the double dual",
        "bitop::psi_roundtrip",
        format!("fixture=c3pow:{n}"),
        move || {
            let c = power(n)?;
            let r = psi_roundtrip(c.algebra()).map_err(err)?;
            ensure(r.passed() && r.composite_iso == Some(true), || {
                json!({ "bijective": r.bijective, "bi_homeomorphism": r.bi_homeomorphism,
                        "phi_inverse_identity": r.phi_inverse_identity,
                        "composite_iso": r.composite_iso })
            })?;
            Ok(json!({ "psi": r.psi }))
        },
    ));
    out
}

fn top_checks(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check(
        format!("crdsa.subdirect.n{max_n}"),
        "every subalgebra of C_3^n is a subdirect product of copies of C_3",
        "crdsa::subdirect_embedding",
        format!("fixture=c3pow:{max_n};subalgebras=all"),
        move || {
            let mut factors = Vec::new();
            for s in enumerate_crdsa_subalgebras(max_n).map_err(err)? {
                let r = subdirect_embedding(s.instance.algebra()).map_err(err)?;
                ensure(
                    r.is_subdirect(),
                    || json!({ "size": s.elements.len(), "injective": r.injective }),
                )?;
                factors.push(r.factors());
            }
            Ok(json!({ "factors": factors }))
        },
    ));
    out.push(check(
        format!("crdsa.iso_via_centers.n{max_n}"),
        "two subalgebras are isomorphic iff their centers are",
        "crdsa::iso_via_centers",
        format!("fixture=c3pow:{max_n};pairs=unordered"),
        move || {
            let subs = enumerate_crdsa_subalgebras(max_n).map_err(err)?;
            let mut pairs = 0;
            for i in 0..subs.len() {
                for j in i..subs.len() {
                    let (a, b) = (&subs[i].instance, &subs[j].instance);
                    let by_centers = iso_via_centers(a, b).map_err(err)?;
                    let brute = a
                        .algebra()
                        .is_isomorphic(b.algebra())
                        .map_err(err)?
                        .is_some();
                    ensure(
                        by_centers == brute,
                        || json!({ "pair": [i, j], "by_centers": by_centers }),
                    )?;
                    pairs += 1;
                }
            }
            Ok(json!({ "pairs": pairs }))
        },
    ));
    out.push(check(
        "bitop.base.c2",
        "the two-element chain fails only the core condition",
        "bitop::check_crdsa_base",
        "lattice=chain:2",
        || {
            let (l, _) = base_lattice(&[0, 1]).map_err(err)?;
            let sp = spectrum(&l).map_err(err)?;
            let failed = check_crdsa_base(&sp.space).failed_conditions();
            ensure(failed == [6], || json!({ "failed_conditions": failed }))?;
            Ok(json!({ "failed_conditions": failed }))
        },
    ));
    out.push(check(
        format!("bitop.morphism.induced.n{max_n}"),
        "homomorphisms C_3^a → C_3^b induce maps passing the boundary conditions",
        "bitop::check_morphism",
        format!("fixtures=c3pow:1..{max_n};maps=induced"),
        move || {
            let mut maps = 0;
            for a in 1..=max_n {
                for b in 1..=max_n {
                    let (la, lb) = (power(a)?, power(b)?);
                    let xa = spectrum(la.algebra()).map_err(err)?;
                    let xb = spectrum(lb.algebra()).map_err(err)?;
                    for h in la.algebra().homomorphisms(lb.algebra()).map_err(err)? {
                        let f = induced_point_map(&h, &xa, &xb).map_err(err)?;
                        let r = check_morphism(&f, &xb.space, &xa.space).map_err(err)?;
                        ensure(
                            r.is_crdsa_homomorphism() && r.direct_holds,
                            || json!({ "from": a, "to": b, "hom": h, "map": f }),
                        )?;
                        maps += 1;
                    }
                }
            }
            Ok(json!({ "maps": maps }))
        },
    ));
    out.push(check(
        "bitop.morphism.constant_c3",
        "a bi-continuous constant map on pf(C_3) fails the Bd_2 containment",
        "bitop::check_morphism",
        "fixture=c3;map=[1,1]",
        || {
            let sp = spectrum(power(1)?.algebra()).map_err(err)?;
            let r = check_morphism(&[1, 1], &sp.space, &sp.space).map_err(err)?;
            let why = r.boundary_failure.clone().unwrap_or_default();
            ensure(
                !r.is_crdsa_homomorphism() && !r.direct_holds && why.starts_with("Bd_2"),
                || json!({ "boundary_failure": r.boundary_failure, "direct_holds": r.direct_holds }),
            )?;
            Ok(json!({ "boundary_failure": why }))
        },
    ));
    out
}

fn checks(max_n: usize, cap: usize) -> Vec<Check> {
    let mut out = primality_checks(cap);
    if max_n >= 2 {
        out.push(congruence_check());
    }
    for n in 1..=max_n {
        out.extend(per_n_checks(n));
    }
    out.extend(top_checks(max_n));
    out
}

fn run_check(c: &Check) -> CheckRecord {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)())).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(json!({ "panic": msg }))
    });
    let wall_time_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    let (verdict, witness) = match outcome {
        Ok(w) => (Verdict::Pass, w),
        Err(w) => (Verdict::Fail, w),
    };
    CheckRecord {
        id: c.id.clone(),
        anchor: c.anchor.to_string(),
        operation: c.operation.to_string(),
        inputs_digest: sha256_hex(c.inputs.as_bytes()),
        inputs: c.inputs.clone(),
        verdict,
        witness,
        wall_time_ms,
    }
}

/// Runs every check for `C_3^n` with `n ≤ max_n`.
pub fn build_report(max_n: usize) -> Result<VerificationReport, CliError> {
    if !(MIN_N..=MAX_N).contains(&max_n) {
        return Err(CliError::Usage(format!(
            "--max-n must be in {MIN_N}..={MAX_N}, got {max_n}"
        )));
    }
    let cap = carrier_cap()?;
    let records: Vec<CheckRecord> = checks(max_n, cap).iter().map(run_check).collect();
    let failed = records
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .count();
    let mut report = VerificationReport {
        tool: TOOL.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        max_n,
        passed: records.len() - failed,
        failed,
        checks: records,
        determinism_hash: String::new(),
    };
    let canonical = serde_json::to_vec(&timing_free(&report)).expect("serializable report");
    report.determinism_hash = sha256_hex(&canonical);
    Ok(report)
}

/// Builds the report and writes it to `out` (or returns it for stdout).
pub fn run_suite(max_n: usize, out: Option<&Path>) -> Result<VerificationReport, CliError> {
    let report = build_report(max_n)?;
    if let Some(path) = out {
        fs::write(path, report.to_json() + "\n")
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

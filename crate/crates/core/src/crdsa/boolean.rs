use serde_json::{json, Value};

use super::structure::center;
use super::{BooleanInstance, C3Power, CrdsaError, CrdsaInstance, MAX_ENUMERATION_POWER};
use crate::finalg::{Elem, ElementSet};
use crate::ternary::{TernaryVector, Trit};

/// `⟨B⟩ = {x ∈ C_3^n | x* ∈ B and x+ ∈ B}` for a Boolean subuniverse `B` of
/// the `{0,1}`-vectors.
///
/// `b` is a subset of the `C_3^n` carrier. The result is the subset and the
/// CRDSA it carries, whose center is exactly `B`.
pub fn boolean_center_embed(
    ambient: &C3Power,
    b: &ElementSet,
) -> Result<(ElementSet, CrdsaInstance), CrdsaError> {
    let inst = ambient.instance();
    let ops = inst.ops();
    if b.carrier() != ambient.algebra().size() {
        return Err(CrdsaError::NotBoolean(
            "subset of a different carrier".into(),
        ));
    }
    if let Some(x) = b.iter().find(|&x| !ambient.vector(x).is_boolean()) {
        return Err(CrdsaError::NotBoolean(format!(
            "{} is not a {{0,1}}-vector",
            ambient.vector(x)
        )));
    }
    if !b.contains(ops.zero) || !b.contains(ops.one) {
        return Err(CrdsaError::NotBoolean("missing a bound".into()));
    }
    for x in b.iter() {
        if !b.contains(ops.star(x)) {
            return Err(CrdsaError::NotBoolean(format!(
                "not closed under complement at {}",
                ambient.vector(x)
            )));
        }
        for y in b.iter() {
            if !b.contains(ops.join(x, y)) || !b.contains(ops.meet(x, y)) {
                return Err(CrdsaError::NotBoolean(format!(
                    "not closed under join/meet at {}, {}",
                    ambient.vector(x),
                    ambient.vector(y)
                )));
            }
        }
    }
    let members = ElementSet::from_elems(
        b.carrier(),
        ambient
            .algebra()
            .elements()
            .filter(|&x| b.contains(ops.star(x)) && b.contains(ops.plus(x))),
    );
    let sub = inst.subalgebra(&members)?;
    Ok((members, sub))
}

/// `{(b ∧ a) ∨ (c ∧ a') | b, c ∈ B}`, the Boolean subuniverse generated by
/// `B ∪ {a}` when `B` is a Boolean subuniverse.
pub fn boolean_extend(ambient: &BooleanInstance, b: &ElementSet, a: Elem) -> ElementSet {
    let not_a = ambient.op("compl", &[a]);
    let mut out = ElementSet::empty(ambient.size());
    for x in b.iter() {
        let left = ambient.op("meet", &[x, a]);
        for y in b.iter() {
            let right = ambient.op("meet", &[y, not_a]);
            out.insert(ambient.op("join", &[left, right]));
        }
    }
    out
}

/// Set partitions of `{0, .., n-1}` via restricted growth strings, blocks in
/// order of their least element.
pub fn coordinate_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if rgs.len() == n {
            let mut blocks = vec![Vec::new(); max];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            rgs.push(b);
            grow(n, rgs, max.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        grow(n, &mut Vec::new(), 0, &mut out);
    }
    out
}

/// All Boolean subuniverses of the `{0,1}`-vectors of `C_3^n`, as subsets of
/// the `C_3^n` carrier in canonical order.
///
/// Each comes from a partition of the coordinates: starting at `{0, 1}`, the
/// block indicator vectors (the atoms) are adjoined one at a time with
/// [`boolean_extend`].
pub fn boolean_subuniverses(ambient: &C3Power) -> Vec<ElementSet> {
    let inst = ambient.instance();
    let cen = center(&inst);
    let boolean = &cen.boolean;
    let local = |word: &TernaryVector| {
        let e = ambient.element(word);
        cen.embedding
            .binary_search(&e)
            .expect("Boolean vectors are central")
    };
    let n = ambient.n();
    let mut out: Vec<ElementSet> = coordinate_partitions(n)
        .into_iter()
        .map(|blocks| {
            let zero = boolean.op("zero", &[]);
            let one = boolean.op("one", &[]);
            let mut b = ElementSet::from_elems(boolean.size(), [zero, one]);
            for block in blocks {
                let mut word = vec![Trit::Zero; n];
                for i in block {
                    word[i] = Trit::One;
                }
                b = boolean_extend(boolean, &b, local(&TernaryVector::new(word)));
            }
            ElementSet::from_elems(ambient.algebra().size(), b.iter().map(|i| cen.embedding[i]))
        })
        .collect();
    out.sort();
    out
}

/// One subalgebra of `C_3^n` together with its center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrdsaSubalgebra {
    pub elements: ElementSet,
    pub center: ElementSet,
    /// `k` with `|center| = 2^k`; the subalgebra is isomorphic to `C_3^k`.
    pub rank: usize,
    pub instance: CrdsaInstance,
}

/// Every subalgebra of `C_3^n`: each Boolean subuniverse `B` of the
/// `{0,1}`-vectors yields `⟨B⟩`.
///
/// `⟨B⟩` is computed twice, once by filtering on `x*, x+ ∈ B` and once as the
/// `{join, meet}` closure of `B ∪ {k}`; the two must agree.
pub fn enumerate_crdsa_subalgebras(n: usize) -> Result<Vec<CrdsaSubalgebra>, CrdsaError> {
    if n > MAX_ENUMERATION_POWER {
        return Err(CrdsaError::PowerCap {
            n,
            cap: MAX_ENUMERATION_POWER,
        });
    }
    let ambient = C3Power::new(n)?;
    let lattice = ambient.algebra().reduct(&["join", "meet"])?;
    let k = ambient.algebra().constant("k")?;
    let mut out = Vec::new();
    for b in boolean_subuniverses(&ambient) {
        let (elements, instance) = boolean_center_embed(&ambient, &b)?;
        let mut gens = b.clone();
        gens.insert(k);
        let generated = lattice.subalgebra_closure(&gens);
        if generated != elements {
            return Err(CrdsaError::RouteMismatch(format!(
                "lattice closure of B ∪ {{k}} has {} elements, filter gives {}",
                generated.len(),
                elements.len()
            )));
        }
        let rank = b.len().trailing_zeros() as usize;
        out.push(CrdsaSubalgebra {
            elements,
            center: b,
            rank,
            instance,
        });
    }
    out.sort_by(|x, y| x.elements.cmp(&y.elements));
    Ok(out)
}

/// `{"n":3,"count":5,"subalgebras":[{"elements":[..],"iso_class":"C3^2"},..]}`
pub fn subalgebra_report_json(n: usize, subs: &[CrdsaSubalgebra]) -> Value {
    let items: Vec<Value> = subs
        .iter()
        .map(|s| {
            let words: Vec<String> = s
                .elements
                .iter()
                .map(|e| TernaryVector::from_index(n, e).to_string())
                .collect();
            json!({ "elements": words, "iso_class": format!("C3^{}", s.rank) })
        })
        .collect();
    json!({ "n": n, "count": subs.len(), "subalgebras": items })
}

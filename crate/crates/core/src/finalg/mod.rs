//! A small engine for finite algebras given by full operation tables.
//!
//! Everything here is exhaustive: closure, congruence generation and
//! homomorphism search all work directly on the tables, which keeps the
//! results auditable for the carrier sizes used in this crate (at most a
//! few hundred elements).

mod congruence;
mod morphism;
mod primal;
mod set;
mod subalgebra;
mod term;

use serde_json::{json, Value};
use thiserror::Error;

pub use congruence::{PartitionRelation, SimplicityReport};
pub use primal::{ring_majority_term, ring_malcev_term, DistributivityWitness, PrimalityReport};
pub use set::ElementSet;
pub use term::Term;

/// Carrier elements are indices `0..m`.
pub type Elem = usize;

/// Default cap on carrier size for the exhaustive searches.
pub const DEFAULT_CARRIER_CAP: usize = 81;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinalgError {
    #[error("carrier must be nonempty")]
    EmptyCarrier,
    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{symbol}` has arity {expected} but was given {found} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("table for `{symbol}` has {found} entries, expected {expected}")]
    TableSize {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("table for `{symbol}` contains {value}, outside the carrier of size {carrier}")]
    TableValue {
        symbol: String,
        value: usize,
        carrier: usize,
    },
    #[error("element {0} is outside the carrier")]
    ElementOutOfRange(usize),
    #[error("variable v{var} is not bound (assignment has {len} values)")]
    UnboundVariable { var: usize, len: usize },
    #[error("term uses v{var} but only {arity} variables are allowed")]
    TermArity { var: usize, arity: usize },
    #[error("term syntax: {0}")]
    TermSyntax(String),
    #[error("algebras have different signatures")]
    SignatureMismatch,
    #[error("carrier size {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("subset is not closed under `{0}`")]
    NotClosed(String),
    #[error("malformed algebra JSON: {0}")]
    Json(String),
}

/// Ordered operation symbols with their arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<I, S>(symbols: I) -> Result<Self, FinalgError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<(String, usize)> = Vec::new();
        for (name, arity) in symbols {
            let name = name.into();
            if out.iter().any(|(n, _)| *n == name) {
                return Err(FinalgError::DuplicateSymbol(name));
            }
            out.push((name, arity));
        }
        Ok(Signature { symbols: out })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(n, _)| n == name)
    }

    pub fn arity(&self, index: usize) -> usize {
        self.symbols[index].1
    }

    pub fn name(&self, index: usize) -> &str {
        &self.symbols[index].0
    }

    pub fn contains(&self, name: &str, arity: usize) -> bool {
        self.symbols.iter().any(|(n, a)| n == name && *a == arity)
    }
}

/// A finite algebra on `{0, .., m-1}`.
///
/// Table entries are stored row-major with the first argument most
/// significant, so `f(a, b)` lives at `a * m + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    size: usize,
    signature: Signature,
    tables: Vec<Vec<Elem>>,
}

impl FiniteAlgebra {
    pub fn new(
        size: usize,
        signature: Signature,
        tables: Vec<Vec<Elem>>,
    ) -> Result<Self, FinalgError> {
        if size == 0 {
            return Err(FinalgError::EmptyCarrier);
        }
        if tables.len() != signature.len() {
            return Err(FinalgError::Json(format!(
                "{} tables for {} symbols",
                tables.len(),
                signature.len()
            )));
        }
        for ((name, arity), table) in signature.iter().zip(&tables) {
            let expected = size.pow(arity as u32);
            if table.len() != expected {
                return Err(FinalgError::TableSize {
                    symbol: name.to_string(),
                    expected,
                    found: table.len(),
                });
            }
            if let Some(&value) = table.iter().find(|&&v| v >= size) {
                return Err(FinalgError::TableValue {
                    symbol: name.to_string(),
                    value,
                    carrier: size,
                });
            }
        }
        Ok(FiniteAlgebra {
            size,
            signature,
            tables,
        })
    }

    /// Builds every table by evaluating `f(symbol, args)` on all argument
    /// tuples.
    pub fn from_fn<F>(size: usize, signature: Signature, mut f: F) -> Result<Self, FinalgError>
    where
        F: FnMut(&str, &[Elem]) -> Elem,
    {
        let tables = signature
            .iter()
            .map(|(name, arity)| {
                let mut table = Vec::with_capacity(size.pow(arity as u32));
                for_each_tuple(size, arity, |args| table.push(f(name, args)));
                table
            })
            .collect();
        Self::new(size, signature, tables)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn symbol(&self, name: &str) -> Result<usize, FinalgError> {
        self.signature
            .index_of(name)
            .ok_or_else(|| FinalgError::UnknownSymbol(name.to_string()))
    }

    /// Applies operation `op` (by index) without bounds checks beyond debug.
    #[inline]
    pub fn apply(&self, op: usize, args: &[Elem]) -> Elem {
        debug_assert_eq!(args.len(), self.signature.arity(op));
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.tables[op][idx]
    }

    pub fn apply_named(&self, name: &str, args: &[Elem]) -> Result<Elem, FinalgError> {
        let op = self.symbol(name)?;
        let arity = self.signature.arity(op);
        if arity != args.len() {
            return Err(FinalgError::ArityMismatch {
                symbol: name.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.size) {
            return Err(FinalgError::ElementOutOfRange(bad));
        }
        Ok(self.apply(op, args))
    }

    /// Value of the constant `name`.
    pub fn constant(&self, name: &str) -> Result<Elem, FinalgError> {
        self.apply_named(name, &[])
    }

    pub fn unary(&self, name: &str) -> Result<Vec<Elem>, FinalgError> {
        let op = self.symbol(name)?;
        match self.signature.arity(op) {
            1 => Ok(self.tables[op].clone()),
            found => Err(FinalgError::ArityMismatch {
                symbol: name.to_string(),
                expected: 1,
                found,
            }),
        }
    }

    pub fn table(&self, op: usize) -> &[Elem] {
        &self.tables[op]
    }

    /// Keeps only the named operations, in the given order.
    pub fn reduct(&self, names: &[&str]) -> Result<FiniteAlgebra, FinalgError> {
        let mut symbols = Vec::new();
        let mut tables = Vec::new();
        for &name in names {
            let op = self.symbol(name)?;
            symbols.push((name.to_string(), self.signature.arity(op)));
            tables.push(self.tables[op].clone());
        }
        FiniteAlgebra::new(self.size, Signature::new(symbols)?, tables)
    }

    /// Drops one operation symbol.
    pub fn without(&self, name: &str) -> Result<FiniteAlgebra, FinalgError> {
        let op = self.symbol(name)?;
        let keep: Vec<&str> = self
            .signature
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != op)
            .map(|(_, (n, _))| n)
            .collect();
        self.reduct(&keep)
    }

    /// The subalgebra on a closed subset, elements renumbered in increasing
    /// order. Returns the algebra and the embedding into `self`.
    pub fn subalgebra(&self, set: &ElementSet) -> Result<(FiniteAlgebra, Vec<Elem>), FinalgError> {
        if set.carrier() != self.size {
            return Err(FinalgError::ElementOutOfRange(set.carrier()));
        }
        let embedding = set.to_vec();
        if embedding.is_empty() {
            return Err(FinalgError::EmptyCarrier);
        }
        let mut position = vec![usize::MAX; self.size];
        for (i, &e) in embedding.iter().enumerate() {
            position[e] = i;
        }
        let k = embedding.len();
        let mut tables = Vec::with_capacity(self.signature.len());
        let mut args = Vec::new();
        for (op, (name, arity)) in self.signature.iter().enumerate() {
            let mut table = Vec::with_capacity(k.pow(arity as u32));
            let mut closed = true;
            for_each_tuple(k, arity, |local| {
                args.clear();
                args.extend(local.iter().map(|&i| embedding[i]));
                let r = self.apply(op, &args);
                if !set.contains(r) {
                    closed = false;
                }
                table.push(position[r]);
            });
            if !closed {
                return Err(FinalgError::NotClosed(name.to_string()));
            }
            tables.push(table);
        }
        let alg = FiniteAlgebra::new(k, self.signature.clone(), tables)?;
        Ok((alg, embedding))
    }

    /// Relabels elements: element `i` of the result is `perm[i]` of `self`.
    pub fn relabeled(&self, perm: &[Elem]) -> Result<FiniteAlgebra, FinalgError> {
        let mut inverse = vec![usize::MAX; self.size];
        for (i, &p) in perm.iter().enumerate() {
            if p >= self.size || inverse[p] != usize::MAX {
                return Err(FinalgError::ElementOutOfRange(p));
            }
            inverse[p] = i;
        }
        if perm.len() != self.size {
            return Err(FinalgError::ElementOutOfRange(perm.len()));
        }
        let mut args = Vec::new();
        FiniteAlgebra::from_fn(self.size, self.signature.clone(), |name, local| {
            args.clear();
            args.extend(local.iter().map(|&i| perm[i]));
            let op = self.signature.index_of(name).expect("same signature");
            inverse[self.apply(op, &args)]
        })
    }

    pub fn check_signature(&self, other: &FiniteAlgebra) -> Result<(), FinalgError> {
        if self.signature == other.signature {
            Ok(())
        } else {
            Err(FinalgError::SignatureMismatch)
        }
    }

    pub fn to_json_value(&self) -> Value {
        let signature: Vec<Value> = self.signature.iter().map(|(n, a)| json!([n, a])).collect();
        let mut tables = serde_json::Map::new();
        for (op, (name, arity)) in self.signature.iter().enumerate() {
            tables.insert(name.to_string(), nest(&self.tables[op], self.size, arity));
        }
        json!({
            "carrier": self.size,
            "signature": signature,
            "tables": tables,
        })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(value: &Value) -> Result<Self, FinalgError> {
        let err = |msg: &str| FinalgError::Json(msg.to_string());
        let size = value
            .get("carrier")
            .and_then(Value::as_u64)
            .ok_or_else(|| err("missing integer `carrier`"))? as usize;
        let raw_sig = value
            .get("signature")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing array `signature`"))?;
        let mut symbols = Vec::new();
        for entry in raw_sig {
            let pair = entry.as_array().filter(|p| p.len() == 2);
            let (name, arity) = pair
                .and_then(|p| Some((p[0].as_str()?, p[1].as_u64()?)))
                .ok_or_else(|| err("signature entries are [name, arity]"))?;
            symbols.push((name.to_string(), arity as usize));
        }
        let signature = Signature::new(symbols)?;
        let raw_tables = value
            .get("tables")
            .and_then(Value::as_object)
            .ok_or_else(|| err("missing object `tables`"))?;
        let mut tables = Vec::new();
        for (name, arity) in signature.iter() {
            let raw = raw_tables
                .get(name)
                .ok_or_else(|| FinalgError::Json(format!("no table for `{name}`")))?;
            let mut flat = Vec::new();
            flatten(raw, arity, size, &mut flat)
                .map_err(|m| FinalgError::Json(format!("table `{name}`: {m}")))?;
            tables.push(flat);
        }
        FiniteAlgebra::new(size, signature, tables)
    }

    pub fn from_json(text: &str) -> Result<Self, FinalgError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| FinalgError::Json(e.to_string()))?;
        Self::from_json_value(&value)
    }
}

fn nest(table: &[Elem], size: usize, arity: usize) -> Value {
    match arity {
        0 => json!(table[0]),
        1 => json!(table),
        _ => {
            let stride = size.pow(arity as u32 - 1);
            Value::Array(
                table
                    .chunks(stride)
                    .map(|chunk| nest(chunk, size, arity - 1))
                    .collect(),
            )
        }
    }
}

fn flatten(value: &Value, arity: usize, size: usize, out: &mut Vec<Elem>) -> Result<(), String> {
    if arity == 0 {
        let v = value.as_u64().ok_or("expected an integer")?;
        out.push(v as usize);
        return Ok(());
    }
    let items = value.as_array().ok_or("expected an array")?;
    if items.len() != size {
        return Err(format!("expected {size} entries, found {}", items.len()));
    }
    for item in items {
        flatten(item, arity - 1, size, out)?;
    }
    Ok(())
}

/// Calls `f` on every tuple in `{0..size}^arity` in lexicographic order.
pub(crate) fn for_each_tuple(size: usize, arity: usize, mut f: impl FnMut(&[Elem])) {
    let mut tuple = vec![0; arity];
    loop {
        f(&tuple);
        let mut pos = arity;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < size {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Calls `f` on every tuple whose entries are drawn from `pool`.
pub(crate) fn for_each_tuple_in(pool: &[Elem], arity: usize, mut f: impl FnMut(&[Elem])) {
    let mut digits = vec![0usize; arity];
    let mut tuple: Vec<Elem> = vec![0; arity];
    if arity > 0 && pool.is_empty() {
        return;
    }
    loop {
        for (t, &d) in tuple.iter_mut().zip(&digits) {
            *t = pool[d];
        }
        f(&tuple);
        let mut pos = arity;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < pool.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// The ring of integers modulo 3 with `add`, `mul`, `neg`, `zero`, `one`.
pub fn z3() -> FiniteAlgebra {
    let signature = Signature::new([("add", 2), ("mul", 2), ("neg", 1), ("zero", 0), ("one", 0)])
        .expect("distinct symbols");
    FiniteAlgebra::from_fn(3, signature, |name, a| match name {
        "add" => (a[0] + a[1]) % 3,
        "mul" => (a[0] * a[1]) % 3,
        "neg" => (3 - a[0]) % 3,
        "zero" => 0,
        "one" => 1,
        _ => unreachable!(),
    })
    .expect("well-formed tables")
}

/// Checks that `join` and `meet` form a lattice; returns the first failing
/// law with a witness triple.
pub fn lattice_law_violation(
    alg: &FiniteAlgebra,
    join: &str,
    meet: &str,
) -> Result<Option<(String, [Elem; 3])>, FinalgError> {
    let j = alg.symbol(join)?;
    let m = alg.symbol(meet)?;
    for (op, name) in [(j, join), (m, meet)] {
        if alg.signature.arity(op) != 2 {
            return Err(FinalgError::ArityMismatch {
                symbol: name.to_string(),
                expected: 2,
                found: alg.signature.arity(op),
            });
        }
    }
    let f = |op, a, b| alg.apply(op, &[a, b]);
    let mut found: Option<(String, [Elem; 3])> = None;
    type Law<'a> = (&'a str, &'a dyn Fn(Elem, Elem, Elem) -> bool);
    let laws: [Law; 8] = [
        ("join idempotent", &|x, _, _| f(j, x, x) == x),
        ("meet idempotent", &|x, _, _| f(m, x, x) == x),
        ("join commutative", &|x, y, _| f(j, x, y) == f(j, y, x)),
        ("meet commutative", &|x, y, _| f(m, x, y) == f(m, y, x)),
        ("join associative", &|x, y, z| {
            f(j, f(j, x, y), z) == f(j, x, f(j, y, z))
        }),
        ("meet associative", &|x, y, z| {
            f(m, f(m, x, y), z) == f(m, x, f(m, y, z))
        }),
        ("absorption x v (x ^ y) = x", &|x, y, _| {
            f(j, x, f(m, x, y)) == x
        }),
        ("absorption x ^ (x v y) = x", &|x, y, _| {
            f(m, x, f(j, x, y)) == x
        }),
    ];
    'outer: for (name, law) in laws {
        for x in alg.elements() {
            for y in alg.elements() {
                for z in alg.elements() {
                    if !law(x, y, z) {
                        found = Some((name.to_string(), [x, y, z]));
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z3_tables() {
        let z = z3();
        assert_eq!(z.apply_named("add", &[2, 2]).unwrap(), 1);
        assert_eq!(z.apply_named("mul", &[2, 2]).unwrap(), 1);
        assert_eq!(z.apply_named("neg", &[1]).unwrap(), 2);
        assert_eq!(z.constant("one").unwrap(), 1);
        assert!(matches!(
            z.apply_named("add", &[1]),
            Err(FinalgError::ArityMismatch { .. })
        ));
        assert!(matches!(
            z.apply_named("nope", &[]),
            Err(FinalgError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let z = z3();
        let text = z.to_json();
        assert!(text.starts_with(r#"{"carrier":3,"signature":[["add",2],["mul",2]"#));
        let back = FiniteAlgebra::from_json(&text).unwrap();
        assert_eq!(back, z);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn json_rejects_bad_tables() {
        let bad = r#"{"carrier":2,"signature":[["f",1]],"tables":{"f":[0,2]}}"#;
        assert!(matches!(
            FiniteAlgebra::from_json(bad),
            Err(FinalgError::TableValue { value: 2, .. })
        ));
        let short = r#"{"carrier":2,"signature":[["f",2]],"tables":{"f":[[0,1]]}}"#;
        assert!(matches!(
            FiniteAlgebra::from_json(short),
            Err(FinalgError::Json(_))
        ));
        let dup = Signature::new([("f", 1), ("f", 2)]);
        assert_eq!(dup, Err(FinalgError::DuplicateSymbol("f".into())));
    }

    #[test]
    fn tuple_iteration() {
        let mut seen = Vec::new();
        for_each_tuple(2, 2, |t| seen.push(t.to_vec()));
        assert_eq!(seen, [[0, 0], [0, 1], [1, 0], [1, 1]]);
        let mut count = 0;
        for_each_tuple(3, 0, |_| count += 1);
        assert_eq!(count, 1);
        let mut pooled = Vec::new();
        for_each_tuple_in(&[4, 7], 2, |t| pooled.push(t.to_vec()));
        assert_eq!(pooled, [[4, 4], [4, 7], [7, 4], [7, 7]]);
    }

    #[test]
    fn subalgebra_and_relabel() {
        let z = z3();
        assert_eq!(
            z.subalgebra(&ElementSet::from_elems(3, [0, 1])),
            Err(FinalgError::NotClosed("add".into()))
        );
        let (whole, emb) = z.subalgebra(&ElementSet::full(3)).unwrap();
        assert_eq!(whole, z);
        assert_eq!(emb, [0, 1, 2]);
        let swapped = z.relabeled(&[0, 2, 1]).unwrap();
        // element 1 of the relabeled algebra is 2 of Z3, so `one` is now 2
        assert_eq!(swapped.constant("one").unwrap(), 2);
    }

    #[test]
    fn lattice_laws_detected() {
        let sig = Signature::new([("join", 2), ("meet", 2)]).unwrap();
        let chain = FiniteAlgebra::from_fn(3, sig.clone(), |n, a| match n {
            "join" => a[0].max(a[1]),
            _ => a[0].min(a[1]),
        })
        .unwrap();
        assert_eq!(lattice_law_violation(&chain, "join", "meet").unwrap(), None);
        let broken = FiniteAlgebra::from_fn(3, sig, |n, a| match n {
            "join" => a[0].max(a[1]),
            _ => a[0],
        })
        .unwrap();
        let (law, _) = lattice_law_violation(&broken, "join", "meet")
            .unwrap()
            .unwrap();
        assert_eq!(law, "meet commutative");
    }
}

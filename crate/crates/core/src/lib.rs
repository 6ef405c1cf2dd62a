//! Core regular double Stone algebras on finite carriers.
//!
//! * [`ternary`]: node partitions `(good, bad)` and words over `{0, S, 1}`.
//! * [`finalg`]: finite algebras given by tables, with term evaluation,
//!   subuniverse closure, congruences, homomorphism search and a primality
//!   checker.
//! * [`crdsa`]: axioms, center, core, the Boolean-center construction,
//!   subalgebra enumeration and subdirect representation.
//! * [`bitop`]: finite bitopological spaces, prime-filter spectra and the
//!   conditions under which a space carries a CRDSA base.

pub mod bitop;
pub mod crdsa;
pub mod finalg;
pub mod ternary;

pub use bitop::{BitopError, BitopSpace, FiniteTopology, PointSet, PrimeFilter, Spectrum};
pub use crdsa::{
    c3_malcev_term, validate_crdsa, BooleanInstance, C3Power, CrdsaError, CrdsaInstance,
    ValidationReport,
};
pub use finalg::{
    DistributivityWitness, Elem, ElementSet, FinalgError, FiniteAlgebra, PartitionRelation,
    PrimalityReport, Signature, Term,
};
pub use ternary::{NodeSet, TernaryError, TernaryPartition, TernaryVector, Trit};

//! Finite-automaton constructions for measuring the complexity of regular
//! ideals: subset construction, minimization, reversal, star, product and
//! boolean operations, transition semigroups, atoms, and the witness streams
//! that reach the known upper bounds for right, left and two-sided ideals.
//!
//! All values are immutable once built and every operation is a pure
//! function, so everything here can be called from many threads at once.

pub mod atoms;
pub mod dfa;
pub mod error;
pub mod ideals;
pub mod minimize;
pub mod nfa;
pub mod ops;
pub mod semigroup;
pub mod transformation;
pub mod verify;
pub mod witnesses;

pub use atoms::{atom_bound_formula, atom_dfa, enumerate_atoms, Atom, AtomDescriptor};
pub use dfa::{CanonicalDfa, Dfa, DfaJson};
pub use error::{Error, Result};
pub use ideals::{expected, Expected, IdealClass, Measure, Pairing};
pub use minimize::{is_minimal, minimize};
pub use nfa::{determinize, Label, Nfa};
pub use ops::{
    boolean_product, complexity, concat_epsilon, concat_ideal_redirect, isomorphic,
    quotient_complexities, reverse, star_generic, BoolOp,
};
pub use semigroup::{syntactic_semigroup_size, transition_semigroup, SemigroupClosure};
pub use transformation::Transformation;
pub use verify::{verify, verify_with, VerificationReport, VerifyConfig};
pub use witnesses::{
    apply_dialect, check_ideal, left_ideal_witness, regular_witness, right_ideal_witness,
    two_sided_witness, PartialPermutation, StreamClass, WitnessSpec,
};

//! Quantum ramp secret sharing from nested linear codes over finite fields.
//!
//! A nested pair `C₂ ⊊ C₁ ⊆ F_q^n` with a labelling of `C₁/C₂` by secrets
//! in `F_q^L` encodes `|s⟩` as the uniform superposition over the coset
//! `f(s)`. This crate computes the access structure of such schemes from
//! dimensions of projected and shortened codes, and checks the closed forms
//! against a small dense/sparse state simulator.

pub mod access;
pub mod code;
pub mod constructions;
pub mod error;
pub mod field;
pub mod info;
pub mod linalg;
pub mod oracle;
pub mod scheme;

pub use code::{LinearCode, NestedPair, ShareSet};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldRef, FiniteField};
pub use linalg::{Matrix, Subspace};

//! Exact algebra on typed decorated rooted trees.
//!
//! Trees carry a decoration on every vertex and a type on every edge, both
//! drawn from finite alphabets. Everything here is exact: coefficients are
//! arbitrary-precision rationals, counts are arbitrary-precision integers,
//! and equality of trees is isomorphism via a canonical form.
//!
//! The crate covers:
//!
//! - [`trees`]: canonical trees and forests, enumeration of bases, symmetry
//!   factors, admissible cuts, connected partitions;
//! - [`series`]: counting series for trees and forests and closed-form
//!   cross-checks;
//! - [`linalg`]: rational scalars, linear combinations of canonical basis
//!   keys, type-weight vectors;
//! - [`prelie`]: grafting products, their type-weighted combinations, branch
//!   removal coproducts, the enveloping action on forests, and the universal
//!   morphism out of the free structure;
//! - [`hopf`]: the forest bialgebra (unshuffle and star product), the cut
//!   coproduct with its recursive twin, antipode, symmetry pairing, and the
//!   contraction coproduct;
//! - [`morphisms`]: edge-type substitutions, the change-of-weights matrices,
//!   and the pair of morphisms linking a typed world to an untyped world
//!   decorated by root-constrained trees;
//! - [`operad`]: labeled typed trees under partial composition, dimension
//!   counts, and the dual product on rooted words;
//! - [`text`]: the tree-literal grammar, parsing and canonical rendering;
//! - [`verify`]: executable identity suites with counterexample reporting.

#![forbid(unsafe_code)]

pub mod error;
pub mod linalg;
pub mod trees;
pub mod series;
pub mod text;
pub mod prelie;
pub mod hopf;
pub mod morphisms;
pub mod operad;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{LinComb, Lambda, Rat};
pub use trees::{Alphabets, DecId, Forest, Tree, TypeId};

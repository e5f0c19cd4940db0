//! Isomorphism invariants of semisimple Lie algebras from chord diagrams.
//!
//! Structure constants `μ` and the inverse Killing tensor `θ` are contracted
//! along the circle-and-chords network of each chord diagram, giving an exact
//! rational number per diagram. Values agree on isomorphic algebras; for a
//! large enough chord bound they separate isomorphism classes.
//!
//! The [`picture`] module reduces arbitrary closed μ/θ networks to linear
//! combinations of products of chord diagrams.

pub mod chord;
pub mod cli;

pub mod error;
pub mod invariants;

pub mod killing;
pub mod lie_algebra;
pub mod linalg;

pub mod picture;
pub mod tensor;

pub use chord::{canonicalize, enumerate_diagrams, format_diagram, parse_diagram, ChordDiagram, Symmetry};
pub use error::{Error, Result};
pub use killing::{casimir_theta, is_semisimple, killing_matrix, KillingData};
pub use lie_algebra::{
    build_classical, change_basis, direct_sum, random_invertible, validate_structure, BasisChange,
    ClassicalFamily, RawStructure, StructureConstants, ValidationReport,
};
pub use linalg::{det_exact, invert_exact, Rational, RationalMatrix};
pub use tensor::{
    build_network, evaluate_diagram, evaluate_float, evaluate_naive, plan_contraction, ContractionPlan,
    TensorNetwork,
};
pub use picture::{reduce_picture, ClosedPicture, DiagramCombination};
pub use invariants::{compare_algebras, invariant_vector, theorem_bound, InvariantVector, Mode, Verdict};

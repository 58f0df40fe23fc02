//! Rooted Fuss-Catalan complexes, their decomposition trees and colourings.

mod build;
mod colour;
mod tree;

pub use build::{build_complex, f_vector, f_vector_formula, ColouredComplex, FVector};
pub use colour::{coarsen, CoarseColourVector, ColourVector, Composition};
pub use tree::{enumerate_trees, DecompositionTree, Node, TreeEnumerator};
pub(crate) use tree::check_dimension;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("composition parts must be positive: {0:?}")]
    InvalidComposition(Vec<usize>),
    #[error("the index-0 complex has no f-vector")]
    Degenerate,
}

pub fn colour_vector(cx: &ColouredComplex) -> ColourVector {
    cx.colour_vector()
}

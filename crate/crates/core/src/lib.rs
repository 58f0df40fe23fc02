//! Exact enumeration, chromatic census and identity checks for rooted
//! Fuss-Catalan complexes.
//!
//! A `d`-dimensional Fuss-Catalan complex of index `n` is a simplicial `d`-ball
//! made of `n` maximal simplices whose `(d-2)`-skeleton lies on the boundary;
//! for `d = 2` these are the triangulations of a convex `(n+2)`-gon. Rooted
//! complexes are in bijection with `d`-ary trees ([`complex::DecompositionTree`]),
//! carry a unique proper `(d+1)`-colouring, and the number of complexes with a
//! given colour distribution is a closed product formula ([`census`]).
//!
//! All arithmetic is exact: counts are big integers, everything else is a big
//! rational.

pub mod census;
pub mod cli;
pub mod complex;
pub mod geometry;
pub mod series;

//! Exact computation of annular sl_n link invariants.
//!
//! Closed annular ladder diagrams are evaluated in the annular sl_n web
//! skein module, colored braid closures are turned into elements of the
//! representation ring of gl_n, and for n = 2 the sutured annular Khovanov
//! complex is built with its sl_2 action and exact homology.

pub mod exec;
pub mod gen;
pub mod invariant;
pub mod kauffman;
pub mod ladder;
pub mod linalg;
pub mod qpoly;
pub mod sakh;
pub mod skein;
pub mod skewhowe;

pub use ladder::{DiagramWord, Direction, LadderError, Letter, Sign, Weight};
pub use qpoly::{quantum_binomial, quantum_factorial, quantum_int, LaurentPoly};
pub use skein::{evaluate, CircleMultiset, Partition, RepClass, SkeinElement, SkeinError};

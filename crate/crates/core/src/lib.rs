//! Exact symbolic engine for the q-analogue of the biperiodic Fibonacci
//! sequence: its recurrences, closed forms, Cassini-type determinant,
//! operator generating functions and weighted-tiling model.

pub mod cli;
pub mod genfun;
pub mod polyring;
pub mod qtools;
pub mod sequences;
pub mod tilings;

pub use genfun::PowerSeries;
pub use polyring::{parse_polynomial, Monomial, ParseError, Polynomial};
pub use sequences::{SequenceKind, Sequences};

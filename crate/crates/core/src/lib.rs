//! Exact symbolic engine for decorated-tree DGAs, bar complexes and the
//! parametrized cubical cycles attached to iterated integrals on the
//! punctured affine line.

pub mod algebra;
pub mod bar;
pub mod cli;
pub mod cycle;
pub mod error;
pub mod numint;
pub mod picom;
pub mod polyint;
pub mod lifts;
pub mod linear;
pub mod random;
pub mod ratfunc;
pub mod rational;
pub mod suite;
pub mod tree;
pub mod zeta;

pub use error::{Error, Result};

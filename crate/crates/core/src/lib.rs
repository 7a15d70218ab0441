//! Exact homological algebra over the integers: presented abelian groups,
//! filtered cochain complexes and their spectral sequences, obstruction
//! towers, mod-2 Milnor K-theory of small fields and a Chow-ring model of Sq^2.

#![no_std]

extern crate alloc;

pub mod error;
pub mod exactalg;
pub mod filtcomplex;
pub mod fixtures;
pub mod lattice;
pub mod matrix;
pub mod milnor;
pub mod obstruction;
pub mod snf;
pub mod specseq;
pub mod sq2;

pub use error::{Error, FiltrationViolation, Result};
pub use exactalg::{Homo, Invariants, Presentation, Subgroup, Subquotient};
pub use matrix::{Int, Matrix};

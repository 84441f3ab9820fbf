//! Executable pieces of the finitary side of consistency proofs for Peano
//! arithmetic: ordinal notations below ε₀, monitoring of descending ordinal
//! sequences, the first-order language of arithmetic, the reduction game,
//! and a Hilbert-style proof kernel with bounded consistency search.

pub mod fol;
pub mod game;
pub mod ordinal;
pub mod proof;
pub mod stabilization;

pub use ordinal::{List, Ordinal};

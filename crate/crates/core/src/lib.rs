//! Binary linear codes, Reed-Muller codes, McEliece-type keys over hidden
//! Reed-Muller codes, the support splitting attack on code equivalence, and
//! checks on affine automorphism groups.

pub mod affine;
pub mod cli;
pub mod code;
pub mod cryptosys;
pub mod error;
pub mod f2linalg;
pub mod hsp;
pub mod rm;
pub mod ssa;

pub use error::{Error, Result};
pub use f2linalg::{BitMatrix, BitVec, Permutation};

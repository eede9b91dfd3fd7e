//! Vector linear network coding over small finite alphabets: network
//! models, explicit codes, exhaustive solvability search and discrete
//! polymatroid checks.
//!
//! Conventions used throughout:
//!
//! * coefficients multiply messages from the left (`A · x`);
//! * the global coding matrix of an edge is `d × (|S|·d)` with one block per
//!   source in source order, acting on the stacked source column vector.

pub mod algebra;
pub mod netmodel;
pub mod vlnc;
pub mod zoo;
pub mod polymatroid;
pub mod solver;

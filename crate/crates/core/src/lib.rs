//! Desk-scale laboratory for quantum query games: mixed-radix statevector
//! simulation, superposition oracles over roots of unity, symbolic amplitude
//! polynomials, the MAC-forgery bound, and toy cryptographic schemes to hang
//! the games on.
//!
//! Everything is exact-first: probabilities come from full enumeration over
//! oracle families whenever the family fits in memory, with seeded Monte
//! Carlo as the explicit fallback. With the default `parallel` feature the
//! heavy loops run on rayon; results are bit-identical to the sequential
//! build because reductions are ordered.

pub mod adversaries;
pub mod amppoly;
pub mod cli;
pub mod crypto;
pub mod error;
pub mod fourier;
pub mod games;
pub mod par;
pub mod qstate;

pub use error::{Error, Result};

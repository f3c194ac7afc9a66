//! Exact linear algebra for the Lawrence–Krammer representation of braid
//! groups, the sesquilinear form it preserves, and unit-circle numerics built
//! on top of both.
//!
//! The crate is organized bottom-up:
//!
//! - [`ring`]: Laurent polynomials over Z in q, t and a fraction layer.
//! - [`matrix`]: dense matrices over that ring, division-free characteristic
//!   polynomials, exact inverses.
//! - [`braid`]: braid words as sequences of signed generator letters.
//! - [`lkrep`]: the representation matrices themselves.
//! - [`form`]: the invariant sesquilinear form, from its closed-form matrix.
//! - [`chains`]: an independent chain-level construction of the same form via
//!   twisted homology (Fox calculus, explicit cell bases, the pairing).
//! - [`numeric`]: complex specializations, definiteness certificates,
//!   unitarization, and conjugacy-invariant experiments.

pub mod braid;
pub mod chains;
pub mod error;
pub mod form;
pub mod lkrep;
pub mod matrix;
pub mod numeric;
pub mod ring;

pub use braid::BraidWord;
pub use error::{Error, Result};
pub use lkrep::LkRep;
pub use matrix::RingMatrix;
pub use num_complex::Complex64;
pub use ring::{LaurentPoly, RingFraction};

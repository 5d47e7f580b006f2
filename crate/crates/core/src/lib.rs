//! A decoding laboratory for guess-based decoding of binary linear block
//! codes.
//!
//! The crate provides:
//!
//! - [`gf2`]: bit-packed GF(2) vectors/matrices with operation counters;
//! - [`codes`]: linear-code containers, matrix file formats, and BCH
//!   construction over GF(2^m);
//! - [`orbgrand`]: the pre-stored logistic-weight error-pattern list and
//!   the plain ordered-reliability-bits decoder;
//! - [`elim`]: the elimination-aided decoder that filters guesses through
//!   incremental column-wise Gaussian elimination keyed on the rank of
//!   the most reliable erroneous bit (RMRE);
//! - [`channel`]: a seeded AWGN/BPSK Monte Carlo harness with common
//!   random numbers across decoders;
//! - [`analysis`]: the RMRE order-statistic distribution and closed-form
//!   complexity models.
//!
//! Soft values are generic over [`Real`] (`f32` or `f64`); [`Llr`] is the
//! default scalar used by the command-line tools.

pub mod analysis;
pub mod channel;
pub mod codes;
pub mod elim;
pub mod error;
pub mod gf2;
pub mod orbgrand;
pub mod real;

pub use error::{Error, Result};
pub use real::Real;

/// Default soft-value scalar.
pub type Llr = f64;

//! Stack-sorting operators on finite words and the complexity functions
//! they induce on infinite sequences.
//!
//! The crate provides:
//!
//! - [`word`]: the `hare` and `tortoise` operators, iterated application,
//!   sorting indices, and canonical keys for tortoise equivalence;
//! - [`sequences`]: the built-in paperfolding and Thue–Morse words plus a
//!   DFAO interpreter for arbitrary automatic sequences;
//! - [`factors`]: subword enumeration over growing prefixes, Parikh
//!   vectors, and special factors;
//! - [`complexity`]: factor, abelian, k-tortoise, and nearly-abelian
//!   complexity functions with equivalence-class reports;
//! - [`verify`]: exhaustive bounded-range checks of the structural facts
//!   the complexity machinery relies on, with witness reporting.

pub mod complexity;
pub mod error;
pub mod factors;
pub mod sequences;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use factors::StabilizationPolicy;
pub use sequences::InfiniteWord;
pub use word::{Symbol, Word};

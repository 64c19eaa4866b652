//! Exact decision procedures around ℕ- and ℤ-rational series.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: multivariate polynomials over ℚ, monomial divisibility,
//!   translations, discrete derivatives and the binomial basis.
//! - [`classes`]: decidable polynomial classes (strongly non-negative,
//!   integer-valued, strongly natural) with certificates.
//! - [`automaton`]: ℤ-weighted automata as linear representations, exact
//!   equivalence, commutativity and monoid presentations.
//! - [`decomp`]: the ω-type decomposition of commutative series, its
//!   synthesis from automata and the NPoly / star-free decisions.
//! - [`transducer`]: H-transducers and the canonical residual transducer.
//! - [`oracle`]: brute-force reference implementations used for cross-checks.
//! - [`format`]: the JSON file formats read and written by the CLI.

pub mod automaton;
pub mod classes;
pub mod decomp;
mod error;
pub mod format;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod samples;
pub mod transducer;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use poly::{Polynomial, Rational};

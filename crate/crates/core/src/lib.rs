//! Weight-dependent commutation relations and their elliptic specialisations.
//!
//! The crate is organised bottom-up:
//!
//! * [`special_fn`] evaluates theta functions, theta-shifted factorials and the
//!   weight / binomial families built from them.
//! * [`ncword`] normal-orders words in two generators under the homogeneous,
//!   rook (Weyl-type) and file commutation systems with exact symbolic
//!   coefficients.
//! * [`skewpoly`] handles one-variable polynomials whose variable shifts the
//!   parameters `(a, b)`, the elliptic derivative and elliptic Fibonacci numbers.
//! * [`boards`] enumerates Ferrers boards, rook and file placements and lattice
//!   paths. These are the brute-force oracles for the normal-ordering theorems.
//! * [`verify`] is the identity registry and sampling harness.

pub mod boards;
mod error;
pub mod ncword;
pub mod skewpoly;
pub mod special_fn;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

//! Identity registry and sampling harness.
//!
//! Every registered identity is evaluated on both sides through different
//! code paths, recorded in [`IdentityCheck::lhs_route`] and
//! [`IdentityCheck::rhs_route`]. Numeric checks draw parameters from a
//! generator keyed by `(seed, id)`, so a report depends only on the id, the
//! seed and the sizes.

mod checks;
mod registry;
mod runner;
mod sampling;

pub use registry::{list_identities, lookup, CheckKind, IdentityCheck, Sizes, REGISTRY};
pub use runner::{max_condition, run_all, run_check, CheckOptions, CheckReport, Ctx, Trial};
pub use sampling::{digest_of, Sampler};

use num_complex::Complex64 as C64;

/// `|l − r| / max(|l|, |r|, 1e−30)`.
pub fn rel_err(l: C64, r: C64) -> f64 {
    (l - r).norm() / l.norm().max(r.norm()).max(1e-30)
}

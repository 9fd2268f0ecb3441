//! The identity checks. Each function drives one registry entry.

pub(crate) mod binomial;
pub(crate) mod boards;
pub(crate) mod exponential;
pub(crate) mod normal;
pub(crate) mod operators;
pub(crate) mod theta;
pub(crate) mod weights;

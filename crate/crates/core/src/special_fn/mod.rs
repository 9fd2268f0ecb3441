//! Numeric special functions: the modified Jacobi theta function, theta-shifted
//! factorials, the weight families and their binomial coefficients.
//!
//! Everything here is a pure function of its arguments. Denominators are
//! guarded: a factor with magnitude below [`NEAR_POLE`] raises
//! [`Error::NearPole`](crate::Error::NearPole) instead of returning a huge
//! value, so that a verification run can tell an ill-conditioned draw apart
//! from a failing identity.

mod binom;
mod family;
mod params;
mod theta;

pub use binom::{binom, binom_numeric, binom_recursive, binom_symbolic, bracket_z, q_bracket};
pub use family::{big_weight, small_weight, WeightFamily, WeightTable, WeightValue};
pub use params::ParameterSet;
pub use theta::{
    check_finite, guard_denominator, q_poch, qp_factorial, qpow, qpow_complex, qp_factorial_scaled, theta, theta_series, Scaled,
    theta_product, Quotient, NEAR_POLE, THETA_EPS, THETA_MAX_FACTORS,
};

pub use num_complex::Complex64 as C64;

/// Shorthand for a real complex number.
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

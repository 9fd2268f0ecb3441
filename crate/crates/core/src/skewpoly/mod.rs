//! One-variable skew polynomials `Σ c_k(a,b) x^k` where `x` shifts the
//! parameters, the elliptic derivative `D` and the operator `η`, and the
//! elliptic Fibonacci numbers.

mod expr;
mod fib;
mod ops;
mod poly;

pub use expr::{CoeffExpr, ParamMonomial};
pub use fib::{fib_aq, fib_aq_closed, fib_elliptic, genfun_expand, xeta_power, xeta_power_closed};
pub use ops::{
    apply_d, apply_d_pow, apply_eta, d_factor, eta_factor, pincherle_check, pincherle_sides, product_expand, product_expansion_sides,
    Direction, EtaKind,
};
pub use poly::{ShiftRule, SkewPoly, SkewPolyValues};

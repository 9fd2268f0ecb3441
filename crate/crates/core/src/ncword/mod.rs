//! Words in two generators and their exact normal ordering.
//!
//! Coefficients are kept as exact [`WeightPolynomial`]s in the formal symbols
//! `w(s,t)`; a parametric weight family is substituted only afterwards with
//! [`NormalForm::evaluate`]. Parameter-dependent coefficients (exponential
//! series, finite products) live in [`ParamForm`].

mod form;
mod normal;
mod poly;
mod word;

pub use form::{dual, exp_series, ParamForm};
pub use normal::{expand_power_sum, multiply, normal_order, normal_order_with, NormalForm, RelationSystem, Strategy};
pub use poly::{Monomial, WeightPolynomial, WeightSymbol};
pub use word::{parse_word, Letter, Word};

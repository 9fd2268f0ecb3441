use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::params::ParameterSet;
use super::theta::{check_finite, qpow, Quotient};
use crate::ncword::WeightPolynomial;
use crate::{Error, Result};

/// An explicit finite table of small weights `w(s,t)`.
pub type WeightTable = BTreeMap<(i64, i64), C64>;

/// The weight families that can be substituted for the formal symbols `w(s,t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFamily {
    /// Formal indeterminates; only symbolic values.
    Generic,
    /// Theta-quotient weights `w_{a,b;q,p}(s,t)`.
    Elliptic(ParameterSet),
    /// The `p → 0, a → 0` degeneration.
    BQ { b: C64, q: C64 },
    /// The `p → 0, b → 0` degeneration.
    AQ { a: C64, q: C64 },
    /// Constant weight `q` (the `q`-commuting case).
    Q { q: C64 },
    Table(WeightTable),
}

/// Result of a weight or binomial evaluation: a number, or a polynomial in the
/// formal symbols for [`WeightFamily::Generic`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightValue {
    Numeric(C64),
    Symbolic(WeightPolynomial),
}

impl WeightValue {
    pub fn numeric(&self) -> Option<C64> {
        match self {
            WeightValue::Numeric(v) => Some(*v),
            WeightValue::Symbolic(_) => None,
        }
    }

    pub fn symbolic(&self) -> Option<&WeightPolynomial> {
        match self {
            WeightValue::Symbolic(p) => Some(p),
            WeightValue::Numeric(_) => None,
        }
    }
}

impl WeightFamily {
    pub fn elliptic(ps: ParameterSet) -> Result<Self> {
        ps.require_elliptic()?;
        Ok(WeightFamily::Elliptic(ps))
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightFamily::Generic => "generic",
            WeightFamily::Elliptic(_) => "elliptic",
            WeightFamily::BQ { .. } => "bq",
            WeightFamily::AQ { .. } => "aq",
            WeightFamily::Q { .. } => "q",
            WeightFamily::Table(_) => "table",
        }
    }

    /// The family's parameters as a quadruple; degenerate families report the
    /// eliminated parameters (and the nome) as zero.
    pub fn params(&self) -> Result<ParameterSet> {
        let zero = C64::new(0.0, 0.0);
        match self {
            WeightFamily::Elliptic(ps) => Ok(*ps),
            WeightFamily::BQ { b, q } => ParameterSet::new(zero, *b, *q, zero),
            WeightFamily::AQ { a, q } => ParameterSet::new(*a, zero, *q, zero),
            WeightFamily::Q { q } => ParameterSet::new(zero, zero, *q, zero),
            WeightFamily::Generic => Err(Error::Symbolic),
            WeightFamily::Table(_) => Err(Error::Unsupported("weight tables carry no parameters".into())),
        }
    }

    /// The same family at `(a q^u, b q^v)`: the effect of moving a coefficient
    /// to the left past generators.
    pub fn shifted(&self, u: i64, v: i64) -> Result<WeightFamily> {
        Ok(match self {
            WeightFamily::Elliptic(ps) => WeightFamily::Elliptic(ps.shifted(u, v)),
            WeightFamily::BQ { b, q } => WeightFamily::BQ { b: b * qpow(*q, v), q: *q },
            WeightFamily::AQ { a, q } => WeightFamily::AQ { a: a * qpow(*q, u), q: *q },
            WeightFamily::Q { q } => WeightFamily::Q { q: *q },
            WeightFamily::Generic => WeightFamily::Generic,
            WeightFamily::Table(_) => {
                return Err(Error::Unsupported("weight tables cannot be parameter-shifted".into()))
            }
        })
    }

    /// The family with the roles of `a` and `b` exchanged (`a;q` ↔ `b;q`).
    pub fn swapped(&self) -> Result<WeightFamily> {
        Ok(match self {
            WeightFamily::Elliptic(ps) => WeightFamily::Elliptic(ps.swapped()),
            WeightFamily::BQ { b, q } => WeightFamily::AQ { a: *b, q: *q },
            WeightFamily::AQ { a, q } => WeightFamily::BQ { b: *a, q: *q },
            WeightFamily::Q { q } => WeightFamily::Q { q: *q },
            WeightFamily::Generic => WeightFamily::Generic,
            WeightFamily::Table(_) => {
                return Err(Error::Unsupported("weight tables cannot be swapped".into()))
            }
        })
    }

    /// Numeric small weight `w(s,t)`.
    pub fn small(&self, s: i64, t: i64) -> Result<C64> {
        let one = C64::new(1.0, 0.0);
        match self {
            WeightFamily::Generic => Err(Error::Symbolic),
            WeightFamily::Table(tab) => tab.get(&(s, t)).copied().ok_or(Error::TableMiss(s, t)),
            WeightFamily::Q { q } => Ok(*q),
            WeightFamily::BQ { b, q } => {
                let mut r = Quotient::new("b;q small weight");
                r.mul(one - b * qpow(*q, 2 * s + t - 2)).mul(*q);
                r.div(one - b * qpow(*q, 2 * s + t))?;
                r.value()
            }
            WeightFamily::AQ { a, q } => {
                let mut r = Quotient::new("a;q small weight");
                r.mul(one - a * qpow(*q, s + 2 * t));
                r.div(one - a * qpow(*q, s + 2 * t - 2))?;
                r.div(*q)?;
                r.value()
            }
            WeightFamily::Elliptic(ps) => {
                let ParameterSet { a, b, q, p } = *ps;
                let qp = |n: i64| qpow(q, n);
                let mut r = Quotient::new("elliptic small weight");
                r.mul_theta(&[a * qp(s + 2 * t), b * qp(2 * s + t - 2), a * qp(t - s - 1) / b], p)?;
                r.div_theta(&[a * qp(s + 2 * t - 2), b * qp(2 * s + t), a * qp(t - s + 1) / b], p)?;
                r.mul(q);
                r.value()
            }
        }
    }

    /// Numeric big weight `W(s,t)`, `t ≥ 0`, from the family's closed form
    /// (tables use the product of small weights).
    pub fn big(&self, s: i64, t: i64) -> Result<C64> {
        if t < 0 {
            return Err(Error::Domain(format!("big weight needs t >= 0, got {t}")));
        }
        let one = C64::new(1.0, 0.0);
        if t == 0 {
            return match self {
                WeightFamily::Generic => Err(Error::Symbolic),
                _ => Ok(one),
            };
        }
        match self {
            WeightFamily::Generic => Err(Error::Symbolic),
            WeightFamily::Table(_) => self.big_product(s, t),
            WeightFamily::Q { q } => Ok(qpow(*q, t)),
            WeightFamily::BQ { b, q } => {
                let qp = |n: i64| qpow(*q, n);
                let mut r = Quotient::new("b;q big weight");
                r.mul((one - b * qp(2 * s)) * (one - b * qp(2 * s - 1)) * qp(t));
                r.div(one - b * qp(2 * s + t))?;
                r.div(one - b * qp(2 * s + t - 1))?;
                r.value()
            }
            WeightFamily::AQ { a, q } => {
                let qp = |n: i64| qpow(*q, n);
                let mut r = Quotient::new("a;q big weight");
                r.mul((one - a * qp(s + 2 * t)) * qp(-t));
                r.div(one - a * qp(s))?;
                r.value()
            }
            WeightFamily::Elliptic(ps) => {
                let ParameterSet { a, b, q, p } = *ps;
                let qp = |n: i64| qpow(q, n);
                let mut r = Quotient::new("elliptic big weight");
                r.mul_theta(
                    &[a * qp(s + 2 * t), b * qp(2 * s), b * qp(2 * s - 1), a * qp(1 - s) / b, a * qp(-s) / b],
                    p,
                )?;
                r.div_theta(
                    &[a * qp(s), b * qp(2 * s + t), b * qp(2 * s + t - 1), a * qp(t - s + 1) / b, a * qp(t - s) / b],
                    p,
                )?;
                r.mul(qp(t));
                r.value()
            }
        }
    }

    /// `∏_{j=1}^t w(s,j)` computed from small weights.
    pub fn big_product(&self, s: i64, t: i64) -> Result<C64> {
        if t < 0 {
            return Err(Error::Domain(format!("big weight needs t >= 0, got {t}")));
        }
        let mut acc = C64::new(1.0, 0.0);
        for j in 1..=t {
            acc *= self.small(s, j)?;
        }
        check_finite(acc, "big weight product")
    }
}

/// `w(s,t)` for any family; [`WeightFamily::Generic`] yields the symbol itself.
pub fn small_weight(f: &WeightFamily, s: i64, t: i64) -> Result<WeightValue> {
    match f {
        WeightFamily::Generic => {
            if s < 1 || t < 1 {
                return Err(Error::Domain(format!("formal weights need s, t >= 1, got ({s},{t})")));
            }
            Ok(WeightValue::Symbolic(WeightPolynomial::symbol(s as u32, t as u32)))
        }
        _ => f.small(s, t).map(WeightValue::Numeric),
    }
}

/// `W(s,t)` for any family. For the elliptic family this is the closed theta
/// form; [`WeightFamily::big_product`] is the independent product route.
pub fn big_weight(f: &WeightFamily, s: i64, t: i64) -> Result<WeightValue> {
    match f {
        WeightFamily::Generic => {
            if t < 0 || s < 1 {
                return Err(Error::Domain(format!("formal big weight needs s >= 1, t >= 0, got ({s},{t})")));
            }
            let mut acc = WeightPolynomial::one();
            for j in 1..=t {
                acc = acc.mul(&WeightPolynomial::symbol(s as u32, j as u32));
            }
            Ok(WeightValue::Symbolic(acc))
        }
        _ => f.big(s, t).map(WeightValue::Numeric),
    }
}

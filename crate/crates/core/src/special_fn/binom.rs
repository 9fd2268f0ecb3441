use num_complex::Complex64 as C64;

use super::family::{WeightFamily, WeightValue};
use super::params::ParameterSet;
use super::theta::{qpow, qpow_complex, Quotient};
use crate::ncword::WeightPolynomial;
use crate::{Error, Result};

/// Weight-dependent binomial coefficient for any family.
///
/// Parametric families return their closed product form, tables use the
/// recursion numerically and [`WeightFamily::Generic`] returns the exact
/// polynomial produced by the recursion.
pub fn binom(f: &WeightFamily, n: i64, k: i64) -> Result<WeightValue> {
    match f {
        WeightFamily::Generic => {
            if n < 0 {
                return Err(Error::Domain(format!("binomial needs n >= 0, got {n}")));
            }
            Ok(WeightValue::Symbolic(binom_symbolic(n as u32, k)))
        }
        _ => binom_numeric(f, n, k).map(WeightValue::Numeric),
    }
}

/// Numeric closed form (recursion for tables).
pub fn binom_numeric(f: &WeightFamily, n: i64, k: i64) -> Result<C64> {
    if n < 0 {
        return Err(Error::Domain(format!("binomial needs n >= 0, got {n}")));
    }
    let zero = C64::new(0.0, 0.0);
    if k < 0 || k > n {
        return Ok(zero);
    }
    let m = n - k;
    match f {
        WeightFamily::Generic => Err(Error::Symbolic),
        WeightFamily::Table(_) => binom_recursive(f, n, k),
        WeightFamily::Q { q } => {
            let mut r = Quotient::new("q-binomial");
            r.mul_q(qpow(*q, 1 + k), *q, m);
            r.div_q(*q, *q, m)?;
            r.value()
        }
        WeightFamily::BQ { b, q } => {
            let q = *q;
            let mut r = Quotient::new("b;q-binomial");
            r.mul_q(qpow(q, 1 + k), q, m).mul_q(b * qpow(q, 1 + k), q, m);
            r.div_q(q, q, m)?.div_q(b * qpow(q, 1 + 2 * k), q, m)?;
            r.value()
        }
        WeightFamily::AQ { a, q } => {
            let q = *q;
            let mut r = Quotient::new("a;q-binomial");
            r.mul_q(qpow(q, 1 + k), q, m).mul_q(a * qpow(q, 1 + k), q, m);
            r.div_q(q, q, m)?.div_q(a * q, q, m)?;
            r.mul(qpow(q, k * (k - n)));
            r.value()
        }
        WeightFamily::Elliptic(ps) => {
            let ParameterSet { a, b, q, p } = *ps;
            let qp = |e: i64| qpow(q, e);
            let mut r = Quotient::new("elliptic binomial");
            r.mul_qp(qp(1 + k), q, p, m)?
                .mul_qp(a * qp(1 + k), q, p, m)?
                .mul_qp(b * qp(1 + k), q, p, m)?
                .mul_qp(a * qp(1 - k) / b, q, p, m)?;
            r.div_qp(q, q, p, m)?
                .div_qp(a * q, q, p, m)?
                .div_qp(b * qp(1 + 2 * k), q, p, m)?
                .div_qp(a * q / b, q, p, m)?;
            r.value()
        }
    }
}

/// Numeric binomial from the defining recursion
/// `[n+1, k] = [n, k] + [n, k-1] · W(k, n+1-k)`, using the family's big weights.
pub fn binom_recursive(f: &WeightFamily, n: i64, k: i64) -> Result<C64> {
    if n < 0 {
        return Err(Error::Domain(format!("binomial needs n >= 0, got {n}")));
    }
    let zero = C64::new(0.0, 0.0);
    if k < 0 || k > n {
        return Ok(zero);
    }
    let mut row = vec![C64::new(1.0, 0.0)];
    for m in 0..n {
        let mut next = vec![zero; row.len() + 1];
        for (kk, slot) in next.iter_mut().enumerate() {
            let kk_i = kk as i64;
            let mut v = if kk < row.len() { row[kk] } else { zero };
            if kk >= 1 {
                v += row[kk - 1] * f.big(kk_i, m + 1 - kk_i)?;
            }
            *slot = v;
        }
        row = next;
    }
    Ok(row[k as usize])
}

/// Exact weight-dependent binomial coefficient in the formal symbols.
pub fn binom_symbolic(n: u32, k: i64) -> WeightPolynomial {
    if k < 0 || k > n as i64 {
        return WeightPolynomial::zero();
    }
    let mut row = vec![WeightPolynomial::one()];
    for m in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        for kk in 0..=row.len() {
            let mut v = if kk < row.len() { row[kk].clone() } else { WeightPolynomial::zero() };
            if kk >= 1 {
                let t = m + 1 - kk as u32;
                let mut big = WeightPolynomial::one();
                for j in 1..=t {
                    big = big.mul(&WeightPolynomial::symbol(kk as u32, j));
                }
                v.add_assign(&row[kk - 1].mul(&big));
            }
            next.push(v);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// The elliptic number `[z]_{a,b;q,p} = θ(q^z, a q^z, b q², a/b; p) / θ(q, a q, b q^{z+1}, a q^{z-1}/b; p)`.
pub fn bracket_z(ps: &ParameterSet, z: C64) -> Result<C64> {
    ps.require_elliptic()?;
    let ParameterSet { a, b, q, p } = *ps;
    let qz = qpow_complex(q, z);
    let mut r = Quotient::new("elliptic bracket");
    r.mul_theta(&[qz, a * qz, b * q * q, a / b], p)?;
    r.div_theta(&[q, a * q, b * qz * q, a * qz / (q * b)], p)?;
    r.value()
}

/// The `q`-number `[z]_q = (1 - q^z)/(1 - q)`.
pub fn q_bracket(q: C64, z: i64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut r = Quotient::new("q-bracket");
    r.mul(one - qpow(q, z));
    r.div(one - q)?;
    r.value()
}

use std::collections::HashMap;

use num_complex::Complex64 as C64;

use super::expr::CoeffExpr;
use super::ops::{apply_eta, EtaKind};
use super::poly::{ShiftRule, SkewPoly};
use crate::special_fn::{q_poch, qpow, ParameterSet, Quotient, WeightFamily};
use crate::Result;

/// Elliptic Fibonacci number `S_n(a, b; q, p)` by its defining recursion.
///
/// Shifted parameter points are memoized per call on `(n, u, v)` where the
/// point is `(a q^u, b q^v)`.
pub fn fib_elliptic(n: u32, ps: &ParameterSet) -> Result<C64> {
    ps.require_elliptic()?;
    let mut memo = HashMap::new();
    fib_rec(n as i64, 0, 0, ps, &mut memo)
}

fn fib_rec(n: i64, u: i64, v: i64, base: &ParameterSet, memo: &mut HashMap<(i64, i64, i64), C64>) -> Result<C64> {
    match n {
        0 => return Ok(C64::new(0.0, 0.0)),
        1 => return Ok(C64::new(1.0, 0.0)),
        _ => {}
    }
    if let Some(v) = memo.get(&(n, u, v)) {
        return Ok(*v);
    }
    let ps = base.shifted(u, v);
    let (a, b, q, p) = (ps.a, ps.b, ps.q, ps.p);
    let qq = |k: i64| qpow(q, k);
    let factor = Quotient::new("elliptic Fibonacci factor")
        .mul_theta(&[a * qq(1 + n), a * qq(2 + n), b * qq(5), a * qq(1 - n) / b, a * qq(-n) / b], p)?
        .div_theta(&[a * qq(3), a * qq(4), b * qq(1 + 2 * n), a / (b * q), a / (b * q * q)], p)?
        .mul(qq(n - 2))
        .value()?;
    let s = fib_rec(n - 1, u + 1, v + 2, base, memo)? + factor * fib_rec(n - 2, u + 2, v + 4, base, memo)?;
    memo.insert((n, u, v), s);
    Ok(s)
}

/// `S_n(a; q)` by the `a;q` recursion.
pub fn fib_aq(n: u32, a: C64, q: C64) -> Result<C64> {
    let mut memo = HashMap::new();
    fib_aq_rec(n as i64, 0, a, q, &mut memo)
}

fn fib_aq_rec(n: i64, u: i64, a0: C64, q: C64, memo: &mut HashMap<(i64, i64), C64>) -> Result<C64> {
    match n {
        0 => return Ok(C64::new(0.0, 0.0)),
        1 => return Ok(C64::new(1.0, 0.0)),
        _ => {}
    }
    if let Some(v) = memo.get(&(n, u)) {
        return Ok(*v);
    }
    let a = a0 * qpow(q, u);
    let one = C64::new(1.0, 0.0);
    let factor = Quotient::new("a;q Fibonacci factor")
        .mul((one - a * qpow(q, 1 + n)) * (one - a * qpow(q, 2 + n)))
        .div((one - a * qpow(q, 3)) * (one - a * qpow(q, 4)))?
        .mul(qpow(q, 2 - n))
        .value()?;
    let s = fib_aq_rec(n - 1, u + 1, a0, q, memo)? + factor * fib_aq_rec(n - 2, u + 2, a0, q, memo)?;
    memo.insert((n, u), s);
    Ok(s)
}

/// Gaussian binomial `[n, k]_q` by the rule `[n,k] = [n−1,k−1] + q^k [n−1,k]`,
/// which stays accurate as `q → 1`.
fn gaussian(n: i64, k: i64, q: C64) -> Result<C64> {
    if k < 0 || k > n {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut row = vec![C64::new(1.0, 0.0)];
    for m in 1..=n as usize {
        let mut next = vec![C64::new(1.0, 0.0); m + 1];
        for j in 1..m {
            next[j] = row[j - 1] + qpow(q, j as i64) * row[j];
        }
        row = next;
    }
    Ok(row[k as usize])
}

/// Closed form `Σ_j q^{−(n−j−1)j} [n−j−1, j]_q (1−aq^{n+1})^j (1−aq^{n+2})^j / ((aq³;q)_j (aq^{n−j+2};q)_j)`.
///
/// The second denominator factorial is `(aq^{n−j+2};q)_j`; the variant
/// `(aq^{n−j−2};q)_j` does not reproduce the recursion.
pub fn fib_aq_closed(n: u32, a: C64, q: C64) -> Result<C64> {
    fib_aq_closed_with(n, a, q, 2)
}

fn fib_aq_closed_with(n: u32, a: C64, q: C64, offset: i64) -> Result<C64> {
    let n = n as i64;
    let one = C64::new(1.0, 0.0);
    let mut total = C64::new(0.0, 0.0);
    let mut j = 0;
    while 2 * j < n {
        let lin = (one - a * qpow(q, n + 1)) * (one - a * qpow(q, n + 2));
        let term = Quotient::new("a;q Fibonacci closed form")
            .mul(qpow(q, -(n - j - 1) * j))
            .mul(gaussian(n - j - 1, j, q)?)
            .mul(lin.powi(j as i32))
            .div(q_poch(a * qpow(q, 3), q, j)?)?
            .div(q_poch(a * qpow(q, n - j + offset), q, j)?)?
            .value()?;
        total += term;
        j += 1;
    }
    Ok(total)
}

/// Coefficients of `x¹ … x^N` in `Σ_m (x + x²η)^m x`, the generating function
/// of the Fibonacci numbers of the family (elliptic or `a;q`).
pub fn genfun_expand(max_degree: u32, f: &WeightFamily) -> Result<Vec<C64>> {
    let kind = EtaKind::for_family(f)?;
    let rule = ShiftRule::ELLIPTIC;
    let mut term = SkewPoly::x(rule);
    let mut total = SkewPoly::zero(rule);
    while !term.is_zero() {
        total = &total + &term;
        term = step(&term, kind).truncate(max_degree);
    }
    let values = total.eval(f)?;
    Ok((1..=max_degree).map(|n| values.get(n)).collect())
}

/// `(x + x²η) · p`.
fn step(p: &SkewPoly, kind: EtaKind) -> SkewPoly {
    &p.x_pow_times(1) + &apply_eta(p, kind).x_pow_times(2)
}

/// `(x + x² η_{a;q})ⁿ x` expanded by repeated operator application.
pub fn xeta_power(n: u32) -> SkewPoly {
    (0..n).fold(SkewPoly::x(ShiftRule::ELLIPTIC), |acc, _| step(&acc, EtaKind::AQ))
}

/// `Σ_j q^{−nj} [n,j]_q (1−aq^{n+j+2})^j (1−aq^{n+j+3})^j / ((aq³;q)_j (aq^{n+3};q)_j) x^{n+j+1}`.
pub fn xeta_power_closed(n: u32) -> SkewPoly {
    let n = n as i64;
    let mut out = SkewPoly::zero(ShiftRule::ELLIPTIC);
    for j in 0..=n {
        let gauss = CoeffExpr::QPoch { arg: super::ParamMonomial::abq(0, 0, 1), base: 1, n }
            / (CoeffExpr::QPoch { arg: super::ParamMonomial::abq(0, 0, 1), base: 1, n: j }
                * CoeffExpr::QPoch { arg: super::ParamMonomial::abq(0, 0, 1), base: 1, n: n - j });
        let lin = (CoeffExpr::one_minus(1, 0, n + j + 2) * CoeffExpr::one_minus(1, 0, n + j + 3)).pow(j as i32);
        let den = CoeffExpr::QPoch { arg: super::ParamMonomial::abq(1, 0, 3), base: 1, n: j }
            * CoeffExpr::QPoch { arg: super::ParamMonomial::abq(1, 0, n + 3), base: 1, n: j };
        out.add_term((n + j + 1) as u32, CoeffExpr::q_power(-n * j) * gauss * lin / den);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::rel_err;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn ps() -> ParameterSet {
        ParameterSet::elliptic(c(0.8, 0.3), c(1.3, -0.4), c(0.6, 0.25), c(0.2, -0.1)).unwrap()
    }

    #[test]
    fn seeds() {
        assert_eq!(fib_elliptic(0, &ps()).unwrap(), c(0.0, 0.0));
        assert_eq!(fib_elliptic(1, &ps()).unwrap(), c(1.0, 0.0));
        assert_eq!(fib_elliptic(2, &ps()).unwrap(), c(1.0, 0.0));
        assert_eq!(fib_aq(1, c(0.3, 0.1), c(0.5, 0.2)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn fib_aq_three_by_hand() {
        let (a, q) = (c(0.3, 0.1), c(0.5, 0.2));
        let one = c(1.0, 0.0);
        let expect = one + (one - a * q.powi(4)) * (one - a * q.powi(5)) / ((one - a * q.powi(3)) * (one - a * q.powi(4))) / q;
        assert!(rel_err(fib_aq(3, a, q).unwrap(), expect) < 1e-13);
    }

    #[test]
    fn closed_form_exponent() {
        let (a, q) = (c(0.3, 0.1), c(0.5, 0.2));
        for n in 0..=15 {
            assert!(rel_err(fib_aq(n, a, q).unwrap(), fib_aq_closed(n, a, q).unwrap()) < 1e-8, "n={n}");
        }
        let bad = (3..=8).filter(|&n| rel_err(fib_aq(n, a, q).unwrap(), fib_aq_closed_with(n, a, q, -2).unwrap()) > 1e-4);
        assert_eq!(bad.count(), 6);
    }

    #[test]
    fn classical_limit() {
        // a → 0, q → 1 gives the Fibonacci numbers.
        let (a, q) = (c(1e-12, 0.0), c(1.0 - 1e-6, 0.0));
        assert!((fib_aq(6, a, q).unwrap() - c(8.0, 0.0)).norm() < 1e-4);
        assert!((fib_aq_closed(6, a, q).unwrap() - c(8.0, 0.0)).norm() < 1e-4);
    }

    #[test]
    fn generating_function() {
        let f = WeightFamily::Elliptic(ps());
        let g = genfun_expand(12, &f).unwrap();
        assert!(rel_err(g[0], c(1.0, 0.0)) < 1e-14);
        assert!(rel_err(g[1], c(1.0, 0.0)) < 1e-14);
        for n in 1..=12u32 {
            assert!(rel_err(g[n as usize - 1], fib_elliptic(n, &ps()).unwrap()) < 1e-8, "n={n}");
        }
        let (a, q) = (c(0.3, 0.1), c(0.5, 0.2));
        let g = genfun_expand(10, &WeightFamily::AQ { a, q }).unwrap();
        for n in 1..=10u32 {
            assert!(rel_err(g[n as usize - 1], fib_aq(n, a, q).unwrap()) < 1e-9);
        }
        assert!(genfun_expand(3, &WeightFamily::Q { q }).is_err());
    }

    #[test]
    fn lemma() {
        let f = WeightFamily::AQ { a: c(0.3, 0.1), q: c(0.5, 0.2) };
        for n in 0..=8 {
            let d = xeta_power(n).eval(&f).unwrap().max_rel_diff(&xeta_power_closed(n).eval(&f).unwrap());
            assert!(d < 1e-8, "n={n} {d}");
        }
    }
}

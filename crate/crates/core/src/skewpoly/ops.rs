use super::expr::{CoeffExpr, ParamMonomial};
use super::poly::SkewPoly;
use crate::special_fn::{ParameterSet, WeightFamily};
use crate::{Error, Result};

/// Which specialization of `η` to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaKind {
    /// `η_{a,b;q,p}`
    Elliptic,
    /// `η_{a;q}`, the `p → 0, b → 0` limit.
    AQ,
}

impl EtaKind {
    pub fn for_family(f: &WeightFamily) -> Result<EtaKind> {
        match f {
            WeightFamily::Elliptic(_) => Ok(EtaKind::Elliptic),
            WeightFamily::AQ { .. } => Ok(EtaKind::AQ),
            other => Err(Error::Unsupported(format!("no eta operator for the {} family", other.name()))),
        }
    }
}

/// `θ(qⁿ, aqⁿ, bqⁿ, aq^{2−n}/b) / θ(q, aq, bq^{2n−1}, aq/b)`.
pub fn d_factor(n: i64) -> CoeffExpr {
    CoeffExpr::theta_ratio(&[(0, 0, n), (1, 0, n), (0, 1, n), (1, -1, 2 - n)], &[(0, 0, 1), (1, 0, 1), (0, 1, 2 * n - 1), (1, -1, 1)])
}

/// The diagonal factor of `η` at degree `n`.
pub fn eta_factor(kind: EtaKind, n: i64) -> CoeffExpr {
    match kind {
        EtaKind::Elliptic => {
            CoeffExpr::theta_ratio(
                &[(1, 0, 1 + n), (1, 0, 2 + n), (0, 1, 1), (1, -1, 1 - n), (1, -1, -n)],
                &[(1, 0, 1), (1, 0, 2), (0, 1, 1 + 2 * n), (1, -1, 1), (1, -1, 0)],
            ) * CoeffExpr::q_power(n)
        }
        EtaKind::AQ => {
            let num = CoeffExpr::one_minus(1, 0, 1 + n) * CoeffExpr::one_minus(1, 0, 2 + n);
            let den = CoeffExpr::one_minus(1, 0, 1) * CoeffExpr::one_minus(1, 0, 2);
            num / den * CoeffExpr::q_power(-n)
        }
    }
}

/// `D(c(a,b) xⁿ) = c(aq⁻¹, bq⁻²) · d_factor(n) · x^{n−1}`; constants map to zero.
pub fn apply_d(p: &SkewPoly) -> SkewPoly {
    p.map_terms(|n, c| (n > 0).then(|| (n - 1, c.clone().shifted(-1, -2) * d_factor(n as i64))))
}

pub fn apply_d_pow(p: &SkewPoly, k: u32) -> SkewPoly {
    (0..k).fold(p.clone(), |acc, _| apply_d(&acc))
}

/// `η(c xⁿ) = c · eta_factor(n) · xⁿ`; the coefficient is not shifted.
pub fn apply_eta(p: &SkewPoly, kind: EtaKind) -> SkewPoly {
    p.map_terms(|n, c| Some((n, c.clone() * eta_factor(kind, n as i64))))
}

/// `(D^k x − x D^k)(xⁿ)` and `[k,1]_{bq^{2−2k}, aq^{1−k}} · D^{k−1}(η(xⁿ))`.
pub fn pincherle_sides(k: u32, n: u32) -> (SkewPoly, SkewPoly) {
    assert!(k >= 1, "the Pincherle identity starts at k = 1");
    let rule = super::ShiftRule::ELLIPTIC;
    let xn = SkewPoly::monomial(rule, n, CoeffExpr::one());
    let lhs = &apply_d_pow(&xn.x_pow_times(1), k) - &apply_d_pow(&xn, k).x_pow_times(1);
    let binom = CoeffExpr::Binom { n: k as i64, k: 1 }.shifted(2 - 2 * k as i64, 1 - k as i64).swapped();
    let rhs = apply_d_pow(&apply_eta(&xn, EtaKind::Elliptic), k - 1).scale(&binom);
    (lhs, rhs)
}

/// Largest relative residual of the k-th order Pincherle identity applied to `xⁿ`.
pub fn pincherle_check(k: u32, n: u32, ps: &ParameterSet) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    ps.require_elliptic()?;
    let f = WeightFamily::Elliptic(*ps);
    let (lhs, rhs) = pincherle_sides(k, n);
    Ok(lhs.eval(&f)?.max_rel_diff(&rhs.eval(&f)?))
}

/// Multiplication order of a noncommutative product `∏_{k=0}^{n−1} F_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `F_0 F_1 ⋯ F_{n−1}`
    LeftToRight,
    /// `F_{n−1} ⋯ F_1 F_0`
    RightToLeft,
}

pub fn product_expand(factors: &[SkewPoly], direction: Direction, rule: super::ShiftRule) -> SkewPoly {
    let one = SkewPoly::one(rule);
    match direction {
        Direction::LeftToRight => factors.iter().fold(one, |acc, f| acc.mul(f)),
        Direction::RightToLeft => factors.iter().fold(one, |acc, f| f.mul(&acc)),
    }
}

/// Both sides of the elliptic product expansion
/// `∏←_{k<n} (1 − W(1,k) c x) = Σ_k (−c)^k q^{k(k−1)/2} [n,k] (…) x^k`.
pub fn product_expansion_sides(n: u32, c: num_complex::Complex64, direction: Direction) -> (SkewPoly, SkewPoly) {
    let rule = super::ShiftRule::ELLIPTIC;
    let factors: Vec<SkewPoly> = (0..n as i64)
        .map(|k| SkewPoly::linear(rule, CoeffExpr::one(), -(CoeffExpr::BigWeight { s: 1, t: k } * CoeffExpr::constant(c))))
        .collect();
    let lhs = product_expand(&factors, direction, rule);
    let n = n as i64;
    let tp = |a: i32, b: i32, q: i64, base: i64, len: i64| CoeffExpr::ThetaPoch { arg: ParamMonomial::abq(a, b, q), base, n: len };
    let mut rhs = SkewPoly::zero(rule);
    for k in 0..=n {
        let num = vec![
            CoeffExpr::constant((-c).powi(k as i32)),
            CoeffExpr::q_power(k * (k - 1) / 2),
            CoeffExpr::Binom { n, k },
            tp(1, 0, n, 1, k),
            tp(0, 1, 1, 1, k),
            tp(1, -1, 0, -1, k),
            tp(1, -1, 1, 1, n - k),
        ];
        let den = vec![tp(1, 0, n - k + 1, 1, k), tp(0, 1, k, 1, k), tp(1, -1, n - 1, -1, k), tp(1, -1, 1 - k, 1, n - k)];
        rhs.add_term(k as u32, CoeffExpr::Product(num) / CoeffExpr::Product(den));
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::{binom_numeric, theta};
    use num_complex::Complex64 as C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn ps() -> ParameterSet {
        ParameterSet::elliptic(c(0.8, 0.3), c(1.3, -0.4), c(0.6, 0.25), c(0.2, -0.1)).unwrap()
    }

    fn rel(l: C64, r: C64) -> f64 {
        crate::verify::rel_err(l, r)
    }

    #[test]
    fn d_of_constant_and_x() {
        let rule = super::super::ShiftRule::ELLIPTIC;
        let f = WeightFamily::Elliptic(ps());
        assert!(apply_d(&SkewPoly::one(rule)).is_zero());
        let dx = apply_d(&SkewPoly::x(rule)).eval(&f).unwrap();
        assert!(rel(dx.get(0), c(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn d_of_x_squared_is_a_binomial() {
        let rule = super::super::ShiftRule::ELLIPTIC;
        let f = WeightFamily::Elliptic(ps());
        let v = apply_d(&SkewPoly::monomial(rule, 2, CoeffExpr::one())).eval(&f).unwrap().get(1);
        assert!(rel(v, binom_numeric(&f, 2, 1).unwrap()) < 1e-9);
    }

    #[test]
    fn eta_examples() {
        let rule = super::super::ShiftRule::ELLIPTIC;
        let p = ps();
        let f = WeightFamily::Elliptic(p);
        let e0 = apply_eta(&SkewPoly::one(rule), EtaKind::Elliptic).eval(&f).unwrap();
        assert!(rel(e0.get(0), c(1.0, 0.0)) < 1e-12);
        let e1 = apply_eta(&SkewPoly::x(rule), EtaKind::Elliptic).eval(&f).unwrap().get(1);
        let th = |x: C64| theta(x, p.p).unwrap();
        let (a, b, q) = (p.a, p.b, p.q);
        let direct = th(a * q * q) * th(a * q * q * q) * th(b * q) * th(a / b) * th(a / (b * q))
            / (th(a * q) * th(a * q * q) * th(b * q * q * q) * th(a * q / b) * th(a / b))
            * q;
        assert!(rel(e1, direct) < 1e-12);
    }

    #[test]
    fn pincherle_small_cases() {
        assert!(pincherle_check(1, 0, &ps()).unwrap() < 1e-9);
        assert!(pincherle_check(2, 3, &ps()).unwrap() < 1e-8);
        assert!(pincherle_check(5, 8, &ps()).unwrap() < 1e-7);
    }

    #[test]
    fn product_expansion_order() {
        let f = WeightFamily::Elliptic(ps());
        let cc = c(0.7, 0.4);
        assert!(product_expand(&[], Direction::LeftToRight, super::super::ShiftRule::ELLIPTIC).eval(&f).unwrap().get(0) == c(1.0, 0.0));
        for n in 1..=5 {
            let (l, r) = product_expansion_sides(n, cc, Direction::RightToLeft);
            let d = l.eval(&f).unwrap().max_rel_diff(&r.eval(&f).unwrap());
            assert!(d < 1e-9, "n={n} {d}");
        }
        // Multiplying in the other order does not give the stated expansion.
        let (l, r) = product_expansion_sides(3, cc, Direction::LeftToRight);
        assert!(l.eval(&f).unwrap().max_rel_diff(&r.eval(&f).unwrap()) > 1e-3);
    }
}

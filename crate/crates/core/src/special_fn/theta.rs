use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Factors with both `|p^j x|` and `|p^{j+1}/x|` below this are dropped.
pub const THETA_EPS: f64 = 1e-17;
/// Hard cap on the number of product factors in [`theta`].
pub const THETA_MAX_FACTORS: usize = 300;
/// Denominator magnitudes below this raise [`Error::NearPole`].
pub const NEAR_POLE: f64 = 1e-12;

pub fn check_finite(v: C64, what: &str) -> Result<C64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

pub fn guard_denominator(v: C64, what: &str) -> Result<C64> {
    let magnitude = v.norm();
    if magnitude < NEAR_POLE || !magnitude.is_finite() {
        return Err(Error::NearPole {
            what: what.to_string(),
            magnitude,
        });
    }
    Ok(v)
}

/// `q^n` for an integer exponent.
pub fn qpow(q: C64, n: i64) -> C64 {
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    q.powi(n as i32)
}

/// `q^z` for complex `z` through the principal logarithm. Integral real `z`
/// is routed through [`qpow`] so that no branch choice is involved.
pub fn qpow_complex(q: C64, z: C64) -> C64 {
    if z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < i32::MAX as f64 {
        return qpow(q, z.re as i64);
    }
    (z * q.ln()).exp()
}

/// The modified Jacobi theta function `θ(x;p) = ∏_{j≥0} (1 − p^j x)(1 − p^{j+1}/x)`.
pub fn theta(x: C64, p: C64) -> Result<C64> {
    if p.norm().is_nan() || p.norm() >= 1.0 {
        return Err(Error::Domain(format!("theta nome must satisfy |p| < 1, got |p| = {}", p.norm())));
    }
    if x == C64::new(0.0, 0.0) || !x.re.is_finite() || !x.im.is_finite() {
        return Err(Error::Domain(format!("theta argument must be finite and nonzero, got {x}")));
    }
    let one = C64::new(1.0, 0.0);
    let mut acc = one;
    let mut pj = one;
    for _ in 0..THETA_MAX_FACTORS {
        let u = pj * x;
        let v = pj * p / x;
        if u.norm() < THETA_EPS && v.norm() < THETA_EPS {
            break;
        }
        acc *= (one - u) * (one - v);
        pj *= p;
    }
    check_finite(acc, "theta")
}

/// `θ(x;p)` through the Jacobi triple product,
/// `Σ_{k∈ℤ} (−1)^k p^{k(k−1)/2} x^k / (p;p)_∞`.
///
/// Slower than [`theta`] and shares no code with it, so verification uses it
/// as an independent route.
pub fn theta_series(x: C64, p: C64) -> Result<C64> {
    if p.norm().is_nan() || p.norm() >= 1.0 {
        return Err(Error::Domain(format!("theta nome must satisfy |p| < 1, got |p| = {}", p.norm())));
    }
    if x == C64::new(0.0, 0.0) || !x.re.is_finite() || !x.im.is_finite() {
        return Err(Error::Domain(format!("theta argument must be finite and nonzero, got {x}")));
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    if p == zero {
        return Ok(one - x);
    }
    let mut pinf = one;
    let mut pk = p;
    while pk.norm() > 1e-18 {
        pinf *= one - pk;
        pk *= p;
    }
    // positive and negative k accumulated separately; the term ratio is
    // -p^k x going up and -p^k / x going down
    let mut sum = one;
    let mut term = one;
    let mut k = 0i64;
    loop {
        term *= -(p.powi(k as i32)) * x;
        k += 1;
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1.0) && k > 2 {
            break;
        }
        if k > 2000 {
            return Err(Error::NonFinite("theta series did not converge".into()));
        }
    }
    term = one;
    k = 0;
    loop {
        k += 1;
        term *= -(p.powi(k as i32)) / x;
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1.0) && k > 2 {
            break;
        }
        if k > 2000 {
            return Err(Error::NonFinite("theta series did not converge".into()));
        }
    }
    check_finite(sum / pinf, "theta series")
}

/// `θ(x_1, …, x_m; p)`.
pub fn theta_product(xs: &[C64], p: C64) -> Result<C64> {
    xs.iter().try_fold(C64::new(1.0, 0.0), |acc, &x| Ok(acc * theta(x, p)?))
}

/// Theta-shifted factorial `(a; q, p)_n` for any integer `n`.
///
/// Negative `n` divides by `∏_{j=0}^{-n-1} θ(a q^{n+j}; p)`; a vanishing factor
/// yields [`Error::Pole`] carrying the offending index `n + j`.
pub fn qp_factorial(a: C64, q: C64, p: C64, n: i64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    if n >= 0 {
        let mut acc = one;
        for j in 0..n {
            acc *= theta(a * qpow(q, j), p)?;
        }
        return check_finite(acc, "qp_factorial");
    }
    let mut den = one;
    for j in 0..(-n) {
        let idx = n + j;
        let f = theta(a * qpow(q, idx), p)?;
        if f.norm() < NEAR_POLE {
            return Err(Error::Pole { index: idx });
        }
        den *= f;
    }
    check_finite(one / den, "qp_factorial")
}

/// The `q`-shifted factorial `(a; q)_n`, i.e. the `p = 0` case written with
/// linear factors so that `a = 0` is allowed.
pub fn q_poch(a: C64, q: C64, n: i64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    if n >= 0 {
        let mut acc = one;
        for j in 0..n {
            acc *= one - a * qpow(q, j);
        }
        return check_finite(acc, "q_poch");
    }
    let mut den = one;
    for j in 0..(-n) {
        let idx = n + j;
        let f = one - a * qpow(q, idx);
        if f.norm() < NEAR_POLE {
            return Err(Error::Pole { index: idx });
        }
        den *= f;
    }
    check_finite(one / den, "q_poch")
}

/// A complex number `m · 2^e` with `|m|` in `[1, 2)`.
///
/// Long theta products at small `|q|` routinely leave the `f64` range even
/// when the quotient they feed into is moderate, so products and quotients
/// are accumulated in this form and only converted at the end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    m: C64,
    e: i64,
}

impl Scaled {
    pub const ONE: Scaled = Scaled { m: C64::new(1.0, 0.0), e: 0 };
    pub const ZERO: Scaled = Scaled { m: C64::new(0.0, 0.0), e: 0 };

    pub fn new(v: C64) -> Self {
        Scaled { m: v, e: 0 }.normalized()
    }

    fn normalized(mut self) -> Self {
        let r = self.m.norm();
        if r == 0.0 || !r.is_finite() {
            return self;
        }
        let k = r.log2().floor() as i64;
        if k != 0 {
            self.m *= 2f64.powi(-k as i32);
            self.e += k;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.m == C64::new(0.0, 0.0)
    }

    /// `log₂ |self|`.
    pub fn log2_norm(&self) -> f64 {
        self.m.norm().log2() + self.e as f64
    }

    fn sum(self, o: Scaled) -> Scaled {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (big, small) = if self.e >= o.e { (self, o) } else { (o, self) };
        let gap = big.e - small.e;
        if gap > 1100 {
            return big;
        }
        Scaled { m: big.m + small.m * 2f64.powi(-gap as i32), e: big.e }.normalized()
    }

    pub fn powi(self, n: i32) -> Scaled {
        let mut acc = Scaled::ONE;
        let base = if n < 0 { Scaled::ONE / self } else { self };
        for _ in 0..n.unsigned_abs() {
            acc = acc * base;
        }
        acc
    }

    /// The plain value; overflows to infinity when out of range.
    pub fn value(&self) -> C64 {
        let mut v = self.m;
        let mut e = self.e;
        while e != 0 {
            let step = e.clamp(-1000, 1000);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        v
    }
}

impl std::ops::Mul for Scaled {
    type Output = Scaled;
    fn mul(self, o: Scaled) -> Scaled {
        Scaled { m: self.m * o.m, e: self.e + o.e }.normalized()
    }
}

impl std::ops::Div for Scaled {
    type Output = Scaled;
    fn div(self, o: Scaled) -> Scaled {
        Scaled { m: self.m / o.m, e: self.e - o.e }.normalized()
    }
}

impl std::ops::Add for Scaled {
    type Output = Scaled;
    fn add(self, o: Scaled) -> Scaled {
        self.sum(o)
    }
}

/// `(a; q, p)_n` as a [`Scaled`] number, `n ≥ 0`.
pub fn qp_factorial_scaled(a: C64, q: C64, p: C64, n: i64) -> Result<Scaled> {
    if n < 0 {
        return qp_factorial(a, q, p, n).map(Scaled::new);
    }
    let mut acc = Scaled::ONE;
    for j in 0..n {
        acc = acc * Scaled::new(theta(a * qpow(q, j), p)?);
    }
    Ok(acc)
}

/// Accumulates a quotient factor by factor, guarding every denominator factor
/// individually.
#[derive(Debug, Clone)]
pub struct Quotient {
    num: Scaled,
    den: Scaled,
    what: &'static str,
}

impl Quotient {
    pub fn new(what: &'static str) -> Self {
        Quotient { num: Scaled::ONE, den: Scaled::ONE, what }
    }

    pub fn mul(&mut self, v: C64) -> &mut Self {
        self.num = self.num * Scaled::new(v);
        self
    }

    pub fn div(&mut self, v: C64) -> Result<&mut Self> {
        self.den = self.den * Scaled::new(guard_denominator(v, self.what)?);
        Ok(self)
    }

    pub fn mul_theta(&mut self, xs: &[C64], p: C64) -> Result<&mut Self> {
        for &x in xs {
            self.mul(theta(x, p)?);
        }
        Ok(self)
    }

    pub fn div_theta(&mut self, xs: &[C64], p: C64) -> Result<&mut Self> {
        for &x in xs {
            let t = theta(x, p)?;
            self.div(t)?;
        }
        Ok(self)
    }

    /// Multiplies by `(a; q, p)_n`, `n ≥ 0`.
    pub fn mul_qp(&mut self, a: C64, q: C64, p: C64, n: i64) -> Result<&mut Self> {
        debug_assert!(n >= 0);
        for j in 0..n {
            self.mul(theta(a * qpow(q, j), p)?);
        }
        Ok(self)
    }

    /// Divides by `(a; q, p)_n`, `n ≥ 0`, guarding each theta factor.
    pub fn div_qp(&mut self, a: C64, q: C64, p: C64, n: i64) -> Result<&mut Self> {
        debug_assert!(n >= 0);
        for j in 0..n {
            let t = theta(a * qpow(q, j), p)?;
            self.div(t)?;
        }
        Ok(self)
    }

    /// Multiplies by `(a; q)_n` with linear factors.
    pub fn mul_q(&mut self, a: C64, q: C64, n: i64) -> &mut Self {
        let one = C64::new(1.0, 0.0);
        for j in 0..n {
            self.mul(one - a * qpow(q, j));
        }
        self
    }

    /// Divides by `(a; q)_n` with linear factors.
    pub fn div_q(&mut self, a: C64, q: C64, n: i64) -> Result<&mut Self> {
        let one = C64::new(1.0, 0.0);
        for j in 0..n {
            self.div(one - a * qpow(q, j))?;
        }
        Ok(self)
    }

    pub fn scaled(&self) -> Scaled {
        self.num / self.den
    }

    pub fn value(&self) -> Result<C64> {
        check_finite(self.scaled().value(), self.what)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn theta_at_zero_nome_is_linear() {
        let v = theta(c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(v, c(0.5, 0.0));
    }

    #[test]
    fn theta_vanishes_at_one() {
        let v = theta(c(1.0, 0.0), c(0.3, 0.0)).unwrap();
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn theta_inversion_single_point() {
        let x = c(0.4, 0.1);
        let p = c(0.2, 0.0);
        let v = theta(x, p).unwrap();
        let w = theta(x.inv(), p).unwrap();
        assert!((w + v / x).norm() <= 1e-12 * v.norm());
    }

    #[test]
    fn theta_domain_errors() {
        assert!(matches!(theta(c(0.5, 0.0), c(1.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(theta(c(0.0, 0.0), c(0.1, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn theta_respects_factor_cap() {
        // |p| close to 1 would need thousands of factors; the cap keeps the call bounded.
        let v = theta(c(0.5, 0.1), c(0.999, 0.0)).unwrap();
        assert!(v.re.is_finite());
    }

    #[test]
    fn qp_factorial_cases() {
        let a = c(0.7, -0.2);
        let q = c(0.5, 0.3);
        let p = c(0.1, 0.05);
        assert_eq!(qp_factorial(a, q, p, 0).unwrap(), c(1.0, 0.0));
        let two = qp_factorial(a, q, c(0.0, 0.0), 2).unwrap();
        let expect = (c(1.0, 0.0) - a) * (c(1.0, 0.0) - a * q);
        assert!((two - expect).norm() < 1e-15);
        let m1 = qp_factorial(a, q, p, -1).unwrap();
        let direct = c(1.0, 0.0) / theta(a / q, p).unwrap();
        assert!((m1 - direct).norm() <= 1e-14 * direct.norm());
    }

    #[test]
    fn qp_factorial_pole_reports_index() {
        // a q^{-2} = 1 makes the j = 0 factor of (a;q,p)_{-2} vanish.
        let q = c(0.5, 0.0);
        let a = q * q;
        let err = qp_factorial(a, q, c(0.1, 0.0), -2).unwrap_err();
        assert_eq!(err, Error::Pole { index: -2 });
    }

    #[test]
    fn quotient_guards_denominators() {
        let mut quot = Quotient::new("test");
        assert!(matches!(quot.div(c(1e-13, 0.0)), Err(Error::NearPole { .. })));
    }

    #[test]
    fn series_matches_product() {
        for (x, p) in [(c(0.7, 0.2), c(0.3, -0.1)), (c(-1.5, 0.4), c(0.05, 0.45)), (c(2.0, 0.0), C64::new(0.0, 0.0))] {
            let (a, b) = (theta(x, p).unwrap(), theta_series(x, p).unwrap());
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "{x} {p}: {a} {b}");
        }
        assert!(theta_series(c(0.0, 0.0), c(0.1, 0.0)).is_err());
        assert!(theta_series(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn scaled_survives_overflow() {
        let big = Scaled::new(c(1e200, 1e200));
        let prod = big * big * big;
        assert!(prod.value().re.is_infinite());
        let back = prod / big / big;
        assert!((back.value() - c(1e200, 1e200)).norm() < 1e188);
        assert!((prod.log2_norm() - 3.0 * (2f64.sqrt() * 1e200).log2()).abs() < 1e-9);
        let inv_sq = Scaled::new(c(3.0, -1.0)).powi(-2).value();
        assert!((inv_sq - 1.0 / c(8.0, -6.0)).norm() < 1e-15);
    }

    #[test]
    fn scaled_addition_aligns_exponents() {
        let a = Scaled::new(c(1.5e10, 0.0));
        let b = Scaled::new(c(-2.0e-3, 4.0));
        assert!(((a + b).value() - c(1.5e10 - 2.0e-3, 4.0)).norm() < 1e-5);
        assert_eq!(Scaled::ZERO + b, b);
        assert!((a + Scaled::new(c(-1.5e10, 0.0))).is_zero());
    }

    #[test]
    fn scaled_factorial_matches_plain() {
        let (a, q, p) = (c(0.4, 0.3), c(0.5, -0.2), c(0.1, 0.05));
        let plain = qp_factorial(a, q, p, 6).unwrap();
        assert!((qp_factorial_scaled(a, q, p, 6).unwrap().value() - plain).norm() < 1e-12 * plain.norm());
    }

    proptest::proptest! {
        #[test]
        fn series_agrees_with_product(r in 0.2f64..5.0, phi in 0.0f64..std::f64::consts::TAU, pr in 0.0f64..0.6, pphi in 0.0f64..std::f64::consts::TAU) {
            let (x, p) = (C64::from_polar(r, phi), C64::from_polar(pr, pphi));
            let (a, b) = (theta(x, p).unwrap(), theta_series(x, p).unwrap());
            let size = a.norm().max(b.norm());
            // both routes carry absolute error of order eps·max(|x|, 1/|x|)^k
            proptest::prop_assert!((a - b).norm() <= 1e-10 * size.max(1.0));
        }
    }
}

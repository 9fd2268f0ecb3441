//! Evaluation trees for coefficients that depend on `(a, b; q, p)`.
//!
//! A [`CoeffExpr`] is never simplified symbolically. Equality of two
//! expressions is decided by evaluating both at sampled parameters.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::ncword::WeightPolynomial;
use crate::special_fn::{binom_numeric, bracket_z, check_finite, q_poch, qp_factorial_scaled, qpow, theta, Scaled, WeightFamily, NEAR_POLE};
use crate::{Error, Result};

/// `coef · a^i · b^j · q^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamMonomial {
    pub coef: C64,
    pub a: i32,
    pub b: i32,
    pub q: i64,
}

impl ParamMonomial {
    pub fn new(coef: C64, a: i32, b: i32, q: i64) -> Self {
        ParamMonomial { coef, a, b, q }
    }

    /// `a^i b^j q^k` with unit coefficient.
    pub fn abq(a: i32, b: i32, q: i64) -> Self {
        Self::new(C64::new(1.0, 0.0), a, b, q)
    }

    pub fn eval(&self, fam: &WeightFamily) -> Result<C64> {
        let ps = fam.params()?;
        let pow = |base: C64, e: i32, name: &str| -> Result<C64> {
            if e == 0 {
                return Ok(C64::new(1.0, 0.0));
            }
            if e < 0 && base == C64::new(0.0, 0.0) {
                return Err(Error::Domain(format!("negative power of {name} = 0")));
            }
            Ok(base.powi(e))
        };
        let v = self.coef * pow(ps.a, self.a, "a")? * pow(ps.b, self.b, "b")? * qpow(ps.q, self.q);
        check_finite(v, "parameter monomial")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoeffExpr {
    Const(C64),
    Param(ParamMonomial),
    /// `θ(m; p)`
    Theta(ParamMonomial),
    /// `1 − m`
    OneMinus(ParamMonomial),
    /// `(m; q^base, p)_n`
    ThetaPoch { arg: ParamMonomial, base: i64, n: i64 },
    /// `(m; q^base)_n`
    QPoch { arg: ParamMonomial, base: i64, n: i64 },
    /// `[z]_{a,b;q,p}`
    Bracket(i64),
    /// A polynomial in the formal weights, evaluated with the family's small weights.
    Weight(WeightPolynomial),
    /// The family's big weight `W(s,t)` (closed form).
    BigWeight { s: i64, t: i64 },
    /// The family's binomial coefficient (closed form).
    Binom { n: i64, k: i64 },
    Sum(Vec<CoeffExpr>),
    Product(Vec<CoeffExpr>),
    Quotient(Box<CoeffExpr>, Box<CoeffExpr>),
    Pow(Box<CoeffExpr>, i32),
    /// Evaluate the inner expression at `(a q^da, b q^db)`.
    Shift { da: i64, db: i64, inner: Box<CoeffExpr> },
    /// Evaluate the inner expression with `a` and `b` exchanged.
    SwapAB(Box<CoeffExpr>),
}

impl CoeffExpr {
    pub fn zero() -> Self {
        CoeffExpr::Const(C64::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        CoeffExpr::Const(C64::new(1.0, 0.0))
    }

    pub fn constant(v: C64) -> Self {
        CoeffExpr::Const(v)
    }

    pub fn real(v: f64) -> Self {
        CoeffExpr::Const(C64::new(v, 0.0))
    }

    pub fn is_const_zero(&self) -> bool {
        matches!(self, CoeffExpr::Const(c) if *c == C64::new(0.0, 0.0))
    }

    pub fn is_const_one(&self) -> bool {
        matches!(self, CoeffExpr::Const(c) if *c == C64::new(1.0, 0.0))
    }

    pub fn theta(a: i32, b: i32, q: i64) -> Self {
        CoeffExpr::Theta(ParamMonomial::abq(a, b, q))
    }

    /// `∏ θ(args)`.
    pub fn theta_product(args: &[(i32, i32, i64)]) -> Self {
        CoeffExpr::Product(args.iter().map(|&(a, b, q)| CoeffExpr::theta(a, b, q)).collect())
    }

    /// `θ(num…) / θ(den…)`.
    pub fn theta_ratio(num: &[(i32, i32, i64)], den: &[(i32, i32, i64)]) -> Self {
        CoeffExpr::theta_product(num) / CoeffExpr::theta_product(den)
    }

    pub fn one_minus(a: i32, b: i32, q: i64) -> Self {
        CoeffExpr::OneMinus(ParamMonomial::abq(a, b, q))
    }

    pub fn q_power(k: i64) -> Self {
        CoeffExpr::Param(ParamMonomial::abq(0, 0, k))
    }

    pub fn pow(self, e: i32) -> Self {
        match e {
            0 => CoeffExpr::one(),
            1 => self,
            _ => CoeffExpr::Pow(Box::new(self), e),
        }
    }

    /// The expression evaluated at `(a q^da, b q^db)`. Shifts compose additively.
    pub fn shifted(self, da: i64, db: i64) -> Self {
        if da == 0 && db == 0 {
            return self;
        }
        match self {
            c @ CoeffExpr::Const(_) => c,
            CoeffExpr::Shift { da: a0, db: b0, inner } => {
                if a0 + da == 0 && b0 + db == 0 {
                    *inner
                } else {
                    CoeffExpr::Shift { da: a0 + da, db: b0 + db, inner }
                }
            }
            other => CoeffExpr::Shift { da, db, inner: Box::new(other) },
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            c @ CoeffExpr::Const(_) => c,
            CoeffExpr::SwapAB(inner) => *inner,
            other => CoeffExpr::SwapAB(Box::new(other)),
        }
    }

    pub fn eval(&self, fam: &WeightFamily) -> Result<C64> {
        check_finite(self.eval_scaled(fam)?.value(), "coefficient expression")
    }

    /// Evaluation with an explicit binary exponent, so that intermediate
    /// theta products cannot overflow.
    pub fn eval_scaled(&self, fam: &WeightFamily) -> Result<Scaled> {
        let leaf = |v: C64| -> Result<Scaled> { Ok(Scaled::new(check_finite(v, "coefficient expression")?)) };
        match self {
            CoeffExpr::Const(c) => leaf(*c),
            CoeffExpr::Param(m) => leaf(m.eval(fam)?),
            CoeffExpr::Theta(m) => leaf(theta(m.eval(fam)?, fam.params()?.p)?),
            CoeffExpr::OneMinus(m) => leaf(C64::new(1.0, 0.0) - m.eval(fam)?),
            CoeffExpr::ThetaPoch { arg, base, n } => {
                let ps = fam.params()?;
                qp_factorial_scaled(arg.eval(fam)?, qpow(ps.q, *base), ps.p, *n)
            }
            CoeffExpr::QPoch { arg, base, n } => {
                let ps = fam.params()?;
                leaf(q_poch(arg.eval(fam)?, qpow(ps.q, *base), *n)?)
            }
            CoeffExpr::Bracket(z) => {
                let ps = fam.params()?;
                leaf(bracket_z(&ps, C64::new(*z as f64, 0.0))?)
            }
            CoeffExpr::Weight(poly) => leaf(poly.eval(|s, t| fam.small(s as i64, t as i64))?),
            CoeffExpr::BigWeight { s, t } => leaf(fam.big(*s, *t)?),
            CoeffExpr::Binom { n, k } => leaf(binom_numeric(fam, *n, *k)?),
            CoeffExpr::Sum(items) => items.iter().try_fold(Scaled::ZERO, |acc, it| Ok(acc + it.eval_scaled(fam)?)),
            CoeffExpr::Product(items) => items.iter().try_fold(Scaled::ONE, |acc, it| Ok(acc * it.eval_scaled(fam)?)),
            CoeffExpr::Quotient(n, d) => {
                let den = d.eval_scaled(fam)?;
                guard_scaled(&den, "coefficient quotient")?;
                Ok(n.eval_scaled(fam)? / den)
            }
            CoeffExpr::Pow(base, e) => {
                let v = base.eval_scaled(fam)?;
                if *e < 0 {
                    guard_scaled(&v, "coefficient power")?;
                }
                Ok(v.powi(*e))
            }
            CoeffExpr::Shift { da, db, inner } => inner.eval_scaled(&fam.shifted(*da, *db)?),
            CoeffExpr::SwapAB(inner) => inner.eval_scaled(&fam.swapped()?),
        }
    }
}

fn guard_scaled(v: &Scaled, what: &str) -> Result<()> {
    if v.is_zero() || v.log2_norm() < NEAR_POLE.log2() {
        let magnitude = if v.is_zero() { 0.0 } else { v.log2_norm().exp2() };
        return Err(Error::NearPole { what: what.to_string(), magnitude });
    }
    Ok(())
}

impl From<C64> for CoeffExpr {
    fn from(v: C64) -> Self {
        CoeffExpr::Const(v)
    }
}

impl Mul for CoeffExpr {
    type Output = CoeffExpr;

    fn mul(self, rhs: CoeffExpr) -> CoeffExpr {
        if self.is_const_zero() || rhs.is_const_zero() {
            return CoeffExpr::zero();
        }
        if self.is_const_one() {
            return rhs;
        }
        if rhs.is_const_one() {
            return self;
        }
        match (self, rhs) {
            (CoeffExpr::Const(a), CoeffExpr::Const(b)) => CoeffExpr::Const(a * b),
            (CoeffExpr::Product(mut a), CoeffExpr::Product(b)) => {
                a.extend(b);
                CoeffExpr::Product(a)
            }
            (CoeffExpr::Product(mut a), b) => {
                a.push(b);
                CoeffExpr::Product(a)
            }
            (a, CoeffExpr::Product(mut b)) => {
                b.insert(0, a);
                CoeffExpr::Product(b)
            }
            (a, b) => CoeffExpr::Product(vec![a, b]),
        }
    }
}

impl Div for CoeffExpr {
    type Output = CoeffExpr;

    fn div(self, rhs: CoeffExpr) -> CoeffExpr {
        if rhs.is_const_one() {
            return self;
        }
        if self.is_const_zero() {
            return CoeffExpr::zero();
        }
        CoeffExpr::Quotient(Box::new(self), Box::new(rhs))
    }
}

impl Add for CoeffExpr {
    type Output = CoeffExpr;

    fn add(self, rhs: CoeffExpr) -> CoeffExpr {
        if self.is_const_zero() {
            return rhs;
        }
        if rhs.is_const_zero() {
            return self;
        }
        match (self, rhs) {
            (CoeffExpr::Const(a), CoeffExpr::Const(b)) => CoeffExpr::Const(a + b),
            (CoeffExpr::Sum(mut a), CoeffExpr::Sum(b)) => {
                a.extend(b);
                CoeffExpr::Sum(a)
            }
            (CoeffExpr::Sum(mut a), b) => {
                a.push(b);
                CoeffExpr::Sum(a)
            }
            (a, b) => CoeffExpr::Sum(vec![a, b]),
        }
    }
}

impl Neg for CoeffExpr {
    type Output = CoeffExpr;

    fn neg(self) -> CoeffExpr {
        match self {
            CoeffExpr::Const(c) => CoeffExpr::Const(-c),
            other => CoeffExpr::real(-1.0) * other,
        }
    }
}

impl Sub for CoeffExpr {
    type Output = CoeffExpr;

    fn sub(self, rhs: CoeffExpr) -> CoeffExpr {
        self + (-rhs)
    }
}

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::expr::CoeffExpr;
use crate::special_fn::WeightFamily;
use crate::Result;

/// How `x` moves parameters: `x · f(a, b) = f(a q^da, b q^db) · x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftRule {
    pub da: i64,
    pub db: i64,
}

impl ShiftRule {
    /// The elliptic-commuting rule `x f(a,b) = f(aq, bq²) x`.
    pub const ELLIPTIC: ShiftRule = ShiftRule { da: 1, db: 2 };
}

impl Default for ShiftRule {
    fn default() -> Self {
        ShiftRule::ELLIPTIC
    }
}

/// `Σ_k c_k(a,b) x^k` with coefficients to the left of the powers of `x`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SkewPoly {
    coeffs: BTreeMap<u32, CoeffExpr>,
    rule: ShiftRule,
}

/// Coefficient values at one parameter point, keyed by degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkewPolyValues {
    pub coeffs: BTreeMap<u32, C64>,
}

impl SkewPoly {
    pub fn zero(rule: ShiftRule) -> Self {
        SkewPoly { coeffs: BTreeMap::new(), rule }
    }

    pub fn one(rule: ShiftRule) -> Self {
        Self::monomial(rule, 0, CoeffExpr::one())
    }

    /// `c · x^n`.
    pub fn monomial(rule: ShiftRule, n: u32, c: CoeffExpr) -> Self {
        let mut p = Self::zero(rule);
        p.add_term(n, c);
        p
    }

    pub fn x(rule: ShiftRule) -> Self {
        Self::monomial(rule, 1, CoeffExpr::one())
    }

    /// `c_0 + c_1 x`.
    pub fn linear(rule: ShiftRule, c0: CoeffExpr, c1: CoeffExpr) -> Self {
        let mut p = Self::monomial(rule, 0, c0);
        p.add_term(1, c1);
        p
    }

    pub fn rule(&self) -> ShiftRule {
        self.rule
    }

    pub fn add_term(&mut self, n: u32, c: CoeffExpr) {
        if c.is_const_zero() {
            return;
        }
        let merged = match self.coeffs.remove(&n) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_const_zero() {
            self.coeffs.insert(n, merged);
        }
    }

    pub fn coefficient(&self, n: u32) -> Option<&CoeffExpr> {
        self.coeffs.get(&n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &CoeffExpr)> {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c · self` with `c` on the left (no shift).
    pub fn scale(&self, c: &CoeffExpr) -> SkewPoly {
        let mut out = SkewPoly::zero(self.rule);
        for (&n, t) in &self.coeffs {
            out.add_term(n, c.clone() * t.clone());
        }
        out
    }

    /// Termwise map `c x^n ↦ g(n, c) x^{m(n)}`.
    pub fn map_terms<F>(&self, mut f: F) -> SkewPoly
    where
        F: FnMut(u32, &CoeffExpr) -> Option<(u32, CoeffExpr)>,
    {
        let mut out = SkewPoly::zero(self.rule);
        for (&n, c) in &self.coeffs {
            if let Some((m, v)) = f(n, c) {
                out.add_term(m, v);
            }
        }
        out
    }

    /// Product in the skew ring: `c x^i · d x^j = c · d(a q^{i·da}, b q^{i·db}) x^{i+j}`.
    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        let rule = self.rule;
        let mut out = SkewPoly::zero(rule);
        for (&i, c) in &self.coeffs {
            for (&j, d) in &other.coeffs {
                let shifted = d.clone().shifted(i as i64 * rule.da, i as i64 * rule.db);
                out.add_term(i + j, c.clone() * shifted);
            }
        }
        out
    }

    /// Left multiplication by `x^k`.
    pub fn x_pow_times(&self, k: u32) -> SkewPoly {
        let (da, db) = (k as i64 * self.rule.da, k as i64 * self.rule.db);
        self.map_terms(|n, c| Some((n + k, c.clone().shifted(da, db))))
    }

    pub fn truncate(&self, max_degree: u32) -> SkewPoly {
        self.map_terms(|n, c| (n <= max_degree).then(|| (n, c.clone())))
    }

    pub fn eval(&self, f: &WeightFamily) -> Result<SkewPolyValues> {
        let coeffs = self.coeffs.iter().map(|(&n, c)| Ok((n, c.eval(f)?))).collect::<Result<_>>()?;
        Ok(SkewPolyValues { coeffs })
    }
}

impl SkewPolyValues {
    pub fn get(&self, n: u32) -> C64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    /// Largest relative coefficient difference over the union of degrees.
    pub fn max_rel_diff(&self, other: &SkewPolyValues) -> f64 {
        let keys: std::collections::BTreeSet<u32> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter()
            .map(|n| crate::verify::rel_err(self.get(n), other.get(n)))
            .fold(0.0, f64::max)
    }
}

impl Add for &SkewPoly {
    type Output = SkewPoly;

    fn add(self, rhs: &SkewPoly) -> SkewPoly {
        let mut out = self.clone();
        for (&n, c) in &rhs.coeffs {
            out.add_term(n, c.clone());
        }
        out
    }
}

impl Neg for &SkewPoly {
    type Output = SkewPoly;

    fn neg(self) -> SkewPoly {
        self.map_terms(|n, c| Some((n, -c.clone())))
    }
}

impl Sub for &SkewPoly {
    type Output = SkewPoly;

    fn sub(self, rhs: &SkewPoly) -> SkewPoly {
        self + &(-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewpoly::ParamMonomial;
    use crate::special_fn::ParameterSet;

    fn fam() -> WeightFamily {
        let c = C64::new;
        WeightFamily::Elliptic(ParameterSet::elliptic(c(0.8, 0.3), c(1.3, -0.4), c(0.45, 0.35), c(0.2, -0.1)).unwrap())
    }

    #[test]
    fn x_shifts_coefficients() {
        let rule = ShiftRule::ELLIPTIC;
        let b = SkewPoly::monomial(rule, 0, CoeffExpr::Param(ParamMonomial::abq(0, 1, 0)));
        let xb = SkewPoly::x(rule).mul(&b).eval(&fam()).unwrap();
        let ps = fam().params().unwrap();
        assert!((xb.get(1) - ps.b * ps.q * ps.q).norm() < 1e-14);
        assert_eq!(b.x_pow_times(1), SkewPoly::x(rule).mul(&b));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let rule = ShiftRule::ELLIPTIC;
        let p = SkewPoly::x(rule);
        assert!((&p - &p).is_zero());
        assert_eq!(SkewPoly::linear(rule, CoeffExpr::one(), CoeffExpr::zero()).degree(), Some(0));
    }

    #[test]
    fn values_json() {
        let v = SkewPoly::x(ShiftRule::ELLIPTIC).eval(&fam()).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"coeffs":{"1":[1.0,0.0]}}"#);
    }
}

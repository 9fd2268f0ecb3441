//! Two-variable polynomials with parameter-dependent coefficients.
//!
//! Unlike [`NormalForm`], the coefficients here may be arbitrary functions
//! of `(a, b; q, p)`. Moving a coefficient left past `x^i y^j` evaluates it at
//! `(a q^{i+2j}, b q^{2i+j})`, and the `yx` rewrites contribute exact weight
//! polynomials that are substituted with the family's small weights.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64 as C64;

use super::normal::{normal_order, NormalForm, RelationSystem};
use super::word::{Letter, Word};
use crate::skewpoly::CoeffExpr;
use crate::special_fn::WeightFamily;
use crate::Result;

/// Parameter shift produced by moving a coefficient past `x^i y^j`.
pub fn xy_shift(i: u32, j: u32) -> (i64, i64) {
    (i as i64 + 2 * j as i64, 2 * i as i64 + j as i64)
}

/// `Σ c_{i,j}(a,b) x^i y^j`, coefficients to the left.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamForm {
    terms: BTreeMap<(u32, u32), CoeffExpr>,
}

impl ParamForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, CoeffExpr::one())
    }

    pub fn monomial(i: u32, j: u32, c: CoeffExpr) -> Self {
        let mut f = Self::zero();
        f.add_term(i, j, c);
        f
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, CoeffExpr::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, CoeffExpr::one())
    }

    /// Lifts an exact normal form.
    pub fn from_normal(nf: &NormalForm) -> Self {
        let mut f = Self::zero();
        for ((i, j), c) in nf.terms() {
            f.add_term(i, j, CoeffExpr::Weight(c.clone()));
        }
        f
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: CoeffExpr) {
        if c.is_const_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            Some(old) => {
                self.terms.insert((i, j), old + c);
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn add(&self, other: &ParamForm) -> ParamForm {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    /// `c · self`, with `c` standing to the left.
    pub fn scale(&self, c: &CoeffExpr) -> ParamForm {
        let mut out = ParamForm::zero();
        for (&(i, j), t) in &self.terms {
            out.add_term(i, j, c.clone() * t.clone());
        }
        out
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Option<&CoeffExpr> {
        self.terms.get(&(i, j))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &CoeffExpr)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops all terms of total degree above `order`.
    pub fn truncate(&self, order: u32) -> ParamForm {
        ParamForm { terms: self.terms.iter().filter(|(&(i, j), _)| i + j <= order).map(|(&k, c)| (k, c.clone())).collect() }
    }

    /// Product in the algebra, re-normally-ordered, keeping total degree `≤ order`.
    pub fn mul(&self, other: &ParamForm, rs: RelationSystem, order: Option<u32>) -> ParamForm {
        let mut cache: HashMap<(u32, u32, u32, u32), NormalForm> = HashMap::new();
        let mut out = ParamForm::zero();
        for (&(i, j), c1) in &self.terms {
            let (u, v) = xy_shift(i, j);
            for (&(k, l), c2) in &other.terms {
                if order.is_some_and(|n| i + j + k + l > n) && rs == RelationSystem::Homogeneous {
                    continue;
                }
                let nf = cache.entry((i, j, k, l)).or_insert_with(|| {
                    let mut w = Word::normal(i as usize, j as usize).0;
                    w.extend(std::iter::repeat_n(Letter::X, k as usize));
                    w.extend(std::iter::repeat_n(Letter::Y, l as usize));
                    normal_order(&Word(w), rs)
                });
                let lead = c1.clone() * c2.clone().shifted(u, v);
                for ((m, n), wc) in nf.terms() {
                    if order.is_some_and(|o| m + n > o) {
                        continue;
                    }
                    out.add_term(m, n, lead.clone() * CoeffExpr::Weight(wc.clone()));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32, rs: RelationSystem, order: Option<u32>) -> ParamForm {
        (0..e).fold(ParamForm::one(), |acc, _| acc.mul(self, rs, order))
    }

    /// Numeric coefficients under a weight family.
    pub fn eval(&self, f: &WeightFamily) -> Result<BTreeMap<(u32, u32), C64>> {
        self.terms.iter().map(|(&k, c)| Ok((k, c.eval(f)?))).collect()
    }
}

/// `Σ_{n ≤ order} coeff(n) · g^n`, truncated to total degree `order`.
pub fn exp_series<F>(g: &ParamForm, coeff: F, order: u32, rs: RelationSystem) -> ParamForm
where
    F: Fn(u32) -> CoeffExpr,
{
    let mut out = ParamForm::zero();
    let mut power = ParamForm::one();
    for n in 0..=order {
        out = out.add(&power.scale(&coeff(n)));
        power = power.mul(g, rs, Some(order));
    }
    out
}

/// The image under `(a, b, x, y) ↦ (b, a, y, x)`, re-normally-ordered.
///
/// An identity between forms over one family turns into an identity over the
/// swapped family: evaluate the dual under `f` to obtain the original under
/// `f.swapped()` with the letters exchanged.
pub fn dual(form: &ParamForm, rs: RelationSystem) -> ParamForm {
    let mut out = ParamForm::zero();
    for (&(i, j), c) in &form.terms {
        let mut w: Vec<Letter> = std::iter::repeat_n(Letter::Y, i as usize).collect();
        w.extend(std::iter::repeat_n(Letter::X, j as usize));
        let nf = normal_order(&Word(w), rs);
        let swapped = c.clone().swapped();
        for ((m, n), wc) in nf.terms() {
            out.add_term(m, n, swapped.clone() * CoeffExpr::Weight(wc.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewpoly::ParamMonomial;
    use crate::special_fn::ParameterSet;

    fn ell() -> WeightFamily {
        let c = C64::new;
        WeightFamily::Elliptic(ParameterSet::elliptic(c(0.7, 0.2), c(1.4, -0.3), c(0.5, 0.3), c(0.15, 0.1)).unwrap())
    }

    #[test]
    fn coefficient_shifts_past_generators() {
        // x · a = (aq) · x and y · a = (aq^2) · y
        let a = ParamForm::monomial(0, 0, CoeffExpr::Param(ParamMonomial::abq(1, 0, 0)));
        let f = ell();
        let ps = f.params().unwrap();
        let xa = ParamForm::x().mul(&a, RelationSystem::Homogeneous, None).eval(&f).unwrap();
        assert!((xa[&(1, 0)] - ps.a * ps.q).norm() < 1e-14);
        let ya = ParamForm::y().mul(&a, RelationSystem::Homogeneous, None).eval(&f).unwrap();
        assert!((ya[&(0, 1)] - ps.a * ps.q * ps.q).norm() < 1e-14);
    }

    #[test]
    fn yx_uses_family_weight() {
        let f = ell();
        let yx = ParamForm::y().mul(&ParamForm::x(), RelationSystem::RookWeyl, None).eval(&f).unwrap();
        assert!((yx[&(1, 1)] - f.small(1, 1).unwrap()).norm() < 1e-14);
        assert_eq!(yx[&(0, 0)], C64::new(1.0, 0.0));
    }

    #[test]
    fn truncated_series() {
        let s = exp_series(&ParamForm::x().add(&ParamForm::y()), |_| CoeffExpr::one(), 3, RelationSystem::Homogeneous);
        assert!(s.terms().all(|((i, j), _)| i + j <= 3));
        assert_eq!(s.len(), 10);
    }

    #[test]
    fn dual_of_x_is_y() {
        let d = dual(&ParamForm::x(), RelationSystem::Homogeneous);
        assert_eq!(d.len(), 1);
        assert_eq!(d.eval(&ell()).unwrap()[&(0, 1)], C64::new(1.0, 0.0));
    }
}

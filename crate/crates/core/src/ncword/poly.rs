//! Exact integer polynomials in the formal weight symbols `w(s,t)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64 as C64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Result;

/// The formal indeterminate `w(s,t)`, `s, t ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightSymbol {
    pub s: u32,
    pub t: u32,
}

impl WeightSymbol {
    pub fn new(s: u32, t: u32) -> Self {
        debug_assert!(s >= 1 && t >= 1, "weight indices start at 1");
        WeightSymbol { s, t }
    }
}

impl fmt::Display for WeightSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({},{})", self.s, self.t)
    }
}

/// A product of weight symbols with positive exponents, kept sorted by symbol.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(WeightSymbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn symbol(sym: WeightSymbol) -> Self {
        Monomial(vec![(sym, 1)])
    }

    /// Builds a monomial from arbitrary (possibly repeated) factors.
    pub fn from_factors<I: IntoIterator<Item = WeightSymbol>>(factors: I) -> Self {
        let mut map: BTreeMap<WeightSymbol, u32> = BTreeMap::new();
        for f in factors {
            *map.entry(f).or_insert(0) += 1;
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(WeightSymbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Renames every `w(s,t)` to `w(s+ds, t+dt)`. Shifting is monotone, so
    /// sortedness is preserved.
    pub fn shift(&self, ds: u32, dt: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&(sym, e)| (WeightSymbol::new(sym.s + ds, sym.t + dt), e))
                .collect(),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (sym, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        Ok(())
    }
}

/// `Σ c_m m` over monomials `m` with nonzero integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WeightPolynomial {
    terms: BTreeMap<Monomial, i64>,
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("weight polynomial coefficient overflowed i64")
}

impl WeightPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_term(Monomial::one(), c)
    }

    pub fn symbol(s: u32, t: u32) -> Self {
        Self::from_term(Monomial::symbol(WeightSymbol::new(s, t)), 1)
    }

    pub fn from_term(m: Monomial, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = checked(o.get().checked_add(c));
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &WeightPolynomial) {
        for (m, &c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add(&self, other: &WeightPolynomial) -> WeightPolynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> WeightPolynomial {
        WeightPolynomial {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &WeightPolynomial) -> WeightPolynomial {
        self.add(&other.neg())
    }

    pub fn mul_monomial(&self, m: &Monomial, c: i64) -> WeightPolynomial {
        let mut out = WeightPolynomial::zero();
        if c == 0 {
            return out;
        }
        for (mm, &cc) in &self.terms {
            out.terms.insert(mm.mul(m), checked(cc.checked_mul(c)));
        }
        out
    }

    pub fn mul(&self, other: &WeightPolynomial) -> WeightPolynomial {
        let mut out = WeightPolynomial::zero();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(m1.mul(m2), checked(c1.checked_mul(c2)));
            }
        }
        out
    }

    /// Applies a renaming of symbols; factors that collide are merged.
    pub fn rename<F>(&self, mut f: F) -> WeightPolynomial
    where
        F: FnMut(WeightSymbol) -> WeightSymbol,
    {
        let mut out = WeightPolynomial::zero();
        for (m, &c) in &self.terms {
            let factors = m.factors().iter().flat_map(|&(sym, e)| std::iter::repeat_n(f(sym), e as usize));
            out.add_term(Monomial::from_factors(factors), c);
        }
        out
    }

    /// Renames `w(s,t) ↦ w(s+ds, t+dt)`, i.e. moves the coefficient to the left
    /// past `ds` copies of `x` and `dt` copies of `y`.
    pub fn shift(&self, ds: u32, dt: u32) -> WeightPolynomial {
        if ds == 0 && dt == 0 {
            return self.clone();
        }
        WeightPolynomial {
            terms: self.terms.iter().map(|(m, &c)| (m.shift(ds, dt), c)).collect(),
        }
    }

    /// Substitutes numeric values for the symbols. Each distinct symbol is
    /// evaluated once.
    pub fn eval<F>(&self, mut weight: F) -> Result<C64>
    where
        F: FnMut(u32, u32) -> Result<C64>,
    {
        let mut cache: HashMap<WeightSymbol, C64> = HashMap::new();
        let mut total = C64::new(0.0, 0.0);
        for (m, &c) in &self.terms {
            let mut term = C64::new(c as f64, 0.0);
            for &(sym, e) in m.factors() {
                let v = match cache.get(&sym) {
                    Some(v) => *v,
                    None => {
                        let v = weight(sym.s, sym.t)?;
                        cache.insert(sym, v);
                        v
                    }
                };
                term *= v.powi(e as i32);
            }
            total += term;
        }
        Ok(total)
    }

    /// Value with every symbol set to 1 (the unweighted count).
    pub fn count(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, &c)) in self.terms.iter().enumerate() {
            let neg = c < 0;
            let mag = c.unsigned_abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (m.is_one(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{m}")?,
                (false, _) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    monomial: Vec<(String, u32)>,
    c: i64,
}

impl Serialize for WeightPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, &c)| TermJson {
                monomial: m
                    .factors()
                    .iter()
                    .map(|&(sym, e)| (format!("{},{}", sym.s, sym.t), e))
                    .collect(),
                c,
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms: Vec<TermJson> = Vec::deserialize(deserializer)?;
        let mut out = WeightPolynomial::zero();
        for term in terms {
            let mut factors = Vec::new();
            for (key, e) in term.monomial {
                let (s, t) = key
                    .split_once(',')
                    .ok_or_else(|| D::Error::custom(format!("bad weight symbol key {key:?}")))?;
                let s: u32 = s.trim().parse().map_err(D::Error::custom)?;
                let t: u32 = t.trim().parse().map_err(D::Error::custom)?;
                if s == 0 || t == 0 || e == 0 {
                    return Err(D::Error::custom("weight indices and exponents must be positive"));
                }
                factors.extend(std::iter::repeat_n(WeightSymbol::new(s, t), e as usize));
            }
            out.add_term(Monomial::from_factors(factors), term.c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let w = WeightPolynomial::symbol(1, 1);
        let z = w.sub(&w);
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn multiplication_merges_exponents() {
        let a = WeightPolynomial::symbol(1, 1).add(&WeightPolynomial::one());
        let sq = a.mul(&a);
        assert_eq!(sq.to_string(), "1 + 2*w(1,1) + w(1,1)^2");
    }

    #[test]
    fn shift_renames_symbols() {
        let a = WeightPolynomial::symbol(1, 2).mul(&WeightPolynomial::symbol(2, 1));
        assert_eq!(a.shift(1, 0).to_string(), "w(2,2)*w(3,1)");
    }

    #[test]
    fn evaluation_substitutes() {
        let a = WeightPolynomial::symbol(1, 1).mul(&WeightPolynomial::symbol(2, 1)).add(&WeightPolynomial::constant(3));
        let v = a.eval(|s, t| Ok(C64::new((s * 10 + t) as f64, 0.0))).unwrap();
        assert_eq!(v, C64::new(11.0 * 21.0 + 3.0, 0.0));
    }

    #[test]
    fn json_shape() {
        let a = WeightPolynomial::symbol(1, 1).mul(&WeightPolynomial::symbol(1, 1)).add(&WeightPolynomial::constant(-2));
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"[{"monomial":[],"c":-2},{"monomial":[["1,1",2]],"c":1}]"#);
        let back: WeightPolynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}

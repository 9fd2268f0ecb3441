//! Normal ordering by rewriting.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, WeightPolynomial, WeightSymbol};
use super::word::{Letter, Word};
use crate::special_fn::WeightFamily;
use crate::{Error, Result};

/// The three commutation systems. All of them share `x·w(s,t) = w(s+1,t)·x`
/// and `y·w(s,t) = w(s,t+1)·y`; they differ in the rule for `yx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationSystem {
    /// `yx = w(1,1) xy`
    Homogeneous,
    /// `yx = w(1,1) xy + 1`
    RookWeyl,
    /// `yx = w(1,1) xy + y`
    File,
}

impl RelationSystem {
    pub const ALL: [RelationSystem; 3] = [RelationSystem::Homogeneous, RelationSystem::RookWeyl, RelationSystem::File];

    /// Representative of `w(s,t)` modulo the identifications the system forces
    /// on its weights.
    ///
    /// Resolving the overlap `y·x·w(s,t)` both ways gives
    /// `w(s,t) = w(s+1,t+1)` for [`RookWeyl`](Self::RookWeyl) and
    /// `w(s,t+1) = w(s+1,t+1)` for [`File`](Self::File); the homogeneous
    /// system forces nothing. Normal forms are unique only up to these
    /// identifications, so rewriting orders agree after canonicalizing.
    pub fn canonical_symbol(self, sym: WeightSymbol) -> WeightSymbol {
        match self {
            RelationSystem::Homogeneous => sym,
            RelationSystem::RookWeyl => {
                let m = sym.s.min(sym.t) - 1;
                WeightSymbol::new(sym.s - m, sym.t - m)
            }
            RelationSystem::File if sym.t >= 2 => WeightSymbol::new(1, sym.t),
            RelationSystem::File => sym,
        }
    }
}

/// Which `yx` occurrence is rewritten first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Rightmost,
    Leftmost,
}

/// `Σ c_{i,j} x^i y^j` with exact polynomial coefficients standing to the left.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalForm {
    coeffs: BTreeMap<(u32, u32), WeightPolynomial>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, WeightPolynomial::one())
    }

    /// `c · x^i y^j`.
    pub fn monomial(i: u32, j: u32, c: WeightPolynomial) -> Self {
        let mut nf = Self::zero();
        nf.add_term(i, j, &c);
        nf
    }

    /// The element `x + y`.
    pub fn x_plus_y() -> Self {
        let mut nf = Self::monomial(1, 0, WeightPolynomial::one());
        nf.add_term(0, 1, &WeightPolynomial::one());
        nf
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &WeightPolynomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn add_assign(&mut self, other: &NormalForm) {
        for (&(i, j), c) in &other.coeffs {
            self.add_term(i, j, c);
        }
    }

    /// Left multiplication by a scalar polynomial.
    pub fn scale(&self, c: &WeightPolynomial) -> NormalForm {
        let mut out = NormalForm::zero();
        for (&(i, j), cc) in &self.coeffs {
            out.add_term(i, j, &c.mul(cc));
        }
        out
    }

    pub fn coefficient(&self, i: u32, j: u32) -> WeightPolynomial {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &WeightPolynomial)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn keys(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients reduced with [`RelationSystem::canonical_symbol`].
    pub fn canonical(&self, rs: RelationSystem) -> NormalForm {
        let mut out = NormalForm::zero();
        for (&(i, j), c) in &self.coeffs {
            out.add_term(i, j, &c.rename(|sym| rs.canonical_symbol(sym)));
        }
        out
    }

    /// Substitutes `w(s,t) ↦ f.small(s,t)` in every coefficient.
    pub fn evaluate(&self, f: &WeightFamily) -> Result<BTreeMap<(u32, u32), C64>> {
        if matches!(f, WeightFamily::Generic) {
            return Err(Error::Symbolic);
        }
        let mut cache: HashMap<(u32, u32), C64> = HashMap::new();
        let mut out = BTreeMap::new();
        for (&key, c) in &self.coeffs {
            let v = c.eval(|s, t| {
                if let Some(v) = cache.get(&(s, t)) {
                    return Ok(*v);
                }
                let v = f.small(s as i64, t as i64)?;
                cache.insert((s, t), v);
                Ok(v)
            })?;
            out.insert(key, v);
        }
        Ok(out)
    }
}

/// Normal ordering with the default right-most-first strategy.
///
/// For the rook and file systems this particular representative is the one
/// that equals the weighted rook and file polynomials symbol for symbol.
pub fn normal_order(w: &Word, rs: RelationSystem) -> NormalForm {
    normal_order_with(w, rs, Strategy::Rightmost)
}

fn inversions(w: &[Letter]) -> usize {
    let mut ys = 0;
    let mut inv = 0;
    for &l in w {
        match l {
            Letter::Y => ys += 1,
            Letter::X => inv += ys,
        }
    }
    inv
}

/// Rewrites `yx` occurrences until none remain.
///
/// Pending words are processed in decreasing `(length, inversions)` order.
/// Every rewrite strictly decreases that key, so each word is expanded once
/// with all of its contributions already merged.
pub fn normal_order_with(w: &Word, rs: RelationSystem, strategy: Strategy) -> NormalForm {
    type Key = (usize, usize, Vec<Letter>);
    let mut pending: BTreeMap<Key, WeightPolynomial> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<Key, WeightPolynomial>, word: Vec<Letter>, c: WeightPolynomial| {
        if c.is_zero() {
            return;
        }
        let key = (word.len(), inversions(&word), word);
        let slot = pending.entry(key.clone()).or_default();
        slot.add_assign(&c);
        if slot.is_zero() {
            pending.remove(&key);
        }
    };
    push(&mut pending, w.0.clone(), WeightPolynomial::one());

    let mut out = NormalForm::zero();
    while let Some(((_, inv, word), coeff)) = pending.pop_last() {
        if inv == 0 {
            let i = word.iter().filter(|&&l| l == Letter::X).count() as u32;
            let j = word.len() as u32 - i;
            out.add_term(i, j, &coeff);
            continue;
        }
        let pos = match strategy {
            Strategy::Rightmost => (0..word.len() - 1).rev().find(|&k| word[k] == Letter::Y && word[k + 1] == Letter::X),
            Strategy::Leftmost => (0..word.len() - 1).find(|&k| word[k] == Letter::Y && word[k + 1] == Letter::X),
        }
        .expect("a word with inversions contains yx");

        let xs = word[..pos].iter().filter(|&&l| l == Letter::X).count() as u32;
        let ys = pos as u32 - xs;
        let sym = Monomial::symbol(WeightSymbol::new(xs + 1, ys + 1));

        let mut swapped = word.clone();
        swapped.swap(pos, pos + 1);
        push(&mut pending, swapped, coeff.mul_monomial(&sym, 1));

        match rs {
            RelationSystem::Homogeneous => {}
            RelationSystem::RookWeyl => {
                let mut shorter = word.clone();
                shorter.drain(pos..pos + 2);
                push(&mut pending, shorter, coeff);
            }
            RelationSystem::File => {
                let mut shorter = word.clone();
                shorter.remove(pos + 1);
                push(&mut pending, shorter, coeff);
            }
        }
    }
    out
}

/// Product of two normal forms, re-normally-ordered.
pub fn multiply(a: &NormalForm, b: &NormalForm, rs: RelationSystem) -> NormalForm {
    let mut cache: HashMap<(u32, u32, u32, u32), NormalForm> = HashMap::new();
    let mut out = NormalForm::zero();
    for ((i, j), c1) in a.terms() {
        for ((k, l), c2) in b.terms() {
            // c1 x^i y^j c2 x^k y^l = c1 · shift_{i,j}(c2) · x^i y^j x^k y^l
            let coeff = c1.mul(&c2.shift(i, j));
            let nf = cache.entry((i, j, k, l)).or_insert_with(|| {
                let mut w = Word::normal(i as usize, j as usize).0;
                w.extend(Word::normal(k as usize, l as usize).0);
                normal_order(&Word(w), rs)
            });
            out.add_assign(&nf.scale(&coeff));
        }
    }
    out
}

/// The normal form of `(x + y)^n`.
pub fn expand_power_sum(n: u32, rs: RelationSystem) -> NormalForm {
    let step = NormalForm::x_plus_y();
    (0..n).fold(NormalForm::one(), |acc, _| multiply(&acc, &step, rs))
}

fn fmt_xy(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{j}")),
    }
    write!(f, "{}", parts.join(" "))
}

impl fmt::Display for NormalForm {
    /// Terms in decreasing `(i, j)`, e.g. `x^2 y + (1 + w(1,1)) x y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.coeffs.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let unit = i == 0 && j == 0;
            if *c == WeightPolynomial::one() {
                if unit {
                    write!(f, "1")?;
                }
            } else if c.len() == 1 && !c.to_string().contains(' ') {
                write!(f, "{c}")?;
                if !unit {
                    write!(f, " ")?;
                }
            } else {
                write!(f, "({c})")?;
                if !unit {
                    write!(f, " ")?;
                }
            }
            fmt_xy(f, i, j)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct NormalFormJson {
    terms: Vec<NormalTermJson>,
}

#[derive(Serialize, Deserialize)]
struct NormalTermJson {
    i: u32,
    j: u32,
    coeff: WeightPolynomial,
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        NormalFormJson {
            terms: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| NormalTermJson { i, j, coeff: c.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = NormalFormJson::deserialize(deserializer)?;
        let mut nf = NormalForm::zero();
        for t in raw.terms {
            nf.add_term(t.i, t.j, &t.coeff);
        }
        Ok(nf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncword::parse_word;
    use crate::special_fn::binom_symbolic;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn navon_example() {
        let nf = normal_order(&w("xyxxyxyy"), RelationSystem::RookWeyl);
        let counts: Vec<_> = nf.terms().map(|(k, c)| (k, c.count())).collect();
        assert_eq!(counts, vec![((2, 2), 2), ((3, 3), 4), ((4, 4), 1)]);
    }

    #[test]
    fn already_normal() {
        for rs in RelationSystem::ALL {
            assert_eq!(normal_order(&w("xy"), rs), NormalForm::monomial(1, 1, WeightPolynomial::one()));
        }
    }

    #[test]
    fn single_swap() {
        let nf = normal_order(&w("yx"), RelationSystem::Homogeneous);
        assert_eq!(nf, NormalForm::monomial(1, 1, WeightPolynomial::symbol(1, 1)));
        assert_eq!(nf.to_string(), "w(1,1) x y");
        let rook = normal_order(&w("yx"), RelationSystem::RookWeyl);
        assert_eq!(rook.to_string(), "w(1,1) x y + 1");
        let file = normal_order(&w("yx"), RelationSystem::File);
        assert_eq!(file.to_string(), "w(1,1) x y + y");
    }

    #[test]
    fn weights_shift_through_prefix() {
        // x y x: the yx sits after one x, so its weight is w(2,1).
        let nf = normal_order(&w("xyx"), RelationSystem::Homogeneous);
        assert_eq!(nf, NormalForm::monomial(2, 1, WeightPolynomial::symbol(2, 1)));
    }

    #[test]
    fn strategies_agree_on_small_words() {
        for len in 0..=6 {
            for word in Word::all_of_length(len) {
                for rs in RelationSystem::ALL {
                    assert_eq!(
                        normal_order_with(&word, rs, Strategy::Rightmost).canonical(rs),
                        normal_order_with(&word, rs, Strategy::Leftmost).canonical(rs),
                        "{word} {rs:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let x = NormalForm::monomial(1, 0, WeightPolynomial::one());
        let y = NormalForm::monomial(0, 1, WeightPolynomial::one());
        assert_eq!(multiply(&x, &y, RelationSystem::Homogeneous), normal_order(&w("xy"), RelationSystem::Homogeneous));
        assert_eq!(
            multiply(&y, &x, RelationSystem::Homogeneous),
            NormalForm::monomial(1, 1, WeightPolynomial::symbol(1, 1))
        );
        let rs = RelationSystem::RookWeyl;
        let yx = normal_order(&w("yx"), rs);
        assert_eq!(multiply(&yx, &yx, rs).canonical(rs), normal_order(&w("yxyx"), rs).canonical(rs));
    }

    #[test]
    fn rook_system_is_not_confluent_on_free_symbols() {
        let rs = RelationSystem::RookWeyl;
        let right = normal_order_with(&w("yxyx"), rs, Strategy::Rightmost);
        let left = normal_order_with(&w("yxyx"), rs, Strategy::Leftmost);
        assert_ne!(right, left);
        assert_eq!(right.canonical(rs), left.canonical(rs));
    }

    #[test]
    fn homogeneous_strategies_agree_exactly() {
        for word in Word::all_of_length(7) {
            let rs = RelationSystem::Homogeneous;
            assert_eq!(normal_order_with(&word, rs, Strategy::Rightmost), normal_order_with(&word, rs, Strategy::Leftmost));
        }
    }

    #[test]
    fn power_sum_small_cases() {
        assert_eq!(expand_power_sum(0, RelationSystem::Homogeneous), NormalForm::one());
        let two = expand_power_sum(2, RelationSystem::Homogeneous);
        assert_eq!(two.coefficient(1, 1), WeightPolynomial::one().add(&WeightPolynomial::symbol(1, 1)));
        assert_eq!(two.coefficient(2, 0), WeightPolynomial::one());
        assert_eq!(two.coefficient(0, 2), WeightPolynomial::one());
        let five = expand_power_sum(5, RelationSystem::Homogeneous);
        assert_eq!(five.coefficient(2, 3), binom_symbolic(5, 2));
    }

    #[test]
    fn json_round_trip() {
        let nf = normal_order(&w("yxyx"), RelationSystem::File);
        let text = serde_json::to_string(&nf).unwrap();
        assert!(text.starts_with(r#"{"terms":[{"i":0,"j":2,"coeff":"#));
        let back: NormalForm = serde_json::from_str(&text).unwrap();
        assert_eq!(back, nf);
    }

    #[test]
    fn evaluate_examples() {
        let q = C64::new(0.3, 0.2);
        let e = normal_order(&Word::empty(), RelationSystem::Homogeneous).evaluate(&WeightFamily::Q { q }).unwrap();
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![((0, 0), C64::new(1.0, 0.0))]);
        let yx = normal_order(&w("yx"), RelationSystem::Homogeneous).evaluate(&WeightFamily::Q { q }).unwrap();
        assert_eq!(yx.into_iter().collect::<Vec<_>>(), vec![((1, 1), q)]);
        assert!(normal_order(&w("yx"), RelationSystem::Homogeneous).evaluate(&WeightFamily::Generic).is_err());
    }
}

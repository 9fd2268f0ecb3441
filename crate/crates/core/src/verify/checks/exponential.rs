use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::ncword::{dual, exp_series, expand_power_sum, ParamForm, RelationSystem};
use crate::skewpoly::{CoeffExpr, ParamMonomial, ShiftRule, SkewPoly};
use crate::special_fn::{binom_numeric, q_poch, qpow, Quotient, WeightFamily};
use crate::verify::runner::Ctx;
use crate::verify::sampling::digest_of;
use crate::Result;

const HOM: RelationSystem = RelationSystem::Homogeneous;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn qpoch(a: i32, b: i32, q: i64, base: i64, n: i64) -> CoeffExpr {
    CoeffExpr::QPoch { arg: ParamMonomial::abq(a, b, q), base, n }
}

/// `1 / ((q;q)_n (bq;q)_n)`.
fn bq_exp_coeff(n: u32) -> CoeffExpr {
    CoeffExpr::one() / (qpoch(0, 0, 1, 1, n as i64) * qpoch(0, 1, 1, 1, n as i64))
}

/// `1 / ((q;q)_n (aq;q)_n)`.
fn aq_exp_coeff(n: u32) -> CoeffExpr {
    CoeffExpr::one() / (qpoch(0, 0, 1, 1, n as i64) * qpoch(1, 0, 1, 1, n as i64))
}

/// `e(x+y)` through the closed-form binomials of `f`.
fn exp_of_sum(f: &WeightFamily, order: u32, coeff: impl Fn(u32) -> CoeffExpr) -> Result<BTreeMap<(u32, u32), C64>> {
    let mut out = BTreeMap::new();
    for n in 0..=order {
        let c = coeff(n).eval(f)?;
        for k in 0..=n {
            out.insert((k, n - k), c * binom_numeric(f, n as i64, k as i64)?);
        }
    }
    Ok(out)
}

/// `e_{b;q}(x+y) = e_{b;q}(x) e_{b;q}(y)`.
pub(crate) fn bq_cauchy(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.degree;
    let ex = exp_series(&ParamForm::x(), bq_exp_coeff, order, HOM);
    let ey = exp_series(&ParamForm::y(), bq_exp_coeff, order, HOM);
    let product = ex.mul(&ey, HOM, Some(order));
    ctx.sampled(|s, t| {
        let (b, q) = (s.ab(), s.q());
        t.digest(digest_of(zero(), b, q, zero()));
        let f = WeightFamily::BQ { b, q };
        t.cmp_maps(&exp_of_sum(&f, order, bq_exp_coeff)?, &product.eval(&f)?);
        Ok(())
    })
}

/// `e_{a;q}(x+y) = e_{a;q}(y) e_{a;q}(x)`.
pub(crate) fn aq_cauchy(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.degree;
    let ex = exp_series(&ParamForm::x(), aq_exp_coeff, order, HOM);
    let ey = exp_series(&ParamForm::y(), aq_exp_coeff, order, HOM);
    let product = ey.mul(&ex, HOM, Some(order));
    ctx.sampled(|s, t| {
        let (a, q) = (s.ab(), s.q());
        t.digest(digest_of(a, zero(), q, zero()));
        let f = WeightFamily::AQ { a, q };
        t.cmp_maps(&exp_of_sum(&f, order, aq_exp_coeff)?, &product.eval(&f)?);
        Ok(())
    })
}

/// The image of `(x+y)^n = Σ [n,k]_{0,b;q} x^k y^{n−k}` under
/// `(a,b,x,y) ↦ (b,a,y,x)` is `(x+y)^n` in the `a;q` algebra.
pub(crate) fn duality(ctx: &mut Ctx) -> Result<()> {
    let mut duals = Vec::new();
    for n in 0..=ctx.n_max {
        let mut form = ParamForm::zero();
        for k in 0..=n {
            form.add_term(k, n - k, CoeffExpr::Binom { n: n as i64, k: k as i64 });
        }
        duals.push((dual(&form, HOM), expand_power_sum(n, HOM)));
    }
    ctx.sampled(|s, t| {
        let (a, q) = (s.ab(), s.q());
        t.digest(digest_of(a, zero(), q, zero()));
        let f = WeightFamily::AQ { a, q };
        for (d, nf) in &duals {
            t.cmp_maps(&d.eval(&f)?, &nf.evaluate(&f)?);
        }
        Ok(())
    })
}

/// Product of two `q`-commuting series (`y^j x^k = q^{jk} x^k y^j`), by the closed
/// commutation rule rather than by rewriting.
fn qmul(l: &BTreeMap<(u32, u32), C64>, r: &BTreeMap<(u32, u32), C64>, q: C64, order: u32) -> BTreeMap<(u32, u32), C64> {
    let mut out = BTreeMap::new();
    for (&(i, j), &c1) in l {
        for (&(k, m), &c2) in r {
            if i + j + k + m > order {
                continue;
            }
            *out.entry((i + k, j + m)).or_insert_with(zero) += c1 * c2 * qpow(q, j as i64 * k as i64);
        }
    }
    out
}

fn q_series(q: C64, order: u32, i: u32, j: u32, sign: f64, extra: impl Fn(i64) -> C64) -> Result<BTreeMap<(u32, u32), C64>> {
    let mut out = BTreeMap::new();
    for n in 0..=order {
        if (i + j) * n > order {
            break;
        }
        let c = Quotient::new("q-exponential coefficient").mul(C64::new(sign, 0.0).powi(n as i32) * extra(n as i64)).div(q_poch(q, q, n as i64)?)?.value()?;
        out.insert((i * n, j * n), c);
    }
    Ok(out)
}

/// `e_q(u) e_q(v) = e_q(u+v)` with `u = x`, `v = y`, `vu = quv`.
pub(crate) fn qexp_cauchy(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.degree;
    let sums: Vec<_> = (0..=order).map(|n| expand_power_sum(n, HOM)).collect();
    ctx.sampled(|s, t| {
        let q = s.q();
        t.digest(digest_of(zero(), zero(), q, zero()));
        let f = WeightFamily::Q { q };
        let mut lhs = BTreeMap::new();
        for i in 0..=order {
            for j in 0..=order - i {
                lhs.insert((i, j), 1.0 / (q_poch(q, q, i as i64)? * q_poch(q, q, j as i64)?));
            }
        }
        let mut rhs = BTreeMap::new();
        for (n, nf) in sums.iter().enumerate() {
            let c = 1.0 / q_poch(q, q, n as i64)?;
            for (key, v) in nf.evaluate(&f)? {
                *rhs.entry(key).or_insert_with(zero) += c * v;
            }
        }
        t.cmp_maps(&lhs, &rhs);
        Ok(())
    })
}

/// `e_q(v) e_q(u) = e_q(u) e_q(−uv) e_q(v)`.
///
/// The coefficient of `x^i y^j` is `q^{ij}/((q;q)_i (q;q)_j)` while the
/// alternating triple product has terms of order one, so the comparison loses
/// about `|q|^{−ij}`; `|q|` is drawn from `[0.5, 0.9)` here.
pub(crate) fn qexp_braiding(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.degree;
    let q_coeff = |n: u32| CoeffExpr::one() / qpoch(0, 0, 1, 1, n as i64);
    let eu = exp_series(&ParamForm::x(), q_coeff, order, HOM);
    let ev = exp_series(&ParamForm::y(), q_coeff, order, HOM);
    let lhs = ev.mul(&eu, HOM, Some(order));
    ctx.sampled(|s, t| {
        let q = s.polar(0.5, 0.9);
        t.digest(digest_of(zero(), zero(), q, zero()));
        let one = |_| C64::new(1.0, 0.0);
        let u = q_series(q, order, 1, 0, 1.0, one)?;
        // (xy)^n = q^{n(n−1)/2} x^n y^n
        let uv = q_series(q, order, 1, 1, -1.0, |n| qpow(q, n * (n - 1) / 2))?;
        let v = q_series(q, order, 0, 1, 1.0, one)?;
        let rhs = qmul(&qmul(&u, &uv, q, order), &v, q, order);
        let abs = |m: &BTreeMap<(u32, u32), C64>| m.iter().map(|(&k, v)| (k, C64::new(v.norm(), 0.0))).collect::<BTreeMap<_, _>>();
        let qa = C64::new(q.norm(), 0.0);
        let scale = qmul(&qmul(&abs(&u), &abs(&uv), qa, order), &abs(&v), qa, order);
        let lhs = lhs.eval(&WeightFamily::Q { q })?;
        t.require(lhs.len() == rhs.len());
        for (key, &r) in &rhs {
            t.cmp_sum(lhs.get(key).copied().unwrap_or_default(), r, scale[key].re, "braided series coefficient")?;
        }
        Ok(())
    })
}

/// `∏→_{k<n} (by + (bq²;q⁻¹)_k/(b;q⁻¹)_k x)
///  = Σ_k [n,k]_{0,b;q} (bq^{k+2};q)_{n−1}/(bq²;q)_{n−1} q^{k(k−n)} x^k (by)^{n−k}`.
pub(crate) fn bq_finite_product(ctx: &mut Ctx) -> Result<()> {
    let b = CoeffExpr::Param(ParamMonomial::abq(0, 1, 0));
    let by = ParamForm::monomial(0, 1, b.clone());
    let mut cases = Vec::new();
    for n in 1..=ctx.n_max as i64 {
        let mut lhs = ParamForm::one();
        for k in 0..n {
            let mut factor = by.clone();
            factor.add_term(1, 0, qpoch(0, 1, 2, -1, k) / qpoch(0, 1, 0, -1, k));
            lhs = lhs.mul(&factor, HOM, None);
        }
        let mut rhs = ParamForm::zero();
        for k in 0..=n {
            let c = CoeffExpr::Binom { n, k } * qpoch(0, 1, k + 2, 1, n - 1) / qpoch(0, 1, 2, 1, n - 1) * CoeffExpr::q_power(k * (k - n));
            let term = ParamForm::monomial(k as u32, 0, c).mul(&by.pow((n - k) as u32, HOM, None), HOM, None);
            rhs = rhs.add(&term);
        }
        cases.push((lhs, rhs));
    }
    ctx.sampled(|s, t| {
        let (b, q) = (s.ab(), s.q());
        t.digest(digest_of(zero(), b, q, zero()));
        let f = WeightFamily::BQ { b, q };
        for (l, r) in &cases {
            t.cmp_maps(&l.eval(&f)?, &r.eval(&f)?);
        }
        Ok(())
    })
}

/// `F_{b;q}(x) − F_{b;q}(qx) = (1−bq)^{-1} x F_{b/q;q}(x)`,
/// `F_{b;q}(x) − b F_{b;q}(qx) = (1−b) F_{b/q;q}(x)` and their combination
/// `(1 − x/((1−bq)(1−bq²))) F_{b;q}(x) = (1 − bq² x/((1−bq)(1−bq²))) F_{b;q}(qx)`,
/// with `x b = q² b x`.
pub(crate) fn f_relations(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.degree;
    let rule = ShiftRule::ELLIPTIC;
    let mut fb = SkewPoly::zero(rule);
    let mut fb_q = SkewPoly::zero(rule);
    let mut fb_down = SkewPoly::zero(rule);
    for n in 0..=order {
        fb.add_term(n, bq_exp_coeff(n));
        fb_q.add_term(n, bq_exp_coeff(n) * CoeffExpr::q_power(n as i64));
        fb_down.add_term(n, bq_exp_coeff(n).shifted(0, -1));
    }
    let x = SkewPoly::x(rule);
    let b = CoeffExpr::Param(ParamMonomial::abq(0, 1, 0));
    let one_minus_bq = CoeffExpr::one_minus(0, 1, 1);
    let den = one_minus_bq.clone() * CoeffExpr::one_minus(0, 1, 2);

    let f1 = (&fb - &fb_q, x.mul(&fb_down).scale(&(CoeffExpr::one() / one_minus_bq)));
    let f2 = (&fb - &fb_q.scale(&b), fb_down.scale(&CoeffExpr::one_minus(0, 1, 0)));
    let left = &SkewPoly::one(rule) - &x.scale(&(CoeffExpr::one() / den.clone()));
    let right = &SkewPoly::one(rule) - &x.scale(&(CoeffExpr::Param(ParamMonomial::abq(0, 1, 2)) / den));
    let f12 = (left.mul(&fb), right.mul(&fb_q));
    let cases = [f1, f2, f12].map(|(l, r)| (l.truncate(order), r.truncate(order)));
    ctx.sampled(|s, t| {
        let (b, q) = (s.ab(), s.q());
        t.digest(digest_of(zero(), b, q, zero()));
        let f = WeightFamily::BQ { b, q };
        for (l, r) in &cases {
            let (lv, rv) = (l.eval(&f)?, r.eval(&f)?);
            for n in 0..=order {
                t.cmp(lv.get(n), rv.get(n));
            }
        }
        Ok(())
    })
}

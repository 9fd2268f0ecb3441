use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::boards::path_binom;
use crate::ncword::{expand_power_sum, normal_order, NormalForm, RelationSystem, Word};
use crate::special_fn::{binom_numeric, binom_recursive, binom_symbolic, q_poch, qpow, ParameterSet, Quotient, WeightFamily};
use crate::verify::runner::{Ctx, Trial};
use crate::verify::sampling::digest_of;
use crate::Result;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn families(ps: &ParameterSet) -> [WeightFamily; 4] {
    [
        WeightFamily::Elliptic(*ps),
        WeightFamily::BQ { b: ps.b, q: ps.q },
        WeightFamily::AQ { a: ps.a, q: ps.q },
        WeightFamily::Q { q: ps.q },
    ]
}

/// Row `n` of the recursion run on absolute values: `Σ_paths ∏ |w|`, the
/// scale against which the recursion's cancellation is measured.
fn abs_row(f: &WeightFamily, n: i64) -> Result<Vec<f64>> {
    let mut row = vec![1.0];
    for m in 0..n {
        let mut next = vec![0.0; row.len() + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let mut v = row.get(k).copied().unwrap_or(0.0);
            if k >= 1 {
                v += row[k - 1] * f.big(k as i64, m + 1 - k as i64)?.norm();
            }
            *slot = v;
        }
        row = next;
    }
    Ok(row)
}

pub(crate) fn recursion_closed(ctx: &mut Ctx) -> Result<()> {
    let n_max = ctx.n_max as i64;
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        t.params(&ps);
        for f in &families(&ps) {
            for n in 0..=n_max {
                let scale = abs_row(f, n)?;
                for k in 0..=n {
                    t.cmp_sum(binom_numeric(f, n, k)?, binom_recursive(f, n, k)?, scale[k as usize], "binomial recursion")?;
                }
            }
        }
        Ok(())
    })
}

pub(crate) fn path_interpretation(ctx: &mut Ctx) -> Result<()> {
    let n_max = ctx.n_max;
    for n in 0..=n_max {
        for k in 0..=n as i64 {
            let paths = path_binom(n, k, &WeightFamily::Generic)?;
            ctx.exact(paths.symbolic() == Some(&binom_symbolic(n, k)));
        }
    }
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        t.params(&ps);
        for f in &families(&ps) {
            for n in 0..=n_max {
                let scale = abs_row(f, n as i64)?;
                for k in 0..=n as i64 {
                    let paths = path_binom(n, k, f)?.numeric().unwrap_or_default();
                    t.cmp_sum(binom_numeric(f, n as i64, k)?, paths, scale[k as usize], "lattice path sum")?;
                }
            }
        }
        Ok(())
    })
}

/// The `a,b;q` binomial with linear factors, i.e. the `p = 0` closed form.
fn abq_binom(a: C64, b: C64, q: C64, n: i64, k: i64) -> Result<C64> {
    let m = n - k;
    Quotient::new("a,b;q binomial")
        .mul(q_poch(qpow(q, 1 + k), q, m)? * q_poch(a * qpow(q, 1 + k), q, m)?)
        .mul(q_poch(b * qpow(q, 1 + k), q, m)? * q_poch(a * qpow(q, 1 - k) / b, q, m)?)
        .div(q_poch(q, q, m)? * q_poch(a * q, q, m)?)?
        .div(q_poch(b * qpow(q, 1 + 2 * k), q, m)? * q_poch(a * q / b, q, m)?)?
        .value()
}

/// `p → 0`, then `a → 0`, then `b → 0`, ending at the Gaussian binomial
/// produced by the q-Pascal recursion.
pub(crate) fn limit_chain(ctx: &mut Ctx) -> Result<()> {
    let n_max = ctx.n_max as i64;
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        t.params(&ps);
        let q = ps.q;
        let tiny_p = ParameterSet::elliptic(ps.a, ps.b, q, ps.p * 1e-22)?;
        let tiny_a = ParameterSet::elliptic(ps.a * 1e-24, ps.b, q, C64::default())?;
        let tiny_ab = ParameterSet::elliptic(ps.a * 1e-30, ps.b * 1e-15, q, C64::default())?;
        let gauss = WeightFamily::Q { q };
        for n in 0..=n_max {
            for k in 0..=n {
                // p → 0
                t.cmp(binom_numeric(&WeightFamily::Elliptic(tiny_p), n, k)?, abq_binom(ps.a, ps.b, q, n, k)?);
                // a → 0
                t.cmp(binom_numeric(&WeightFamily::Elliptic(tiny_a), n, k)?, binom_recursive(&WeightFamily::BQ { b: ps.b, q }, n, k)?);
                // b → 0
                t.cmp(binom_numeric(&WeightFamily::BQ { b: ps.b * 1e-13, q }, n, k)?, binom_recursive(&gauss, n, k)?);
                t.cmp(binom_numeric(&WeightFamily::BQ { b: zero(), q }, n, k)?, binom_recursive(&gauss, n, k)?);
                // the whole chain at once
                t.cmp(binom_numeric(&WeightFamily::Elliptic(tiny_ab), n, k)?, binom_recursive(&gauss, n, k)?);
            }
        }
        Ok(())
    })
}

pub(crate) fn aq_symmetry(ctx: &mut Ctx) -> Result<()> {
    let n_max = ctx.n_max as i64;
    ctx.sampled(|s, t| {
        let (a, q) = (s.ab(), s.q());
        t.digest(digest_of(a, zero(), q, zero()));
        let f = WeightFamily::AQ { a, q };
        for n in 0..=n_max {
            for k in 0..=n {
                t.cmp(binom_numeric(&f, n, k)?, binom_recursive(&f, n, n - k)?);
            }
        }
        Ok(())
    })
}

/// `[n+1,k] = [n,k] + (1−aq^{2n+2−k})/(1−aq^k) q^{k−n−1} [n,k−1]` and
/// `[n+1,k] = (1−aq^{n+1+k})/(1−aq^{n+1−k}) q^{−k} [n,k] + [n,k−1]`.
pub(crate) fn aq_recurrences(ctx: &mut Ctx) -> Result<()> {
    let n_max = ctx.n_max as i64;
    ctx.sampled(|s, t| {
        let (a, q) = (s.ab(), s.q());
        t.digest(digest_of(a, zero(), q, zero()));
        let f = WeightFamily::AQ { a, q };
        let one = C64::new(1.0, 0.0);
        for n in 0..n_max {
            for k in 0..=n + 1 {
                let lhs = binom_numeric(&f, n + 1, k)?;
                let (cur, prev) = (binom_recursive(&f, n, k)?, binom_recursive(&f, n, k - 1)?);
                let first = Quotient::new("a;q recurrence").mul(one - a * qpow(q, 2 * n + 2 - k)).div(one - a * qpow(q, k))?.mul(qpow(q, k - n - 1)).value()?;
                t.cmp(lhs, cur + first * prev);
                let second = Quotient::new("a;q recurrence").mul(one - a * qpow(q, n + 1 + k)).div(one - a * qpow(q, n + 1 - k))?.mul(qpow(q, -k)).value()?;
                t.cmp(lhs, second * cur + prev);
            }
        }
        Ok(())
    })
}

/// Exact: the coefficient of `x^k y^{n−k}` in `(x+y)^n` is the recursive binomial.
pub(crate) fn wdep_binomial_thm(ctx: &mut Ctx) -> Result<()> {
    for n in 0..=ctx.n_max {
        let nf = expand_power_sum(n, RelationSystem::Homogeneous);
        let mut expected = NormalForm::zero();
        for k in 0..=n {
            expected.add_term(k, n - k, &binom_symbolic(n, k as i64));
        }
        ctx.exact(nf == expected);
    }
    Ok(())
}

fn power_sums(n_max: u32) -> Vec<NormalForm> {
    (0..=n_max).map(|n| expand_power_sum(n, RelationSystem::Homogeneous)).collect()
}

fn cmp_theorem(t: &mut Trial, sums: &[NormalForm], f: &WeightFamily) -> Result<()> {
    for (n, nf) in sums.iter().enumerate() {
        for k in 0..=n as u32 {
            let c = nf.coefficient(k, n as u32 - k);
            let got = c.eval(|s, t| f.small(s as i64, t as i64))?;
            let scale = c.eval(|s, t| Ok(C64::new(f.small(s as i64, t as i64)?.norm(), 0.0)))?.re;
            t.cmp_sum(binom_numeric(f, n as i64, k as i64)?, got, scale, "normal form coefficient")?;
        }
        t.require(nf.len() == n + 1);
    }
    Ok(())
}

pub(crate) fn elliptic_binomial_thm(ctx: &mut Ctx) -> Result<()> {
    let sums = power_sums(ctx.n_max);
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        t.params(&ps);
        cmp_theorem(t, &sums, &WeightFamily::Elliptic(ps))
    })
}

pub(crate) fn bq_binomial_thm(ctx: &mut Ctx) -> Result<()> {
    let sums = power_sums(ctx.n_max);
    ctx.sampled(|s, t| {
        let (b, q) = (s.ab(), s.q());
        t.digest(digest_of(zero(), b, q, zero()));
        cmp_theorem(t, &sums, &WeightFamily::BQ { b, q })
    })
}

pub(crate) fn aq_binomial_thm(ctx: &mut Ctx) -> Result<()> {
    let sums = power_sums(ctx.n_max);
    ctx.sampled(|s, t| {
        let (a, q) = (s.ab(), s.q());
        t.digest(digest_of(a, zero(), q, zero()));
        cmp_theorem(t, &sums, &WeightFamily::AQ { a, q })
    })
}

fn word(i: usize, letter_first: crate::ncword::Letter, j: usize, letter_second: crate::ncword::Letter) -> Word {
    let mut w = vec![letter_first; i];
    w.extend(std::iter::repeat_n(letter_second, j));
    Word(w)
}

/// `x^l y^k = q^{−kl} (bq^{1+k};q)_{2l} / (bq;q)_{2l} · y^k x^l` under the `b;q` weights.
pub(crate) fn bq_reversal(ctx: &mut Ctx) -> Result<()> {
    use crate::ncword::Letter::{X, Y};
    let n_max = ctx.n_max as usize;
    let mut reorder = Vec::new();
    for k in 0..=n_max {
        for l in 0..=n_max - k {
            // y^k x^l = c · x^l y^k
            let nf = normal_order(&word(k, Y, l, X), RelationSystem::Homogeneous);
            reorder.push((k as i64, l as i64, nf.coefficient(l as u32, k as u32)));
        }
    }
    ctx.sampled(|s, t| {
        let (b, q) = (s.ab(), s.q());
        t.digest(digest_of(zero(), b, q, zero()));
        let f = WeightFamily::BQ { b, q };
        for (k, l, c) in &reorder {
            let (k, l) = (*k, *l);
            let c = c.eval(|si, ti| f.small(si as i64, ti as i64))?;
            let factor = Quotient::new("b;q reversal")
                .mul(qpow(q, -k * l))
                .mul(q_poch(b * qpow(q, 1 + k), q, 2 * l)?)
                .div(q_poch(b * q, q, 2 * l)?)?
                .value()?;
            t.cmp(factor * c, C64::new(1.0, 0.0));
        }
        Ok(())
    })
}

/// `(x+y)^n = Σ_k (q;q)_n/((q;q)_k (q;q)_{n−k}) (bq;q)_n/((bq;q)_k (bq;q)_{n−k}) q^{k(k−n)} y^k x^{n−k}`,
/// with `y^k x^l` brought to `x^l y^k` by the closed reversal factor.
pub(crate) fn bq_reversed_expansion(ctx: &mut Ctx) -> Result<()> {
    let sums = power_sums(ctx.n_max);
    ctx.sampled(|s, t| {
        let (b, q) = (s.ab(), s.q());
        t.digest(digest_of(zero(), b, q, zero()));
        let f = WeightFamily::BQ { b, q };
        for (n, nf) in sums.iter().enumerate() {
            let n = n as i64;
            let mut rhs: BTreeMap<(u32, u32), C64> = BTreeMap::new();
            for k in 0..=n {
                let l = n - k;
                let c = Quotient::new("reversed expansion")
                    .mul(q_poch(q, q, n)? * q_poch(b * q, q, n)?)
                    .div(q_poch(q, q, k)? * q_poch(q, q, l)?)?
                    .div(q_poch(b * q, q, k)? * q_poch(b * q, q, l)?)?
                    .mul(qpow(q, k * (k - n)))
                    // y^k x^l = q^{kl} (bq;q)_{2l} / (bq^{1+k};q)_{2l} x^l y^k
                    .mul(qpow(q, k * l) * q_poch(b * q, q, 2 * l)?)
                    .div(q_poch(b * qpow(q, 1 + k), q, 2 * l)?)?
                    .value()?;
                rhs.insert((l as u32, k as u32), c);
            }
            t.cmp_maps(&nf.evaluate(&f)?, &rhs);
        }
        Ok(())
    })
}

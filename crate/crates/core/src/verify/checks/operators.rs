use num_complex::Complex64 as C64;

use crate::skewpoly::{
    fib_aq, fib_aq_closed, fib_elliptic, genfun_expand, pincherle_sides, product_expansion_sides, xeta_power, xeta_power_closed, Direction,
};
use crate::special_fn::WeightFamily;
use crate::verify::runner::Ctx;
use crate::verify::sampling::digest_of;
use crate::Result;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn pincherle_up_to(ctx: &mut Ctx, k_max: u32) -> Result<()> {
    let n_max = ctx.n_max;
    let mut sides = Vec::new();
    for k in 1..=k_max {
        for n in 0..=n_max {
            sides.push(pincherle_sides(k, n));
        }
    }
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        t.params(&ps);
        let f = WeightFamily::Elliptic(ps);
        for (l, r) in &sides {
            let (lv, rv) = (l.eval(&f)?, r.eval(&f)?);
            let top = l.degree().max(r.degree()).unwrap_or(0);
            for n in 0..=top {
                t.cmp(lv.get(n), rv.get(n));
            }
        }
        Ok(())
    })
}

/// `(Dx − xD)(xⁿ) = η(xⁿ)`.
pub(crate) fn pincherle(ctx: &mut Ctx) -> Result<()> {
    pincherle_up_to(ctx, 1)
}

/// `(D^k x − x D^k)(xⁿ) = [k,1]_{bq^{2−2k}, aq^{1−k}} D^{k−1} η(xⁿ)` for `k ≤ 5`.
pub(crate) fn pincherle_k(ctx: &mut Ctx) -> Result<()> {
    pincherle_up_to(ctx, 5)
}

/// The product expansion with the `k = 0` factor rightmost.
pub(crate) fn product_expansion(ctx: &mut Ctx) -> Result<()> {
    let n_max = ctx.n_max;
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        let c = s.polar(0.3, 1.5);
        t.params(&ps);
        let f = WeightFamily::Elliptic(ps);
        for n in 0..=n_max {
            let (l, r) = product_expansion_sides(n, c, Direction::RightToLeft);
            let (lv, rv) = (l.eval(&f)?, r.eval(&f)?);
            for k in 0..=n {
                t.cmp(lv.get(k), rv.get(k));
            }
        }
        Ok(())
    })
}

/// The generating function expansion against the defining recursion, for the
/// elliptic and the `a;q` families.
pub(crate) fn fib_genfun(ctx: &mut Ctx) -> Result<()> {
    let degree = ctx.degree;
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        t.params(&ps);
        let series = genfun_expand(degree, &WeightFamily::Elliptic(ps))?;
        let rec: Vec<C64> = (1..=degree).map(|n| fib_elliptic(n, &ps)).collect::<Result<_>>()?;
        t.cmp_all(&series, &rec);
        let series = genfun_expand(degree, &WeightFamily::AQ { a: ps.a, q: ps.q })?;
        let rec: Vec<C64> = (1..=degree).map(|n| fib_aq(n, ps.a, ps.q)).collect::<Result<_>>()?;
        t.cmp_all(&series, &rec);
        Ok(())
    })
}

pub(crate) fn fib_aq_closed_form(ctx: &mut Ctx) -> Result<()> {
    let n_max = ctx.n_max;
    ctx.sampled(|s, t| {
        let (a, q) = (s.ab(), s.q());
        t.digest(digest_of(a, zero(), q, zero()));
        for n in 0..=n_max {
            t.cmp(fib_aq(n, a, q)?, fib_aq_closed(n, a, q)?);
        }
        Ok(())
    })
}

/// `(x + x²η_{a;q})ⁿ x` by operator application against its closed expansion.
pub(crate) fn lemma_xeta_power(ctx: &mut Ctx) -> Result<()> {
    let sides: Vec<_> = (0..=ctx.n_max).map(|n| (xeta_power(n), xeta_power_closed(n))).collect();
    ctx.sampled(|s, t| {
        let (a, q) = (s.ab(), s.q());
        t.digest(digest_of(a, zero(), q, zero()));
        let f = WeightFamily::AQ { a, q };
        for (l, r) in &sides {
            let (lv, rv) = (l.eval(&f)?, r.eval(&f)?);
            let top = l.degree().max(r.degree()).unwrap_or(0);
            for n in 0..=top {
                t.cmp(lv.get(n), rv.get(n));
            }
        }
        Ok(())
    })
}

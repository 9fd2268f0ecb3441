use crate::special_fn::{WeightFamily};
use crate::verify::runner::Ctx;
use crate::Result;

/// `w(s, k+n)` at `(a,b)` equals `w(s, n)` at `(aq^{2k}, bq^k)`, and
/// `W(s, k+n) = W(s,k) · W(s,n)|_{(aq^{2k}, bq^k)}`.
pub(crate) fn shift(ctx: &mut Ctx) -> Result<()> {
    let n_max = ctx.n_max as i64;
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        t.params(&ps);
        let f = WeightFamily::Elliptic(ps);
        for si in 1..=3 {
            for k in 0..=n_max {
                let g = WeightFamily::Elliptic(ps.shifted(2 * k, k));
                for n in 1..=n_max - k {
                    t.cmp(f.small(si, k + n)?, g.small(si, n)?);
                    t.cmp(f.big(si, k + n)?, f.big(si, k)? * g.big(si, n)?);
                }
            }
        }
        Ok(())
    })
}

pub(crate) fn bigweight_closed_vs_product(ctx: &mut Ctx) -> Result<()> {
    let n_max = ctx.n_max as i64;
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        t.params(&ps);
        let families = [
            WeightFamily::Elliptic(ps),
            WeightFamily::BQ { b: ps.b, q: ps.q },
            WeightFamily::AQ { a: ps.a, q: ps.q },
            WeightFamily::Q { q: ps.q },
        ];
        for f in &families {
            for si in 1..=4 {
                for ti in 0..=n_max {
                    t.cmp(f.big(si, ti)?, f.big_product(si, ti)?);
                }
            }
        }
        Ok(())
    })
}

/// `w_{a,0;q}(s,t) = sin((α+s/2+t+1)x) / sin((α+s/2+t)x)` for `q = e^{ix}`, `√a = e^{i(α+1)x}`.
pub(crate) fn chebyshev(ctx: &mut Ctx) -> Result<()> {
    use num_complex::Complex64 as C64;
    let n_max = ctx.n_max as i64;
    ctx.sampled(|s, t| {
        let x = s.uniform(0.05, 1.0);
        let alpha = s.uniform(-2.0, 2.0);
        let q = C64::from_polar(1.0, x);
        let a = C64::from_polar(1.0, 2.0 * (alpha + 1.0) * x);
        t.digest(crate::verify::sampling::digest_of(a, C64::default(), q, C64::default()));
        let f = WeightFamily::AQ { a, q };
        for si in 1..=n_max {
            for ti in 1..=n_max {
                let m = alpha + si as f64 / 2.0 + ti as f64;
                let den = (m * x).sin();
                crate::special_fn::guard_denominator(C64::new(den, 0.0), "chebyshev sine")?;
                t.cmp(f.small(si, ti)?, C64::new(((m + 1.0) * x).sin() / den, 0.0));
            }
        }
        Ok(())
    })
}

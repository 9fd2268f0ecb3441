use num_complex::Complex64 as C64;

use crate::special_fn::{theta, theta_product, theta_series, ParameterSet, WeightFamily};
use crate::verify::runner::Ctx;
use crate::verify::sampling::digest_of;
use crate::Result;

pub(crate) fn inversion(ctx: &mut Ctx) -> Result<()> {
    ctx.sampled(|s, t| {
        let (x, p) = (s.polar(0.3, 2.5), s.p());
        t.digest(digest_of(x, C64::default(), C64::default(), p));
        t.cmp(theta(1.0 / x, p)?, -theta_series(x, p)? / x);
        Ok(())
    })
}

pub(crate) fn quasiperiod(ctx: &mut Ctx) -> Result<()> {
    ctx.sampled(|s, t| {
        let (x, p) = (s.polar(0.3, 2.5), s.p());
        t.digest(digest_of(x, C64::default(), C64::default(), p));
        t.cmp(theta(p * x, p)?, -theta_series(x, p)? / x);
        Ok(())
    })
}

/// `θ(xy, x/y, uv, u/v) − θ(xv, x/v, uy, u/y) = (u/y) θ(yv, y/v, xu, x/u)`.
pub(crate) fn addition(ctx: &mut Ctx) -> Result<()> {
    ctx.sampled(|s, t| {
        let (x, y, u, v) = (s.polar(0.5, 2.0), s.polar(0.5, 2.0), s.polar(0.5, 2.0), s.polar(0.5, 2.0));
        let p = s.p();
        t.digest(format!("{}{}", digest_of(x, y, u, p), digest_of(v, C64::default(), C64::default(), p)));
        let (first, second) = (theta_product(&[x * y, x / y, u * v, u / v], p)?, theta_product(&[x * v, x / v, u * y, u / y], p)?);
        let series = |args: &[C64]| -> Result<C64> { args.iter().try_fold(C64::new(1.0, 0.0), |acc, &z| Ok(acc * theta_series(z, p)?)) };
        let rhs = u / y * series(&[y * v, y / v, x * u, x / u])?;
        t.cmp_sum(rhs, first - second, first.norm() + second.norm(), "theta addition difference")?;
        Ok(())
    })
}

/// Small weights are invariant under `a → ap` and `b → bp`.
pub(crate) fn weight_p_periodic(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n_max as i64;
    ctx.sampled(|s, t| {
        let ps = s.elliptic();
        t.params(&ps);
        let base = WeightFamily::Elliptic(ps);
        let moved = [(ps.p, C64::new(1.0, 0.0)), (C64::new(1.0, 0.0), ps.p), (ps.p, ps.p), (1.0 / ps.p, C64::new(1.0, 0.0))];
        for (fa, fb) in moved {
            let other = WeightFamily::Elliptic(ParameterSet::elliptic(ps.a * fa, ps.b * fb, ps.q, ps.p)?);
            for si in 1..=n {
                for ti in 1..=n {
                    t.cmp(base.small(si, ti)?, other.small(si, ti)?);
                }
            }
        }
        Ok(())
    })
}

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::registry::{lookup, IdentityCheck, REGISTRY};
use super::sampling::Sampler;
use super::rel_err;
use crate::special_fn::ParameterSet;
use crate::{Error, Result};

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub trials: u64,
    pub failures: u64,
    pub max_rel_err: f64,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub pass: bool,
    pub samples: Vec<String>,
}

/// Overrides of a check's default sizes and tolerance.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CheckOptions {
    /// Largest `n` (word length, binomial row, Fibonacci index).
    pub n_max: Option<u32>,
    /// Series degree cap.
    pub degree: Option<u32>,
    /// Parameter draws per sampled loop.
    pub draws: Option<u32>,
    pub tolerance: Option<f64>,
}

/// Largest condition number `Σ|terms| / |sum|` a summed side may have under
/// tolerance `tol`. Rounding error of such a sum stays near `κ·ε`, so the
/// bound leaves a factor of about 50 below `tol`.
pub fn max_condition(tol: f64) -> f64 {
    tol / (64.0 * f64::EPSILON)
}

/// One admissible parameter draw and the comparisons made with it.
#[derive(Debug)]
pub struct Trial {
    max_condition: f64,
    pairs: Vec<(C64, C64)>,
    excluded: u64,
    mismatches: u32,
    digest: Option<String>,
}

impl Trial {
    fn new(tolerance: f64) -> Self {
        Trial { max_condition: max_condition(tolerance), pairs: Vec::new(), excluded: 0, mismatches: 0, digest: None }
    }

    pub fn params(&mut self, ps: &ParameterSet) {
        self.digest = Some(ps.digest());
    }

    pub fn digest(&mut self, d: String) {
        self.digest = Some(d);
    }

    pub fn cmp(&mut self, l: C64, r: C64) {
        self.pairs.push((l, r));
    }

    pub fn cmp_all(&mut self, l: &[C64], r: &[C64]) {
        if l.len() != r.len() {
            self.mismatches += 1;
        }
        for (&a, &b) in l.iter().zip(r) {
            self.cmp(a, b);
        }
    }

    /// Compares two sparse coefficient maps; a key missing on one side counts as zero.
    pub fn cmp_maps<K: Ord + Clone>(&mut self, l: &BTreeMap<K, C64>, r: &BTreeMap<K, C64>) {
        let zero = C64::new(0.0, 0.0);
        for (k, &a) in l {
            self.cmp(a, r.get(k).copied().unwrap_or(zero));
        }
        for (k, &b) in r {
            if !l.contains_key(k) {
                self.cmp(zero, b);
            }
        }
    }

    /// Like [`cmp`](Self::cmp) where `r` is a sum whose terms have absolute
    /// values summing to `scale`. When `scale` exceeds [`max_condition`] times
    /// the compared magnitudes the comparison is excluded and counted instead;
    /// a check fails once more than 5% of its comparisons are excluded.
    pub fn cmp_sum(&mut self, l: C64, r: C64, scale: f64, what: &str) -> Result<()> {
        let size = l.norm().max(r.norm());
        if l != r && scale > self.max_condition * size {
            log::info!("excluded {}", Error::IllConditioned { what: what.to_string(), condition: scale / size });
            self.excluded += 1;
            return Ok(());
        }
        self.cmp(l, r);
        Ok(())
    }

    /// An exact comparison inside a numeric trial.
    pub fn require(&mut self, ok: bool) {
        if !ok {
            self.mismatches += 1;
        }
    }
}

/// Running state of a check: sizes, generator and accumulated statistics.
pub struct Ctx {
    pub id: &'static str,
    pub sampler: Sampler,
    pub n_max: u32,
    pub degree: u32,
    pub draws: u32,
    tolerance: f64,
    trials: u64,
    failures: u64,
    max_rel_err: f64,
    samples: Vec<String>,
    attempts: u64,
    rejected: u64,
    compared: u64,
    excluded: u64,
}

impl Ctx {
    fn new(check: &IdentityCheck, seed: u64, opts: &CheckOptions) -> Self {
        Ctx {
            id: check.id,
            sampler: Sampler::new(seed, check.id),
            n_max: opts.n_max.unwrap_or(check.default_sizes.n_max),
            degree: opts.degree.unwrap_or(check.default_sizes.degree),
            draws: opts.draws.unwrap_or(check.default_sizes.draws),
            tolerance: opts.tolerance.unwrap_or(check.tolerance),
            trials: 0,
            failures: 0,
            max_rel_err: 0.0,
            samples: Vec::new(),
            attempts: 0,
            rejected: 0,
            compared: 0,
            excluded: 0,
        }
    }

    fn record(&mut self, trial: Trial) {
        self.trials += 1;
        let mut failed = trial.mismatches > 0;
        self.compared += trial.pairs.len() as u64;
        self.excluded += trial.excluded;
        for (l, r) in trial.pairs {
            let e = rel_err(l, r);
            if e.is_nan() || e > self.tolerance {
                failed = true;
                self.max_rel_err = self.max_rel_err.max(if e.is_nan() { f64::INFINITY } else { e });
            } else if e > self.max_rel_err {
                self.max_rel_err = e;
            }
        }
        if failed {
            self.failures += 1;
        }
        if let Some(d) = trial.digest {
            self.samples.push(d);
        }
    }

    /// Runs `f` on `self.draws` admissible draws.
    pub fn sampled<F>(&mut self, f: F) -> Result<()>
    where
        F: FnMut(&mut Sampler, &mut Trial) -> Result<()>,
    {
        self.sampled_n(self.draws, f)
    }

    /// Runs `f` until `n` draws were admissible. A draw whose evaluation hits
    /// a near-pole is discarded, logged and counted against the resample cap.
    /// A loop rejecting more draws than it needs gives up early.
    pub fn sampled_n<F>(&mut self, n: u32, mut f: F) -> Result<()>
    where
        F: FnMut(&mut Sampler, &mut Trial) -> Result<()>,
    {
        let mut accepted = 0;
        let mut rejected_here = 0u64;
        while accepted < n {
            self.attempts += 1;
            let mut trial = Trial::new(self.tolerance);
            match f(&mut self.sampler, &mut trial) {
                Ok(()) => {
                    self.record(trial);
                    accepted += 1;
                }
                Err(e) if e.is_resampleable() => {
                    log::info!("{}: resampling after {e}", self.id);
                    self.rejected += 1;
                    rejected_here += 1;
                    if rejected_here > n as u64 + 10 {
                        return Err(self.cap_error());
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }

    /// A deterministic numeric comparison (no draw).
    pub fn fixed<F>(&mut self, f: F) -> Result<()>
    where
        F: FnOnce(&mut Trial) -> Result<()>,
    {
        let mut trial = Trial::new(self.tolerance);
        f(&mut trial)?;
        self.record(trial);
        Ok(())
    }

    /// One exact-symbolic case.
    pub fn exact(&mut self, ok: bool) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn cap_error(&self) -> Error {
        Error::ResampleCap {
            id: self.id.to_string(),
            admissible: (self.attempts - self.rejected) as usize,
            total: self.attempts as usize,
        }
    }

    fn finish(self, seed: u64, elapsed_ms: u64) -> Result<CheckReport> {
        if self.attempts > 0 && (self.attempts - self.rejected) * 100 < self.attempts * 95 {
            return Err(self.cap_error());
        }
        if self.excluded * 100 > (self.compared + self.excluded) * 5 {
            return Err(Error::ResampleCap {
                id: self.id.to_string(),
                admissible: self.compared as usize,
                total: (self.compared + self.excluded) as usize,
            });
        }
        if self.excluded > 0 {
            log::info!("{}: {} of {} comparisons excluded as ill-conditioned", self.id, self.excluded, self.compared + self.excluded);
        }
        Ok(CheckReport {
            id: self.id.to_string(),
            trials: self.trials,
            failures: self.failures,
            max_rel_err: self.max_rel_err,
            seed,
            elapsed_ms,
            pass: self.failures == 0 && self.max_rel_err <= self.tolerance,
            samples: self.samples,
        })
    }
}

/// Runs one registered check. Deterministic in `(id, seed, opts)` apart from
/// `elapsed_ms`.
pub fn run_check(id: &str, seed: u64, opts: &CheckOptions) -> Result<CheckReport> {
    let check = lookup(id)?;
    let start = Instant::now();
    let mut ctx = Ctx::new(check, seed, opts);
    (check.run)(&mut ctx)?;
    ctx.finish(seed, start.elapsed().as_millis() as u64)
}

/// Runs the whole registry with default sizes, in registry order.
pub fn run_all(seed: u64) -> Result<Vec<CheckReport>> {
    let opts = CheckOptions::default();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        REGISTRY.par_iter().map(|c| run_check(c.id, seed, &opts)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        REGISTRY.iter().map(|c| run_check(c.id, seed, &opts)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::new(lookup("theta-inversion").unwrap(), 7, &CheckOptions { tolerance: Some(1e-8), ..Default::default() })
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn nan_counts_as_failure() {
        let mut ctx = ctx();
        ctx.fixed(|t| {
            t.cmp(c(1.0), c(f64::NAN));
            Ok(())
        })
        .unwrap();
        let report = ctx.finish(7, 0).unwrap();
        assert_eq!(report.failures, 1);
        assert!(report.max_rel_err.is_infinite());
        assert!(!report.pass);
    }

    #[test]
    fn ill_conditioned_sums_are_excluded() {
        let mut t = Trial::new(1e-8);
        t.cmp_sum(c(1e-3), c(2e-3), 1e9, "sum").unwrap();
        assert!(t.pairs.is_empty());
        assert_eq!(t.excluded, 1);
        // exact agreement is never excluded
        t.cmp_sum(c(0.0), c(0.0), 1.0, "sum").unwrap();
        t.cmp_sum(c(1.0), c(1.0 + 1e-12), 10.0, "sum").unwrap();
        assert_eq!(t.pairs.len(), 2);
        assert!(max_condition(1e-8) > 1e5 && max_condition(1e-8) < 1e6);
    }

    #[test]
    fn too_many_exclusions_error() {
        let mut ctx = ctx();
        for i in 0..20 {
            ctx.fixed(|t| {
                if i == 0 {
                    t.cmp_sum(c(1.0), c(1.5), 1e12, "sum")
                } else {
                    t.cmp(c(1.0), c(1.0));
                    Ok(())
                }
            })
            .unwrap();
        }
        // 1 of 20 is exactly 5%
        assert!(ctx.finish(7, 0).is_ok());
        let mut ctx = super::tests::ctx();
        for i in 0..10 {
            ctx.fixed(|t| if i < 2 { t.cmp_sum(c(1.0), c(1.5), 1e12, "sum") } else { t.cmp(c(1.0), c(1.0)); Ok(()) }).unwrap();
        }
        assert!(matches!(ctx.finish(7, 0), Err(Error::ResampleCap { admissible: 8, total: 10, .. })));
    }

    #[test]
    fn resampling_is_capped() {
        let mut ctx = ctx();
        let mut calls = 0;
        ctx.sampled_n(40, |_, t| {
            calls += 1;
            if calls % 25 == 0 {
                return Err(Error::NearPole { what: "test".into(), magnitude: 0.0 });
            }
            t.cmp(c(1.0), c(1.0));
            Ok(())
        })
        .unwrap();
        assert_eq!(ctx.finish(7, 0).unwrap().trials, 40);

        let mut ctx = super::tests::ctx();
        let mut calls = 0;
        ctx.sampled_n(40, |_, _| {
            calls += 1;
            if calls % 3 == 0 {
                return Err(Error::NearPole { what: "test".into(), magnitude: 0.0 });
            }
            Ok(())
        })
        .unwrap();
        assert!(matches!(ctx.finish(7, 0), Err(Error::ResampleCap { .. })));

        let mut ctx = super::tests::ctx();
        let err = ctx.sampled_n(5, |_, _| Err(Error::NearPole { what: "test".into(), magnitude: 0.0 })).unwrap_err();
        assert!(matches!(err, Error::ResampleCap { admissible: 0, .. }));
    }

    #[test]
    fn other_errors_propagate() {
        let mut ctx = ctx();
        let err = ctx.sampled_n(3, |_, _| Err(Error::Domain("bad".into()))).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }
}

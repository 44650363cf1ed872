//! Erlang moments, exact and Monte Carlo.
//!
//! `Y_r = X_1 + ... + X_r` with `X_i` i.i.d. `Gamma(1, 1)` has moments
//! `E[Y_r^k] = r^(k)` and moment generating function `(1-t)^{-r}`, so the
//! generalized polynomials are `Σ_k C(n,k) x^k E[Y_r^k]`.
//!
//! Sampling uses xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Uniforms are the top 53 bits of
//! each output scaled into `[0, 1)`, and each exponential draw is
//! `-ln(1 - U)`. Sub-stream `i` of a multi-stream run starts from the seed
//! stream advanced by `i` jumps of `2^128` steps.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::exact::{binomial, from_integer, rising_factorial, Integer, Rational};
use crate::{Error, Result};

/// Highest moment order the Monte Carlo estimators accept.
pub const MAX_MC_ORDER: usize = 8;

pub type SampleRng = Xoshiro256PlusPlus;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Shape `alpha`, rate `beta`. Only `(1, 1)` is sampled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaParams {
    alpha: Rational,
    beta: Rational,
}

impl GammaParams {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::InvalidArgument("gamma shape and rate must be positive".into()));
        }
        Ok(GammaParams { alpha, beta })
    }

    /// `Gamma(1, 1)`, the unit exponential.
    pub fn unit_exponential() -> Self {
        GammaParams { alpha: Rational::one(), beta: Rational::one() }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MomentEstimate {
    /// `(mean - target) / stderr`; zero when both the deviation and the
    /// standard error vanish.
    pub fn z_score(&self, target: f64) -> f64 {
        let dev = self.mean - target;
        if dev == 0.0 {
            0.0
        } else {
            dev / self.stderr
        }
    }

    pub fn within(&self, target: f64, sigmas: f64) -> bool {
        self.z_score(target).abs() <= sigmas
    }
}

/// `E[Y_r^k] = r^(k)`.
pub fn erlang_moment_exact(r: u32, k: usize) -> Integer {
    rising_factorial(r as i64, k)
}

/// Moment generating function of `Y_r` at `t < 1`: `(1-t)^{-r}`.
pub fn mgf_erlang(r: u32, t: &Rational) -> Result<Rational> {
    let one_minus = Rational::one() - t;
    if !one_minus.is_positive() {
        return Err(Error::OutOfDomain(crate::exact::format_rational(t)));
    }
    Ok(num_traits::pow(one_minus.recip(), r as usize))
}

pub fn sample_exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    -(-u).ln_1p()
}

/// One draw of `Y_r`, the sum of `r` unit exponentials.
pub fn sample_erlang<R: Rng + ?Sized>(r: u32, rng: &mut R) -> f64 {
    (0..r).map(|_| sample_exponential(rng)).sum()
}

/// Running mean and variance (Welford), mergeable across streams.
#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    fn push(&mut self, v: f64) {
        self.count += 1;
        let delta = v - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (v - self.mean);
    }

    fn merge(self, other: Accumulator) -> Accumulator {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64) * (other.count as f64) / count as f64;
        Accumulator { count, mean, m2 }
    }

    fn estimate(&self, seed: u64) -> MomentEstimate {
        let var = self.m2 / (self.count - 1) as f64;
        MomentEstimate {
            mean: self.mean,
            stderr: (var.max(0.0) / self.count as f64).sqrt(),
            samples: self.count,
            seed,
        }
    }
}

/// Sampling plan: total draws, seed and number of independent sub-streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub streams: usize,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        McConfig { samples, seed, streams: 1 }
    }

    pub fn with_streams(mut self, streams: usize) -> Self {
        self.streams = streams;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::InvalidArgument("at least 2 samples are required".into()));
        }
        if self.streams == 0 || self.streams as u64 > self.samples {
            return Err(Error::InvalidArgument("stream count must be in 1..=samples".into()));
        }
        Ok(())
    }

    /// Splits the draws over sub-streams and accumulates each statistic,
    /// merging in stream order.
    fn run<const N: usize>(&self, r: u32, stat: impl Fn(f64, &mut [f64; N]) + Sync) -> [Accumulator; N] {
        let per = self.samples / self.streams as u64;
        let extra = self.samples % self.streams as u64;
        let parts: Vec<[Accumulator; N]> = (0..self.streams)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_from_seed(self.seed);
                for _ in 0..i {
                    rng.jump();
                }
                let draws = per + u64::from((i as u64) < extra);
                let mut acc = [Accumulator::default(); N];
                let mut values = [0.0; N];
                for _ in 0..draws {
                    stat(sample_erlang(r, &mut rng), &mut values);
                    for (a, &v) in acc.iter_mut().zip(&values) {
                        a.push(v);
                    }
                }
                acc
            })
            .collect();
        parts.into_iter().fold([Accumulator::default(); N], |total, part| {
            let mut out = total;
            for (o, p) in out.iter_mut().zip(part) {
                *o = o.merge(p);
            }
            out
        })
    }
}

/// Estimates `E[Y_r^k]` for every `k <= MAX_MC_ORDER` from one shared
/// sample set. Entry `k` equals what [`mc_moment`] returns for that `k`.
pub fn mc_moments(r: u32, config: McConfig) -> Result<Vec<MomentEstimate>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    config.validate()?;
    let acc = config.run::<{ MAX_MC_ORDER + 1 }>(r, |y, out| {
        let mut p = 1.0;
        for slot in out.iter_mut() {
            *slot = p;
            p *= y;
        }
    });
    Ok(acc.iter().map(|a| a.estimate(config.seed)).collect())
}

/// Sample mean and standard error of `Y_r^k` from a single stream.
pub fn mc_moment(r: u32, k: usize, samples: u64, seed: u64) -> Result<MomentEstimate> {
    if k > MAX_MC_ORDER {
        return Err(Error::InvalidArgument(format!("moment order {k} exceeds {MAX_MC_ORDER}")));
    }
    Ok(mc_moments(r, McConfig::new(samples, seed))?[k])
}

/// Plug-in estimate of the generalized polynomial at `x` from the moment
/// expansion `Σ_k C(n,k) x^k E[Y_r^k]`, with the standard error of the
/// per-draw statistic `Σ_k C(n,k) x^k Y^k`.
pub fn mc_generalized(n: usize, r: u32, x: &Rational, config: McConfig) -> Result<MomentEstimate> {
    if n > MAX_MC_ORDER {
        return Err(Error::InvalidArgument(format!("degree {n} exceeds {MAX_MC_ORDER}")));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    config.validate()?;
    let xf = x.to_f64().ok_or_else(|| Error::OutOfDomain(crate::exact::format_rational(x)))?;
    let weights: Vec<f64> = (0..=n)
        .map(|k| {
            let c = from_integer(binomial(n, k as i64)) * num_traits::pow(x.clone(), k);
            c.to_f64().unwrap_or(f64::NAN)
        })
        .collect();
    debug_assert!(weights.iter().all(|w| w.is_finite()), "x = {xf}");
    let [acc] = config.run::<1>(r, |y, out| {
        // Horner in y over the binomial weights
        out[0] = weights.iter().rev().fold(0.0, |s, w| s * y + w);
    });
    Ok(acc.estimate(config.seed))
}

pub fn mc_generalized_d(n: usize, r: u32, x: &Rational, samples: u64, seed: u64) -> Result<MomentEstimate> {
    mc_generalized(n, r, x, McConfig::new(samples, seed))
}

/// Exact target of [`mc_generalized`]: `Σ_k C(n,k) x^k r^(k)`.
pub fn moment_expansion(n: usize, r: u32, x: &Rational) -> Rational {
    (0..=n).fold(Rational::zero(), |acc, k| {
        acc + from_integer(binomial(n, k as i64) * erlang_moment_exact(r, k))
            * num_traits::pow(x.clone(), k)
    })
}

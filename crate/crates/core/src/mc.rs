//! Seeded, shardable Monte Carlo estimation.
//!
//! Samples are grouped into fixed blocks of [`BLOCK`] draws. Block `b` always
//! reads the ChaCha stream `(seed, b)`, so a sample's random input does not
//! depend on how many shards run. Shards own contiguous ranges of blocks and
//! the per-block accumulators are merged in block order, which makes the
//! result bit-identical for every shard count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Samples per random stream.
pub const BLOCK: u64 = 1024;

/// Generator type handed to samplers.
pub type Rng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mix a seed with a tag into a new, well-separated seed.
pub fn mix_seed(seed: u64, tag: u64) -> u64 {
    splitmix64(seed ^ splitmix64(tag.wrapping_add(0x632B_E59B_D9B4_E019)))
}

/// A `(seed, stream)` pair naming one reproducible random sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSource {
    pub seed: u64,
    pub stream: u64,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        RandomSource { seed, stream }
    }

    /// Source for the inner estimate attached to outer sample `index`.
    pub fn derived(seed: u64, index: u64) -> Self {
        RandomSource {
            seed: mix_seed(seed, index),
            stream: 0,
        }
    }

    pub fn rng(&self) -> Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Monte Carlo budget and tolerances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCConfig {
    pub samples: u64,
    /// Inner budget for nested compositions.
    #[serde(default = "default_inner")]
    pub inner_samples: u64,
    pub seed: u64,
    #[serde(default = "default_shards")]
    pub shards: usize,
    #[serde(default = "default_z_tol")]
    pub z_tol: f64,
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
}

fn default_inner() -> u64 {
    1000
}
fn default_shards() -> usize {
    1
}
fn default_z_tol() -> f64 {
    4.0
}
fn default_abs_tol() -> f64 {
    1e-9
}

impl Default for MCConfig {
    fn default() -> Self {
        MCConfig::new(100_000, 0)
    }
}

impl MCConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        MCConfig {
            samples,
            inner_samples: default_inner(),
            seed,
            shards: default_shards(),
            z_tol: default_z_tol(),
            abs_tol: default_abs_tol(),
        }
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards;
        self
    }

    pub fn with_inner(mut self, inner: u64) -> Self {
        self.inner_samples = inner;
        self
    }

    pub fn with_samples(mut self, samples: u64) -> Self {
        self.samples = samples;
        self
    }

    /// Same budget with a seed derived from `tag`, for independent estimates.
    pub fn fork(&self, tag: u64) -> Self {
        MCConfig {
            seed: mix_seed(self.seed, tag),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 100 {
            return Err(Error::Config(format!("samples must be >= 100, got {}", self.samples)));
        }
        if self.inner_samples < 1 {
            return Err(Error::Config("inner_samples must be >= 1".into()));
        }
        if self.shards < 1 {
            return Err(Error::Config("shards must be >= 1".into()));
        }
        if !(self.z_tol > 0.0) {
            return Err(Error::Config("z_tol must be > 0".into()));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::Config("abs_tol must be >= 0".into()));
        }
        Ok(())
    }
}

/// Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub se: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MCEstimate {
    /// An exact value (zero standard error).
    pub fn exact(value: f64, samples: u64, seed: u64) -> Self {
        MCEstimate {
            mean: value,
            se: 0.0,
            samples,
            seed,
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        MCEstimate {
            mean: self.mean * c,
            se: self.se * c.abs(),
            ..*self
        }
    }

    /// `|mean − value| / se`, infinite when `se = 0` and the values differ.
    pub fn z_against(&self, value: f64) -> f64 {
        z_score(self.mean - value, self.se)
    }
}

/// `|diff| / se` with the conventions `0/0 = 0` and `x/0 = ∞`.
pub fn z_score(diff: f64, se: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else if se > 0.0 {
        diff.abs() / se
    } else {
        f64::INFINITY
    }
}

/// Single-pass mean and variance accumulator.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Welford {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Chan et al. pairwise merge.
    pub fn merge(&mut self, other: &Welford) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let d = other.mean - self.mean;
        self.mean += d * other.count as f64 / n;
        self.m2 += other.m2 + d * d * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64).max(0.0)
        }
    }

    pub fn se(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Multivariate accumulator: means and co-moments of a vector-valued sample.
#[derive(Clone, Debug, PartialEq)]
pub struct CoMoments {
    pub count: u64,
    pub mean: Vec<f64>,
    pub comoment: Vec<f64>,
}

impl CoMoments {
    pub fn new(dim: usize) -> Self {
        CoMoments {
            count: 0,
            mean: vec![0.0; dim],
            comoment: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn push(&mut self, x: &[f64]) {
        let d = self.dim();
        self.count += 1;
        let n = self.count as f64;
        let delta: Vec<f64> = x.iter().zip(&self.mean).map(|(a, b)| a - b).collect();
        for (m, dl) in self.mean.iter_mut().zip(&delta) {
            *m += dl / n;
        }
        for i in 0..d {
            for j in 0..d {
                self.comoment[i * d + j] += delta[i] * (x[j] - self.mean[j]);
            }
        }
    }

    pub fn merge(&mut self, other: &CoMoments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = other.clone();
            return;
        }
        let d = self.dim();
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        let delta: Vec<f64> = other.mean.iter().zip(&self.mean).map(|(a, b)| a - b).collect();
        for i in 0..d {
            for j in 0..d {
                self.comoment[i * d + j] += other.comoment[i * d + j] + delta[i] * delta[j] * na * nb / n;
            }
        }
        for (m, dl) in self.mean.iter_mut().zip(&delta) {
            *m += dl * nb / n;
        }
        self.count += other.count;
    }

    /// Covariance matrix of the sample means (row-major).
    pub fn mean_covariance(&self) -> Vec<f64> {
        let denom = (self.count.saturating_sub(1).max(1) * self.count.max(1)) as f64;
        self.comoment.iter().map(|c| c / denom).collect()
    }
}

fn blocks_of(samples: u64) -> u64 {
    samples.div_ceil(BLOCK)
}

/// Run `body(block, rng, first_index, len)` for every block, sharded across threads,
/// returning the per-block outputs in block order.
fn run_blocks<T, F>(cfg: &MCConfig, body: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &mut Rng, u64, u64) -> Result<T> + Sync,
{
    cfg.validate()?;
    let nblocks = blocks_of(cfg.samples);
    let do_block = |b: u64| {
        let mut rng = RandomSource::new(cfg.seed, b).rng();
        let start = b * BLOCK;
        let len = BLOCK.min(cfg.samples - start);
        body(b, &mut rng, start, len)
    };
    let shards = (cfg.shards as u64).min(nblocks).max(1);
    if shards == 1 || cfg!(target_arch = "wasm32") {
        return (0..nblocks).map(do_block).collect();
    }
    let per = nblocks.div_ceil(shards);
    let results: Vec<Vec<Result<T>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|s| {
                let do_block = &do_block;
                scope.spawn(move || {
                    let lo = s * per;
                    let hi = ((s + 1) * per).min(nblocks);
                    let mut out = Vec::new();
                    for b in lo..hi {
                        let r = do_block(b);
                        let stop = r.is_err();
                        out.push(r);
                        if stop {
                            break;
                        }
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("Monte Carlo shard panicked"))
            .collect()
    });
    // the first error in block order wins, which matches the sequential run
    results.into_iter().flatten().collect()
}

/// Estimate `E[draw]`, where `draw(rng, index)` returns one sample.
///
/// Fails with [`Error::NonFiniteSample`] carrying the global index of the
/// first non-finite sample.
pub fn estimate<F>(cfg: &MCConfig, draw: F) -> Result<MCEstimate>
where
    F: Fn(&mut Rng, u64) -> Result<f64> + Sync,
{
    let blocks = run_blocks(cfg, |_, rng, start, len| {
        let mut acc = Welford::default();
        for i in start..start + len {
            let x = draw(rng, i)?;
            if !x.is_finite() {
                return Err(Error::NonFiniteSample { index: i });
            }
            acc.push(x);
        }
        Ok(acc)
    })?;
    let mut total = Welford::default();
    for b in &blocks {
        total.merge(b);
    }
    Ok(MCEstimate {
        mean: total.mean,
        se: total.se(),
        samples: total.count,
        seed: cfg.seed,
    })
}

/// Vector-valued variant of [`estimate`]: `draw` writes `dim` values per sample.
pub fn estimate_joint<F>(cfg: &MCConfig, dim: usize, draw: F) -> Result<CoMoments>
where
    F: Fn(&mut Rng, u64, &mut [f64]) -> Result<()> + Sync,
{
    let blocks = run_blocks(cfg, |_, rng, start, len| {
        let mut acc = CoMoments::new(dim);
        let mut buf = vec![0.0; dim];
        for i in start..start + len {
            draw(rng, i, &mut buf)?;
            if buf.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFiniteSample { index: i });
            }
            acc.push(&buf);
        }
        Ok(acc)
    })?;
    let mut total = CoMoments::new(dim);
    for b in &blocks {
        total.merge(b);
    }
    Ok(total)
}

/// Plain mean of `count` draws from a private generator (inner level of nested estimates).
pub fn inner_mean<F>(source: RandomSource, count: u64, mut draw: F) -> Result<f64>
where
    F: FnMut(&mut Rng) -> Result<f64>,
{
    let mut rng = source.rng();
    let mut acc = 0.0;
    for _ in 0..count {
        let x = draw(&mut rng)?;
        if !x.is_finite() {
            return Ok(f64::NAN);
        }
        acc += x;
    }
    Ok(acc / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng as _;

    #[test]
    fn constant_integrand_is_exact() {
        let est = estimate(&MCConfig::new(5000, 1), |_, _| Ok(1.0)).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.se, 0.0);
        assert_eq!(est.samples, 5000);
    }

    #[test]
    fn shard_count_does_not_change_the_result() {
        let f = |rng: &mut Rng, _| Ok(rng.random::<f64>().powi(2));
        let a = estimate(&MCConfig::new(10_000, 9), f).unwrap();
        let b = estimate(&MCConfig::new(10_000, 9).with_shards(4), f).unwrap();
        let c = estimate(&MCConfig::new(10_000, 9).with_shards(3), f).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!((a.mean - 1.0 / 3.0).abs() < 4.0 * a.se);
    }

    #[test]
    fn non_finite_reports_first_index() {
        let cfg = MCConfig::new(5000, 2).with_shards(3);
        let err = estimate(&cfg, |_, i| Ok(if i == 3000 || i == 4500 { f64::NAN } else { 0.0 }));
        assert_eq!(err, Err(Error::NonFiniteSample { index: 3000 }));
    }

    #[test]
    fn config_validation() {
        assert!(MCConfig::new(99, 0).validate().is_err());
        assert!(MCConfig::new(100, 0).with_shards(0).validate().is_err());
        assert!(MCConfig::new(100, 0).validate().is_ok());
        let json = serde_json::to_string(&MCConfig::new(200, 3)).unwrap();
        let back: MCConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, MCConfig::new(200, 3));
        let partial: MCConfig = serde_json::from_str(r#"{"samples":500,"seed":1}"#).unwrap();
        assert_eq!(partial.z_tol, 4.0);
    }

    #[test]
    fn welford_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let mut whole = Welford::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = Welford::default();
        let mut b = Welford::default();
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        assert!((a.mean - whole.mean).abs() < 1e-12);
        assert!((a.variance() - whole.variance()).abs() < 1e-10);
    }

    #[test]
    fn comoments_track_covariance() {
        let cfg = MCConfig::new(20_000, 4).with_shards(2);
        let cm = estimate_joint(&cfg, 2, |rng, _, out| {
            let x: f64 = rng.random();
            out[0] = x;
            out[1] = 2.0 * x;
            Ok(())
        })
        .unwrap();
        let cov = cm.mean_covariance();
        // var(U)/N = 1/(12 N)
        assert!((cov[0] * 20_000.0 - 1.0 / 12.0).abs() < 0.005);
        assert!((cov[1] - 2.0 * cov[0]).abs() < 1e-12);
        assert!((cov[3] - 4.0 * cov[0]).abs() < 1e-12);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = RandomSource::new(5, 0).rng().random();
        let b: u64 = RandomSource::new(5, 0).rng().random();
        let c: u64 = RandomSource::new(5, 1).rng().random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(RandomSource::derived(5, 0), RandomSource::derived(5, 1));
    }
}

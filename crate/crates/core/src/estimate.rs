//! Monte Carlo motif count estimation over uniformly sampled anchor paths.
//!
//! Each sample is one class path drawn by the weight table; its contribution
//! `X` is the number of motif matches anchored on it. Since every match has
//! exactly one anchor image, `W * mean(X)` is an unbiased estimate.
//!
//! Samples are processed in fixed batches of [`BATCH`] draws. Batch `b` uses
//! stream `b` of a ChaCha generator keyed by the seed, so the samples drawn,
//! and hence every reported number, do not depend on how batches are spread
//! over threads.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extend::{Extender, Scratch};
use crate::graph::{TemporalGraph, Timestamp};
use crate::motif::{Motif, SamplingClass, TieMode};
use crate::sampler::{enumerate_paths, preprocess, WeightTable, GROUP};

/// Samples per RNG stream.
pub const BATCH: u64 = 4096;

/// Max, mean and population standard deviation of per-path match counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct BStats {
    pub max: u128,
    pub avg: f64,
    pub std: f64,
}

pub fn b_statistics(samples: &[u128]) -> Result<BStats> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("B statistics need at least one sample".into()));
    }
    let mut acc = Accumulator::default();
    for &x in samples {
        acc.push(Some(x));
    }
    Ok(acc.b_stats())
}

/// Per-batch running sums; merging is exact integer addition.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Accumulator {
    samples: u64,
    valid: u64,
    hits: u64,
    sum: u128,
    sum_sq: u128,
    max: u128,
}

impl Accumulator {
    #[inline]
    fn push(&mut self, x: Option<u128>) {
        self.samples += 1;
        if let Some(x) = x {
            self.valid += 1;
            if x > 0 {
                self.hits += 1;
                self.sum += x;
                self.sum_sq = self.sum_sq.saturating_add(x.saturating_mul(x));
                self.max = self.max.max(x);
            }
        }
    }

    fn merge(mut self, o: &Accumulator) -> Self {
        self.samples += o.samples;
        self.valid += o.valid;
        self.hits += o.hits;
        self.sum += o.sum;
        self.sum_sq = self.sum_sq.saturating_add(o.sum_sq);
        self.max = self.max.max(o.max);
        self
    }

    fn b_stats(&self) -> BStats {
        if self.valid == 0 {
            return BStats::default();
        }
        let n = self.valid as f64;
        let avg = self.sum as f64 / n;
        let var = (self.sum_sq as f64 / n - avg * avg).max(0.0);
        BStats { max: self.max, avg, std: var.sqrt() }
    }
}

/// Outcome of one estimation run.
#[derive(Clone, Debug)]
pub struct EstimateReport {
    /// `sum_x * w_delta / k`.
    pub estimate: f64,
    pub w_delta: u128,
    pub k: u64,
    /// Samples with at least one match.
    pub hits: u64,
    /// Samples that were a valid anchor image (distinct vertices, ordered, in window).
    pub valid: u64,
    pub sum_x: u128,
    /// Saturates at `u128::MAX`.
    pub sum_x_sq: u128,
    /// Over valid samples only.
    pub b: BStats,
    pub class: SamplingClass,
    pub seed: u64,
    pub threads: usize,
    pub elapsed_preprocess: Duration,
    pub elapsed_sampling: Duration,
    /// `W == 0`: no class path exists, the estimate is exactly 0.
    pub zero_support: bool,
}

/// Motif, anchor extender and weight table prepared once for repeated runs.
#[derive(Debug)]
pub struct Estimator<'g> {
    g: &'g TemporalGraph,
    extender: Extender,
    table: WeightTable,
    elapsed_preprocess: Duration,
}

impl<'g> Estimator<'g> {
    pub fn new(g: &'g TemporalGraph, motif: &Motif, delta: Timestamp, ties: TieMode) -> Result<Self> {
        let extender = Extender::new(motif, delta, ties)?;
        let start = Instant::now();
        let table = preprocess(g, extender.anchor().class, delta)?;
        Ok(Estimator { g, extender, table, elapsed_preprocess: start.elapsed() })
    }

    pub fn graph(&self) -> &'g TemporalGraph {
        self.g
    }

    pub fn extender(&self) -> &Extender {
        &self.extender
    }

    pub fn table(&self) -> &WeightTable {
        &self.table
    }

    pub fn total_weight(&self) -> u128 {
        self.table.total()
    }

    pub fn elapsed_preprocess(&self) -> Duration {
        self.elapsed_preprocess
    }

    fn run_batch(&self, seed: u64, batch: u64, count: u64) -> Accumulator {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(batch);
        let mut scratch = Scratch::default();
        let mut acc = Accumulator::default();
        let mut draws = Vec::with_capacity(GROUP);
        let mut left = count;
        while left > 0 {
            let n = left.min(GROUP as u64);
            self.table.sample_group(self.g, &mut rng, n as usize, &mut draws);
            for d in &draws {
                acc.push(self.extender.evaluate_edges(self.g, &d.center, d.arm_edges(), &mut scratch));
            }
            // an empty table yields no draws; each sample still counts
            for _ in draws.len() as u64..n {
                acc.push(None);
            }
            left -= n;
        }
        acc
    }

    /// Samples `start..end` of the sample sequence for `seed`. `start` must be
    /// a batch boundary.
    fn run_range(&self, start: u64, end: u64, seed: u64, threads: usize) -> Result<Accumulator> {
        debug_assert_eq!(start % BATCH, 0);
        if self.table.total() == 0 || start >= end {
            return Ok(Accumulator { samples: end.saturating_sub(start), ..Default::default() });
        }
        let first = start / BATCH;
        let last = end.div_ceil(BATCH);
        let size = |b: u64| (end.min((b + 1) * BATCH)) - b * BATCH;
        let parts: Vec<Accumulator> = if threads == 1 {
            (first..last).map(|b| self.run_batch(seed, b, size(b))).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            pool.install(|| (first..last).into_par_iter().map(|b| self.run_batch(seed, b, size(b))).collect())
        };
        Ok(parts.iter().fold(Accumulator::default(), |a, p| a.merge(p)))
    }

    /// Draws `k` samples. `threads == 0` uses all available cores; the result
    /// is identical for every thread count.
    pub fn run(&self, k: u64, seed: u64, threads: usize) -> Result<EstimateReport> {
        self.extend_run(None, k, seed, threads)
    }

    /// Continues `previous` (a run with the same seed whose `k` is a multiple
    /// of [`BATCH`]) up to `k` samples in total. The result equals a fresh
    /// [`run`](Self::run) with `k` samples.
    pub fn top_up(&self, previous: &EstimateReport, k: u64, threads: usize) -> Result<EstimateReport> {
        if !previous.k.is_multiple_of(BATCH) {
            return Err(Error::InvalidArgument(format!(
                "top-up needs a previous sample count that is a multiple of {BATCH}"
            )));
        }
        self.extend_run(Some(previous), k, previous.seed, threads)
    }

    fn extend_run(&self, previous: Option<&EstimateReport>, k: u64, seed: u64, threads: usize) -> Result<EstimateReport> {
        if k == 0 {
            return Err(Error::InvalidArgument("sample count must be at least 1".into()));
        }
        let threads = if threads == 0 { rayon::current_num_threads() } else { threads };
        let start = Instant::now();
        let (base, from, mut elapsed) = match previous {
            Some(p) if p.k <= k => (
                Accumulator {
                    samples: p.k,
                    valid: p.valid,
                    hits: p.hits,
                    sum: p.sum_x,
                    sum_sq: p.sum_x_sq,
                    max: p.b.max,
                },
                p.k,
                p.elapsed_sampling,
            ),
            _ => (Accumulator::default(), 0, Duration::ZERO),
        };
        let acc = base.merge(&self.run_range(from, k, seed, threads)?);
        elapsed += start.elapsed();
        let w = self.table.total();
        // exact up to the final division
        let estimate = if w == 0 { 0.0 } else { acc.sum as f64 * w as f64 / k as f64 };
        Ok(EstimateReport {
            estimate,
            w_delta: w,
            k,
            hits: acc.hits,
            valid: acc.valid,
            sum_x: acc.sum,
            sum_x_sq: acc.sum_sq,
            b: acc.b_stats(),
            class: self.table.class(),
            seed,
            threads,
            elapsed_preprocess: self.elapsed_preprocess,
            elapsed_sampling: elapsed,
            zero_support: w == 0,
        })
    }

    /// Sum of extension counts over every class path; equals the exact count.
    pub fn exhaustive(&self, cap: u64) -> Result<u128> {
        let paths = enumerate_paths(self.g, self.table.class(), self.table.delta(), cap)?;
        let mut scratch = Scratch::default();
        Ok(paths.iter().map(|p| self.extender.count(self.g, p, &mut scratch)).sum())
    }
}

/// Parameters of [`estimate`].
#[derive(Clone, Copy, Debug)]
pub struct EstimateConfig {
    pub delta: Timestamp,
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
    pub ties: TieMode,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        EstimateConfig { delta: 0, samples: 100_000, seed: 0, threads: 1, ties: TieMode::Strict }
    }
}

/// Preprocesses and samples in one call.
pub fn estimate(g: &TemporalGraph, motif: &Motif, cfg: &EstimateConfig) -> Result<EstimateReport> {
    if cfg.samples == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    Estimator::new(g, motif, cfg.delta, cfg.ties)?.run(cfg.samples, cfg.seed, cfg.threads)
}

/// Sum of extension counts over all anchor-class paths. Fails when there are
/// more than `cap` paths.
pub fn exhaustive_estimate(g: &TemporalGraph, motif: &Motif, delta: Timestamp, ties: TieMode, cap: u64) -> Result<u128> {
    Estimator::new(g, motif, delta, ties)?.exhaustive(cap)
}

/// Samples sufficient for relative error `eps` with probability `1 - gamma`:
/// `ceil(3 * sigma^r * W * ln(2/gamma) / (c_guess * eps^2))`, saturating at
/// `u64::MAX`.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
pub fn required_samples(w: u128, c_guess: f64, sigma: u64, r: u32, eps: f64, gamma: f64) -> Result<u64> {
    if !(c_guess > 0.0) {
        return Err(Error::InvalidArgument(format!("count guess must be positive, got {c_guess}")));
    }
    if !(eps > 0.0 && eps < 1.0) || !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidArgument(format!("eps and gamma must lie in (0, 1), got {eps} and {gamma}")));
    }
    let bound = (sigma as f64).powi(r as i32);
    let k = (3.0 * bound * w as f64 * (2.0 / gamma).ln() / (c_guess * eps * eps)).ceil();
    Ok(if k >= u64::MAX as f64 { u64::MAX } else { k.max(1.0) as u64 })
}

/// Pilot run, sample-size bound and final run.
#[derive(Clone, Debug)]
pub struct TwoPhase {
    pub pilot: EstimateReport,
    pub sigma: u64,
    pub r: u32,
    /// Bound from [`required_samples`] with the pilot estimate as count guess.
    pub required: u64,
    pub report: EstimateReport,
}

/// Runs `pilot` samples (rounded up to whole batches), sizes the final run
/// from the pilot estimate and tops up to `min(required, max_samples)`
/// samples. Falls back to the pilot when it found no match.
pub fn two_phase(
    est: &Estimator<'_>,
    pilot: u64,
    eps: f64,
    gamma: f64,
    max_samples: u64,
    seed: u64,
    threads: usize,
) -> Result<TwoPhase> {
    let pilot_k = pilot.max(1).div_ceil(BATCH) * BATCH;
    let pilot = est.run(pilot_k, seed, threads)?;
    let sigma = est.graph().max_multiplicity(est.extender().delta()) as u64;
    let r = est.extender().motif().extra_edges() as u32;
    if pilot.sum_x == 0 {
        return Ok(TwoPhase { report: pilot.clone(), pilot, sigma, r, required: 0 });
    }
    let required = required_samples(pilot.w_delta, pilot.estimate, sigma, r, eps, gamma)?;
    let k = required.min(max_samples).max(pilot_k);
    let report = est.top_up(&pilot, k, threads)?;
    Ok(TwoPhase { pilot, sigma, r, required, report })
}

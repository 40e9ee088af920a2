//! Monte Carlo realisation of the entangled-pair statistics.
//!
//! Triples `(a, b, b')` are drawn by measuring `a` once (fair `±1`) and then
//! drawing the two B-side readings independently, each conditioned on that
//! `a` outcome. The `(a,b)` and `(a,b')` marginals then follow the joint
//! probabilities and the `(b,b')` marginal follows the conditional third-pair
//! probabilities.
//!
//! All randomness comes from ChaCha8 streams keyed by `(seed, stream)`, so a
//! run is reproducible bit-for-bit on any platform and for any worker count.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{conditional_plus_probability, joint_probability, third_correlation};
use crate::data_inequality::{data_bell_margin_3_with, TripleSums};
use crate::exec::Executor;
use crate::types::{
    std_error, AngleConfig, AngleConvention, ConvergenceRecord, DataSetTriple, InequalityReport,
    JointProbabilities, Outcome, TrialTriple,
};
use crate::{Error, Result};

/// Trials per independently seeded chunk of a sampled data set.
pub const CHUNK_TRIALS: usize = 1 << 16;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug)]
pub struct RngState {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    pub fn substream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    fn fair(&mut self) -> Outcome {
        Outcome::from_bool(self.rng.random::<bool>())
    }
}

/// Precomputed four-cell distribution for one pair of settings.
#[derive(Clone, Copy, Debug)]
pub struct PairSampler {
    cumulative: [f64; 3],
}

impl PairSampler {
    pub fn new(x: f64, y: f64, convention: AngleConvention) -> Self {
        Self::from_probabilities(&joint_probability(x, y, convention))
    }

    pub fn from_probabilities(p: &JointProbabilities) -> Self {
        Self { cumulative: [p.pp, p.pp + p.pm, p.pp + p.pm + p.mp] }
    }

    pub fn sample(&self, rng: &mut RngState) -> (Outcome, Outcome) {
        let u = rng.uniform();
        let [c0, c1, c2] = self.cumulative;
        if u < c0 {
            (Outcome::PLUS, Outcome::PLUS)
        } else if u < c1 {
            (Outcome::PLUS, Outcome::MINUS)
        } else if u < c2 {
            (Outcome::MINUS, Outcome::PLUS)
        } else {
            (Outcome::MINUS, Outcome::MINUS)
        }
    }
}

pub fn sample_pair(x: f64, y: f64, convention: AngleConvention, rng: &mut RngState) -> (Outcome, Outcome) {
    PairSampler::new(x, y, convention).sample(rng)
}

/// Conditional `P(+1)` at `b` and `b'` for each `a` outcome.
#[derive(Clone, Copy, Debug)]
pub struct TripleSampler {
    b_given: [f64; 2],
    bp_given: [f64; 2],
}

impl TripleSampler {
    pub fn new(cfg: &AngleConfig) -> Self {
        let cond = |setting, a_outcome| {
            conditional_plus_probability(setting, cfg.a, a_outcome, cfg.convention)
        };
        Self {
            b_given: [cond(cfg.b, Outcome::PLUS), cond(cfg.b, Outcome::MINUS)],
            bp_given: [cond(cfg.bp, Outcome::PLUS), cond(cfg.bp, Outcome::MINUS)],
        }
    }

    pub fn sample(&self, rng: &mut RngState) -> TrialTriple {
        let a = rng.fair();
        let idx = if a.is_plus() { 0 } else { 1 };
        let b = Outcome::from_bool(rng.uniform() < self.b_given[idx]);
        let bp = Outcome::from_bool(rng.uniform() < self.bp_given[idx]);
        TrialTriple::new(a, b, bp)
    }
}

pub fn sample_triple(cfg: &AngleConfig, rng: &mut RngState) -> TrialTriple {
    TripleSampler::new(cfg).sample(rng)
}

/// Samples `n` triples. Chunk `i` of [`CHUNK_TRIALS`] trials draws from
/// stream `stream_base + i`.
pub fn sample_dataset_on(
    cfg: &AngleConfig,
    n: usize,
    seed: u64,
    stream_base: u64,
    exec: &Executor,
) -> Result<DataSetTriple> {
    if n == 0 {
        return Err(Error::ZeroSamples);
    }
    let sampler = TripleSampler::new(cfg);
    let chunks = n.div_ceil(CHUNK_TRIALS);
    let parts = exec.map_indexed(chunks, |i| {
        let len = CHUNK_TRIALS.min(n - i * CHUNK_TRIALS);
        let mut rng = RngState::substream(seed, stream_base + i as u64);
        (0..len).map(|_| sampler.sample(&mut rng)).collect::<Vec<_>>()
    });
    DataSetTriple::new(parts.concat())
}

pub fn sample_dataset(cfg: &AngleConfig, n: usize, seed: u64, exec: &Executor) -> Result<DataSetTriple> {
    sample_dataset_on(cfg, n, seed, 0, exec)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MatchedPairs {
    pub estimate: f64,
    pub pairs: u64,
}

impl MatchedPairs {
    pub fn std_error(&self) -> f64 {
        std_error(self.estimate, self.pairs)
    }
}

/// Two-arm estimate of the `(b, b')` correlation.
///
/// Arm 1 measures `n_per_arm` pairs at `(a, b)`, arm 2 another `n_per_arm`
/// at `(a, b')`. Within each `a` outcome the arm-1 and arm-2 trials are
/// shuffled and zipped; surplus trials in the larger group are dropped.
pub fn matched_pairs_estimate(cfg: &AngleConfig, n_per_arm: usize, rng: &mut RngState) -> Result<MatchedPairs> {
    if n_per_arm == 0 {
        return Err(Error::ZeroSamples);
    }
    let arm = |setting: f64, rng: &mut RngState| {
        let sampler = PairSampler::new(cfg.a, setting, cfg.convention);
        let mut groups: [Vec<Outcome>; 2] = [Vec::new(), Vec::new()];
        for _ in 0..n_per_arm {
            let (a, y) = sampler.sample(rng);
            groups[if a.is_plus() { 0 } else { 1 }].push(y);
        }
        groups
    };
    let mut arm_b = arm(cfg.b, rng);
    let mut arm_bp = arm(cfg.bp, rng);

    let mut sum = 0i64;
    let mut pairs = 0u64;
    for (idx, outcome) in [(0usize, 1i8), (1, -1)] {
        for (arm_id, groups) in [(1u8, &arm_b), (2, &arm_bp)] {
            if groups[idx].is_empty() {
                return Err(Error::InsufficientMatches { arm: arm_id, outcome });
            }
        }
        arm_b[idx].shuffle(&mut rng.rng);
        arm_bp[idx].shuffle(&mut rng.rng);
        for (&b, &bp) in arm_b[idx].iter().zip(&arm_bp[idx]) {
            sum += b * bp;
            pairs += 1;
        }
    }
    Ok(MatchedPairs { estimate: sum as f64 / pairs as f64, pairs })
}

/// One sample size of a [`convergence_study`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceStep {
    /// Third-pair correlation against the conditional closed form.
    pub record: ConvergenceRecord,
    pub corr_ab: f64,
    pub corr_abp: f64,
    pub data_report: InequalityReport,
}

/// Samples a fresh data set for each `N` in `n_list` and tracks the
/// `(b, b')` correlation error. Each data set is also checked against the
/// exact data inequality; a failure there is reported as an error.
pub fn convergence_study(
    cfg: &AngleConfig,
    n_list: &[usize],
    seed: u64,
    exec: &Executor,
) -> Result<Vec<ConvergenceStep>> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::SampleList);
    }
    let analytic = third_correlation(cfg);
    n_list
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            let data = sample_dataset_on(cfg, n, seed, (j as u64 + 1) << 32, exec)?;
            let sums = TripleSums::of_with(data.trials(), exec);
            let data_report = data_bell_margin_3_with(&data, exec);
            if !data_report.satisfied {
                return Err(Error::IdentityViolated { margin: data_report.margin });
            }
            Ok(ConvergenceStep {
                record: ConvergenceRecord::new(n as u64, sums.correlation_bbp(), analytic, seed),
                corr_ab: sums.correlation_ab(),
                corr_abp: sums.correlation_abp(),
                data_report,
            })
        })
        .collect()
}

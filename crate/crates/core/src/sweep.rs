//! Parameter sweeps: plan each grid point, evaluate analytic rate and bounds,
//! estimate the empirical rate by Monte Carlo and emit CSV rows.

use std::io::Write;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::rate_bounds;
use crate::channel::NoiseModel;
use crate::codec::bits::BitReader;
use crate::codec::prefix::LCoder;
use crate::codec::{Decoder, Encoder};
use crate::codes::CodeRegistry;
use crate::error::{Error, Result};
use crate::gf::{FieldVector, Modulus};
use crate::planner::{AnyPlan, Backend, CodeSchedule, KappaPlan, PlanCache, DEFAULT_CAP, DEFAULT_EPSILON};
use crate::scalar::Scalar;
use crate::with_plan;

const INPUT_SALT: u64 = 0x696e_7075_745f_726e;
/// Numeric slack for the capacity and bound comparisons.
const SLACK: f64 = 1e-9;
/// Fewer trials give no usable standard error.
const MIN_TRIALS_FOR_CHECK: usize = 100;

/// Sweep description, read from JSON.
///
/// The grid is either `alpha` (symmetric channels; strings such as `"1/10"`
/// or decimal numbers) or `w` (ball and constant-weight channels).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub channel: String,
    pub n: u32,
    #[serde(default = "default_q")]
    pub q: u32,
    #[serde(default)]
    pub alpha: Vec<Value>,
    #[serde(default)]
    pub w: Vec<u32>,
    pub codes: Vec<String>,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(default = "default_coder")]
    pub coder: String,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_backend")]
    pub backend: String,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
}

fn default_q() -> u32 {
    2
}
fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}
fn default_cap() -> usize {
    DEFAULT_CAP
}
fn default_coder() -> String {
    "huffman".into()
}
fn default_trials() -> usize {
    10_000
}
fn default_backend() -> String {
    "auto".into()
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SweepSpec = serde_json::from_str(text)?;
        spec.grid()?;
        spec.coder()?;
        spec.backend.parse::<Backend>()?;
        Ok(spec)
    }

    pub fn coder(&self) -> Result<LCoder> {
        self.coder.parse()
    }

    /// Grid values as parameter strings, in order.
    pub fn grid(&self) -> Result<Vec<String>> {
        let grid: Vec<String> = match (self.alpha.is_empty(), self.w.is_empty()) {
            (false, true) => self
                .alpha
                .iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(x) => Ok(x.to_string()),
                    _ => Err(Error::InvalidParameter(format!("bad alpha value {v}"))),
                })
                .collect::<Result<_>>()?,
            (true, false) => self.w.iter().map(u32::to_string).collect(),
            _ => return Err(Error::InvalidParameter("sweep needs exactly one of `alpha` and `w`".into())),
        };
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        Ok(grid)
    }

    fn channel_at(&self, param: &str) -> Result<NoiseModel> {
        let q = Modulus::new(self.q)?;
        if self.w.is_empty() {
            NoiseModel::parse(&self.channel, self.n, q, None, Some(param))
        } else {
            NoiseModel::parse(&self.channel, self.n, q, Some(param.parse().expect("grid of integers")), None)
        }
    }
}

/// One CSV row. Rates, capacity, bounds and distortions are per symbol.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepRow {
    pub param: String,
    pub n: u32,
    pub q: u32,
    pub backend: String,
    pub plan_iterations: Option<usize>,
    pub analytic_rate: Option<f64>,
    pub empirical_rate: Option<f64>,
    pub empirical_stderr: Option<f64>,
    pub mean_distortion: Option<f64>,
    pub max_distortion: Option<f64>,
    pub capacity: Option<f64>,
    /// Communication bound, for single-code schedules with a known distance.
    pub comm_bound: Option<f64>,
    pub mean_iterations: Option<f64>,
    pub max_iterations: Option<u64>,
    pub trials: usize,
    /// Analytic rate at or above `log2 q` bits per symbol.
    pub uncompressed: bool,
    pub flags: Vec<String>,
    pub error: Option<String>,
}

impl SweepRow {
    /// Whether any invariant check failed on this row.
    pub fn flagged(&self) -> bool {
        !self.flags.is_empty()
    }
}

pub const CSV_COLUMNS: [&str; 18] = [
    "param",
    "n",
    "q",
    "backend",
    "plan_iterations",
    "analytic_rate",
    "empirical_rate",
    "empirical_stderr",
    "mean_distortion",
    "max_distortion",
    "capacity",
    "comm_bound",
    "mean_iterations",
    "max_iterations",
    "trials",
    "uncompressed",
    "flags",
    "error",
];

pub fn run_sweep(spec: &SweepSpec, registry: &CodeRegistry) -> Result<Vec<SweepRow>> {
    let grid = spec.grid()?;
    let coder = spec.coder()?;
    let backend: Backend = spec.backend.parse()?;
    let q = Modulus::new(spec.q)?;
    let codes = spec.codes.iter().map(|c| registry.get(c, q)).collect::<Result<Vec<_>>>()?;
    let schedule = CodeSchedule::new(codes, spec.epsilon, spec.cap)?;
    let cache = spec.cache_dir.as_ref().map(PlanCache::new).transpose()?;
    Ok(grid
        .par_iter()
        .enumerate()
        .map(|(i, param)| {
            let mut row = SweepRow { param: param.clone(), n: spec.n, q: spec.q, trials: spec.trials, ..Default::default() };
            if let Err(e) = run_point(spec, i as u64, param, &schedule, backend, coder, cache.as_ref(), registry, &mut row) {
                row.error = Some(e.to_string());
            }
            row
        })
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn run_point(
    spec: &SweepSpec,
    index: u64,
    param: &str,
    schedule: &CodeSchedule,
    backend: Backend,
    coder: LCoder,
    cache: Option<&PlanCache>,
    registry: &CodeRegistry,
    row: &mut SweepRow,
) -> Result<()> {
    let channel = spec.channel_at(param)?;
    let capacity = channel.type_distribution::<f64>()?.capacity() / spec.n as f64;
    row.capacity = Some(capacity);
    if let [code] = &schedule.codes()[..schedule.candidates()] {
        if let Ok(b) = rate_bounds(&channel, code) {
            row.comm_bound = Some(b.comm_bound_per_symbol);
        }
    }
    let plan = match cache {
        Some(cache) => cache.get_or_build(&channel, schedule, backend, registry)?,
        None => AnyPlan::build(&channel, schedule, backend)?,
    };
    row.backend = plan.backend().into();
    row.plan_iterations = Some(plan.len());
    let rate = with_plan!(&plan, p => p.expected_rate(coder))?;
    row.analytic_rate = Some(rate);
    let max_rate = (spec.q as f64).log2();
    row.uncompressed = rate >= max_rate - SLACK;

    let seed = spec.seed.wrapping_add(index);
    let stats = with_plan!(&plan, p => monte_carlo(p, &channel, seed, coder, spec.trials))?;
    let n = spec.n as f64;
    let trials = spec.trials as f64;
    let mean = stats.bits / trials / n;
    let var = (stats.bits_sq / trials - (stats.bits / trials).powi(2)).max(0.0);
    let se = (var / trials).sqrt() / n;
    row.empirical_rate = Some(mean);
    row.empirical_stderr = Some(se);
    row.mean_distortion = Some(stats.distortion as f64 / trials / n);
    row.max_distortion = Some(stats.max_distortion as f64 / n);
    row.mean_iterations = Some(stats.iterations as f64 / trials);
    row.max_iterations = Some(stats.max_iterations);

    if capacity > rate + SLACK {
        row.flags.push("rate-below-capacity".into());
    }
    if let Some(bound) = row.comm_bound {
        // the bound assumes an entropy code for L
        if coder == LCoder::Huffman && rate > bound + SLACK {
            row.flags.push("rate-above-bound".into());
        }
    }
    if spec.trials >= MIN_TRIALS_FOR_CHECK && (mean - rate).abs() > 4.0 * se + SLACK {
        row.flags.push("empirical-rate-off".into());
    }
    if stats.mismatches > 0 {
        row.flags.push("decode-mismatch".into());
    }
    if let Some(limit) = distortion_limit(&channel) {
        if stats.max_distortion > limit {
            row.flags.push("distortion-exceeded".into());
        }
    }
    Ok(())
}

fn distortion_limit(channel: &NoiseModel) -> Option<u32> {
    use crate::channel::ChannelKind;
    match channel.kind() {
        ChannelKind::Ball { w } | ChannelKind::ConstantWeight { w } => Some(*w),
        ChannelKind::Symmetric { .. } => None,
    }
}

#[derive(Default)]
struct Stats {
    bits: f64,
    bits_sq: f64,
    distortion: u64,
    max_distortion: u32,
    iterations: u64,
    max_iterations: u64,
    mismatches: u64,
}

fn monte_carlo<T: Scalar>(plan: &KappaPlan<T>, channel: &NoiseModel, seed: u64, coder: LCoder, trials: usize) -> Result<Stats> {
    let mut enc = Encoder::new(plan, seed, coder)?;
    let mut dec = Decoder::new(plan, seed, coder)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ INPUT_SALT);
    let (n, q) = (channel.n() as usize, channel.q());
    let mut stats = Stats::default();
    for _ in 0..trials {
        let x = FieldVector::new(q, (0..n).map(|_| rng.gen_range(0..q.get())).collect())?;
        let r = enc.encode(&x)?;
        let bits = r.message.len() as f64;
        stats.bits += bits;
        stats.bits_sq += bits * bits;
        stats.distortion += r.distortion as u64;
        stats.max_distortion = stats.max_distortion.max(r.distortion);
        stats.iterations += r.l;
        stats.max_iterations = stats.max_iterations.max(r.l);
        let mut reader = BitReader::new(r.message.as_bytes(), r.message.len());
        if dec.decode(&mut reader)? != r.y_hat {
            stats.mismatches += 1;
        }
    }
    Ok(stats)
}

fn field<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

/// Writes rows as CSV with the columns of [`CSV_COLUMNS`].
pub fn emit_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.param.clone(),
            r.n.to_string(),
            r.q.to_string(),
            r.backend.clone(),
            field(&r.plan_iterations),
            field(&r.analytic_rate),
            field(&r.empirical_rate),
            field(&r.empirical_stderr),
            field(&r.mean_distortion),
            field(&r.max_distortion),
            field(&r.capacity),
            field(&r.comm_bound),
            field(&r.mean_iterations),
            field(&r.max_iterations),
            r.trials.to_string(),
            r.uncompressed.to_string(),
            r.flags.join(";"),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

//! Exchangeable additive noise models, represented as distributions over
//! empirical types.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use rand::Rng;
use serde_json::{json, Value};

use crate::codes::{random_arrangement, Distance};
use crate::error::{Error, Result};
use crate::gf::{type_class_size, FieldVector, Modulus, TypeSpace};
use crate::scalar::{log2_big, Param, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelKind {
    /// Memoryless: each symbol is nonzero w.p. `alpha`, uniformly over `q - 1` values.
    Symmetric { alpha: Param },
    /// Uniform over the Hamming ball of radius `w`.
    Ball { w: u32 },
    /// Uniform over the Hamming sphere of radius `w`.
    ConstantWeight { w: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    kind: ChannelKind,
    n: u32,
    q: Modulus,
}

impl NoiseModel {
    pub fn new(kind: ChannelKind, n: u32, q: Modulus) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("block length must be positive".into()));
        }
        match &kind {
            ChannelKind::Symmetric { alpha } if !alpha.in_unit_interval() => {
                return Err(Error::InvalidParameter(format!("alpha = {alpha} is outside [0, 1]")));
            }
            ChannelKind::Ball { w } | ChannelKind::ConstantWeight { w } if *w > n => {
                return Err(Error::InvalidParameter(format!("radius {w} exceeds n = {n}")));
            }
            _ => {}
        }
        Ok(NoiseModel { kind, n, q })
    }

    pub fn symmetric(n: u32, q: Modulus, alpha: Param) -> Result<Self> {
        Self::new(ChannelKind::Symmetric { alpha }, n, q)
    }

    pub fn ball(n: u32, q: Modulus, w: u32) -> Result<Self> {
        Self::new(ChannelKind::Ball { w }, n, q)
    }

    pub fn constant_weight(n: u32, q: Modulus, w: u32) -> Result<Self> {
        Self::new(ChannelKind::ConstantWeight { w }, n, q)
    }

    /// Builds a model from command-line style arguments: `kind` is one of
    /// `bsc`/`symmetric`, `ball`, `constant-weight`.
    pub fn parse(kind: &str, n: u32, q: Modulus, w: Option<u32>, alpha: Option<&str>) -> Result<Self> {
        let need_w = || w.ok_or_else(|| Error::InvalidParameter(format!("channel `{kind}` needs --w")));
        match kind {
            "bsc" | "symmetric" | "qsc" => {
                let alpha = alpha.ok_or_else(|| Error::InvalidParameter(format!("channel `{kind}` needs --alpha")))?;
                Self::symmetric(n, q, alpha.parse()?)
            }
            "ball" => Self::ball(n, q, need_w()?),
            "constant-weight" | "sphere" => Self::constant_weight(n, q, need_w()?),
            _ => Err(Error::InvalidParameter(format!("unknown channel `{kind}`"))),
        }
    }

    pub fn kind(&self) -> &ChannelKind {
        &self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> Modulus {
        self.q
    }

    /// Whether every parameter is rational, so exact arithmetic is possible.
    pub fn is_rational(&self) -> bool {
        match &self.kind {
            ChannelKind::Symmetric { alpha } => alpha.is_rational(),
            _ => true,
        }
    }

    pub fn type_distribution<T: Scalar>(&self) -> Result<TypeDistribution<T>> {
        let space = Arc::new(TypeSpace::new(self.n, self.q));
        let sizes: Vec<BigUint> = space.types().iter().map(type_class_size).collect();
        let mass = match &self.kind {
            ChannelKind::Symmetric { alpha } => {
                let a = T::from_param(alpha)?;
                let stay = T::one() - a.clone();
                let per_symbol = a / T::from_ratio(&BigUint::from(self.q.order() - 1), &BigUint::one());
                space
                    .types()
                    .iter()
                    .zip(&sizes)
                    .map(|(p, size)| {
                        let zeros = p.counts()[0] as usize;
                        T::from_ratio(size, &BigUint::one())
                            * num_traits::pow(stay.clone(), zeros)
                            * num_traits::pow(per_symbol.clone(), self.n as usize - zeros)
                    })
                    .collect()
            }
            ChannelKind::Ball { w } | ChannelKind::ConstantWeight { w } => {
                let inside = |wt: u32| match self.kind {
                    ChannelKind::Ball { .. } => wt <= *w,
                    _ => wt == *w,
                };
                let volume: BigUint = space
                    .types()
                    .iter()
                    .zip(&sizes)
                    .filter(|(p, _)| inside(p.weight()))
                    .map(|(_, s)| s)
                    .sum();
                space
                    .types()
                    .iter()
                    .zip(&sizes)
                    .map(|(p, s)| if inside(p.weight()) { T::from_ratio(s, &volume) } else { T::zero() })
                    .collect()
            }
        };
        Ok(TypeDistribution { space, sizes, mass })
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "n": self.n, "q": self.q.get() });
        match &self.kind {
            ChannelKind::Symmetric { alpha } => {
                v["kind"] = json!("symmetric");
                v["alpha"] = alpha.to_json();
            }
            ChannelKind::Ball { w } => {
                v["kind"] = json!("ball");
                v["w"] = json!(w);
            }
            ChannelKind::ConstantWeight { w } => {
                v["kind"] = json!("constant-weight");
                v["w"] = json!(w);
            }
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Malformed(format!("channel {v}"));
        let n = v["n"].as_u64().ok_or_else(bad)? as u32;
        let q = Modulus::new(v["q"].as_u64().ok_or_else(bad)? as u32)?;
        let w = || v["w"].as_u64().map(|w| w as u32).ok_or_else(bad);
        match v["kind"].as_str().ok_or_else(bad)? {
            "symmetric" | "bsc" => Self::symmetric(n, q, Param::from_json(&v["alpha"])?),
            "ball" => Self::ball(n, q, w()?),
            "constant-weight" => Self::constant_weight(n, q, w()?),
            _ => Err(bad()),
        }
    }

    /// Draws one noise word.
    pub fn sample<R: Rng + ?Sized>(&self, sampler: &NoiseSampler, rng: &mut R) -> FieldVector {
        if let ChannelKind::Symmetric { alpha } = &self.kind {
            let a = alpha.to_f64();
            let entries = (0..self.n)
                .map(|_| if rng.gen::<f64>() < a { rng.gen_range(1..self.q.get()) } else { 0 })
                .collect();
            return FieldVector::new(self.q, entries).expect("symbols in range");
        }
        let i = sampler.draw(rng);
        random_arrangement(sampler.space.get(i), self.q, rng)
    }

    pub fn sampler(&self) -> Result<NoiseSampler> {
        let dist = self.type_distribution::<f64>()?;
        let mut acc = 0.0;
        let cumulative = dist.mass.iter().map(|m| {
            acc += m;
            acc
        });
        Ok(NoiseSampler { cumulative: cumulative.collect(), space: dist.space })
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ChannelKind::Symmetric { alpha } => write!(f, "symmetric(n={}, q={}, alpha={alpha})", self.n, self.q),
            ChannelKind::Ball { w } => write!(f, "ball(n={}, q={}, w={w})", self.n, self.q),
            ChannelKind::ConstantWeight { w } => write!(f, "constant-weight(n={}, q={}, w={w})", self.n, self.q),
        }
    }
}

/// Inverse-CDF sampler over noise types.
#[derive(Debug, Clone)]
pub struct NoiseSampler {
    cumulative: Vec<f64>,
    space: Arc<TypeSpace>,
}

impl NoiseSampler {
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().expect("nonempty space");
        let u = rng.gen::<f64>() * total;
        self.cumulative.partition_point(|&c| c <= u).min(self.cumulative.len() - 1)
    }
}

/// Probability mass over the types of `F_q^n`, indexed like the type space.
#[derive(Debug, Clone)]
pub struct TypeDistribution<T> {
    space: Arc<TypeSpace>,
    sizes: Vec<BigUint>,
    mass: Vec<T>,
}

impl<T: Scalar> TypeDistribution<T> {
    /// A distribution from explicit masses over `space`.
    pub fn from_masses(space: Arc<TypeSpace>, mass: Vec<T>) -> Result<Self> {
        if mass.len() != space.len() {
            return Err(Error::DimensionMismatch { expected: space.len(), got: mass.len() });
        }
        let sizes = space.types().iter().map(type_class_size).collect();
        Ok(TypeDistribution { space, sizes, mass })
    }

    pub fn space(&self) -> &Arc<TypeSpace> {
        &self.space
    }

    pub fn masses(&self) -> &[T] {
        &self.mass
    }

    pub fn mass(&self, i: usize) -> &T {
        &self.mass[i]
    }

    /// Number of words of each type.
    pub fn class_sizes(&self) -> &[BigUint] {
        &self.sizes
    }

    pub fn total(&self) -> T {
        self.mass.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// `H(Z)` in bits; `Z` is uniform within each type class.
    pub fn noise_entropy(&self) -> f64 {
        self.mass
            .iter()
            .zip(&self.sizes)
            .map(|(m, size)| {
                let m = m.to_f64();
                if m <= 0.0 {
                    0.0
                } else {
                    m * (log2_big(size) - m.log2())
                }
            })
            .sum()
    }

    /// Capacity with uniform input: `n log2 q - H(Z)`.
    pub fn capacity(&self) -> f64 {
        self.space.n() as f64 * (self.space.q().order() as f64).log2() - self.noise_entropy()
    }

    /// `P(wt(Z) >= threshold)`.
    pub fn tail_weight_probability(&self, threshold: Ratio<u64>) -> T {
        self.sum_where(|w| Ratio::from_integer(w as u64) >= threshold)
    }

    /// `P(wt(Z) >= d / 2)`; zero for an infinite distance.
    pub fn tail_beyond_half(&self, d: &Distance) -> T {
        self.sum_where(|w| d.within_reach(w))
    }

    fn sum_where(&self, keep: impl Fn(u32) -> bool) -> T {
        self.mass
            .iter()
            .zip(self.space.types())
            .filter(|(_, p)| keep(p.weight()))
            .fold(T::zero(), |acc, (m, _)| acc + m.clone())
    }
}

/// `log2 q + (1 - a) log2 (1 - a) + a log2 (a / (q - 1))`, bits per symbol.
pub fn asymptotic_ball_capacity(alpha: f64, q: Modulus) -> Result<f64> {
    let qf = q.order() as f64;
    if !(0.0..=1.0 - 1.0 / qf).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} is outside [0, 1 - 1/q]")));
    }
    let xlogy = |x: f64, y: f64| if x == 0.0 { 0.0 } else { x * y.log2() };
    Ok(qf.log2() + xlogy(1.0 - alpha, 1.0 - alpha) + xlogy(alpha, alpha / (qf - 1.0)))
}

/// Whether a distribution's masses are all nonnegative and sum to one within
/// the backend's tolerance.
pub fn is_normalized<T: Scalar>(dist: &TypeDistribution<T>) -> bool {
    let total = dist.total().to_f64();
    let nonneg = dist.masses().iter().all(|m| !(m.clone() < T::zero()));
    let tol = if T::EXACT { 0.0 } else { 1e-9 };
    nonneg && (if T::EXACT { dist.total() == T::one() } else { (total - 1.0).abs() <= tol })
}


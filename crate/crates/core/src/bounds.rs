//! Closed-form rate bounds for greedy rejection-sampled syndrome coding, and a
//! reference greedy rejection sampler over small alphabets.

use std::f64::consts::{E, LOG2_E};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::NoiseModel;
use crate::codes::{Distance, LinearCode};
use crate::error::{Error, Result};

/// `(1 + 1/e) log2 e`, the greedy rejection sampling overhead in bits.
pub fn eta() -> f64 {
    (1.0 + E.recip()) * LOG2_E
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub channel: String,
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub distance: Option<f64>,
    pub capacity: f64,
    pub eta: f64,
    /// `P(wt(Z) >= d/2)`.
    pub tail: f64,
    /// Upper bound on `E[log2 L]`.
    pub elogl_bound: f64,
    /// Upper bound on the expected message length in bits.
    pub comm_bound: f64,
    pub capacity_per_symbol: f64,
    pub elogl_bound_per_symbol: f64,
    pub comm_bound_per_symbol: f64,
}

/// `(E[log2 L] bound, communication bound)` from the capacity `c`, tail
/// probability and payload size `k log2 q`.
pub fn rate_bound_terms(c: f64, tail: f64, payload_bits: f64) -> (f64, f64) {
    let eta = eta();
    let covered = (1.0 - tail) * payload_bits;
    let elogl = c - covered + eta + 1.0;
    let comm = c + tail * payload_bits + (c - covered + eta + 2.0).log2() + eta + 3.0;
    (elogl, comm)
}

pub fn rate_bounds(channel: &NoiseModel, code: &LinearCode) -> Result<BoundReport> {
    let n = channel.n() as usize;
    if code.n() != n || code.q() != channel.q() {
        return Err(Error::DimensionMismatch { expected: n, got: code.n() });
    }
    let d = code.distance().ok_or(Error::UnknownDistance)?;
    let dist = channel.type_distribution::<f64>()?;
    let capacity = dist.capacity();
    let tail = dist.tail_beyond_half(&d);
    let payload = code.k() as f64 * (channel.q().order() as f64).log2();
    let (elogl, comm) = rate_bound_terms(capacity, tail, payload);
    let per = |x: f64| x / n as f64;
    Ok(BoundReport {
        channel: channel.to_string(),
        code: code.name().to_string(),
        n,
        k: code.k(),
        distance: match d {
            Distance::Infinite => None,
            d => Some(d.to_f64()),
        },
        capacity,
        eta: eta(),
        tail,
        elogl_bound: elogl,
        comm_bound: comm,
        capacity_per_symbol: per(capacity),
        elogl_bound_per_symbol: per(elogl),
        comm_bound_per_symbol: per(comm),
    })
}

/// `dkl - log2 theta + eta`.
pub fn iteration_bound(dkl: f64, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::InvalidParameter(format!("theta must lie in (0, 1], got {theta}")));
    }
    if dkl.is_nan() || dkl < 0.0 {
        return Err(Error::InvalidParameter(format!("divergence must be nonnegative, got {dkl}")));
    }
    Ok(dkl - theta.log2() + eta())
}

/// `D(p || q)` in bits.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    check_pmfs(p, q)?;
    Ok(p.iter().zip(q).filter(|(a, _)| **a > 0.0).map(|(a, b)| a * (a / b).log2()).sum())
}

fn check_pmfs(target: &[f64], proposal: &[f64]) -> Result<()> {
    if target.len() != proposal.len() {
        return Err(Error::DimensionMismatch { expected: target.len(), got: proposal.len() });
    }
    for pmf in [target, proposal] {
        if pmf.iter().any(|x| !(*x >= 0.0)) || (pmf.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter("not a probability vector".into()));
        }
    }
    if let Some(x) = target.iter().zip(proposal).position(|(a, b)| *a > 0.0 && *b == 0.0) {
        return Err(Error::Infeasible(format!("target puts mass on symbol {x} outside the proposal support")));
    }
    Ok(())
}

/// Greedy rejection sampling of `target` from i.i.d. `proposal` draws.
///
/// Acceptance probabilities per iteration are computed on demand and kept.
#[derive(Debug, Clone)]
pub struct GreedyRejectionSampler {
    proposal: Vec<f64>,
    residual: Vec<f64>,
    survival: f64,
    /// `accept[i][x]`: probability of accepting `x` drawn at iteration `i + 1`.
    accept: Vec<Vec<f64>>,
    /// `P(L = i + 1)`.
    p_l: Vec<f64>,
}

const SURVIVAL_FLOOR: f64 = 1e-300;

impl GreedyRejectionSampler {
    pub fn new(target: &[f64], proposal: &[f64]) -> Result<Self> {
        if target.len() > 10_000 {
            return Err(Error::BudgetExceeded { what: "alphabet size", needed: target.len() as f64, limit: 1e4 });
        }
        check_pmfs(target, proposal)?;
        Ok(GreedyRejectionSampler {
            proposal: proposal.to_vec(),
            residual: target.to_vec(),
            survival: 1.0,
            accept: Vec::new(),
            p_l: Vec::new(),
        })
    }

    fn extend(&mut self) {
        let s = self.survival;
        let mut taken = 0.0;
        let row = self
            .proposal
            .iter()
            .zip(self.residual.iter_mut())
            .map(|(&q, r)| {
                if q == 0.0 {
                    return 0.0;
                }
                let a = r.min(s * q);
                *r -= a;
                taken += a;
                a / (s * q)
            })
            .collect();
        self.accept.push(row);
        self.p_l.push(taken);
        self.survival = (s - taken).max(0.0);
    }

    fn row(&mut self, i: usize) -> &[f64] {
        while self.accept.len() <= i {
            if self.survival < SURVIVAL_FLOOR && !self.accept.is_empty() {
                // the tail repeats the last row
                return self.accept.last().unwrap();
            }
            self.extend();
        }
        &self.accept[i]
    }

    /// Draws `(symbol, L)`.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> (usize, u64) {
        let mut i = 0usize;
        loop {
            let mut u = rng.gen::<f64>();
            let mut x = self.proposal.len() - 1;
            for (j, &q) in self.proposal.iter().enumerate() {
                if u < q {
                    x = j;
                    break;
                }
                u -= q;
            }
            if rng.gen::<f64>() < self.row(i)[x] {
                return (x, i as u64 + 1);
            }
            i += 1;
        }
    }

    /// `E[log2 L]` from the recursion, truncated once the survival is negligible.
    pub fn expected_log_l(&mut self, tolerance: f64) -> f64 {
        while self.survival > tolerance && self.p_l.len() < 10_000_000 {
            self.extend();
        }
        self.p_l.iter().enumerate().map(|(i, p)| p * ((i + 1) as f64).log2()).sum()
    }

    /// `P(L = i)` for `i = 1..`, as far as computed.
    pub fn p_l(&self) -> &[f64] {
        &self.p_l
    }
}

/// One greedy rejection sampling run seeded by `seed`.
pub fn grs_reference(target: &[f64], proposal: &[f64], seed: u64) -> Result<(usize, u64)> {
    let mut sampler = GreedyRejectionSampler::new(target, proposal)?;
    Ok(sampler.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}

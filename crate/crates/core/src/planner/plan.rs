use std::sync::Arc;

use super::flow::max_flow;
use super::CodeSchedule;
use crate::channel::{NoiseModel, TypeDistribution};
use crate::codec::prefix::{elias_gamma_length, HuffmanCode, LCoder};
use crate::codes::{LinearCode, TypeSetDistribution};
use crate::error::{Error, Result};
use crate::gf::TypeSpace;
use crate::scalar::Scalar;

/// Survival probability below which a float plan jumps to the complete code.
pub const SURVIVAL_FLOOR: f64 = 1e-30;

/// One iteration: acceptance masses `gamma[(type set, type)]` from a max
/// flow, and the residual type distribution they were planned against.
#[derive(Debug, Clone)]
pub struct IterationPlan<T> {
    pub code_index: usize,
    /// `(type-set id, type index, mass)`, sorted, positive masses only.
    pub gamma: Vec<(usize, usize, T)>,
    /// Total acceptance probability `F`.
    pub accept: T,
    pub terminal: bool,
    /// Residual `p_P^{(i)}` this iteration was planned against.
    pub residual: Vec<T>,
}

impl<T: Scalar> IterationPlan<T> {
    /// `sum_t gamma[t, p]` for every type `p`.
    pub fn accepted_by_type(&self, types: usize) -> Vec<T> {
        let mut out = vec![T::zero(); types];
        for (_, p, g) in &self.gamma {
            out[*p] = out[*p].clone() + g.clone();
        }
        out
    }

    /// `r' = (r - sum_t gamma) / (1 - F)`; float backends clamp and
    /// renormalize.
    pub fn next_residual(&self) -> Vec<T> {
        let used = self.accepted_by_type(self.residual.len());
        let keep = T::one() - self.accept.clone();
        let mut next: Vec<T> = self
            .residual
            .iter()
            .zip(used)
            .map(|(r, u)| ((r.clone() - u) / keep.clone()).clamp_unit())
            .collect();
        if !T::EXACT {
            let total = next.iter().cloned().fold(T::zero(), |a, b| a + b);
            if total.is_positive() {
                next.iter_mut().for_each(|x| *x = x.clone() / total.clone());
            }
        }
        next
    }
}

/// Plans one iteration for a residual and a code's type-set distribution.
pub fn plan_iteration<T: Scalar>(residual: &TypeDistribution<T>, tsd: &TypeSetDistribution) -> IterationPlan<T> {
    plan_with(residual.masses(), &tsd.member_indices(residual.space()), &tsd.probabilities::<T>(), 0)
}

fn plan_with<T: Scalar>(
    residual: &[T],
    members: &[Vec<usize>],
    supply: &[T],
    code_index: usize,
) -> IterationPlan<T> {
    let sol = max_flow(members, supply, residual);
    let terminal = T::is_terminal(&sol.value);
    IterationPlan { code_index, gamma: sol.edges, accept: sol.value, terminal, residual: residual.to_vec() }
}

struct CodeCache<T> {
    members: Vec<Vec<usize>>,
    supply: Vec<T>,
}

/// Incremental planner state; each `step` materializes one iteration.
pub struct Planner<T> {
    channel: NoiseModel,
    schedule: CodeSchedule,
    space: Arc<TypeSpace>,
    residual: TypeDistribution<T>,
    survival: T,
    caches: Vec<Option<CodeCache<T>>>,
    pub(crate) iterations: Vec<Arc<IterationPlan<T>>>,
    pub(crate) p_l: Vec<T>,
    pub(crate) survivals: Vec<T>,
    done: bool,
}

impl<T: Scalar> Planner<T> {
    pub fn new(channel: NoiseModel, schedule: CodeSchedule) -> Result<Self> {
        if channel.n() as usize != schedule.n() || channel.q() != schedule.codes()[0].q() {
            return Err(Error::PlanMismatch(format!(
                "channel has n = {}, q = {}; codes have n = {}, q = {}",
                channel.n(),
                channel.q(),
                schedule.n(),
                schedule.codes()[0].q()
            )));
        }
        let residual = channel.type_distribution::<T>()?;
        let caches = schedule.codes().iter().map(|_| None).collect();
        Ok(Planner {
            space: residual.space().clone(),
            channel,
            schedule,
            residual,
            survival: T::one(),
            caches,
            iterations: Vec::new(),
            p_l: Vec::new(),
            survivals: Vec::new(),
            done: false,
        })
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn len(&self) -> usize {
        self.iterations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterations.is_empty()
    }

    pub fn schedule(&self) -> &CodeSchedule {
        &self.schedule
    }

    pub fn channel(&self) -> &NoiseModel {
        &self.channel
    }

    fn cache(&mut self, j: usize) -> Result<&CodeCache<T>> {
        if self.caches[j].is_none() {
            let tsd = self.schedule.codes()[j].type_set_distribution()?;
            let members = tsd.member_indices(&self.space);
            let supply = tsd.probabilities::<T>();
            self.caches[j] = Some(CodeCache { members, supply });
        }
        Ok(self.caches[j].as_ref().expect("filled above"))
    }

    /// Which code iteration `i` (1-based) would use.
    fn choose(&self, i: usize) -> usize {
        let floor_hit = !T::EXACT && self.survival.to_f64() < SURVIVAL_FLOOR;
        if i >= self.schedule.cap() || floor_hit {
            self.schedule.fallback()
        } else {
            self.schedule.select(&self.residual)
        }
    }

    /// Plans the next iteration; returns `false` once the plan is terminal.
    pub fn step(&mut self) -> Result<bool> {
        if self.done {
            return Ok(false);
        }
        let i = self.iterations.len() + 1;
        let j = self.choose(i);
        let masses = self.residual.masses().to_vec();
        let cache = self.cache(j)?;
        let mut it = plan_with(&masses, &cache.members, &cache.supply, j);
        self.survivals.push(self.survival.clone());
        if it.terminal {
            self.p_l.push(self.survival.clone());
            self.survival = T::zero();
            self.done = true;
        } else {
            self.p_l.push(self.survival.clone() * it.accept.clone());
            self.survival = self.survival.clone() * (T::one() - it.accept.clone());
            self.residual = TypeDistribution::from_masses(self.space.clone(), it.next_residual())?;
        }
        if i >= self.schedule.cap() && !it.terminal {
            // the complete code always accepts everything
            return Err(Error::NonTerminalPlan);
        }
        it.residual.shrink_to_fit();
        self.iterations.push(Arc::new(it));
        Ok(!self.done)
    }

    pub fn run(mut self) -> Result<KappaPlan<T>> {
        while self.step()? {}
        Ok(self.snapshot())
    }

    pub(crate) fn snapshot(&self) -> KappaPlan<T> {
        KappaPlan {
            channel: self.channel.clone(),
            schedule: self.schedule.clone(),
            iterations: self.iterations.clone(),
            p_l: self.p_l.clone(),
            survival: self.survivals.clone(),
            terminal: self.done,
        }
    }
}

/// A fully or partially materialized plan.
#[derive(Debug, Clone)]
pub struct KappaPlan<T> {
    pub(crate) channel: NoiseModel,
    pub(crate) schedule: CodeSchedule,
    pub(crate) iterations: Vec<Arc<IterationPlan<T>>>,
    pub(crate) p_l: Vec<T>,
    pub(crate) survival: Vec<T>,
    pub(crate) terminal: bool,
}

/// Plans until the terminal iteration.
pub fn plan_grsse<T: Scalar>(channel: &NoiseModel, schedule: &CodeSchedule) -> Result<KappaPlan<T>> {
    Planner::new(channel.clone(), schedule.clone())?.run()
}

impl<T: Scalar> KappaPlan<T> {
    pub fn channel(&self) -> &NoiseModel {
        &self.channel
    }

    pub fn schedule(&self) -> &CodeSchedule {
        &self.schedule
    }

    pub fn codes(&self) -> &[Arc<LinearCode>] {
        self.schedule.codes()
    }

    pub fn code(&self, i: usize) -> &Arc<LinearCode> {
        &self.schedule.codes()[self.iterations[i].code_index]
    }

    pub fn iterations(&self) -> &[Arc<IterationPlan<T>>] {
        &self.iterations
    }

    pub fn len(&self) -> usize {
        self.iterations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterations.is_empty()
    }

    /// `p_L(i)` for `i = 1..=len`.
    pub fn p_l(&self) -> &[T] {
        &self.p_l
    }

    /// `S_i = P(L >= i)` for `i = 1..=len`.
    pub fn survival(&self) -> &[T] {
        &self.survival
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    fn require_terminal(&self) -> Result<()> {
        if self.terminal {
            Ok(())
        } else {
            Err(Error::NonTerminalPlan)
        }
    }

    pub fn p_l_f64(&self) -> Vec<f64> {
        self.p_l.iter().map(Scalar::to_f64).collect()
    }

    /// `E[log2 L]`.
    pub fn expected_log_l(&self) -> Result<f64> {
        self.require_terminal()?;
        Ok(self.p_l_f64().iter().enumerate().map(|(i, p)| p * ((i + 1) as f64).log2()).sum())
    }

    /// `E[k_L log2 q]` in bits.
    pub fn expected_payload_bits(&self) -> Result<f64> {
        self.require_terminal()?;
        Ok(self
            .p_l_f64()
            .iter()
            .zip(&self.iterations)
            .map(|(p, it)| {
                let code = &self.schedule.codes()[it.code_index];
                p * code.k() as f64 * (code.q().order() as f64).log2()
            })
            .sum())
    }

    /// `E[|code(L)|]` in bits.
    pub fn expected_index_bits(&self, coder: LCoder) -> Result<f64> {
        self.require_terminal()?;
        let p = self.p_l_f64();
        Ok(match coder {
            LCoder::Huffman => HuffmanCode::new(&p)?.expected_length(&p),
            LCoder::EliasGamma => p.iter().enumerate().map(|(i, p)| p * elias_gamma_length(i as u64 + 1) as f64).sum(),
        })
    }

    /// Expected encoding length in bits.
    pub fn expected_bits(&self, coder: LCoder) -> Result<f64> {
        Ok(self.expected_index_bits(coder)? + self.expected_payload_bits()?)
    }

    /// Expected encoding length divided by `n`, in bits per symbol.
    pub fn expected_rate(&self, coder: LCoder) -> Result<f64> {
        Ok(self.expected_bits(coder)? / self.schedule.n() as f64)
    }

    /// `sum_i p_L(i)` plus the survival after the last planned iteration.
    pub fn total_mass(&self) -> T {
        let s = self.p_l.iter().cloned().fold(T::zero(), |a, b| a + b);
        match (self.terminal, self.iterations.last(), self.survival.last()) {
            (false, Some(it), Some(last)) => s + last.clone() * (T::one() - it.accept.clone()),
            _ => s,
        }
    }

    /// Residual masses for iteration `i` (0-based).
    pub fn residual(&self, i: usize) -> &[T] {
        &self.iterations[i].residual
    }

    pub fn backend(&self) -> &'static str {
        T::BACKEND
    }
}

//! Plan serialization, backend dispatch and the on-disk plan cache.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::{CodeSchedule, IterationPlan, KappaPlan, Planner};
use crate::channel::{NoiseModel, TypeDistribution};
use crate::codes::CodeRegistry;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const PLAN_FORMAT: &str = "grsse-plan/1";
/// Largest cap for which an automatic backend choice picks exact arithmetic.
pub const EXACT_CAP_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Auto,
    Exact,
    F64,
    F32,
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Backend::Auto),
            "exact" | "rational" => Ok(Backend::Exact),
            "f64" | "float" => Ok(Backend::F64),
            "f32" => Ok(Backend::F32),
            _ => Err(Error::InvalidParameter(format!("unknown backend `{s}`"))),
        }
    }
}

impl Backend {
    /// Exact when every channel parameter is rational and the cap keeps
    /// denominators manageable, binary64 otherwise.
    pub fn resolve(self, channel: &NoiseModel, cap: usize) -> Backend {
        match self {
            Backend::Auto if channel.is_rational() && cap <= EXACT_CAP_LIMIT => Backend::Exact,
            Backend::Auto => Backend::F64,
            other => other,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Backend::Auto => "auto",
            Backend::Exact => "exact",
            Backend::F64 => "f64",
            Backend::F32 => "f32",
        }
    }
}

/// A plan in whichever numeric backend it was built with.
#[derive(Debug, Clone)]
pub enum AnyPlan {
    Exact(KappaPlan<BigRational>),
    F64(KappaPlan<f64>),
    F32(KappaPlan<f32>),
}

/// Runs `$body` with `$p` bound to the concrete plan.
#[macro_export]
macro_rules! with_plan {
    ($plan:expr, $p:ident => $body:expr) => {
        match $plan {
            $crate::planner::AnyPlan::Exact($p) => $body,
            $crate::planner::AnyPlan::F64($p) => $body,
            $crate::planner::AnyPlan::F32($p) => $body,
        }
    };
}

impl AnyPlan {
    pub fn build(channel: &NoiseModel, schedule: &CodeSchedule, backend: Backend) -> Result<Self> {
        Ok(match backend.resolve(channel, schedule.cap()) {
            Backend::Exact => AnyPlan::Exact(Planner::new(channel.clone(), schedule.clone())?.run()?),
            Backend::F32 => AnyPlan::F32(Planner::new(channel.clone(), schedule.clone())?.run()?),
            _ => AnyPlan::F64(Planner::new(channel.clone(), schedule.clone())?.run()?),
        })
    }

    pub fn backend(&self) -> &'static str {
        with_plan!(self, p => p.backend())
    }

    pub fn to_json(&self) -> Value {
        with_plan!(self, p => plan_to_json(p))
    }

    pub fn from_json(v: &Value, registry: &CodeRegistry) -> Result<Self> {
        match v["header"]["backend"].as_str() {
            Some("exact") => Ok(AnyPlan::Exact(plan_from_json(v, registry)?)),
            Some("f64") => Ok(AnyPlan::F64(plan_from_json(v, registry)?)),
            Some("f32") => Ok(AnyPlan::F32(plan_from_json(v, registry)?)),
            _ => Err(Error::Malformed("plan header lacks a known backend".into())),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&self.to_json())?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path, registry: &CodeRegistry) -> Result<Self> {
        let v: Value = serde_json::from_slice(&fs::read(path)?)?;
        Self::from_json(&v, registry)
    }

    pub fn channel(&self) -> &NoiseModel {
        with_plan!(self, p => p.channel())
    }

    pub fn schedule(&self) -> &CodeSchedule {
        with_plan!(self, p => p.schedule())
    }

    pub fn len(&self) -> usize {
        with_plan!(self, p => p.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn header_json(channel: &NoiseModel, schedule: &CodeSchedule, backend: &str) -> Value {
    json!({
        "format": PLAN_FORMAT,
        "channel": channel.to_json(),
        "codes": schedule.codes().iter().map(|c| c.name()).collect::<Vec<_>>(),
        "candidates": schedule.candidates(),
        "epsilon": schedule.epsilon(),
        "cap": schedule.cap(),
        "backend": backend,
        "column_orders": schedule
            .codes()
            .iter()
            .map(|c| c.standard_form().col_perm.as_slice().to_vec())
            .collect::<Vec<_>>(),
    })
}

pub fn plan_to_json<T: Scalar>(plan: &KappaPlan<T>) -> Value {
    let space = plan.codes()[0].type_space().clone();
    let iterations: Vec<Value> = plan
        .iterations()
        .iter()
        .map(|it| {
            json!({
                "code_index": it.code_index,
                "F": it.accept.to_json(),
                "gamma": it
                    .gamma
                    .iter()
                    .map(|(t, p, g)| json!([t, space.get(*p).counts(), g.to_json()]))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "header": header_json(plan.channel(), plan.schedule(), T::BACKEND),
        "iterations": iterations,
        "p_L": plan.p_l().iter().map(Scalar::to_json).collect::<Vec<_>>(),
    })
}

/// Parses a plan, rebuilding codes by name and replaying the residual
/// recursion to check every stored quantity.
pub fn plan_from_json<T: Scalar>(v: &Value, registry: &CodeRegistry) -> Result<KappaPlan<T>> {
    let bad = |what: &str| Error::Malformed(format!("plan: {what}"));
    let header = &v["header"];
    if header["format"].as_str() != Some(PLAN_FORMAT) {
        return Err(bad("unknown format"));
    }
    if header["backend"].as_str() != Some(T::BACKEND) {
        return Err(Error::PlanMismatch(format!("plan backend is {}, expected {}", header["backend"], T::BACKEND)));
    }
    let channel = NoiseModel::from_json(&header["channel"])?;
    let names = header["codes"].as_array().ok_or_else(|| bad("codes"))?;
    let orders = header["column_orders"].as_array().ok_or_else(|| bad("column_orders"))?;
    if names.len() != orders.len() {
        return Err(bad("column_orders length"));
    }
    let mut codes = Vec::with_capacity(names.len());
    for (name, order) in names.iter().zip(orders) {
        let code = registry.get(name.as_str().ok_or_else(|| bad("code name"))?, channel.q())?;
        let stored: Vec<usize> = serde_json::from_value(order.clone())?;
        if stored != code.standard_form().col_perm.as_slice() {
            return Err(Error::PlanMismatch(format!("column order of `{}` differs", code.name())));
        }
        codes.push(code);
    }
    let candidates = header["candidates"].as_u64().ok_or_else(|| bad("candidates"))? as usize;
    let epsilon = header["epsilon"].as_f64().ok_or_else(|| bad("epsilon"))?;
    let cap = header["cap"].as_u64().ok_or_else(|| bad("cap"))? as usize;
    let schedule = CodeSchedule::from_parts(codes, candidates, epsilon, cap)?;

    let mut residual = channel.type_distribution::<T>()?;
    let space = residual.space().clone();
    let mut survival = T::one();
    let mut iterations = Vec::new();
    let mut p_l = Vec::new();
    let mut survivals = Vec::new();
    let mut terminal = false;
    for item in v["iterations"].as_array().ok_or_else(|| bad("iterations"))? {
        if terminal {
            return Err(bad("iterations after the terminal one"));
        }
        let code_index = item["code_index"].as_u64().ok_or_else(|| bad("code_index"))? as usize;
        let code = schedule.codes().get(code_index).ok_or_else(|| bad("code_index out of range"))?;
        let sets = code.type_set_distribution()?.len();
        let accept = T::from_json(&item["F"])?;
        let mut gamma = Vec::new();
        for g in item["gamma"].as_array().ok_or_else(|| bad("gamma"))? {
            let t = g[0].as_u64().ok_or_else(|| bad("gamma type set"))? as usize;
            let counts: Vec<u32> = serde_json::from_value(g[1].clone())?;
            let p = crate::gf::EmpiricalType::new(counts)
                .ok()
                .and_then(|p| space.index_of(&p))
                .ok_or_else(|| bad("gamma type"))?;
            if t >= sets {
                return Err(bad("gamma type set out of range"));
            }
            gamma.push((t, p, T::from_json(&g[2])?));
        }
        let sum = gamma.iter().fold(T::zero(), |a, (_, _, g)| a + g.clone());
        let consistent = if T::EXACT { sum == accept } else { (sum.to_f64() - accept.to_f64()).abs() <= T::TOLERANCE };
        if !consistent {
            return Err(Error::PlanMismatch("F differs from the sum of gamma".into()));
        }
        let it = IterationPlan {
            code_index,
            gamma,
            terminal: T::is_terminal(&accept),
            accept,
            residual: residual.masses().to_vec(),
        };
        survivals.push(survival.clone());
        if it.terminal {
            p_l.push(survival.clone());
            survival = T::zero();
            terminal = true;
        } else {
            p_l.push(survival.clone() * it.accept.clone());
            survival = survival.clone() * (T::one() - it.accept.clone());
            residual = TypeDistribution::from_masses(space.clone(), it.next_residual())?;
        }
        iterations.push(Arc::new(it));
    }
    let stored = v["p_L"].as_array().ok_or_else(|| bad("p_L"))?;
    if stored.len() != p_l.len() {
        return Err(Error::PlanMismatch("p_L length".into()));
    }
    for (s, p) in stored.iter().zip(&p_l) {
        let s = T::from_json(s)?;
        let same = if T::EXACT { &s == p } else { (s.to_f64() - p.to_f64()).abs() <= T::TOLERANCE };
        if !same {
            return Err(Error::PlanMismatch("p_L differs from the replayed value".into()));
        }
    }
    Ok(KappaPlan { channel, schedule, iterations, p_l, survival: survivals, terminal })
}

/// Directory of plans keyed by a hash of what determines them.
#[derive(Debug, Clone)]
pub struct PlanCache {
    dir: PathBuf,
}

impl PlanCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(PlanCache { dir })
    }

    pub fn key(channel: &NoiseModel, schedule: &CodeSchedule, backend: Backend) -> String {
        let backend = backend.resolve(channel, schedule.cap());
        let header = header_json(channel, schedule, backend.label());
        hex::encode(Sha256::digest(header.to_string().as_bytes()))
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Loads a cached plan, or builds and stores it.
    pub fn get_or_build(
        &self,
        channel: &NoiseModel,
        schedule: &CodeSchedule,
        backend: Backend,
        registry: &CodeRegistry,
    ) -> Result<AnyPlan> {
        let path = self.path(&Self::key(channel, schedule, backend));
        if path.exists() {
            if let Ok(plan) = AnyPlan::load(&path, registry) {
                return Ok(plan);
            }
        }
        let plan = AnyPlan::build(channel, schedule, backend)?;
        plan.save(&path)?;
        Ok(plan)
    }
}

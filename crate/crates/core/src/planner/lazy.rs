use std::sync::{Arc, RwLock};

use super::{IterationPlan, KappaPlan, Planner};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Source of iteration plans for the codec.
pub trait PlanSource<T: Scalar>: Send + Sync {
    fn codes(&self) -> &[Arc<LinearCode>];
    /// Iteration `i`, 0-based.
    fn iteration(&self, i: usize) -> Result<Arc<IterationPlan<T>>>;
    /// Full `p_L` when the plan is complete; required for Huffman coding of `L`.
    fn p_l(&self) -> Option<Vec<f64>>;
}

impl<T: Scalar> PlanSource<T> for KappaPlan<T> {
    fn codes(&self) -> &[Arc<LinearCode>] {
        self.schedule.codes()
    }

    fn iteration(&self, i: usize) -> Result<Arc<IterationPlan<T>>> {
        self.iterations.get(i).cloned().ok_or(Error::PlanExhausted(i + 1))
    }

    fn p_l(&self) -> Option<Vec<f64>> {
        self.terminal.then(|| self.p_l_f64())
    }
}

/// Plan whose iterations are computed on first use. Readers of iterations
/// that already exist only take the read lock.
pub struct LazyPlan<T> {
    codes: Vec<Arc<LinearCode>>,
    planner: RwLock<Planner<T>>,
}

impl<T: Scalar> LazyPlan<T> {
    pub fn new(planner: Planner<T>) -> Self {
        LazyPlan { codes: planner.schedule().codes().to_vec(), planner: RwLock::new(planner) }
    }

    pub fn materialized(&self) -> usize {
        self.planner.read().expect("planner lock").len()
    }

    /// The iterations planned so far.
    pub fn snapshot(&self) -> KappaPlan<T> {
        self.planner.read().expect("planner lock").snapshot()
    }
}

impl<T: Scalar> PlanSource<T> for LazyPlan<T> {
    fn codes(&self) -> &[Arc<LinearCode>] {
        &self.codes
    }

    fn iteration(&self, i: usize) -> Result<Arc<IterationPlan<T>>> {
        if let Some(it) = self.planner.read().expect("planner lock").iterations.get(i) {
            return Ok(it.clone());
        }
        let mut planner = self.planner.write().expect("planner lock");
        while planner.iterations.len() <= i {
            if !planner.step()? && planner.iterations.len() <= i {
                return Err(Error::PlanExhausted(i + 1));
            }
        }
        Ok(planner.iterations[i].clone())
    }

    fn p_l(&self) -> Option<Vec<f64>> {
        None
    }
}

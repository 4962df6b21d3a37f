use std::sync::Arc;

use crate::channel::TypeDistribution;
use crate::codes::{CodeKind, LinearCode};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_CAP: usize = 20_000;
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Candidate inner codes ordered by strictly decreasing effective distance,
/// the mixed-rule threshold `epsilon`, and the iteration cap after which
/// the complete code is forced.
#[derive(Debug, Clone)]
pub struct CodeSchedule {
    codes: Vec<Arc<LinearCode>>,
    candidates: usize,
    fallback: usize,
    epsilon: f64,
    cap: usize,
}

impl CodeSchedule {
    /// Sorts the codes by effective distance and appends the complete code
    /// as the cap fallback when none of the candidates is complete.
    pub fn new(mut codes: Vec<Arc<LinearCode>>, epsilon: f64, cap: usize) -> Result<Self> {
        let first = codes.first().ok_or_else(|| Error::InvalidParameter("schedule needs at least one code".into()))?;
        let (n, q) = (first.n(), first.q());
        if let Some(bad) = codes.iter().find(|c| c.n() != n || c.q() != q) {
            return Err(Error::InvalidParameter(format!("code `{}` has a different length or field", bad.name())));
        }
        if !(epsilon > 0.0) {
            return Err(Error::InvalidParameter("epsilon must be positive".into()));
        }
        if cap == 0 {
            return Err(Error::InvalidParameter("iteration cap must be at least 1".into()));
        }
        if codes.len() > 1 {
            if codes.iter().any(|c| c.effective_distance().is_none()) {
                return Err(Error::UnknownDistance);
            }
            codes.sort_by(|a, b| b.effective_distance().cmp(&a.effective_distance()));
            if codes.windows(2).any(|w| w[0].effective_distance() == w[1].effective_distance()) {
                return Err(Error::InvalidParameter("effective distances must be distinct".into()));
            }
        }
        let candidates = codes.len();
        let fallback = match codes.iter().position(|c| matches!(c.kind(), CodeKind::Complete)) {
            Some(i) => i,
            None => {
                codes.push(Arc::new(LinearCode::complete(n, q)));
                candidates
            }
        };
        Ok(CodeSchedule { codes, candidates, fallback, epsilon, cap })
    }

    /// Rebuilds a schedule from a stored code order without re-sorting.
    pub(crate) fn from_parts(codes: Vec<Arc<LinearCode>>, candidates: usize, epsilon: f64, cap: usize) -> Result<Self> {
        let fallback = codes
            .iter()
            .position(|c| matches!(c.kind(), CodeKind::Complete))
            .ok_or_else(|| Error::PlanMismatch("no complete code in the stored schedule".into()))?;
        if candidates == 0 || candidates > codes.len() {
            return Err(Error::PlanMismatch("candidate count out of range".into()));
        }
        Ok(CodeSchedule { codes, candidates, fallback, epsilon, cap })
    }

    pub fn codes(&self) -> &[Arc<LinearCode>] {
        &self.codes
    }

    /// Number of leading codes eligible for the selection rule.
    pub fn candidates(&self) -> usize {
        self.candidates
    }

    /// Index of the complete code used at the cap.
    pub fn fallback(&self) -> usize {
        self.fallback
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn n(&self) -> usize {
        self.codes[0].n()
    }

    /// `j = max { j : P(wt(Z) >= d~_j / 2) <= epsilon }` under the current
    /// residual, falling back to the first (largest distance) code.
    pub fn select<T: Scalar>(&self, residual: &TypeDistribution<T>) -> usize {
        if self.candidates == 1 {
            return 0;
        }
        (0..self.candidates)
            .rev()
            .find(|&j| {
                let d = self.codes[j].effective_distance().expect("checked at construction");
                residual.tail_beyond_half(&d).to_f64() <= self.epsilon
            })
            .unwrap_or(0)
    }
}

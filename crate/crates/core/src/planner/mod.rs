//! Greedy acceptance planning: one max flow per iteration over type sets
//! and types, residual updates, and the mixed code-selection rule.

mod bound;
mod flow;
mod io;
mod lazy;
mod plan;
mod schedule;

pub use bound::beta_mixture_bound;
pub use flow::{max_flow, FlowSolution};
pub use io::{plan_from_json, plan_to_json, AnyPlan, Backend, PlanCache, EXACT_CAP_LIMIT, PLAN_FORMAT};
pub use lazy::{LazyPlan, PlanSource};
pub use plan::{plan_grsse, plan_iteration, IterationPlan, KappaPlan, Planner, SURVIVAL_FLOOR};
pub use schedule::{CodeSchedule, DEFAULT_CAP, DEFAULT_EPSILON};

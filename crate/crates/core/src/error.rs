use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field order {0} is not a supported prime (2 <= q <= 251)")]
    InvalidModulus(u32),
    #[error("symbol {value} out of range for GF({q})")]
    SymbolOutOfRange { value: u32, q: u8 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("modulus mismatch: GF({left}) vs GF({right})")]
    ModulusMismatch { left: u8, right: u8 },
    #[error("parity-check matrix is rank deficient")]
    RankDeficient,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration budget exceeded: {what} needs {needed} elements, limit {limit}")]
    BudgetExceeded { what: &'static str, needed: f64, limit: f64 },
    #[error("code distance is unknown")]
    UnknownDistance,
    #[error("type {0} is not realizable in this coset")]
    Infeasible(String),
    #[error("plan does not cover the current state: {0}")]
    PlanMismatch(String),
    #[error("plan exhausted after {0} iterations without a terminal iteration")]
    PlanExhausted(usize),
    #[error("plan is not terminal")]
    NonTerminalPlan,
    #[error("malformed bitstream: {0}")]
    Malformed(String),
    #[error("invalid code specification `{0}`")]
    CodeSpec(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

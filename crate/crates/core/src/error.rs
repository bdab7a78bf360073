use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("diagram is not sub-staircase: s_{position} = {degree} > {position} - 1")]
    NotSubStaircase { position: usize, degree: u32 },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("partitions of different weights: {left} vs {right}")]
    WeightMismatch { left: u32, right: u32 },

    #[error("power-sum shift (0,0) is not allowed")]
    InvalidShift,

    #[error("bidegree mismatch: expected {expected:?}, found {found:?}")]
    BidegreeMismatch {
        expected: (u32, u32),
        found: (u32, u32),
    },

    #[error("point count mismatch: expected {expected}, found {found}")]
    PointCountMismatch { expected: usize, found: usize },

    #[error("backend failure: {0}")]
    BackendFailure(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error(
        "no minimal staircase diagram of bidegree ({d1},{d2}) and type {partition} for n = {n}"
    )]
    Infeasible {
        n: usize,
        d1: u32,
        d2: u32,
        partition: String,
    },

    #[error("size guard: {what} = {value} exceeds limit {limit}")]
    SizeGuard {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("conjectured generator has a repeated point for lambda {0}")]
    DegenerateConjectureInstance(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

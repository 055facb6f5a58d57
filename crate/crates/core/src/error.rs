use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while reading TSPLIB instances, tours and reported-value tables.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("unsupported EDGE_WEIGHT_TYPE `{0}` (expected EUC_2D, CEIL_2D or ATT)")]
    UnsupportedEdgeWeightType(String),
    #[error("section `{0}` is not supported; only NODE_COORD_SECTION instances are accepted")]
    UnsupportedSection(String),
    #[error("missing required keyword `{0}`")]
    MissingKeyword(&'static str),
    #[error("line {line}: invalid value for `{keyword}`: `{value}`")]
    InvalidValue {
        line: usize,
        keyword: String,
        value: String,
    },
    #[error("line {line}: malformed coordinate record `{text}`")]
    MalformedCoordinate { line: usize, text: String },
    #[error("DIMENSION is {declared} but {found} records were found")]
    DimensionMismatch { declared: usize, found: usize },
    #[error("node id {0} appears more than once")]
    DuplicateNodeId(i64),
    #[error("node id {id} is outside 1..={dimension}")]
    NodeIdOutOfRange { id: i64, dimension: usize },
    #[error("tour has no TOUR_SECTION")]
    MissingTourSection,
    #[error("tour section is not terminated by -1")]
    MissingTerminator,
    #[error("tour is not a permutation of 1..={dimension}: {reason}")]
    NotAPermutation { dimension: usize, reason: String },
    #[error("line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("reported values header must be `name,reported_opt,hk`, found `{0}`")]
    BadHeader(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors from building instances and evaluating metric quantities on them.
#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("points {0} and {1} have identical coordinates")]
    DuplicatePoint(usize, usize),
    #[error("an instance needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("distance query with i == j == {0}")]
    SameVertex(usize),
    #[error("order is not a permutation of 0..{n}: {reason}")]
    NotAPermutation { n: usize, reason: String },
    #[error("coordinate {0} is not finite")]
    NonFinite(f64),
    #[error("only 2-dimensional instances can be written as TSPLIB files (d = {0})")]
    NotPlanar(usize),
}

/// Errors from the closed-form estimators and their aggregation.
#[derive(Debug, Error, PartialEq)]
pub enum EstimateError {
    #[error("optimum must be strictly positive, got {0}")]
    NonPositiveOptimum(f64),
    #[error("no error records to aggregate")]
    EmptyRecords,
    #[error("relative error for `{formula}` on `{instance}` is not finite")]
    NonFiniteEpsilon { instance: String, formula: String },
}

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("exact solver is capped at n = {cap}, instance has n = {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("exact solver cap must lie in 3..=20, got {0}")]
    InvalidCap(usize),
    #[error("start vertex {start} out of range for n = {n}")]
    StartOutOfRange { start: usize, n: usize },
    #[error("instance needs at least {need} points, got {n}")]
    TooFewPoints { need: usize, n: usize },
}

#[derive(Debug, Error, PartialEq)]
pub enum GeneratorError {
    #[error("grid needs at least 2 axes, got {0}")]
    TooFewAxes(usize),
    #[error("grid axis {axis} has {count} points; every axis needs at least 2")]
    AxisTooShort { axis: usize, count: usize },
    #[error("grid sides {0:?} are all odd; no unit-step Hamiltonian cycle exists")]
    AllSidesOdd(Vec<usize>),
    #[error("grid spacing must be finite and positive, got {0}")]
    BadSpacing(f64),
    #[error("subdivision needs k >= 1, got {0}")]
    ZeroSubdivision(usize),
    #[error("tour has {found} vertices, instance has {expected}")]
    TourMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Errors from the corpus harness.
#[derive(Debug, Error)]
pub enum BenchError {
    #[error("cannot read directory {path}: {source}")]
    UnreadableDir {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("no parseable .tsp instances in {0}")]
    NoInstances(PathBuf),
    #[error("unknown formula `{0}`")]
    UnknownFormula(String),
    #[error("formula set is empty")]
    EmptyFormulaSet,
    #[error("no relative errors available for formula `{0}`")]
    NoErrors(String),
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: ParseError,
    },
    #[error(transparent)]
    Estimate(#[from] EstimateError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

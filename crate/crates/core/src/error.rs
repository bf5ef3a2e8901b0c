use thiserror::Error;

/// Every failure the engine reports. Messages name the witnessing points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a space must have at least one point")]
    EmptySpace,
    #[error("{needed} points exceed the capacity of {cap}")]
    Capacity { needed: usize, cap: usize },
    #[error("oracle refused: {points} points exceed the oracle cap of {cap}")]
    OracleCap { points: usize, cap: usize },
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("relation matrix is {rows}x? but there are {points} points")]
    NotSquare { rows: usize, points: usize },
    #[error("not reflexive: {0:?} is not in its own closure")]
    NotReflexive(String),
    #[error("not transitive: {a:?} <= {b:?} <= {c:?} but not {a:?} <= {c:?}")]
    NotTransitive { a: String, b: String, c: String },
    #[error("space mismatch: {0}")]
    Mismatch(String),
    #[error("generator table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("gen({point:?}) is not closed in the target (missing {missing:?})")]
    GeneratorNotClosed { point: String, missing: String },
    #[error("not monotone: {lower:?} lies in Cl{{{upper:?}}} but gen({lower:?}) is not contained in gen({upper:?})")]
    NotMonotone { lower: String, upper: String },
    #[error("argument is not closed: {0}")]
    NotClosed(String),
    #[error("not an admissible pair: {0}")]
    PairViolation(String),
    #[error("not open: {0}")]
    NotOpen(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not continuous: {0}")]
    NotContinuous(String),
    #[error("diagram error: {0}")]
    Diagram(String),
    #[error("graph presentation error: {0}")]
    Graph(String),
    #[error("properness violated on the truncation: {0}")]
    Properness(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("saturation overflow after {0} insertions")]
    SaturationOverflow(usize),
    #[error("not a coarse map: {0}")]
    NotCoarse(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

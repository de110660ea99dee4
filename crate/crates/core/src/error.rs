use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("poset has no elements")]
    Empty,
    #[error("element index {index} out of range for a poset of {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("label count {labels} does not match element count {size}")]
    LabelCount { labels: usize, size: usize },
    #[error("cover relations contain a cycle through element {element}")]
    CycleDetected { element: usize },
    #[error("poset has {} minimal elements, expected exactly one: {minima:?}", minima.len())]
    MultipleMinima { minima: Vec<usize> },
    #[error("poset is not ranked: saturated chains to element {element} have lengths {shortest} and {longest}")]
    NotRanked {
        element: usize,
        shortest: usize,
        longest: usize,
    },
    #[error("relation is not reflexive at element {element}")]
    NotReflexive { element: usize },
    #[error("relation is not antisymmetric: {x} <= {y} <= {x}")]
    NotAntisymmetric { x: usize, y: usize },
    #[error("relation is not transitive: {x} <= {y} <= {z} but not {x} <= {z}")]
    NotTransitive { x: usize, y: usize, z: usize },
    #[error("not a lattice: elements {x} and {y} have no unique {bound}")]
    NotALattice {
        x: usize,
        y: usize,
        bound: &'static str,
    },
    #[error("quotient is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid element partition: {0}")]
    InvalidPartition(String),
    #[error("invalid atom partition: {0}")]
    InvalidAtomPartition(String),
    #[error("invalid multichain: {0}")]
    InvalidMultichain(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid vertex ordering: {0}")]
    InvalidOrdering(String),
    #[error("rooted tree support set does not contain the minimum element")]
    ZeroNotInS,
    #[error("lattice is not geometric")]
    NotGeometric,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("factored form has net negative power of t ({0})")]
    NegativePower(i64),
    #[error("product of {size} elements exceeds the element budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("independent cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

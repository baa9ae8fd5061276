use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("enumeration guard exceeded: {0}")]
    Guard(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("not a root: {0}")]
    NotARoot(String),

    #[error("unsupported lattice: {0}")]
    Lattice(String),

    #[error("minimum weight {0} is at most 2")]
    SmallMinWeight(usize),

    #[error("inner product {0} is not one of 0, 1/32, 1/4")]
    NotSigmaCompatible(String),

    #[error("no lattice realization for {0}")]
    Unrealized(String),

    #[error("census not closed under sigma: {0}")]
    NotClosed(String),

    #[error("identity failed: {0}")]
    IdentityFailed(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search exhausted: {0}")]
    Exhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;

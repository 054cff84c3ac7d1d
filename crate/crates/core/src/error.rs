use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<u32>),
    #[error("invalid cycle notation: {0}")]
    InvalidCycles(String),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("enumeration too large: more than {cap} elements")]
    EnumerationTooLarge { cap: usize },
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element is not a central involution")]
    NotCentralInvolution,
    #[error("component count mismatch: {left} vs {right}")]
    ComponentMismatch { left: usize, right: usize },
    #[error("component count {0} outside supported range 1..=5")]
    ComponentCountOutOfRange(usize),
    #[error("invalid linking matrix: {0}")]
    InvalidLinkingMatrix(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("tree action: {0}")]
    InvalidAction(String),
    #[error("invalid attaching data: {0}")]
    InvalidAttachData(String),
    #[error("{0}")]
    Domain(String),
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid characteristic {0}: expected 0 or a prime greater than 2")]
    InvalidCharacteristic(u64),

    #[error("rank must be positive")]
    ZeroRank,

    #[error("weight {weight} does not fit in rank {rank}")]
    RankMismatch { weight: String, rank: usize },

    #[error("parts {0:?} are not weakly decreasing and nonnegative")]
    NotAPartition(Vec<i64>),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{0} is not contained in {1}")]
    NotContained(String, String),

    #[error("delta = 0 is not supported here: the label set needs a modified construction")]
    DeltaZero,

    #[error("operation requires characteristic zero")]
    RequiresCharZero,

    #[error("operation requires positive characteristic")]
    RequiresCharP,

    #[error("affine shift {0} is not available in characteristic zero")]
    AffineShiftInCharZero(i64),

    #[error("{0} and {1} are not balanced")]
    NotBalanced(String, String),

    #[error("linking chain could not be extended from {0}; the pair is balanced but no step applies")]
    ChainDefect(String),

    #[error("bead count {b} is too small: need at least {needed}")]
    BeadCountTooSmall { b: usize, needed: usize },

    #[error("bead count {b} does not satisfy 2b = 2 - delta mod {p}")]
    BeadCountResidue { b: usize, p: u64 },

    #[error("diagram sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("size |lambda| - |mu| = {0} must be even and nonnegative")]
    BadSizeDifference(i64),

    #[error("{label} is not a label for n = {n}")]
    NotALabel { label: String, n: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

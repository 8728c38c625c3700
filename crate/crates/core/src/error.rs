use thiserror::Error;

use crate::partition::{Algebra, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("sp_N needs an even size, got {0}")]
    OddSymplectic(usize),

    #[error("partition {partition} has size {size}, but {algebra} needs {expected}")]
    SizeMismatch {
        partition: Partition,
        size: usize,
        algebra: Algebra,
        expected: usize,
    },

    #[error("partitions of different sizes cannot be compared ({0} vs {1})")]
    IncomparableSizes(usize, usize),

    #[error("partition {partition} is not valid for {algebra}: {reason}")]
    InvalidPartition {
        partition: Partition,
        algebra: Algebra,
        reason: String,
    },

    #[error("residual algebra would have negative size: {algebra} cannot hold gl blocks summing to {blocks}")]
    ResidualTooSmall { algebra: Algebra, blocks: usize },

    #[error("collapse precondition violated for {partition} at row {m} in {algebra}")]
    CollapsePrecondition {
        partition: Partition,
        m: usize,
        algebra: Algebra,
    },

    #[error("row {m} is not singular for {partition}")]
    NotSingular { partition: Partition, m: usize },

    #[error("({alpha}, {beta}) is not a Kraft-Procesi minimal degeneration: reduced pair ({alpha_prime}, {beta_prime})")]
    NoShapeMatch {
        alpha: Partition,
        beta: Partition,
        alpha_prime: Partition,
        beta_prime: Partition,
    },

    #[error("{0} and {1} coincide; there is no degeneration")]
    NoDifference(Partition, Partition),

    #[error("brute-force oracle bound exceeded: size {size} > bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("dominated set of {0} has no unique maximum")]
    NonUniqueMaximum(Partition),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NimError {
    #[error("heap {index} is negative ({value})")]
    NegativeHeap { index: usize, value: i128 },

    #[error("heap {index} does not fit in 64 bits ({value})")]
    HeapTooLarge { index: usize, value: i128 },

    #[error("k must be at least {min}, got {k}")]
    InvalidK { k: u64, min: u64 },

    #[error("arguments must be positive and non-increasing: {0:?}")]
    InvalidArguments(Vec<u64>),

    #[error("cannot remove {remove} stones from a largest heap of {largest}")]
    IllegalMove { remove: u64, largest: u64 },

    #[error("{0}")]
    Unsupported(&'static str),
}

pub type Result<T, E = NimError> = std::result::Result<T, E>;

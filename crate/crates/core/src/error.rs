use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("text must contain at least one symbol")]
    EmptyText,

    #[error("text of {0} symbols exceeds the supported maximum")]
    TextTooLong(usize),

    #[error("position {pos} out of range (length {len})")]
    OutOfRange { pos: usize, len: usize },

    #[error("invalid span [{start}, {end}) for length {len}")]
    InvalidSpan { start: usize, end: usize, len: usize },

    #[error("cannot drop {k} symbols from a string of length {len}")]
    InvalidDrop { k: usize, len: usize },

    #[error("suffix range must be non-empty")]
    EmptyRange,
}

pub type Result<T> = std::result::Result<T, Error>;

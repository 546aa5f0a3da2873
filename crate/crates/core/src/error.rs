use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vertex pair ({u}, {v})")]
    InvalidVertex { u: Vertex, v: Vertex },
    #[error("invalid vertex count {0}")]
    InvalidSize(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("vertex set has {got} elements, pattern needs {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("vertex {0} is on the wrong side of the partition")]
    WrongSide(Vertex),
    #[error("sampling around vertex {0} failed")]
    SamplingFailed(Vertex),
    #[error("instance too large for exhaustive search (n = {0})")]
    TooLarge(u32),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

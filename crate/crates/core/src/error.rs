use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("unsupported label: {0}")]
    UnsupportedLabel(String),

    #[error("invalid input: {0}")]
    Parse(String),

    #[error("ball size cap exceeded ({elements} elements, radius {partial_radius} reached)")]
    ResourceCap { partial_radius: u32, elements: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

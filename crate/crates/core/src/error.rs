use thiserror::Error;

use crate::graph::GraphClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0} {1}`")]
    UnknownEdge(String, String),
    #[error("unsupported graph class {0}: some component has more than one cycle")]
    UnsupportedClass(GraphClass),
    #[error("graph is not unicyclic (class {0})")]
    NotUnicyclic(GraphClass),
    #[error("graph of order {n} exceeds the oracle limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;

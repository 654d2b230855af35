use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {0}-{1} has weight 0")]
    ZeroWeight(Vertex, Vertex),
    #[error("edge weight {0} exceeds 2^32")]
    WeightTooLarge(u64),
    #[error("no edge between {0} and {1}")]
    MissingEdge(Vertex, Vertex),
    #[error("terminal {0} declared twice")]
    DuplicateTerminal(Vertex),
    #[error("at least one terminal is required")]
    NoTerminals,
    #[error("merge set contains terminals {0} and {1}")]
    TwoTerminals(Vertex, Vertex),
    #[error("representative {0} is not part of the merge set")]
    RepNotInSet(Vertex),
    #[error("merge set contains terminal {terminal} but representative is {rep}")]
    RepNotTerminal { terminal: Vertex, rep: Vertex },
    #[error("empty merge set")]
    EmptyMerge,
    #[error("vertex {0} still has neighbors")]
    NotIsolated(Vertex),
    #[error("source and sink sets must be nonempty")]
    EmptyTerminalSet,
    #[error("vertex {0} lies in both source and sink sets")]
    Overlap(Vertex),
    #[error("{0} needs at least two terminals")]
    TooFewTerminals(&'static str),
    #[error("vertex {0} is a terminal")]
    IsTerminal(Vertex),
    #[error("instance too large for exhaustive search: {0}")]
    Refused(String),
    #[error("vertex {0} has no part assignment")]
    Unassigned(Vertex),
    #[error("invalid generator parameters: {0}")]
    BadParameters(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid stub assignment for edge {edge}: {message}")]
    InvalidAssignment { edge: usize, message: String },

    #[error("edges {first} and {second} overlap collinearly")]
    CollinearOverlap { first: usize, second: usize },

    #[error("drawing is not 2-planar: edge {edge} has {crossings} crossings")]
    NotTwoPlanar { edge: usize, crossings: usize },

    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),

    #[error("capacity exceeded: requested {requested}, at most {capacity} supported")]
    CapacityExceeded { requested: u64, capacity: u64 },

    #[error("edge ({u}, {v}) spans {span} positions, more than the bandwidth {bandwidth}")]
    BandwidthViolated {
        u: usize,
        v: usize,
        span: usize,
        bandwidth: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Partial edge drawings of geometric graphs.
//!
//! A partial edge drawing keeps, for every straight-line edge, only the two
//! pieces (stubs) incident to its endpoints. This crate validates symmetric
//! drawings, solves the ink-maximisation problem exactly on 2-planar drawings,
//! approximates the dual erasure problem on arbitrary drawings, builds
//! homogeneous layouts for several graph families and reproduces the
//! arithmetic behind the known upper bounds for complete graphs.

pub mod bounds;
pub mod constructions;
pub mod crossings;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod maxsped;
pub mod minsped;
pub mod number;
pub mod random;
pub mod render;
pub mod validate;

pub use error::{Error, Result};
pub use geometry::{Point, Segment, Stub};
pub use graph::{GeometricGraph, StubAssignment};

//! Decision procedures and exact symbolic algebra for graph algebras.
//!
//! The crate decides when the Leavitt path algebra and the graph C*-algebra
//! of a directed graph are strongly Z-graded, emits checkable certificates,
//! computes normal forms in the Leavitt path algebra over the rationals, and
//! places core elements inside explicit finite-dimensional subalgebras.

pub mod boundary;
pub mod certificate;
pub mod cli;
pub mod coeff;
pub mod core_fd;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod groupoid;
pub mod ladder;
pub mod lengths;
pub mod lpa;
pub mod property_y;
pub mod random;
pub mod selftest;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{validate_graph, Graph, GraphDoc, GraphInput, Path};
pub use ladder::LadderGraph;

//! Walk-based network centrality and exact checks of the friendship
//! paradox and its generalisations.
//!
//! The crate is organised bottom-up: [`graph`] holds sparse adjacency data,
//! [`spectral`] the matrix-function kernels, [`centrality`] the measures,
//! [`paradox`] and [`conditions`] the comparisons, [`explore`] the batch
//! drivers and [`io`] the edge-list and report formats used by the CLI.

pub mod centrality;
pub mod cli;
pub mod conditions;
pub mod error;
pub mod explore;
pub mod generators;
pub mod graph;
pub mod io;
pub mod paradox;
pub mod rng;
pub mod spectral;
pub mod value;

pub use error::{Error, Result};
pub use graph::{Graph, NodeVector, Orientation};
pub use value::{Rational, Value};

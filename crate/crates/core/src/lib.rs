//! Construction and analysis of edge-fault-tolerant graph spanners.
//!
//! The toolkit builds `f`-edge-fault-tolerant `(2k-1)`-spanners with an exact
//! (branch-and-bound) greedy and a polynomial-time covering-based greedy,
//! extracts the strong blocking sets implicit in their runs, verifies spanner
//! and blocking properties against exhaustive oracles, and counts the
//! alternating-path families that govern spanner density.

pub mod blocking;
pub mod census;
pub mod cycles;
pub mod error;
pub mod ext;
pub mod fault;
pub mod fileio;
pub mod generators;
pub mod graph;
pub mod greedy;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use ext::{Dist, Ext, HopCount};
pub use graph::{Edge, EdgeId, FaultSet, NodeId, WeightedGraph};

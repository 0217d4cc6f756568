//! Files, threads and experiments around [`wlpa_core`].
//!
//! * [`io`]: edge-list, partition and betweenness-dump files.
//! * [`parallel`]: multi-threaded betweenness and node-parallel propagation.
//! * [`experiment`]: seeded multi-run detection with JSON reports.
//! * [`bench`]: runtime scaling ladders written as CSV.

pub mod bench;
pub mod error;
pub mod experiment;
pub mod io;
pub mod parallel;

pub use error::{Error, Result};

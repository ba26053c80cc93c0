//! Exact computations with Schur modules, Pieri intertwiners and the Young
//! flattenings built from them, together with the Weyl-group weight
//! bookkeeping used to produce border-rank lower bounds.

pub mod bounds;
pub mod bwb;
pub mod cache;
pub mod error;
pub mod euler;
pub mod exactla;
pub mod flatten;
pub mod partitions;
pub mod pieri;
pub mod schurmodule;
pub mod weylkostant;

pub use error::{Error, Result};

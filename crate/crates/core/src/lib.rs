//! Cellular automata on `Z^d` and free groups: exact one-dimensional
//! decision procedures, bounded probes for balancedness, pre-injectivity
//! and post-surjectivity, and sofic approximation experiments.

pub mod acceptance;
pub mod ca;
pub mod certify;
pub mod corpus;
pub mod error;
pub mod group;
pub mod limits;
pub mod probes;
pub mod report;
pub mod sofic;
pub mod symbolic;
pub mod verdict;
pub mod window;

pub use error::{Error, Result};

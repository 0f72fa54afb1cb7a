pub mod abel;
pub mod balanced;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod report;

pub use error::{Error, Result};

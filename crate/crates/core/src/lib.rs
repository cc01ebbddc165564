//! Finite and symbolic ball spaces.

pub mod category;
pub mod error;
pub mod exec;
pub mod finite;
pub mod maps;
pub mod ordered;
pub mod pointset;
pub mod random;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use finite::{Config, FiniteBallSpace, HierarchyReport, Property};
pub use maps::BallMap;
pub use pointset::PointSet;

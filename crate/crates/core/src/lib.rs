pub mod budget;
pub mod catalog;
pub mod error;
pub mod group;

pub use budget::Budgets;
pub use error::{Error, Result};
pub mod amalgam;
pub mod complex;
pub mod coefficients;
pub mod classify;
pub mod cohomology;
pub mod interface;

pub mod algebra;
pub mod chains;
pub mod corpus;
pub mod error;
pub mod linalg;
mod par;
pub mod poset;
pub mod resolution;
pub mod shuffle;
pub mod synor;
pub mod verify;

pub use error::{Error, Result};

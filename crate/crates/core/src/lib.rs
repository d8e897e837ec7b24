pub mod cube;
pub mod error;
pub mod gamma;
pub mod homology;
pub mod simplicial;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};

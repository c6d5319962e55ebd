pub mod ci;
pub mod corpus;
pub mod error;
pub mod geometry;
pub mod gluing;
pub mod hilbert;
pub mod numerical;
pub mod oracle;
pub mod presentation;
pub mod semigroup;
pub mod vector;

pub use error::{Error, Result};
pub use vector::IntVec;

pub mod error;
pub mod features;
pub mod image;
pub mod phantom;
pub mod seed;
pub use error::{Error, Result};

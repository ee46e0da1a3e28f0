pub mod analytics;
pub mod error;
pub mod sim;
pub mod special;

pub use error::{Error, Result};

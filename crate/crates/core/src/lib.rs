pub mod algebra;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod qmap;
pub mod report;

pub use error::{Error, Result};

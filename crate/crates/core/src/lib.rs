pub mod caps;
pub mod cli;
pub mod constraints;
pub mod design;
pub mod error;
pub mod field;
pub mod format;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod search;
pub mod sylvester;

pub use error::{Error, Result};

pub mod cbcst;
pub mod cybe;
pub mod error;
pub mod example;
pub mod fixtures;
pub mod geom;
pub mod io;
pub mod lie;
pub mod poly;
pub mod quantize;
pub mod report;
mod span;

pub use error::{Error, Result};

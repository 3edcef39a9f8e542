//! File formats, batch decoding and the `latfuse` command-line tool, built
//! on [`latfuse_core`].

pub mod att;
pub mod batch;
pub mod cli;
pub mod error;
pub mod fixture;
pub mod formats;

pub use error::{LoadError, ParseError};

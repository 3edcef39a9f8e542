//! Text file formats other than AT&T automata.

pub mod dictionary;
pub mod manifest;
pub mod posteriors;
pub mod symbols;
pub mod track;

use std::fs;
use std::path::Path;

use crate::error::{LoadError, ParseError};

/// Reads `path` as UTF-8 and hands it to `parse`, attaching the path to
/// any error.
pub fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, LoadError> {
    let text = fs::read_to_string(path).map_err(|e| LoadError::io(path, e))?;
    parse(&text).map_err(|e| LoadError::parse(path, e))
}

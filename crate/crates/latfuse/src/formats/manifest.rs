//! Corpus manifests: `id<TAB>pa_file[<TAB>tt_file]` per line. Relative
//! paths are resolved against the manifest's directory.

use std::path::{Path, PathBuf};

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    pub pa: PathBuf,
    pub tt: Option<PathBuf>,
}

pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>, ParseError> {
    let mut out: Vec<ManifestEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if !(2..=3).contains(&cols.len()) || cols.iter().any(|c| c.is_empty()) {
            return Err(ParseError::new(line, "expected `id<TAB>pa_file[<TAB>tt_file]`"));
        }
        if out.iter().any(|e| e.id == cols[0]) {
            return Err(ParseError::new(line, format!("duplicate id {:?}", cols[0])));
        }
        out.push(ManifestEntry {
            id: cols[0].to_string(),
            pa: base.join(cols[1]),
            tt: cols.get(2).map(|p| base.join(p)),
        });
    }
    Ok(out)
}

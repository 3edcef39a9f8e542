//! Pronunciation dictionaries: `surface<TAB>mora mora ...` per line, `#`
//! starts a comment line.

use latfuse_core::lexicon::DictEntry;
use latfuse_core::SymbolTable;

use crate::error::ParseError;

/// One dictionary line, still in text form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictLine {
    pub line: usize,
    pub surface: String,
    pub morae: Vec<String>,
}

pub fn parse_dictionary(text: &str) -> Result<Vec<DictLine>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let (surface, pron) = raw
            .split_once('\t')
            .ok_or_else(|| ParseError::new(line, "expected `surface<TAB>pronunciation`"))?;
        let surface = surface.trim();
        if surface.is_empty() {
            return Err(ParseError::new(line, "empty surface"));
        }
        out.push(DictLine {
            line,
            surface: surface.to_string(),
            morae: pron.split_whitespace().map(str::to_string).collect(),
        });
    }
    Ok(out)
}

/// Entries that survive resolution, plus the lines that were dropped
/// because their pronunciation is empty or uses symbols the tables lack.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Resolved {
    pub entries: Vec<DictEntry>,
    pub discarded: Vec<usize>,
}

pub fn resolve_dictionary(lines: &[DictLine], tt: &SymbolTable, pa: &SymbolTable) -> Resolved {
    let mut out = Resolved::default();
    for l in lines {
        let morae: Vec<&str> = l.morae.iter().map(String::as_str).collect();
        match DictEntry::resolve(&l.surface, &morae, tt, pa) {
            Some(e) if !morae.is_empty() => out.entries.push(e),
            _ => out.discarded.push(l.line),
        }
    }
    out
}

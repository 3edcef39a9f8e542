//! Symbol-table files: `symbol<TAB>id` per line, id 0 is epsilon.

use std::fmt::Write as _;

use latfuse_core::{Label, SymbolTable};

use crate::error::ParseError;

pub fn write_symbols(table: &SymbolTable) -> String {
    let mut out = String::new();
    for (sym, id) in table.iter() {
        writeln!(out, "{sym}\t{id}").unwrap();
    }
    out
}

pub fn read_symbols(text: &str) -> Result<SymbolTable, ParseError> {
    let mut table = SymbolTable::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let (sym, id) = raw
            .rsplit_once(['\t', ' '])
            .ok_or_else(|| ParseError::new(line, "expected `symbol<TAB>id`"))?;
        let id: Label = id
            .trim()
            .parse()
            .map_err(|_| ParseError::new(line, format!("bad id {id:?}")))?;
        table
            .insert(sym, id)
            .map_err(|e| ParseError::new(line, e.to_string()))?;
    }
    Ok(table)
}

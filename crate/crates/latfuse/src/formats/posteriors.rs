//! Posterior files: a header of tab-separated label names (with `<blank>`
//! for the CTC blank), then one row of natural-log probabilities per frame.

use std::fmt::Write as _;

use latfuse_core::ctc::PosteriorMatrix;
use latfuse_core::symbols::{BLANK_SYMBOL, EPSILON_SYMBOL};
use latfuse_core::{InputError, Label, SymbolTable};

use crate::error::ParseError;

/// A validated posterior file whose columns are still symbol names.
#[derive(Clone, Debug, PartialEq)]
pub struct PosteriorFile {
    pub symbols: Vec<String>,
    /// Row-major log-probabilities.
    pub values: Vec<f64>,
}

impl PosteriorFile {
    pub fn num_frames(&self) -> usize {
        self.values.len() / self.symbols.len()
    }

    /// Interns the column names into `table` and builds the matrix.
    pub fn to_matrix(&self, table: &mut SymbolTable) -> PosteriorMatrix {
        let labels: Vec<Label> = self.symbols.iter().map(|s| table.intern(s)).collect();
        let blank = table.intern(BLANK_SYMBOL);
        PosteriorMatrix::new(labels, blank, self.values.clone())
            .expect("validated while parsing")
    }
}

pub fn parse_posteriors(text: &str) -> Result<PosteriorFile, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header line"))?;
    let symbols: Vec<String> = header.split('\t').map(|s| s.trim().to_string()).collect();
    for (i, s) in symbols.iter().enumerate() {
        if s.is_empty() || s == EPSILON_SYMBOL {
            return Err(ParseError::new(1, format!("column {}: invalid label {s:?}", i + 1)));
        }
        if symbols[..i].contains(s) {
            return Err(ParseError::new(1, format!("label {s:?} appears twice")));
        }
    }
    if !symbols.iter().any(|s| s == BLANK_SYMBOL) {
        return Err(ParseError::new(1, format!("header has no {BLANK_SYMBOL} column")));
    }

    let k = symbols.len();
    let mut values = Vec::new();
    let mut row_lines = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        let row: Vec<&str> = raw.split('\t').collect();
        if row.len() != k {
            return Err(ParseError::new(line, format!("expected {k} columns, got {}", row.len())));
        }
        for (c, tok) in row.iter().enumerate() {
            let v: f64 = tok.trim().parse().map_err(|_| {
                ParseError::new(line, format!("column {}: bad number {tok:?}", c + 1))
            })?;
            values.push(v);
        }
        row_lines.push(line);
    }

    let placeholder: Vec<Label> = (1..=k as Label).collect();
    let blank = symbols.iter().position(|s| s == BLANK_SYMBOL).unwrap() as Label + 1;
    PosteriorMatrix::new(placeholder, blank, values.clone()).map_err(|e| {
        let line = match e {
            InputError::Unnormalized { frame, .. } | InputError::BadValue { frame, .. } => {
                row_lines[frame]
            }
            _ => 1,
        };
        ParseError::new(line, e.to_string())
    })?;
    Ok(PosteriorFile { symbols, values })
}

pub fn write_posteriors(file: &PosteriorFile) -> String {
    let mut out = file.symbols.join("\t");
    out.push('\n');
    for row in file.values.chunks(file.symbols.len()) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join("\t")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "ア\t<blank>\n-0.35667494393873245\t-1.2039728043259361\n0\t-inf\n";

    #[test]
    fn parses_and_builds_a_matrix() {
        let f = parse_posteriors(GOOD).unwrap();
        assert_eq!(f.num_frames(), 2);
        let mut table = SymbolTable::new();
        let m = f.to_matrix(&mut table);
        assert_eq!(m.labels(), [1, 2]);
        assert_eq!(m.blank(), table.get(BLANK_SYMBOL).unwrap());
        assert_eq!(parse_posteriors(&write_posteriors(&f)).unwrap(), f);
    }

    #[test]
    fn unnormalized_row_reports_its_line() {
        let e = parse_posteriors("ア\t<blank>\n0\t-inf\n-1\t-1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("not a distribution"));
    }

    #[test]
    fn shape_and_header_errors() {
        assert_eq!(parse_posteriors("ア\t<blank>\n0\n").unwrap_err().line, 2);
        assert_eq!(parse_posteriors("ア\t<blank>\n0\tx\n").unwrap_err().line, 2);
        assert_eq!(parse_posteriors("ア\tイ\n0\t-inf\n").unwrap_err().line, 1);
        assert_eq!(parse_posteriors("ア\tア\t<blank>\n").unwrap_err().line, 1);
        assert!(parse_posteriors("").is_err());
        assert!(parse_posteriors("ア\t<blank>\n").is_err());
    }
}

//! f0 track files: `hop=<seconds>` on the first line, then one f0 value in
//! Hz per line, with 0 (or a negative value) for unvoiced samples.

use std::fmt::Write as _;

use latfuse_core::f0::F0Track;

use crate::error::ParseError;

pub fn parse_track(text: &str) -> Result<F0Track, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `hop=` header"))?;
    let hop = header
        .trim()
        .strip_prefix("hop=")
        .and_then(|h| h.trim().parse::<f64>().ok())
        .ok_or_else(|| ParseError::new(1, format!("expected `hop=<seconds>`, got {header:?}")))?;
    let mut values = Vec::new();
    for (i, raw) in lines {
        let v: f64 = raw
            .trim()
            .parse()
            .map_err(|_| ParseError::new(i + 1, format!("bad f0 value {raw:?}")))?;
        if v.is_nan() {
            return Err(ParseError::new(i + 1, "f0 value is NaN"));
        }
        values.push(v);
    }
    F0Track::from_hz(hop, &values).map_err(|e| ParseError::new(1, e.to_string()))
}

pub fn write_track(track: &F0Track) -> String {
    let mut out = format!("hop={}\n", track.hop());
    for s in track.samples() {
        writeln!(out, "{}", s.unwrap_or(0.0)).unwrap();
    }
    out
}

//! AT&T FSM text format.
//!
//! One arc per line, `src dst ilabel olabel [weight]` (three columns,
//! `src dst label`, give an unweighted acceptor arc), and one final state
//! per line, `state [weight]`. The first line leaves the start state.
//! Weights are written in the shortest decimal form that parses back to the
//! same `f64`; `+∞` is written `Infinity`.

use std::fmt::Write as _;

use latfuse_core::{Arc, Label, Semiring, StateId, Weight, Wfst};

use crate::error::ParseError;

pub fn write_att(f: &Wfst) -> String {
    let mut out = String::new();
    let Some(start) = f.start() else {
        return out;
    };
    let order = std::iter::once(start).chain(f.states().filter(|&s| s != start));
    for s in order.clone() {
        for e in f.arcs(s) {
            writeln!(out, "{s}\t{}\t{}\t{}\t{}", e.next, e.ilabel, e.olabel, e.weight).unwrap();
        }
    }
    for s in order {
        if f.is_final(s) {
            writeln!(out, "{s}\t{}", f.final_weight(s)).unwrap();
        }
    }
    out
}

fn parse_state(tok: &str, line: usize) -> Result<StateId, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("bad state id {tok:?}")))
}

fn parse_label(tok: &str, line: usize) -> Result<Label, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("bad label {tok:?}")))
}

fn parse_weight(tok: &str, line: usize) -> Result<Weight, ParseError> {
    match tok.parse::<f64>() {
        Ok(v) if !v.is_nan() && v != f64::NEG_INFINITY => Ok(Weight(v)),
        _ => Err(ParseError::new(line, format!("bad weight {tok:?}"))),
    }
}

/// Parses AT&T text. An empty text is the empty automaton. Blank lines are
/// ignored.
pub fn read_att(text: &str, semiring: Semiring) -> Result<Wfst, ParseError> {
    let mut f = Wfst::new(semiring);
    let grow = |f: &mut Wfst, s: StateId| {
        if s >= f.num_states() {
            f.add_states(s + 1 - f.num_states());
        }
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let cols: Vec<&str> = raw.split_whitespace().collect();
        if cols.is_empty() {
            continue;
        }
        let src = parse_state(cols[0], line)?;
        grow(&mut f, src);
        if f.start().is_none() {
            f.set_start(src);
        }
        match cols.len() {
            1 | 2 => {
                let w = match cols.get(1) {
                    Some(t) => parse_weight(t, line)?,
                    None => Weight::ONE,
                };
                f.set_final(src, w);
            }
            3..=5 => {
                let dst = parse_state(cols[1], line)?;
                let il = parse_label(cols[2], line)?;
                let (ol, w) = match cols.len() {
                    3 => (il, Weight::ONE),
                    4 => (parse_label(cols[3], line)?, Weight::ONE),
                    _ => (parse_label(cols[3], line)?, parse_weight(cols[4], line)?),
                };
                grow(&mut f, dst);
                f.add_arc(src, Arc::new(il, ol, w, dst));
            }
            n => return Err(ParseError::new(line, format!("expected 1 to 5 columns, got {n}"))),
        }
    }
    Ok(f)
}

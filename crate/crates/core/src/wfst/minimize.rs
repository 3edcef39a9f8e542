use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{quantize, Arc, Label, StateId, Wfst};
use crate::error::FstError;

/// Minimizes a deterministic, epsilon-free, acyclic acceptor.
///
/// Weights are first pushed toward the start so that equivalent states carry
/// identical outgoing weights. States are then merged bottom-up: two states
/// are equivalent when their final weights and their (label, weight,
/// successor class) sets coincide. For acyclic automata this single pass in
/// reverse topological order yields the coarsest partition.
pub fn minimize(a: &Wfst) -> Result<Wfst, FstError> {
    if !a.is_acceptor() {
        return Err(FstError::NotAcceptor);
    }
    a.check_deterministic()?;
    let a = a.connect();
    let sr = a.semiring();
    let Some(start) = a.start() else {
        return Ok(a);
    };
    let order = a.topo_order()?;
    let n = a.num_states();

    // suffix potentials
    let mut potential = vec![sr.zero(); n];
    for &q in order.iter().rev() {
        let mut d = a.final_weight(q);
        for e in a.arcs(q) {
            d = sr.plus(d, sr.times(e.weight, potential[e.next]));
        }
        potential[q] = d;
    }

    let pushed_arc = |q: StateId, e: &Arc| {
        sr.divide(sr.times(e.weight, potential[e.next]), potential[q])
    };
    let pushed_final = |q: StateId| sr.divide(a.final_weight(q), potential[q]);

    type Signature = (i64, Vec<(Label, i64, usize)>);
    let mut classes: BTreeMap<Signature, usize> = BTreeMap::new();
    let mut class_of = vec![usize::MAX; n];
    let mut representative: Vec<StateId> = Vec::new();
    for &q in order.iter().rev() {
        let mut arcs: Vec<(Label, i64, usize)> = a
            .arcs(q)
            .iter()
            .map(|e| (e.ilabel, quantize(pushed_arc(q, e)), class_of[e.next]))
            .collect();
        arcs.sort_unstable();
        let sig = (quantize(pushed_final(q)), arcs);
        let next_id = classes.len();
        let c = *classes.entry(sig).or_insert_with(|| {
            representative.push(q);
            next_id
        });
        class_of[q] = c;
    }

    let mut out = Wfst::new(sr);
    out.add_states(representative.len());
    for (c, &q) in representative.iter().enumerate() {
        let scale = if q == start { potential[start] } else { sr.one() };
        out.set_final(c, sr.times(scale, pushed_final(q)));
        for e in a.arcs(q) {
            let w = sr.times(scale, pushed_arc(q, e));
            out.add_arc(c, Arc::acc(e.ilabel, w, class_of[e.next]));
        }
    }
    out.set_start(class_of[start]);
    Ok(out.connect())
}

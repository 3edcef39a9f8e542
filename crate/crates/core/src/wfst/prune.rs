use alloc::vec;
use alloc::vec::Vec;

use super::{StateId, Wfst};
use crate::error::FstError;
use crate::semiring::{Semiring, Weight};

/// Beam pruning of an acyclic automaton.
///
/// Weights are read as tropical costs. An arc (or final weight) survives when
/// the cheapest accepting path through it costs at most `best + threshold`.
/// The best path therefore always survives; `threshold = +inf` keeps every
/// path with non-zero weight.
///
/// `threshold` is a cost in natural-log units.
pub fn prune(a: &Wfst, threshold: f64) -> Result<Wfst, FstError> {
    let order = a.topo_order()?;
    let Some(start) = a.start() else {
        return Ok(Wfst::new(a.semiring()));
    };
    let n = a.num_states();
    let trop = Semiring::Tropical;

    let mut alpha = vec![trop.zero(); n];
    alpha[start] = trop.one();
    for &q in &order {
        if alpha[q].is_zero() {
            continue;
        }
        for e in a.arcs(q) {
            let w = trop.times(alpha[q], e.weight);
            alpha[e.next] = trop.plus(alpha[e.next], w);
        }
    }
    let beta = backward_costs(a, &order);
    let best = beta[start];
    if best.is_zero() {
        return Ok(Wfst::new(a.semiring()));
    }
    let limit = best.value() + threshold;
    // absorbs rounding differences between equivalent path sums
    let slack = 1e-9 * (1.0 + best.value().abs());
    let keep = |cost: Weight| cost.is_finite() && cost.value() <= limit + slack;

    let mut out = a.clone();
    for (q, &reach) in alpha.iter().enumerate() {
        let fin = trop.times(reach, a.final_weight(q));
        if !keep(fin) {
            out.set_final(q, Weight::ZERO);
        }
        let kept: Vec<_> = a
            .arcs(q)
            .iter()
            .filter(|e| keep(trop.times(trop.times(reach, e.weight), beta[e.next])))
            .copied()
            .collect();
        *out.arcs_mut(q) = kept;
    }
    Ok(out.connect())
}

/// Tropical cost of the cheapest path from each state to a final state.
pub(crate) fn backward_costs(a: &Wfst, order: &[StateId]) -> Vec<Weight> {
    let trop = Semiring::Tropical;
    let mut beta = vec![trop.zero(); a.num_states()];
    for &q in order.iter().rev() {
        let mut b = a.final_weight(q);
        for e in a.arcs(q) {
            b = trop.plus(b, trop.times(e.weight, beta[e.next]));
        }
        beta[q] = b;
    }
    beta
}

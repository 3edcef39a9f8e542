use super::{
    check_same_semiring, determinize, minimize, prune, rm_epsilon, Arc, Wfst, EPSILON,
};
use crate::error::FstError;
use crate::semiring::{Semiring, Weight};

/// Acceptor obtained by copying every output label onto the input side.
pub fn project_output(t: &Wfst) -> Wfst {
    let mut out = t.clone();
    for s in t.states() {
        for e in out.arcs_mut(s) {
            e.ilabel = e.olabel;
        }
    }
    out
}

/// Mixture union: the weight of a string `s` in the result is
/// `mix * w_a(s) + (1 - mix) * w_b(s)` in probability terms.
///
/// A fresh start state reaches each operand through an epsilon arc carrying
/// its mixture weight, so `mix = 0.5` gives the average of the two
/// distributions.
pub fn union(a: &Wfst, b: &Wfst, mix: f64) -> Result<Wfst, FstError> {
    check_same_semiring(a, b)?;
    if !(mix > 0.0 && mix < 1.0) {
        return Err(FstError::InvalidMix(mix));
    }
    let mut out = Wfst::new(a.semiring());
    let start = out.add_state();
    out.set_start(start);
    for (fst, w) in [(a, Weight::from_prob(mix)), (b, Weight::from_prob(1.0 - mix))] {
        let Some(s) = fst.start() else {
            continue;
        };
        let offset = out.num_states();
        out.add_states(fst.num_states());
        for q in fst.states() {
            out.set_final(q + offset, fst.final_weight(q));
            for e in fst.arcs(q) {
                out.add_arc(q + offset, Arc { next: e.next + offset, ..*e });
            }
        }
        out.add_arc(start, Arc::acc(EPSILON, w, s + offset));
    }
    Ok(out.connect())
}

/// Rescales each state's outgoing arcs and final weight so that their
/// probabilities sum to one. Topology is unchanged.
pub fn normalize_local(a: &Wfst) -> Result<Wfst, FstError> {
    let sr = a.semiring();
    if sr != Semiring::Log {
        return Err(FstError::WrongSemiring(Semiring::Log));
    }
    let mut out = a.clone();
    for s in a.states() {
        let total = sr.plus(
            a.final_weight(s),
            sr.sum(a.arcs(s).iter().map(|e| e.weight)),
        );
        if total.is_zero() {
            return Err(FstError::ZeroMass(s));
        }
        out.set_final(s, sr.divide(a.final_weight(s), total));
        for e in out.arcs_mut(s) {
            e.weight = sr.divide(e.weight, total);
        }
    }
    Ok(out)
}

/// Prune, remove epsilons, determinize and minimize, in that order.
pub fn opt(a: &Wfst, prune_threshold: f64) -> Result<Wfst, FstError> {
    let pruned = prune(a, prune_threshold)?;
    let eps_free = rm_epsilon(&pruned)?;
    let det = determinize(&eps_free)?;
    minimize(&det)
}

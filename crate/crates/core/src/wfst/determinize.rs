use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::{quantize, Arc, Label, StateId, Wfst};
use crate::error::FstError;
use crate::semiring::Weight;

type Subset = Vec<(StateId, Weight)>;

/// Weighted subset construction for acyclic, epsilon-free acceptors.
///
/// Each output state is a set of input states paired with residual weights.
/// The weight of every string in the output equals the `plus`-sum of the
/// weights of all its accepting paths in the input.
pub fn determinize(a: &Wfst) -> Result<Wfst, FstError> {
    if !a.is_acceptor() {
        return Err(FstError::NotAcceptor);
    }
    if a.has_epsilon() {
        return Err(FstError::HasEpsilon);
    }
    let a = a.connect();
    a.topo_order()?;
    let sr = a.semiring();
    let mut out = Wfst::new(sr);
    let Some(start) = a.start() else {
        return Ok(out);
    };

    let mut ids: BTreeMap<Vec<(StateId, i64)>, StateId> = BTreeMap::new();
    let mut queue: VecDeque<(Subset, StateId)> = VecDeque::new();
    let mut intern = |subset: Subset, out: &mut Wfst, queue: &mut VecDeque<(Subset, StateId)>| {
        let key: Vec<(StateId, i64)> = subset.iter().map(|&(q, w)| (q, quantize(w))).collect();
        *ids.entry(key).or_insert_with(|| {
            let id = out.add_state();
            queue.push_back((subset, id));
            id
        })
    };

    let s0 = intern(alloc::vec![(start, sr.one())], &mut out, &mut queue);
    out.set_start(s0);

    while let Some((subset, cur)) = queue.pop_front() {
        let fin = sr.sum(subset.iter().map(|&(q, v)| sr.times(v, a.final_weight(q))));
        out.set_final(cur, fin);

        let mut by_label: BTreeMap<Label, BTreeMap<StateId, Weight>> = BTreeMap::new();
        for &(q, v) in &subset {
            for e in a.arcs(q) {
                let dest = by_label.entry(e.ilabel).or_default();
                let slot = dest.entry(e.next).or_insert(sr.zero());
                *slot = sr.plus(*slot, sr.times(v, e.weight));
            }
        }
        for (label, dests) in by_label {
            let total = sr.sum(dests.values().copied());
            if total.is_zero() {
                continue;
            }
            let next: Subset = dests
                .into_iter()
                .map(|(q, w)| (q, sr.divide(w, total)))
                .collect();
            let n = intern(next, &mut out, &mut queue);
            out.add_arc(cur, Arc::acc(label, total, n));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Semiring;

    fn two_a_paths(sr: Semiring) -> Wfst {
        let mut f = Wfst::new(sr);
        f.add_states(3);
        f.set_start(0);
        f.add_arc(0, Arc::acc(1, Weight::from_prob(0.3), 1));
        f.add_arc(0, Arc::acc(1, Weight::from_prob(0.2), 2));
        f.set_final(1, Weight::ONE);
        f.set_final(2, Weight::ONE);
        f
    }

    fn only_path_weight(f: &Wfst) -> Weight {
        let s = f.start().unwrap();
        assert_eq!(f.arcs(s).len(), 1);
        let e = f.arcs(s)[0];
        f.semiring().times(e.weight, f.final_weight(e.next))
    }

    #[test]
    fn log_semiring_sums_duplicate_strings() {
        let d = determinize(&two_a_paths(Semiring::Log)).unwrap();
        assert!(d.is_deterministic());
        assert!((only_path_weight(&d).prob() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn tropical_semiring_keeps_the_best() {
        let d = determinize(&two_a_paths(Semiring::Tropical)).unwrap();
        let w = only_path_weight(&d);
        assert!((w.value() + libm::log(0.3)).abs() < 1e-12);
    }

    #[test]
    fn deterministic_input_keeps_its_shape() {
        let f = Wfst::linear(Semiring::Log, &[1, 2, 3], Weight(0.7));
        let d = determinize(&f).unwrap();
        assert_eq!(d, f);
    }

    #[test]
    fn rejects_cycles_and_transducers() {
        let mut f = two_a_paths(Semiring::Log);
        f.add_arc(1, Arc::acc(2, Weight::ONE, 0));
        assert_eq!(determinize(&f), Err(FstError::Cyclic));
        let mut t = Wfst::new(Semiring::Log);
        t.add_states(2);
        t.set_start(0);
        t.add_arc(0, Arc::new(1, 2, Weight::ONE, 1));
        t.set_final(1, Weight::ONE);
        assert_eq!(determinize(&t), Err(FstError::NotAcceptor));
    }
}

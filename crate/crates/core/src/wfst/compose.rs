use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::{check_same_semiring, Arc, Label, StateId, Wfst, EPSILON};
use crate::error::FstError;

/// Epsilon-filter state. `Free` allows any move; `LeftEps` follows a move of
/// the left machine alone and `RightEps` one of the right machine alone.
/// Each blocks the other kind of lone move, so every pair of matched paths
/// is represented exactly once.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Filter {
    Free,
    LeftEps,
    RightEps,
}

/// Composition of `a` with `b`, matching `a`'s output labels against `b`'s
/// input labels. The result is trimmed.
pub fn compose(a: &Wfst, b: &Wfst) -> Result<Wfst, FstError> {
    check_same_semiring(a, b)?;
    let sr = a.semiring();
    let mut out = Wfst::new(sr);
    let (Some(sa), Some(sb)) = (a.start(), b.start()) else {
        return Ok(out);
    };

    // b's arcs per state, sorted by input label
    let b_index: Vec<Vec<(Label, usize)>> = b
        .states()
        .map(|s| {
            let mut v: Vec<(Label, usize)> =
                b.arcs(s).iter().enumerate().map(|(i, e)| (e.ilabel, i)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let matching = |s: StateId, l: Label| {
        let v = &b_index[s];
        let lo = v.partition_point(|&(x, _)| x < l);
        v[lo..].iter().take_while(move |&&(x, _)| x == l).map(|&(_, i)| i)
    };

    let mut ids: BTreeMap<(StateId, StateId, Filter), StateId> = BTreeMap::new();
    let mut queue: VecDeque<(StateId, StateId, Filter, StateId)> = VecDeque::new();
    let mut intern = |key: (StateId, StateId, Filter),
                      out: &mut Wfst,
                      queue: &mut VecDeque<(StateId, StateId, Filter, StateId)>| {
        *ids.entry(key).or_insert_with(|| {
            let id = out.add_state();
            queue.push_back((key.0, key.1, key.2, id));
            id
        })
    };

    let s0 = intern((sa, sb, Filter::Free), &mut out, &mut queue);
    out.set_start(s0);

    while let Some((qa, qb, f, cur)) = queue.pop_front() {
        out.set_final(cur, sr.times(a.final_weight(qa), b.final_weight(qb)));

        for ea in a.arcs(qa) {
            if ea.olabel == EPSILON {
                // a moves alone
                if f != Filter::RightEps {
                    let n = intern((ea.next, qb, Filter::LeftEps), &mut out, &mut queue);
                    out.add_arc(cur, Arc::new(ea.ilabel, EPSILON, ea.weight, n));
                }
                // both consume an epsilon together
                if f == Filter::Free {
                    for i in matching(qb, EPSILON) {
                        let eb = &b.arcs(qb)[i];
                        let n = intern((ea.next, eb.next, Filter::Free), &mut out, &mut queue);
                        let w = sr.times(ea.weight, eb.weight);
                        out.add_arc(cur, Arc::new(ea.ilabel, eb.olabel, w, n));
                    }
                }
            } else {
                for i in matching(qb, ea.olabel) {
                    let eb = &b.arcs(qb)[i];
                    let n = intern((ea.next, eb.next, Filter::Free), &mut out, &mut queue);
                    let w = sr.times(ea.weight, eb.weight);
                    out.add_arc(cur, Arc::new(ea.ilabel, eb.olabel, w, n));
                }
            }
        }
        // b moves alone
        if f != Filter::LeftEps {
            for i in matching(qb, EPSILON) {
                let eb = &b.arcs(qb)[i];
                let n = intern((qa, eb.next, Filter::RightEps), &mut out, &mut queue);
                out.add_arc(cur, Arc::new(EPSILON, eb.olabel, eb.weight, n));
            }
        }
    }
    Ok(out.connect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Semiring, Weight};

    fn identity(labels: &[Label]) -> Wfst {
        let mut f = Wfst::new(Semiring::Log);
        let s = f.add_state();
        f.set_start(s);
        f.set_final(s, Weight::ONE);
        for &l in labels {
            f.add_arc(s, Arc::acc(l, Weight::ONE, s));
        }
        f
    }

    #[test]
    fn identity_composition_keeps_path() {
        let a = Wfst::linear(Semiring::Log, &[1, 2], Weight::ONE);
        let c = compose(&a, &identity(&[1, 2])).unwrap();
        assert_eq!(c.num_states(), 3);
        assert_eq!(c.num_arcs(), 2);
        let labels: Vec<_> = [0, 1].iter().map(|&s| c.arcs(s)[0].olabel).collect();
        assert_eq!(labels, [1, 2]);
        assert_eq!(c.final_weight(2), Weight::ONE);
    }

    #[test]
    fn chained_relation_sums_costs() {
        // a: x -> y / 0.5, b: y -> z / 0.25
        let mut a = Wfst::new(Semiring::Log);
        a.add_states(2);
        a.set_start(0);
        a.add_arc(0, Arc::new(1, 2, Weight(0.5), 1));
        a.set_final(1, Weight::ONE);
        let mut b = Wfst::new(Semiring::Log);
        b.add_states(2);
        b.set_start(0);
        b.add_arc(0, Arc::new(2, 3, Weight(0.25), 1));
        b.set_final(1, Weight(0.125));
        let c = compose(&a, &b).unwrap();
        assert_eq!(c.num_arcs(), 1);
        let e = c.arcs(0)[0];
        assert_eq!((e.ilabel, e.olabel, e.weight), (1, 3, Weight(0.75)));
        assert_eq!(c.final_weight(e.next), Weight(0.125));
    }

    #[test]
    fn epsilon_moves_are_not_duplicated() {
        // a: x:eps, b: eps:z ; exactly one path x:z must result
        let mut a = Wfst::new(Semiring::Log);
        a.add_states(2);
        a.set_start(0);
        a.add_arc(0, Arc::new(1, EPSILON, Weight(0.5), 1));
        a.set_final(1, Weight::ONE);
        let mut b = Wfst::new(Semiring::Log);
        b.add_states(2);
        b.set_start(0);
        b.add_arc(0, Arc::new(EPSILON, 3, Weight(0.25), 1));
        b.set_final(1, Weight::ONE);
        let c = compose(&a, &b).unwrap();
        // count accepting paths
        fn count(f: &Wfst, s: StateId) -> usize {
            let here = usize::from(f.is_final(s));
            here + f.arcs(s).iter().map(|e| count(f, e.next)).sum::<usize>()
        }
        assert_eq!(count(&c, c.start().unwrap()), 1);
    }

    #[test]
    fn semiring_mismatch_is_an_error() {
        let a = Wfst::linear(Semiring::Log, &[1], Weight::ONE);
        let b = Wfst::linear(Semiring::Tropical, &[1], Weight::ONE);
        assert_eq!(
            compose(&a, &b),
            Err(FstError::SemiringMismatch(Semiring::Log, Semiring::Tropical))
        );
    }
}

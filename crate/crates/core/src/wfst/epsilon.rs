use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{Arc, StateId, Wfst};
use crate::error::FstError;

/// Removes arcs labeled epsilon on both sides.
///
/// Each state receives the non-epsilon arcs and final weight of every state
/// in its epsilon closure, weighted by the `plus`-sum of the epsilon paths
/// leading there. Epsilon cycles are rejected.
pub fn rm_epsilon(t: &Wfst) -> Result<Wfst, FstError> {
    let sr = t.semiring();
    let n = t.num_states();
    let order = epsilon_topo_order(t)?;

    let mut closure: Vec<BTreeMap<StateId, super::Weight>> = vec![BTreeMap::new(); n];
    for &p in order.iter().rev() {
        let mut c = BTreeMap::new();
        c.insert(p, sr.one());
        for e in t.arcs(p).iter().filter(|e| e.is_epsilon()) {
            for (&q, &d) in &closure[e.next] {
                let w = sr.times(e.weight, d);
                let slot = c.entry(q).or_insert(sr.zero());
                *slot = sr.plus(*slot, w);
            }
        }
        closure[p] = c;
    }

    let mut out = Wfst::new(sr);
    out.add_states(n);
    if let Some(s) = t.start() {
        out.set_start(s);
    }
    for (p, reach) in closure.iter().enumerate() {
        let mut fin = sr.zero();
        for (&q, &d) in reach {
            fin = sr.plus(fin, sr.times(d, t.final_weight(q)));
            for e in t.arcs(q).iter().filter(|e| !e.is_epsilon()) {
                out.add_arc(p, Arc { weight: sr.times(d, e.weight), ..*e });
            }
        }
        out.set_final(p, fin);
    }
    Ok(out.connect())
}

fn epsilon_topo_order(t: &Wfst) -> Result<Vec<StateId>, FstError> {
    let n = t.num_states();
    let mut indeg = vec![0usize; n];
    for s in t.states() {
        for e in t.arcs(s).iter().filter(|e| e.is_epsilon()) {
            indeg[e.next] += 1;
        }
    }
    let mut stack: Vec<StateId> = (0..n).filter(|&s| indeg[s] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(s) = stack.pop() {
        order.push(s);
        for e in t.arcs(s).iter().filter(|e| e.is_epsilon()) {
            indeg[e.next] -= 1;
            if indeg[e.next] == 0 {
                stack.push(e.next);
            }
        }
    }
    if order.len() != n {
        let s = (0..n).find(|&s| indeg[s] > 0).unwrap_or(0);
        return Err(FstError::EpsilonCycle(s));
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Semiring, Weight};
    use crate::wfst::EPSILON;

    #[test]
    fn epsilon_in_the_middle_is_absorbed() {
        let mut f = Wfst::new(Semiring::Log);
        f.add_states(4);
        f.set_start(0);
        f.add_arc(0, Arc::acc(1, Weight(0.5), 1));
        f.add_arc(1, Arc::acc(EPSILON, Weight(0.25), 2));
        f.add_arc(2, Arc::acc(2, Weight(0.125), 3));
        f.set_final(3, Weight::ONE);
        let g = rm_epsilon(&f).unwrap();
        assert!(!g.has_epsilon());
        assert_eq!(g.num_arcs(), 2);
        let total: f64 = g.states().flat_map(|s| g.arcs(s)).map(|e| e.weight.value()).sum();
        assert!((total - 0.875).abs() < 1e-15);
    }

    #[test]
    fn parallel_epsilons_merge_with_log_plus() {
        // 0 -eps/0.3-> 1, 0 -eps/0.2-> 2, both -> 3 on label 7
        let mut f = Wfst::new(Semiring::Log);
        f.add_states(5);
        f.set_start(0);
        f.add_arc(0, Arc::acc(EPSILON, Weight::from_prob(0.3), 1));
        f.add_arc(0, Arc::acc(EPSILON, Weight::from_prob(0.2), 2));
        f.add_arc(1, Arc::acc(EPSILON, Weight::ONE, 3));
        f.add_arc(2, Arc::acc(EPSILON, Weight::ONE, 3));
        f.add_arc(3, Arc::acc(7, Weight::ONE, 4));
        f.set_final(4, Weight::ONE);
        let g = rm_epsilon(&f).unwrap();
        let s = g.start().unwrap();
        assert_eq!(g.arcs(s).len(), 1);
        assert!((g.arcs(s)[0].weight.prob() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn epsilon_free_input_is_unchanged() {
        let f = Wfst::linear(Semiring::Log, &[3, 1, 2], Weight(0.4));
        assert_eq!(rm_epsilon(&f).unwrap(), f);
    }

    #[test]
    fn epsilon_cycle_is_rejected() {
        let mut f = Wfst::new(Semiring::Log);
        f.add_states(2);
        f.set_start(0);
        f.add_arc(0, Arc::acc(EPSILON, Weight(1.0), 1));
        f.add_arc(1, Arc::acc(EPSILON, Weight(1.0), 0));
        f.set_final(1, Weight::ONE);
        assert!(matches!(rm_epsilon(&f), Err(FstError::EpsilonCycle(_))));
    }
}

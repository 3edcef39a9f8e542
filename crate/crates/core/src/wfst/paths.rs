use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Label, Wfst, EPSILON};
use crate::error::FstError;
use crate::semiring::Weight;

/// Relative tolerance under which two path costs count as tied.
const TIE_TOLERANCE: f64 = 1e-9;

/// The single best accepting path of a lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct BestPath {
    /// Output labels along the path, epsilons removed.
    pub labels: Vec<Label>,
    /// Tropical cost of the path.
    pub cost: Weight,
}

/// `plus` over the weights of all accepting paths of an acyclic automaton.
pub fn shortest_distance(a: &Wfst) -> Result<Weight, FstError> {
    let sr = a.semiring();
    let Some(start) = a.start() else {
        return Ok(sr.zero());
    };
    let order = a.topo_order()?;
    let mut d = vec![sr.zero(); a.num_states()];
    d[start] = sr.one();
    let mut total = sr.zero();
    for &q in &order {
        if d[q].is_zero() {
            continue;
        }
        total = sr.plus(total, sr.times(d[q], a.final_weight(q)));
        for e in a.arcs(q) {
            d[e.next] = sr.plus(d[e.next], sr.times(d[q], e.weight));
        }
    }
    Ok(total)
}

fn cmp_candidates(a: &(f64, Vec<Label>), b: &(f64, Vec<Label>)) -> Ordering {
    let scale = 1.0 + libm::fmax(libm::fabs(a.0), libm::fabs(b.0));
    if libm::fabs(a.0 - b.0) <= TIE_TOLERANCE * scale {
        a.1.cmp(&b.1)
    } else {
        a.0.total_cmp(&b.0)
    }
}

/// Minimum-cost accepting path, reading weights as tropical costs.
///
/// Among paths whose costs agree within a relative 1e-9, the one with the
/// lexicographically smallest label sequence wins.
pub fn shortest_path(a: &Wfst) -> Result<BestPath, FstError> {
    let start = a.start().ok_or(FstError::NoPath)?;
    let order = a.topo_order()?;
    let mut best: Vec<Option<(f64, Vec<Label>)>> = vec![None; a.num_states()];
    for &q in order.iter().rev() {
        let mut cur: Option<(f64, Vec<Label>)> = None;
        let mut offer = |cand: (f64, Vec<Label>)| {
            if !cand.0.is_finite() {
                return;
            }
            match &cur {
                Some(c) if cmp_candidates(&cand, c) != Ordering::Less => {}
                _ => cur = Some(cand),
            }
        };
        if a.is_final(q) {
            offer((a.final_weight(q).value(), Vec::new()));
        }
        for e in a.arcs(q) {
            if let Some((c, tail)) = &best[e.next] {
                let mut labels = Vec::with_capacity(tail.len() + 1);
                if e.olabel != EPSILON {
                    labels.push(e.olabel);
                }
                labels.extend_from_slice(tail);
                offer((e.weight.value() + c, labels));
            }
        }
        best[q] = cur;
    }
    best[start]
        .take()
        .map(|(cost, labels)| BestPath {
            labels,
            cost: Weight(cost),
        })
        .ok_or(FstError::NoPath)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Semiring;
    use crate::wfst::Arc;

    #[test]
    fn picks_the_cheaper_path() {
        let mut f = Wfst::new(Semiring::Log);
        f.add_states(3);
        f.set_start(0);
        f.add_arc(0, Arc::acc(1, Weight(1.2), 1));
        f.add_arc(0, Arc::acc(2, Weight(0.7), 2));
        f.set_final(1, Weight::ONE);
        f.set_final(2, Weight::ONE);
        let p = shortest_path(&f).unwrap();
        assert_eq!(p.labels, [2]);
        assert_eq!(p.cost, Weight(0.7));
    }

    #[test]
    fn ties_break_lexicographically() {
        let mut f = Wfst::new(Semiring::Log);
        f.add_states(4);
        f.set_start(0);
        f.add_arc(0, Arc::acc(3, Weight(0.5), 1));
        f.add_arc(0, Arc::acc(2, Weight(0.25), 2));
        f.add_arc(2, Arc::acc(9, Weight(0.25), 3));
        f.set_final(1, Weight::ONE);
        f.set_final(3, Weight::ONE);
        assert_eq!(shortest_path(&f).unwrap().labels, [2, 9]);
    }

    #[test]
    fn epsilons_are_skipped() {
        let mut f = Wfst::new(Semiring::Log);
        f.add_states(3);
        f.set_start(0);
        f.add_arc(0, Arc::acc(EPSILON, Weight(0.1), 1));
        f.add_arc(1, Arc::acc(4, Weight(0.1), 2));
        f.set_final(2, Weight::ONE);
        assert_eq!(shortest_path(&f).unwrap().labels, [4]);
    }

    #[test]
    fn empty_language() {
        let f = Wfst::new(Semiring::Log);
        assert_eq!(shortest_path(&f), Err(FstError::NoPath));
        assert!(shortest_distance(&f).unwrap().is_zero());
    }

    #[test]
    fn single_path_distance() {
        let f = Wfst::linear(Semiring::Log, &[1, 2], Weight::from_prob(0.42));
        let d = shortest_distance(&f).unwrap();
        assert!((d.value() + libm::log(0.42)).abs() < 1e-15);
    }
}

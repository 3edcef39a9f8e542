//! Weighted automata and the operations the decoding pipeline composes.
//!
//! Every operation is a pure function from immutable automata to a new
//! automaton. Lattices in the pipeline are acyclic, and the algorithms that
//! depend on a topological order reject cyclic input with
//! [`FstError::Cyclic`] instead of approximating.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::FstError;
use crate::semiring::{Semiring, Weight};

mod compose;
mod determinize;
mod epsilon;
mod minimize;
mod ops;
mod paths;
mod prune;

pub use compose::compose;
pub use determinize::determinize;
pub use epsilon::rm_epsilon;
pub use minimize::minimize;
pub use ops::{normalize_local, opt, project_output, union};
pub use paths::{shortest_distance, shortest_path, BestPath};
pub use prune::prune;

/// Symbol id. `0` is reserved for epsilon.
pub type Label = u32;
pub type StateId = usize;

pub const EPSILON: Label = 0;

/// Quantization step used when comparing weights for state equivalence.
pub(crate) const WEIGHT_DELTA: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub ilabel: Label,
    pub olabel: Label,
    pub weight: Weight,
    pub next: StateId,
}

impl Arc {
    pub fn new(ilabel: Label, olabel: Label, weight: Weight, next: StateId) -> Self {
        Arc {
            ilabel,
            olabel,
            weight,
            next,
        }
    }

    /// Acceptor arc (`ilabel == olabel`).
    pub fn acc(label: Label, weight: Weight, next: StateId) -> Self {
        Arc::new(label, label, weight, next)
    }

    pub fn is_epsilon(&self) -> bool {
        self.ilabel == EPSILON && self.olabel == EPSILON
    }
}

/// A weighted finite-state transducer with a single start state.
///
/// Final weights are stored per state; a state whose final weight is the
/// semiring zero is not final. An automaton without a start state accepts
/// nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct Wfst {
    semiring: Semiring,
    start: Option<StateId>,
    arcs: Vec<Vec<Arc>>,
    finals: Vec<Weight>,
}

impl Wfst {
    pub fn new(semiring: Semiring) -> Self {
        Wfst {
            semiring,
            start: None,
            arcs: Vec::new(),
            finals: Vec::new(),
        }
    }

    /// Acceptor for a single label sequence with the given total weight.
    pub fn linear(semiring: Semiring, labels: &[Label], weight: Weight) -> Self {
        let mut fst = Wfst::new(semiring);
        let mut cur = fst.add_state();
        fst.set_start(cur);
        for (i, &l) in labels.iter().enumerate() {
            let next = fst.add_state();
            let w = if i == 0 { weight } else { Weight::ONE };
            fst.add_arc(cur, Arc::acc(l, w, next));
            cur = next;
        }
        let f = if labels.is_empty() { weight } else { Weight::ONE };
        fst.set_final(cur, f);
        fst
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn add_state(&mut self) -> StateId {
        self.arcs.push(Vec::new());
        self.finals.push(Weight::ZERO);
        self.arcs.len() - 1
    }

    pub fn add_states(&mut self, n: usize) {
        for _ in 0..n {
            self.add_state();
        }
    }

    pub fn set_start(&mut self, s: StateId) {
        assert!(s < self.num_states(), "start state {s} out of range");
        self.start = Some(s);
    }

    pub fn set_final(&mut self, s: StateId, w: Weight) {
        self.finals[s] = w;
    }

    pub fn add_arc(&mut self, s: StateId, arc: Arc) {
        assert!(arc.next < self.num_states(), "arc target {} out of range", arc.next);
        self.arcs[s].push(arc);
    }

    pub fn start(&self) -> Option<StateId> {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.arcs.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    pub fn states(&self) -> core::ops::Range<StateId> {
        0..self.num_states()
    }

    pub fn arcs(&self, s: StateId) -> &[Arc] {
        &self.arcs[s]
    }

    pub fn final_weight(&self, s: StateId) -> Weight {
        self.finals[s]
    }

    pub fn is_final(&self, s: StateId) -> bool {
        !self.finals[s].is_zero()
    }

    /// True when the automaton has no start state (accepts nothing).
    ///
    /// Operations return connected automata, so for their outputs this is
    /// equivalent to the language being empty.
    pub fn is_empty(&self) -> bool {
        self.start.is_none()
    }

    pub fn is_acceptor(&self) -> bool {
        self.arcs.iter().flatten().all(|a| a.ilabel == a.olabel)
    }

    pub fn has_epsilon(&self) -> bool {
        self.arcs
            .iter()
            .flatten()
            .any(|a| a.ilabel == EPSILON || a.olabel == EPSILON)
    }

    /// At most one arc per (state, input label) and no epsilon input labels.
    pub fn is_deterministic(&self) -> bool {
        self.check_deterministic().is_ok()
    }

    pub(crate) fn check_deterministic(&self) -> Result<(), FstError> {
        let mut seen: Vec<Label> = Vec::new();
        for s in self.states() {
            seen.clear();
            seen.extend(self.arcs[s].iter().map(|a| a.ilabel));
            seen.sort_unstable();
            for pair in seen.windows(2) {
                if pair[0] == pair[1] {
                    return Err(FstError::NonDeterministic(s, pair[0]));
                }
            }
            if seen.first() == Some(&EPSILON) {
                return Err(FstError::HasEpsilon);
            }
        }
        Ok(())
    }

    pub(crate) fn arcs_mut(&mut self, s: StateId) -> &mut Vec<Arc> {
        &mut self.arcs[s]
    }

    /// States in topological order, or [`FstError::Cyclic`].
    pub fn topo_order(&self) -> Result<Vec<StateId>, FstError> {
        let n = self.num_states();
        let mut indeg = vec![0usize; n];
        for a in self.arcs.iter().flatten() {
            indeg[a.next] += 1;
        }
        let mut stack: Vec<StateId> = (0..n).rev().filter(|&s| indeg[s] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(s) = stack.pop() {
            order.push(s);
            for a in self.arcs[s].iter().rev() {
                indeg[a.next] -= 1;
                if indeg[a.next] == 0 {
                    stack.push(a.next);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(FstError::Cyclic)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo_order().is_ok()
    }

    /// Removes zero-weight arcs and every state that is not both accessible
    /// from the start and co-accessible to a final state. The start becomes
    /// state 0 and the other survivors keep their relative order.
    pub fn connect(&self) -> Wfst {
        let mut out = Wfst::new(self.semiring);
        let Some(start) = self.start else {
            return out;
        };
        let n = self.num_states();

        let mut access = vec![false; n];
        let mut order = Vec::new();
        let mut stack = vec![start];
        access[start] = true;
        while let Some(s) = stack.pop() {
            order.push(s);
            for a in self.arcs[s].iter().rev() {
                if !a.weight.is_zero() && !access[a.next] {
                    access[a.next] = true;
                    stack.push(a.next);
                }
            }
        }

        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for s in 0..n {
            for a in &self.arcs[s] {
                if !a.weight.is_zero() {
                    rev[a.next].push(s);
                }
            }
        }
        let mut coaccess = vec![false; n];
        let mut stack: Vec<StateId> = (0..n).filter(|&s| self.is_final(s)).collect();
        for &s in &stack {
            coaccess[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !coaccess[p] {
                    coaccess[p] = true;
                    stack.push(p);
                }
            }
        }

        if !coaccess[start] {
            return out;
        }
        order.sort_unstable();
        let mut map = vec![usize::MAX; n];
        map[start] = out.add_state();
        for &s in &order {
            if s != start && coaccess[s] {
                map[s] = out.add_state();
            }
        }
        out.set_start(map[start]);
        for s in 0..n {
            if map[s] == usize::MAX {
                continue;
            }
            let ns = map[s];
            out.finals[ns] = self.finals[s];
            for a in &self.arcs[s] {
                if !a.weight.is_zero() && map[a.next] != usize::MAX {
                    out.arcs[ns].push(Arc { next: map[a.next], ..*a });
                }
            }
        }
        out
    }

    /// Copy with every weight reinterpreted under another semiring.
    pub fn with_semiring(&self, semiring: Semiring) -> Wfst {
        Wfst {
            semiring,
            ..self.clone()
        }
    }
}

pub(crate) fn check_same_semiring(a: &Wfst, b: &Wfst) -> Result<(), FstError> {
    if a.semiring != b.semiring {
        return Err(FstError::SemiringMismatch(a.semiring, b.semiring));
    }
    Ok(())
}

/// Quantized representation of a weight for hashing and equality.
pub(crate) fn quantize(w: Weight) -> i64 {
    if w.is_zero() {
        i64::MAX
    } else {
        libm::round(w.value() / WEIGHT_DELTA) as i64
    }
}

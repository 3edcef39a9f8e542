//! Lattices from CTC posterior matrices.
//!
//! A posterior matrix becomes a confusion network `S` (one state per frame,
//! one arc per label). Composing with the blank/repeat remover `B`,
//! projecting onto outputs and running [`opt`] gives a lattice over
//! collapsed label sequences whose weights are the summed probabilities of
//! all frame alignments.

use alloc::vec::Vec;

use crate::error::{FstError, InputError};
use crate::semiring::{log_plus, Semiring, Weight};
use crate::wfst::{compose, opt, project_output, Arc, Label, Wfst, EPSILON};

/// Rows must be distributions up to this tolerance on their log-sum.
pub const ROW_TOLERANCE: f64 = 1e-6;

/// Per-frame natural-log label probabilities `y[t][k]`, including blank.
#[derive(Clone, Debug, PartialEq)]
pub struct PosteriorMatrix {
    labels: Vec<Label>,
    blank: Label,
    values: Vec<f64>,
}

impl PosteriorMatrix {
    /// `labels[k]` is the automaton label of column `k`; `values` is
    /// row-major with one row per frame.
    pub fn new(labels: Vec<Label>, blank: Label, values: Vec<f64>) -> Result<Self, InputError> {
        let k = labels.len();
        if k < 2 {
            return Err(InputError::TooFewLabels(k));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(InputError::BadColumnLabel(w[0]));
            }
        }
        if sorted[0] == EPSILON {
            return Err(InputError::BadColumnLabel(EPSILON));
        }
        if !labels.contains(&blank) {
            return Err(InputError::MissingBlank);
        }
        if values.is_empty() {
            return Err(InputError::NoFrames);
        }
        if !values.len().is_multiple_of(k) {
            return Err(InputError::Shape {
                got: values.len(),
                frames: values.len() / k,
                labels: k,
            });
        }
        for (frame, row) in values.chunks(k).enumerate() {
            let mut total = f64::INFINITY;
            for &v in row {
                if v.is_nan() || v == f64::INFINITY {
                    return Err(InputError::BadValue { frame, value: v });
                }
                total = log_plus(total, -v);
            }
            let log_sum = -total;
            if log_sum.is_nan() || log_sum.abs() > ROW_TOLERANCE {
                return Err(InputError::Unnormalized {
                    frame,
                    total: libm::exp(log_sum),
                });
            }
        }
        Ok(PosteriorMatrix {
            labels,
            blank,
            values,
        })
    }

    /// Builds a matrix from probabilities instead of log-probabilities.
    pub fn from_probs(labels: Vec<Label>, blank: Label, probs: &[f64]) -> Result<Self, InputError> {
        let values = probs.iter().map(|&p| libm::log(p)).collect();
        Self::new(labels, blank, values)
    }

    pub fn num_frames(&self) -> usize {
        self.values.len() / self.labels.len()
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn blank(&self) -> Label {
        self.blank
    }

    pub fn row(&self, t: usize) -> &[f64] {
        let k = self.labels.len();
        &self.values[t * k..(t + 1) * k]
    }

    pub fn log_prob(&self, t: usize, k: usize) -> f64 {
        self.row(t)[k]
    }

    /// Column index with the highest probability in each frame (first on ties).
    pub fn argmax_frames(&self) -> Vec<Label> {
        (0..self.num_frames())
            .map(|t| {
                let row = self.row(t);
                let mut best = 0;
                for k in 1..row.len() {
                    if row[k] > row[best] {
                        best = k;
                    }
                }
                self.labels[best]
            })
            .collect()
    }
}

/// Chain of `T + 1` states; state `t` has one arc per label to `t + 1`
/// weighted `-y[t][k]`. Log semiring acceptor.
pub fn build_confusion_network(y: &PosteriorMatrix) -> Wfst {
    let mut s = Wfst::new(Semiring::Log);
    s.add_states(y.num_frames() + 1);
    s.set_start(0);
    for t in 0..y.num_frames() {
        for (k, &label) in y.labels().iter().enumerate() {
            s.add_arc(t, Arc::acc(label, Weight(-y.log_prob(t, k)), t + 1));
        }
    }
    s.set_final(y.num_frames(), Weight::ONE);
    s
}

/// Transducer mapping frame label strings to collapsed CTC outputs.
///
/// State 0 is the initial/after-blank state; state `i + 1` remembers that
/// the last frame emitted the `i`-th non-blank label. The first frame of a
/// run emits its label, repeats and blanks emit epsilon. All weights are
/// one and every state is final.
pub fn build_blank_remover(labels: &[Label], blank: Label) -> Wfst {
    let real: Vec<Label> = labels.iter().copied().filter(|&l| l != blank).collect();
    let mut b = Wfst::new(Semiring::Log);
    b.add_states(real.len() + 1);
    b.set_start(0);
    for s in 0..=real.len() {
        b.set_final(s, Weight::ONE);
        b.add_arc(s, Arc::new(blank, EPSILON, Weight::ONE, 0));
        for (i, &l) in real.iter().enumerate() {
            let arc = if s == i + 1 {
                Arc::new(l, EPSILON, Weight::ONE, s)
            } else {
                Arc::new(l, l, Weight::ONE, i + 1)
            };
            b.add_arc(s, arc);
        }
    }
    b
}

/// `Opt(project_output(S o B))`: a deterministic, minimal lattice over
/// collapsed label sequences.
pub fn ctc_lattice(y: &PosteriorMatrix, prune_threshold: f64) -> Result<Wfst, FstError> {
    let s = build_confusion_network(y);
    let b = build_blank_remover(y.labels(), y.blank());
    let sb = compose(&s, &b)?;
    opt(&project_output(&sb), prune_threshold)
}

/// Collapses a frame labeling the way CTC does: merge runs, drop blanks.
pub fn collapse(frames: &[Label], blank: Label) -> Vec<Label> {
    let mut out = Vec::new();
    let mut prev = None;
    for &l in frames {
        if l != blank && prev != Some(l) {
            out.push(l);
        }
        prev = Some(l);
    }
    out
}

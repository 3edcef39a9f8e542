//! Mora-label and character error rates.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::InputError;
use crate::pa_token::{tokenize_tt, MoraToken};

/// Edit counts of a minimal unit-cost alignment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AlignmentResult {
    pub substitutions: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub ref_len: usize,
}

impl AlignmentResult {
    pub fn errors(&self) -> usize {
        self.substitutions + self.insertions + self.deletions
    }

    /// `(S + I + D) / ref_len`; may exceed one.
    pub fn error_rate(&self) -> f64 {
        self.errors() as f64 / self.ref_len as f64
    }
}

/// Unit-cost Levenshtein alignment of `hyp` against `reference`.
///
/// Among minimum-cost alignments the one with the most substitutions is
/// reported; for a fixed total this fixes the insertion and deletion counts.
pub fn align<T: PartialEq>(reference: &[T], hyp: &[T]) -> AlignmentResult {
    let (n, m) = (reference.len(), hyp.len());
    // (cost, -substitutions, substitutions, insertions, deletions)
    type Cell = (usize, isize, usize, usize, usize);
    let mut prev: Vec<Cell> = (0..=m).map(|j| (j, 0, 0, j, 0)).collect();
    let mut cur: Vec<Cell> = vec![(0, 0, 0, 0, 0); m + 1];
    for i in 1..=n {
        cur[0] = (i, 0, 0, 0, i);
        for j in 1..=m {
            let same = reference[i - 1] == hyp[j - 1];
            let d = prev[j - 1];
            let diag = if same {
                d
            } else {
                (d.0 + 1, d.1 - 1, d.2 + 1, d.3, d.4)
            };
            let u = prev[j];
            let del = (u.0 + 1, u.1, u.2, u.3, u.4 + 1);
            let l = cur[j - 1];
            let ins = (l.0 + 1, l.1, l.2, l.3 + 1, l.4);
            cur[j] = [diag, del, ins]
                .into_iter()
                .min_by_key(|c| (c.0, c.1))
                .unwrap();
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    let c = prev[m];
    AlignmentResult {
        substitutions: c.2,
        insertions: c.3,
        deletions: c.4,
        ref_len: n,
    }
}

/// Mora-label error rate. With `count_accent == false` accent marks are
/// stripped from both sides before aligning.
pub fn mler(
    reference: &[MoraToken],
    hyp: &[MoraToken],
    count_accent: bool,
) -> Result<AlignmentResult, InputError> {
    if reference.is_empty() {
        return Err(InputError::EmptyReference);
    }
    if count_accent {
        Ok(align(reference, hyp))
    } else {
        let strip = |s: &[MoraToken]| s.iter().map(MoraToken::unaccented).collect::<Vec<_>>();
        Ok(align(&strip(reference), &strip(hyp)))
    }
}

/// Character error rate over NFKC code points.
pub fn cer(reference: &str, hyp: &str) -> Result<AlignmentResult, InputError> {
    let r: Vec<String> = tokenize_tt(reference);
    if r.is_empty() {
        return Err(InputError::EmptyReference);
    }
    Ok(align(&r, &tokenize_tt(hyp)))
}

/// Corpus-level rate: total errors over total reference length.
pub fn corpus_aggregate(results: &[AlignmentResult]) -> Result<f64, InputError> {
    if results.is_empty() {
        return Err(InputError::EmptyCorpus);
    }
    let errors: usize = results.iter().map(AlignmentResult::errors).sum();
    let len: usize = results.iter().map(|r| r.ref_len).sum();
    Ok(errors as f64 / len as f64)
}

//! Pronunciation dictionary transducer and TT -> PA lattice conversion.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{FstError, InputError};
use crate::pa_token::tokenize_tt;
use crate::semiring::{Semiring, Weight};
use crate::symbols::SymbolTable;
use crate::wfst::{compose, normalize_local, opt, project_output, Arc, Label, Wfst, EPSILON};

/// A surface string (TT labels, one per character) and its pronunciations
/// (PA labels, one per mora).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictEntry {
    pub surface: Vec<Label>,
    pub pronunciations: Vec<Vec<Label>>,
}

impl DictEntry {
    /// Resolves a textual entry against the TT and PA tables. The surface is
    /// NFKC-normalized first. Returns `None` when any symbol is unknown, so
    /// the entry could never match.
    pub fn resolve(
        surface: &str,
        pronunciation: &[&str],
        tt: &SymbolTable,
        pa: &SymbolTable,
    ) -> Option<DictEntry> {
        let surface = tokenize_tt(surface)
            .iter()
            .map(|c| tt.get(c))
            .collect::<Option<Vec<_>>>()?;
        let pron = pronunciation
            .iter()
            .map(|m| pa.get(m))
            .collect::<Option<Vec<_>>>()?;
        Some(DictEntry {
            surface,
            pronunciations: alloc::vec![pron],
        })
    }
}

/// TT-to-PA transducer accepting one or more concatenated dictionary words.
#[derive(Clone, Debug, PartialEq)]
pub struct LexiconFst {
    inner: Wfst,
}

impl LexiconFst {
    pub fn fst(&self) -> &Wfst {
        &self.inner
    }

    pub fn into_inner(self) -> Wfst {
        self.inner
    }
}

/// Builds the dictionary transducer.
///
/// Each (surface, pronunciation) pair becomes a path from the start state
/// to a shared word-end state, aligning characters with morae position by
/// position and padding the shorter side with epsilon. The word-end state is
/// final and loops back to the start through an epsilon arc. All weights are
/// one; duplicate pairs are kept once.
pub fn build_lexicon(entries: &[DictEntry]) -> Result<LexiconFst, InputError> {
    if entries.is_empty() {
        return Err(InputError::EmptyDictionary);
    }
    let mut pairs: BTreeSet<(&[Label], &[Label])> = BTreeSet::new();
    for (i, e) in entries.iter().enumerate() {
        if e.surface.is_empty() {
            return Err(InputError::EmptySurface);
        }
        if e.pronunciations.is_empty() || e.pronunciations.iter().any(Vec::is_empty) {
            return Err(InputError::EmptyPronunciation(i));
        }
        for p in &e.pronunciations {
            pairs.insert((&e.surface, p));
        }
    }

    let mut d = Wfst::new(Semiring::Log);
    let start = d.add_state();
    let word_end = d.add_state();
    d.set_start(start);
    d.set_final(word_end, Weight::ONE);
    d.add_arc(word_end, Arc::new(EPSILON, EPSILON, Weight::ONE, start));

    for (surface, pron) in pairs {
        let len = surface.len().max(pron.len());
        let mut cur = start;
        for i in 0..len {
            let next = if i + 1 == len { word_end } else { d.add_state() };
            let il = surface.get(i).copied().unwrap_or(EPSILON);
            let ol = pron.get(i).copied().unwrap_or(EPSILON);
            d.add_arc(cur, Arc::new(il, ol, Weight::ONE, next));
            cur = next;
        }
    }
    Ok(LexiconFst { inner: d })
}

/// `Opt(project_output(L_T o D))`: the PA lattice induced by a TT lattice.
///
/// Strings of the TT lattice that do not decompose into dictionary words
/// contribute nothing; an empty result means no string did.
pub fn tt_to_pa_lattice(
    tt_lattice: &Wfst,
    d: &LexiconFst,
    prune_threshold: f64,
) -> Result<Wfst, FstError> {
    let composed = compose(tt_lattice, &d.inner)?;
    opt(&project_output(&composed), prune_threshold)
}

/// `Norm(L_P o L'_T2P)`: weights the dictionary-induced PA lattice with the
/// PA recognizer's own scores, then renormalizes every state locally.
///
/// An empty result means the two lattices share no string.
pub fn reweight_with_pa(pa_lattice: &Wfst, t2p: &Wfst) -> Result<Wfst, FstError> {
    let composed = compose(pa_lattice, t2p)?;
    if composed.is_empty() {
        return Ok(composed);
    }
    normalize_local(&composed)
}

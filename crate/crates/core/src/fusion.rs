//! Lattice fusion decoding.
//!
//! The PA recognizer's lattice `L_P` is averaged with a PA lattice derived
//! from the text recognizer through the pronunciation dictionary, and the
//! best path of the mixture is the transcription. When the dictionary path
//! yields nothing, decoding falls back to `L_P` alone.

use alloc::vec::Vec;

use crate::ctc::{build_confusion_network, ctc_lattice, PosteriorMatrix};
use crate::error::DecodeError;
use crate::lexicon::{reweight_with_pa, tt_to_pa_lattice, LexiconFst};
use crate::pa_token::MoraToken;
use crate::semiring::{Semiring, Weight};
use crate::symbols::SymbolTable;
use crate::wfst::{opt, shortest_path, union, Label, Wfst};

pub const DEFAULT_MIX: f64 = 0.5;
pub const DEFAULT_PRUNE: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecodeConfig {
    /// Probability mass given to `L_P` in the union.
    pub mix: f64,
    /// Beam for every `Opt` step, in natural-log cost units.
    pub prune: f64,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        DecodeConfig {
            mix: DEFAULT_MIX,
            prune: DEFAULT_PRUNE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Best path of `L_P`.
    PaOnly,
    /// Best path of `L_T2P` (explicit conditioning).
    Cond,
    /// Best path of `Opt(L_P ⊎ L_T2P)`.
    Fuse,
}

/// Where the text-token lattice comes from.
#[derive(Clone, Copy, Debug)]
pub enum TtSource<'a> {
    Posteriors(&'a PosteriorMatrix),
    /// A fixed transcript, taken as a single path with probability one.
    Transcript(&'a [Label]),
}

/// Intermediate lattices of one decode, kept for inspection.
#[derive(Clone, Debug, Default)]
pub struct Lattices {
    pub s_pa: Option<Wfst>,
    pub l_pa: Option<Wfst>,
    pub s_tt: Option<Wfst>,
    pub l_tt: Option<Wfst>,
    pub t2p_raw: Option<Wfst>,
    pub t2p: Option<Wfst>,
    pub fused: Option<Wfst>,
}

#[derive(Clone, Debug)]
pub struct Decoded {
    pub labels: Vec<Label>,
    pub cost: Weight,
    /// True when `L_T2P` was empty and fusion used `L_P` alone.
    pub fell_back: bool,
    pub lattices: Lattices,
}

/// Single-path, probability-one lattice for a fixed TT transcript.
pub fn transcript_lattice(labels: &[Label]) -> Wfst {
    Wfst::linear(Semiring::Log, labels, Weight::ONE)
}

/// `Opt(pa ⊎ t2p)` with mixture weight `mix` on `pa`. An empty `t2p` gives
/// `Opt(pa)`.
pub fn fuse(pa: &Wfst, t2p: &Wfst, mix: f64, prune: f64) -> Result<Wfst, DecodeError> {
    match (pa.is_empty(), t2p.is_empty()) {
        (true, true) => Err(DecodeError::BothEmpty),
        (_, true) => Ok(opt(pa, prune)?),
        _ => Ok(opt(&union(pa, t2p, mix)?, prune)?),
    }
}

struct Pipeline {
    lattices: Lattices,
    l_pa: Wfst,
    t2p: Wfst,
}

fn build_pa(y_pa: &PosteriorMatrix, cfg: &DecodeConfig) -> Result<(Lattices, Wfst), DecodeError> {
    let l_pa = ctc_lattice(y_pa, cfg.prune)?;
    if l_pa.is_empty() {
        return Err(DecodeError::EmptyPaLattice);
    }
    let lattices = Lattices {
        s_pa: Some(build_confusion_network(y_pa)),
        l_pa: Some(l_pa.clone()),
        ..Lattices::default()
    };
    Ok((lattices, l_pa))
}

fn build_t2p(
    y_pa: &PosteriorMatrix,
    tt: TtSource<'_>,
    d: &LexiconFst,
    cfg: &DecodeConfig,
) -> Result<Pipeline, DecodeError> {
    let (mut lattices, l_pa) = build_pa(y_pa, cfg)?;
    let l_tt = match tt {
        TtSource::Posteriors(y_tt) => {
            lattices.s_tt = Some(build_confusion_network(y_tt));
            ctc_lattice(y_tt, cfg.prune)?
        }
        TtSource::Transcript(labels) => transcript_lattice(labels),
    };
    let t2p_raw = tt_to_pa_lattice(&l_tt, d, cfg.prune)?;
    let t2p = if t2p_raw.is_empty() {
        t2p_raw.clone()
    } else {
        reweight_with_pa(&l_pa, &t2p_raw)?
    };
    lattices.l_tt = Some(l_tt);
    lattices.t2p_raw = Some(t2p_raw);
    lattices.t2p = Some(t2p.clone());
    Ok(Pipeline {
        lattices,
        l_pa,
        t2p,
    })
}

/// Best path of `L_P` alone.
pub fn decode_pa_only(y_pa: &PosteriorMatrix, cfg: &DecodeConfig) -> Result<Decoded, DecodeError> {
    let (lattices, l_pa) = build_pa(y_pa, cfg)?;
    let best = shortest_path(&l_pa)?;
    Ok(Decoded {
        labels: best.labels,
        cost: best.cost,
        fell_back: false,
        lattices,
    })
}

/// Lattice fusion: best path of `Opt(L_P ⊎ L_T2P)`, or of `Opt(L_P)` when
/// `L_T2P` is empty.
pub fn decode_mt_lf(
    y_pa: &PosteriorMatrix,
    tt: TtSource<'_>,
    d: &LexiconFst,
    cfg: &DecodeConfig,
) -> Result<Decoded, DecodeError> {
    let Pipeline {
        mut lattices,
        l_pa,
        t2p,
    } = build_t2p(y_pa, tt, d, cfg)?;
    // L_P is already optimized; reusing it keeps the fallback bit-exact
    let fused = if t2p.is_empty() {
        l_pa
    } else {
        fuse(&l_pa, &t2p, cfg.mix, cfg.prune)?
    };
    let best = shortest_path(&fused)?;
    lattices.fused = Some(fused);
    Ok(Decoded {
        labels: best.labels,
        cost: best.cost,
        fell_back: t2p.is_empty(),
        lattices,
    })
}

/// Explicit conditioning: best path of `L_T2P`. Fails when it is empty.
pub fn decode_explicit_conditioning(
    y_pa: &PosteriorMatrix,
    tt: TtSource<'_>,
    d: &LexiconFst,
    cfg: &DecodeConfig,
) -> Result<Decoded, DecodeError> {
    let Pipeline { lattices, t2p, .. } = build_t2p(y_pa, tt, d, cfg)?;
    if t2p.is_empty() {
        return Err(DecodeError::EmptyT2p);
    }
    let best = shortest_path(&t2p)?;
    Ok(Decoded {
        labels: best.labels,
        cost: best.cost,
        fell_back: false,
        lattices,
    })
}

/// Dispatches on `mode`. `tt` and `d` are required for `Cond` and `Fuse`;
/// without them those modes decode as `Fuse` would with an empty `L_T2P`
/// (`Fuse`) or fail (`Cond`).
pub fn decode(
    mode: Mode,
    y_pa: &PosteriorMatrix,
    tt: Option<TtSource<'_>>,
    d: Option<&LexiconFst>,
    cfg: &DecodeConfig,
) -> Result<Decoded, DecodeError> {
    match (mode, tt, d) {
        (Mode::PaOnly, _, _) => decode_pa_only(y_pa, cfg),
        (Mode::Fuse, Some(tt), Some(d)) => decode_mt_lf(y_pa, tt, d, cfg),
        (Mode::Fuse, _, _) => {
            let mut out = decode_pa_only(y_pa, cfg)?;
            out.fell_back = true;
            Ok(out)
        }
        (Mode::Cond, Some(tt), Some(d)) => decode_explicit_conditioning(y_pa, tt, d, cfg),
        (Mode::Cond, _, _) => Err(DecodeError::EmptyT2p),
    }
}

/// Maps decoded labels back to mora tokens through the PA symbol table.
pub fn labels_to_morae(labels: &[Label], pa: &SymbolTable) -> Result<Vec<MoraToken>, DecodeError> {
    labels
        .iter()
        .map(|&l| {
            let sym = pa.symbol(l).ok_or(DecodeError::UnknownLabel(l))?;
            MoraToken::parse(sym).map_err(|_| DecodeError::NotPaToken(sym.into()))
        })
        .collect()
}

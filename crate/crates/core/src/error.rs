use alloc::string::String;

use crate::semiring::Semiring;
use crate::wfst::StateId;

/// Errors raised by automaton operations and the decoding pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FstError {
    #[error("semiring mismatch: {0:?} vs {1:?}")]
    SemiringMismatch(Semiring, Semiring),
    #[error("operation requires the {0:?} semiring")]
    WrongSemiring(Semiring),
    #[error("automaton is cyclic")]
    Cyclic,
    #[error("epsilon-subgraph contains a cycle at state {0}")]
    EpsilonCycle(StateId),
    #[error("automaton is not an acceptor")]
    NotAcceptor,
    #[error("automaton contains epsilon arcs")]
    HasEpsilon,
    #[error("state {0} has more than one arc with label {1}")]
    NonDeterministic(StateId, u32),
    #[error("mixture weight {0} is outside (0, 1)")]
    InvalidMix(f64),
    #[error("automaton has no accepting path")]
    NoPath,
    #[error("state {0} has no outgoing probability mass")]
    ZeroMass(StateId),
}

/// Errors from building pipeline inputs (posteriors, dictionaries, tracks).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InputError {
    #[error("posterior matrix needs at least one frame")]
    NoFrames,
    #[error("posterior matrix needs at least two labels (got {0})")]
    TooFewLabels(usize),
    #[error("posterior matrix has {got} values, expected {frames}x{labels}")]
    Shape {
        got: usize,
        frames: usize,
        labels: usize,
    },
    #[error("blank label is not among the matrix columns")]
    MissingBlank,
    #[error("label {0} is epsilon or appears twice among the matrix columns")]
    BadColumnLabel(u32),
    #[error("frame {frame}: log-probabilities sum to {total} (not a distribution)")]
    Unnormalized { frame: usize, total: f64 },
    #[error("frame {frame}: invalid log-probability {value}")]
    BadValue { frame: usize, value: f64 },
    #[error("dictionary entry has an empty surface")]
    EmptySurface,
    #[error("dictionary entry {0} has an empty pronunciation")]
    EmptyPronunciation(usize),
    #[error("dictionary is empty")]
    EmptyDictionary,
    #[error("symbol {symbol:?} already has id {existing}, cannot assign {requested}")]
    SymbolConflict {
        symbol: String,
        existing: u32,
        requested: u32,
    },
    #[error("hop must be positive (got {0})")]
    BadHop(f64),
    #[error("frame rate must be positive (got {0})")]
    BadFrameRate(f64),
    #[error("window length must be positive (got {0})")]
    BadWindow(f64),
    #[error("interval has no voiced samples")]
    UnvoicedInterval,
    #[error("reference is empty")]
    EmptyReference,
    #[error("no alignment results to aggregate")]
    EmptyCorpus,
}

/// Failures of the end-to-end decoders.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecodeError {
    #[error(transparent)]
    Fst(#[from] FstError),
    #[error("PA lattice is empty")]
    EmptyPaLattice,
    #[error("dictionary-converted lattice is empty")]
    EmptyT2p,
    #[error("both lattices are empty")]
    BothEmpty,
    #[error("label {0} has no symbol")]
    UnknownLabel(u32),
    #[error("symbol {0:?} is not a PA token")]
    NotPaToken(String),
}

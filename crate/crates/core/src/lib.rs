//! Lattice-fusion decoding for accent-aware Japanese phonetic transcription.
//!
//! CTC posteriors of a phonetic-alphabet (PA) recognizer and a text-token
//! (TT) recognizer are turned into lattices, the TT lattice is mapped to PA
//! through a pronunciation dictionary, and the two PA distributions are
//! averaged before taking the best path. The crate also provides the mora
//! tokenizer, the f0 trajectory classes used as training targets, and the
//! error-rate metrics.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no IO. File formats
//! and the command-line front end live in the `latfuse` crate.

#![no_std]

extern crate alloc;

pub mod ctc;
pub mod error;
pub mod f0;
pub mod fusion;
pub mod lexicon;
pub mod metrics;
pub mod pa_token;
pub mod semiring;
pub mod symbols;
pub mod wfst;

pub use error::{DecodeError, FstError, InputError};
pub use semiring::{Semiring, Weight};
pub use symbols::SymbolTable;
pub use wfst::{Arc, Label, StateId, Wfst, EPSILON};

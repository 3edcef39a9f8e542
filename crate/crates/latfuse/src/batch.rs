//! Corpus decoding: load every utterance, build the dictionary transducer
//! once, decode in parallel and return results in input order.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use latfuse_core::ctc::PosteriorMatrix;
use latfuse_core::fusion::{decode, labels_to_morae, DecodeConfig, Decoded, Mode, TtSource};
use latfuse_core::lexicon::{build_lexicon, LexiconFst};
use latfuse_core::pa_token::{render_pa, tokenize_tt};
use latfuse_core::{DecodeError, Label, SymbolTable, Wfst};

use crate::att::write_att;
use crate::error::LoadError;
use crate::formats::dictionary::{parse_dictionary, resolve_dictionary};
use crate::formats::posteriors::parse_posteriors;
use crate::formats::symbols::write_symbols;
use crate::formats::{load, manifest::ManifestEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TtKind {
    Posteriors,
    Text,
}

#[derive(Clone, Debug)]
pub struct BatchConfig {
    pub mode: Mode,
    pub decode: DecodeConfig,
    pub tt_kind: TtKind,
    pub lexicon: Option<PathBuf>,
    pub dump_dir: Option<PathBuf>,
    pub jobs: usize,
}

enum TtData {
    Posteriors(PosteriorMatrix),
    Transcript(Vec<Label>),
}

struct Loaded {
    id: String,
    pa: PosteriorMatrix,
    tt: Option<TtData>,
}

/// Everything needed to decode, with symbol tables shared by all
/// utterances.
pub struct Prepared {
    pub pa_table: SymbolTable,
    pub tt_table: SymbolTable,
    pub lexicon: Option<LexiconFst>,
    /// Dictionary lines dropped for unknown symbols or empty pronunciations.
    pub discarded: Vec<usize>,
    utterances: Vec<Loaded>,
}

impl Prepared {
    pub fn len(&self) -> usize {
        self.utterances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.utterances.is_empty()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum UtteranceError {
    #[error("{id}: {source}")]
    Decode {
        id: String,
        #[source]
        source: DecodeError,
    },
    #[error("{id}: writing lattices to {}: {source}", path.display())]
    Dump {
        id: String,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Reads all inputs. Symbols are interned in manifest order, so label ids
/// do not depend on scheduling.
pub fn prepare(entries: &[ManifestEntry], cfg: &BatchConfig) -> Result<Prepared, LoadError> {
    let mut pa_table = SymbolTable::new();
    let mut tt_table = SymbolTable::new();
    let mut utterances = Vec::with_capacity(entries.len());
    for e in entries {
        let pa = load(&e.pa, parse_posteriors)?.to_matrix(&mut pa_table);
        let tt = match (&e.tt, cfg.tt_kind) {
            (None, _) => None,
            (Some(path), TtKind::Posteriors) => Some(TtData::Posteriors(
                load(path, parse_posteriors)?.to_matrix(&mut tt_table),
            )),
            (Some(path), TtKind::Text) => {
                let text = fs::read_to_string(path).map_err(|err| LoadError::io(path, err))?;
                let labels = tokenize_tt(text.trim_end_matches(['\n', '\r']))
                    .iter()
                    .map(|c| tt_table.intern(c))
                    .collect();
                Some(TtData::Transcript(labels))
            }
        };
        utterances.push(Loaded {
            id: e.id.clone(),
            pa,
            tt,
        });
    }

    let (lexicon, discarded) = match &cfg.lexicon {
        None => (None, Vec::new()),
        Some(path) => {
            let lines = load(path, parse_dictionary)?;
            let resolved = resolve_dictionary(&lines, &tt_table, &pa_table);
            let lexicon = if resolved.entries.is_empty() {
                None
            } else {
                Some(build_lexicon(&resolved.entries).map_err(|source| LoadError::Input {
                    path: path.clone(),
                    source,
                })?)
            };
            (lexicon, resolved.discarded)
        }
    };
    Ok(Prepared {
        pa_table,
        tt_table,
        lexicon,
        discarded,
        utterances,
    })
}

fn dump(dir: &Path, decoded: &Decoded) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let l = &decoded.lattices;
    let named: [(&str, &Option<Wfst>); 7] = [
        ("S_P", &l.s_pa),
        ("L_P", &l.l_pa),
        ("S_T", &l.s_tt),
        ("L_T", &l.l_tt),
        ("L_T2P_prime", &l.t2p_raw),
        ("L_T2P", &l.t2p),
        ("fused", &l.fused),
    ];
    for (name, f) in named {
        if let Some(f) = f {
            fs::write(dir.join(format!("{name}.fst")), write_att(f))?;
        }
    }
    Ok(())
}

fn decode_one(u: &Loaded, p: &Prepared, cfg: &BatchConfig) -> Result<String, UtteranceError> {
    let tt = u.tt.as_ref().map(|t| match t {
        TtData::Posteriors(y) => TtSource::Posteriors(y),
        TtData::Transcript(labels) => TtSource::Transcript(labels),
    });
    let err = |source| UtteranceError::Decode {
        id: u.id.clone(),
        source,
    };
    let decoded = decode(cfg.mode, &u.pa, tt, p.lexicon.as_ref(), &cfg.decode).map_err(err)?;
    if let Some(dir) = &cfg.dump_dir {
        let path = dir.join(&u.id);
        dump(&path, &decoded).map_err(|source| UtteranceError::Dump {
            id: u.id.clone(),
            path,
            source,
        })?;
    }
    let morae = labels_to_morae(&decoded.labels, &p.pa_table).map_err(err)?;
    Ok(render_pa(&morae))
}

/// Decodes every utterance with up to `cfg.jobs` threads. Results are in
/// input order.
pub fn decode_all(p: &Prepared, cfg: &BatchConfig) -> Vec<Result<String, UtteranceError>> {
    if let Some(dir) = &cfg.dump_dir {
        let tables = fs::create_dir_all(dir).and_then(|_| {
            fs::write(dir.join("pa.syms"), write_symbols(&p.pa_table))?;
            fs::write(dir.join("tt.syms"), write_symbols(&p.tt_table))
        });
        if let Err(source) = tables {
            return p
                .utterances
                .iter()
                .map(|u| {
                    Err(UtteranceError::Dump {
                        id: u.id.clone(),
                        path: dir.clone(),
                        source: std::io::Error::new(source.kind(), source.to_string()),
                    })
                })
                .collect();
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        p.utterances
            .par_iter()
            .map(|u| decode_one(u, p, cfg))
            .collect()
    })
}

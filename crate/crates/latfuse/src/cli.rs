//! Command-line front end. [`run`] returns the process exit code: 0 on
//! success, 1 when an utterance fails to decode, 2 for bad input or usage.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use latfuse_core::ctc::{build_confusion_network, ctc_lattice};
use latfuse_core::f0::{classify_utterance, DEFAULT_FRAME_RATE, DEFAULT_WINDOW};
use latfuse_core::fusion::{DecodeConfig, Mode, DEFAULT_MIX, DEFAULT_PRUNE};
use latfuse_core::metrics::{cer, corpus_aggregate, mler, AlignmentResult};
use latfuse_core::pa_token::tokenize_pa;
use latfuse_core::{InputError, SymbolTable};

use crate::att::write_att;
use crate::batch::{decode_all, prepare, BatchConfig, TtKind};
use crate::error::{LoadError, ParseError};
use crate::fixture::{generate, FixtureParams};
use crate::formats::load;
use crate::formats::manifest::{parse_manifest, ManifestEntry};
use crate::formats::posteriors::parse_posteriors;
use crate::formats::symbols::write_symbols;
use crate::formats::track::parse_track;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DECODE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "latfuse", version, about = "Lattice fusion decoding for accent-aware mora transcription")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decode PA posteriors, optionally fused with text through a dictionary.
    Decode(DecodeArgs),
    /// Score hypotheses against references, one utterance per line.
    Score(ScoreArgs),
    /// Frame-level f0 trajectory classes of a track.
    F0Label(F0Args),
    /// Write seeded synthetic posteriors, dictionary, tracks and manifest.
    GenFixture(FixtureArgs),
    /// Print the confusion network or CTC lattice of a posterior file.
    DumpLattice(DumpArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    PaOnly,
    Cond,
    Fuse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TtKindArg {
    Posteriors,
    Text,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    /// PA posterior file of a single utterance.
    #[arg(long, conflicts_with = "manifest", required_unless_present = "manifest")]
    pa_posteriors: Option<PathBuf>,
    /// TT posterior file of the single utterance.
    #[arg(long, conflicts_with_all = ["tt_text", "manifest"])]
    tt_posteriors: Option<PathBuf>,
    /// Plain-text transcript of the single utterance, used as a one-path TT lattice.
    #[arg(long, conflicts_with = "manifest")]
    tt_text: Option<PathBuf>,
    /// Corpus manifest: `id<TAB>pa_file[<TAB>tt_file]` per line.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// How manifest TT files are read.
    #[arg(long, value_enum, default_value = "posteriors")]
    tt_kind: TtKindArg,
    /// Pronunciation dictionary (`surface<TAB>morae`).
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "fuse")]
    mode: ModeArg,
    /// Weight of the PA lattice in the fusion mixture.
    #[arg(long, default_value_t = DEFAULT_MIX)]
    mix: f64,
    /// Pruning beam in natural-log cost units.
    #[arg(long, default_value_t = DEFAULT_PRUNE)]
    prune: f64,
    /// Write intermediate lattices (AT&T format) under this directory.
    #[arg(long)]
    dump_lattice: Option<PathBuf>,
    /// Number of utterances decoded in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Print an empty line for failed utterances and exit 0.
    #[arg(long)]
    keep_going: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Metric {
    Mler,
    MlerNoaccent,
    Cer,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    #[arg(long = "ref")]
    reference: PathBuf,
    #[arg(long)]
    hyp: PathBuf,
    #[arg(long, value_enum)]
    metric: Metric,
}

#[derive(Args, Debug)]
struct F0Args {
    #[arg(long)]
    track: PathBuf,
    /// Frames per second of the labels.
    #[arg(long, default_value_t = DEFAULT_FRAME_RATE)]
    frame_rate: f64,
    /// Analysis window length in seconds.
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: f64,
}

#[derive(Args, Debug)]
struct FixtureArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 3)]
    utterances: usize,
    /// Frames per posterior matrix.
    #[arg(long, default_value_t = 4)]
    frames: usize,
    /// PA columns, blank included.
    #[arg(long, default_value_t = 4)]
    pa_labels: usize,
    /// TT columns, blank included.
    #[arg(long, default_value_t = 3)]
    tt_labels: usize,
    /// Dictionary lines.
    #[arg(long, default_value_t = 6)]
    entries: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Stage {
    /// The per-frame confusion network.
    Confusion,
    /// The optimized CTC lattice.
    Lattice,
}

#[derive(Args, Debug)]
struct DumpArgs {
    #[arg(long)]
    posteriors: PathBuf,
    #[arg(long, value_enum, default_value = "lattice")]
    stage: Stage,
    #[arg(long, default_value_t = DEFAULT_PRUNE)]
    prune: f64,
    /// Also write the symbol table to this file.
    #[arg(long)]
    symbols: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Decode(a) => cmd_decode(a, out, err),
        Command::Score(a) => cmd_score(a, out),
        Command::F0Label(a) => cmd_f0(a, out),
        Command::GenFixture(a) => cmd_gen_fixture(a),
        Command::DumpLattice(a) => cmd_dump(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> LoadError + '_ {
    move |e| LoadError::io(path, e)
}

fn stdout_err(e: std::io::Error) -> LoadError {
    LoadError::io("<stdout>", e)
}

fn cmd_decode(a: DecodeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, LoadError> {
    if !(a.mix > 0.0 && a.mix < 1.0) {
        return Err(LoadError::Usage(format!("--mix must be in (0, 1), got {}", a.mix)));
    }
    if a.prune.is_nan() || a.prune < 0.0 {
        return Err(LoadError::Usage(format!("--prune must be non-negative, got {}", a.prune)));
    }
    if a.jobs == 0 {
        return Err(LoadError::Usage("--jobs must be at least 1".into()));
    }
    let mode = match a.mode {
        ModeArg::PaOnly => Mode::PaOnly,
        ModeArg::Cond => Mode::Cond,
        ModeArg::Fuse => Mode::Fuse,
    };
    if mode != Mode::PaOnly && a.lexicon.is_none() {
        return Err(LoadError::Usage("--mode cond and fuse need --lexicon".into()));
    }

    let (entries, tt_kind) = match (&a.manifest, &a.pa_posteriors) {
        (Some(m), _) => {
            let base = m.parent().unwrap_or(Path::new("."));
            let entries = load(m, |t| parse_manifest(t, base))?;
            let kind = match a.tt_kind {
                TtKindArg::Posteriors => TtKind::Posteriors,
                TtKindArg::Text => TtKind::Text,
            };
            (entries, kind)
        }
        (None, Some(pa)) => {
            let id = pa
                .file_stem()
                .map_or_else(|| "utt".to_string(), |s| s.to_string_lossy().into_owned());
            let (tt, kind) = match (&a.tt_posteriors, &a.tt_text) {
                (Some(p), _) => (Some(p.clone()), TtKind::Posteriors),
                (None, Some(t)) => (Some(t.clone()), TtKind::Text),
                (None, None) => (None, TtKind::Posteriors),
            };
            (vec![ManifestEntry { id, pa: pa.clone(), tt }], kind)
        }
        (None, None) => unreachable!("clap requires one of them"),
    };

    let cfg = BatchConfig {
        mode,
        decode: DecodeConfig {
            mix: a.mix,
            prune: a.prune,
        },
        tt_kind,
        lexicon: a.lexicon.clone(),
        dump_dir: a.dump_lattice.clone(),
        jobs: a.jobs,
    };
    let prepared = prepare(&entries, &cfg)?;
    if !prepared.discarded.is_empty() {
        let lines: Vec<String> = prepared.discarded.iter().map(usize::to_string).collect();
        let _ = writeln!(
            err,
            "warning: {} dictionary line(s) discarded (unknown symbols or empty pronunciation): {}",
            lines.len(),
            lines.join(", ")
        );
    }
    let results = decode_all(&prepared, &cfg);
    let mut code = EXIT_OK;
    for r in results {
        match r {
            Ok(line) => writeln!(out, "{line}").map_err(stdout_err)?,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                if a.keep_going {
                    writeln!(out).map_err(stdout_err)?;
                } else {
                    code = match e {
                        crate::batch::UtteranceError::Decode { .. } => EXIT_DECODE,
                        crate::batch::UtteranceError::Dump { .. } => EXIT_INPUT,
                    };
                    break;
                }
            }
        }
    }
    Ok(code)
}

fn read_lines(path: &Path) -> Result<Vec<String>, LoadError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Ok(text.lines().map(str::to_string).collect())
}

fn score_line(metric: Metric, r: &str, h: &str) -> Result<AlignmentResult, String> {
    let pa = |s: &str| tokenize_pa(s.trim()).map_err(|e| e.to_string());
    let res = match metric {
        Metric::Cer => cer(r, h),
        Metric::Mler => mler(&pa(r)?, &pa(h)?, true),
        Metric::MlerNoaccent => mler(&pa(r)?, &pa(h)?, false),
    };
    res.map_err(|e: InputError| e.to_string())
}

fn cmd_score(a: ScoreArgs, out: &mut dyn Write) -> Result<i32, LoadError> {
    let refs = read_lines(&a.reference)?;
    let hyps = read_lines(&a.hyp)?;
    if refs.len() != hyps.len() {
        return Err(LoadError::Usage(format!(
            "{} has {} lines but {} has {}",
            a.reference.display(),
            refs.len(),
            a.hyp.display(),
            hyps.len()
        )));
    }
    let mut results = Vec::with_capacity(refs.len());
    for (i, (r, h)) in refs.iter().zip(&hyps).enumerate() {
        let res = score_line(a.metric, r, h)
            .map_err(|m| LoadError::parse(&a.reference, ParseError::new(i + 1, m)))?;
        results.push(res);
    }
    let total = corpus_aggregate(&results).map_err(|source| LoadError::Input {
        path: a.reference.clone(),
        source,
    })?;
    let mut text = String::from("utt\tref_len\tsub\tins\tdel\terrors\trate\n");
    for (i, r) in results.iter().enumerate() {
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{:.6}\n",
            i + 1,
            r.ref_len,
            r.substitutions,
            r.insertions,
            r.deletions,
            r.errors(),
            r.error_rate()
        ));
    }
    let sum = results.iter().fold(AlignmentResult::default(), |acc, r| AlignmentResult {
        substitutions: acc.substitutions + r.substitutions,
        insertions: acc.insertions + r.insertions,
        deletions: acc.deletions + r.deletions,
        ref_len: acc.ref_len + r.ref_len,
    });
    text.push_str(&format!(
        "corpus\t{}\t{}\t{}\t{}\t{}\t{total:.6}\n",
        sum.ref_len,
        sum.substitutions,
        sum.insertions,
        sum.deletions,
        sum.errors()
    ));
    out.write_all(text.as_bytes()).map_err(stdout_err)?;
    Ok(EXIT_OK)
}

fn cmd_f0(a: F0Args, out: &mut dyn Write) -> Result<i32, LoadError> {
    let track = load(&a.track, parse_track)?;
    let classes = classify_utterance(&track, a.frame_rate, a.window)
        .map_err(|e| LoadError::Usage(e.to_string()))?;
    let mut text = String::new();
    for c in classes {
        text.push_str(&format!("{}\n", c.id()));
    }
    out.write_all(text.as_bytes()).map_err(stdout_err)?;
    Ok(EXIT_OK)
}

fn cmd_gen_fixture(a: FixtureArgs) -> Result<i32, LoadError> {
    let params = FixtureParams {
        seed: a.seed,
        utterances: a.utterances,
        frames: a.frames,
        pa_labels: a.pa_labels,
        tt_labels: a.tt_labels,
        entries: a.entries,
    };
    params.validate().map_err(LoadError::Usage)?;
    fs::create_dir_all(&a.out).map_err(io_err(&a.out))?;
    for (name, text) in generate(&params) {
        let path = a.out.join(name);
        fs::write(&path, text).map_err(io_err(&path))?;
    }
    Ok(EXIT_OK)
}

fn cmd_dump(a: DumpArgs, out: &mut dyn Write) -> Result<i32, LoadError> {
    if a.prune.is_nan() || a.prune < 0.0 {
        return Err(LoadError::Usage(format!("--prune must be non-negative, got {}", a.prune)));
    }
    let mut table = SymbolTable::new();
    let y = load(&a.posteriors, parse_posteriors)?.to_matrix(&mut table);
    let f = match a.stage {
        Stage::Confusion => build_confusion_network(&y),
        Stage::Lattice => ctc_lattice(&y, a.prune).map_err(|e| LoadError::Usage(e.to_string()))?,
    };
    out.write_all(write_att(&f).as_bytes()).map_err(stdout_err)?;
    if let Some(path) = &a.symbols {
        fs::write(path, write_symbols(&table)).map_err(io_err(path))?;
    }
    Ok(EXIT_OK)
}

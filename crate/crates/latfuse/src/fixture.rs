//! Seeded synthetic inputs: posterior files, a dictionary, f0 tracks and a
//! manifest tying them together. The same parameters always give the same
//! bytes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use latfuse_core::f0::{F0Track, DEFAULT_HOP};
use latfuse_core::symbols::BLANK_SYMBOL;

use crate::formats::posteriors::{write_posteriors, PosteriorFile};
use crate::formats::track::write_track;

const PA_POOL: &[&str] = &[
    "ハ", "シ'", "シ", "チ", "キュ'", "ウ", "ア", "カ'", "ン", "ッ", "ト", "リョ",
];
const TT_POOL: &[&str] = &["端", "箸", "橋", "だ", "は", "の", "空", "雨"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixtureParams {
    pub seed: u64,
    pub utterances: usize,
    pub frames: usize,
    /// PA columns including blank.
    pub pa_labels: usize,
    /// TT columns including blank.
    pub tt_labels: usize,
    pub entries: usize,
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams {
            seed: 0,
            utterances: 3,
            frames: 4,
            pa_labels: 4,
            tt_labels: 3,
            entries: 6,
        }
    }
}

impl FixtureParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.frames == 0 || self.utterances == 0 {
            return Err("frames and utterances must be positive".into());
        }
        if !(2..=PA_POOL.len() + 1).contains(&self.pa_labels) {
            return Err(format!("pa-labels must be in 2..={}", PA_POOL.len() + 1));
        }
        if !(2..=TT_POOL.len() + 1).contains(&self.tt_labels) {
            return Err(format!("tt-labels must be in 2..={}", TT_POOL.len() + 1));
        }
        Ok(())
    }
}

/// A generated file: name relative to the output directory, and contents.
pub type FixtureFile = (String, String);

fn posteriors(rng: &mut impl Rng, names: &[&str], frames: usize) -> PosteriorFile {
    let mut symbols: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    symbols.push(BLANK_SYMBOL.to_string());
    let k = symbols.len();
    let mut values = Vec::with_capacity(frames * k);
    for _ in 0..frames {
        // cubing sharpens the rows so that lattices have a clear best path
        let row: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05f64..1.0).powi(3)).collect();
        let z: f64 = row.iter().sum();
        values.extend(row.iter().map(|p| (p / z).ln()));
    }
    PosteriorFile { symbols, values }
}

fn track(rng: &mut impl Rng) -> F0Track {
    let n = rng.gen_range(50..150);
    let mut values = Vec::with_capacity(n);
    let mut f0: f64 = rng.gen_range(90.0..250.0);
    let mut voiced = rng.gen_bool(0.5);
    for _ in 0..n {
        if rng.gen_bool(0.08) {
            voiced = !voiced;
        }
        f0 = (f0 * rng.gen_range(0.97..1.03)).clamp(60.0, 400.0);
        values.push(if voiced { f0 } else { 0.0 });
    }
    F0Track::from_hz(DEFAULT_HOP, &values).expect("positive hop")
}

pub fn generate(p: &FixtureParams) -> Vec<FixtureFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let pa = &PA_POOL[..p.pa_labels - 1];
    let tt = &TT_POOL[..p.tt_labels - 1];
    let mut files = Vec::new();

    let mut lexicon = String::from("# surface\tpronunciation\n");
    for _ in 0..p.entries {
        let surface: String = (0..rng.gen_range(1..=2)).map(|_| tt[rng.gen_range(0..tt.len())]).collect();
        let pron: Vec<&str> = (0..rng.gen_range(1..=3)).map(|_| pa[rng.gen_range(0..pa.len())]).collect();
        lexicon.push_str(&format!("{surface}\t{}\n", pron.join(" ")));
    }
    files.push(("lexicon.tsv".to_string(), lexicon));

    let mut manifest = String::new();
    for i in 0..p.utterances {
        let id = format!("utt{i:03}");
        let y_pa = posteriors(&mut rng, pa, p.frames);
        let y_tt = posteriors(&mut rng, tt, p.frames);
        let f0 = track(&mut rng);
        manifest.push_str(&format!("{id}\t{id}.pa.post\t{id}.tt.post\n"));
        files.push((format!("{id}.pa.post"), write_posteriors(&y_pa)));
        files.push((format!("{id}.tt.post"), write_posteriors(&y_tt)));
        files.push((format!("{id}.f0"), write_track(&f0)));
    }
    files.push(("manifest.tsv".to_string(), manifest));
    files
}

#![allow(dead_code)]

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

pub fn latfuse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latfuse"))
        .args(args)
        .output()
        .expect("run latfuse")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn log_row(probs: &[f64]) -> String {
    probs.iter().map(|p| p.ln().to_string()).collect::<Vec<_>>().join("\t")
}

/// Two-frame PA posteriors that prefer ハチ (0.55) over ハシ (0.45), TT
/// posteriors that are confidently 端, and a dictionary mapping `surface`
/// to ハ シ.
pub fn write_homophone(dir: &Path, surface: &str) {
    let e = 1e-9;
    let pa = format!(
        "ハ\tシ\tチ\t<blank>\n{}\n{}\n",
        log_row(&[1.0 - 3.0 * e, e, e, e]),
        log_row(&[e, 0.45 - e, 0.55 - e, e]),
    );
    let tt = format!(
        "端\t箸\t<blank>\n{}\n{}\n",
        log_row(&[1.0 - 2.0 * e, e, e]),
        log_row(&[e, e, 1.0 - 2.0 * e]),
    );
    fs::write(dir.join("pa.post"), pa).unwrap();
    fs::write(dir.join("tt.post"), tt).unwrap();
    fs::write(dir.join("lexicon.tsv"), format!("{surface}\tハ シ\n")).unwrap();
}

/// `latfuse decode` on the homophone files in `dir`.
pub fn decode_homophone(dir: &Path, mode: &str) -> Output {
    let p = |f: &str| dir.join(f).to_str().unwrap().to_string();
    latfuse(&[
        "decode",
        "--pa-posteriors",
        &p("pa.post"),
        "--tt-posteriors",
        &p("tt.post"),
        "--lexicon",
        &p("lexicon.tsv"),
        "--mode",
        mode,
    ])
}

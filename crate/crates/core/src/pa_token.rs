//! Phonetic-alphabet (PA) and text-token (TT) tokenization.
//!
//! PA tokens are katakana morae. A trailing apostrophe marks the accented
//! mora (`キュ'`), and the long-vowel mark `ー` is rewritten into an
//! unaccented copy of the preceding mora's vowel, so `キュ'ー` becomes
//! `[キュ', ウ]`. Small kana `ャュョァィゥェォ` attach to the preceding base
//! kana; `ッ` and `ン` are morae of their own.
//!
//! TT tokens are the code points of the NFKC-normalized text.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use unicode_normalization::UnicodeNormalization;

use crate::symbols::SymbolTable;
use crate::wfst::Label;

pub const LONG_VOWEL: char = 'ー';
pub const ACCENT: char = '\'';

/// One mora of the phonetic alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoraToken {
    pub kana: String,
    pub accented: bool,
}

impl MoraToken {
    pub fn new(kana: impl Into<String>, accented: bool) -> Self {
        MoraToken {
            kana: kana.into(),
            accented,
        }
    }

    /// Parses a single rendered token such as `キュ'`.
    pub fn parse(s: &str) -> Result<Self, PaTokenError> {
        let mut toks = tokenize_pa(s)?;
        if toks.len() != 1 || s.contains(LONG_VOWEL) {
            return Err(PaTokenError {
                position: 0,
                kind: PaErrorKind::NotSingleMora,
            });
        }
        Ok(toks.pop().unwrap())
    }

    /// The same mora without its accent mark.
    pub fn unaccented(&self) -> Self {
        MoraToken::new(self.kana.clone(), false)
    }
}

impl fmt::Display for MoraToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kana)?;
        if self.accented {
            f.write_str("'")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaErrorKind {
    NotKatakana(char),
    LeadingLongVowel,
    LeadingAccent,
    RepeatedAccent,
    /// `ー` after a mora without a vowel (`ッ`, `ン`).
    NoVowelToCopy(char),
    NotSingleMora,
}

/// Tokenization failure at a character position (0-based, in code points).
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid PA text at character {position}: {kind:?}")]
pub struct PaTokenError {
    pub position: usize,
    pub kind: PaErrorKind,
}

const SMALL_ATTACHING: &[char] = &['ャ', 'ュ', 'ョ', 'ァ', 'ィ', 'ゥ', 'ェ', 'ォ'];

/// Vowel row of a katakana character, as a plain vowel kana.
pub fn vowel_of(c: char) -> Option<char> {
    let v = match c {
        'ア' | 'カ' | 'サ' | 'タ' | 'ナ' | 'ハ' | 'マ' | 'ヤ' | 'ラ' | 'ワ' | 'ガ' | 'ザ'
        | 'ダ' | 'バ' | 'パ' | 'ァ' | 'ャ' | 'ヮ' | 'ヵ' | 'ヷ' => 'ア',
        'イ' | 'キ' | 'シ' | 'チ' | 'ニ' | 'ヒ' | 'ミ' | 'リ' | 'ギ' | 'ジ' | 'ヂ' | 'ビ'
        | 'ピ' | 'ィ' | 'ヰ' | 'ヸ' => 'イ',
        'ウ' | 'ク' | 'ス' | 'ツ' | 'ヌ' | 'フ' | 'ム' | 'ユ' | 'ル' | 'グ' | 'ズ' | 'ヅ'
        | 'ブ' | 'プ' | 'ゥ' | 'ュ' | 'ヴ' => 'ウ',
        'エ' | 'ケ' | 'セ' | 'テ' | 'ネ' | 'ヘ' | 'メ' | 'レ' | 'ゲ' | 'ゼ' | 'デ' | 'ベ'
        | 'ペ' | 'ェ' | 'ヱ' | 'ヶ' | 'ヹ' => 'エ',
        'オ' | 'コ' | 'ソ' | 'ト' | 'ノ' | 'ホ' | 'モ' | 'ヨ' | 'ロ' | 'ヲ' | 'ゴ' | 'ゾ'
        | 'ド' | 'ボ' | 'ポ' | 'ォ' | 'ョ' | 'ヺ' => 'オ',
        _ => return None,
    };
    Some(v)
}

const YOON_BASES: &[char] = &[
    'キ', 'ギ', 'シ', 'ジ', 'チ', 'ヂ', 'ニ', 'ヒ', 'ビ', 'ピ', 'ミ', 'リ',
];

const EXTENDED: &[&str] = &[
    "イェ", "ウィ", "ウェ", "ウォ", "ヴァ", "ヴィ", "ヴェ", "ヴォ", "ヴュ", "キェ", "ギェ",
    "クァ", "クィ", "クェ", "クォ", "グァ", "シェ", "ジェ", "チェ", "ツァ", "ツィ", "ツェ",
    "ツォ", "ティ", "テュ", "ディ", "デュ", "トゥ", "ドゥ", "ニェ", "ヒェ", "ファ", "フィ",
    "フェ", "フォ", "フュ",
];

/// The mora inventory: plain kana, `ッ`, `ン`, palatalized morae (`キャ`)
/// and the common extended-katakana combinations (`ファ`, `ティ`, ...).
/// Standalone small kana are not part of it.
pub fn standard_morae() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for c in '\u{30A1}'..='\u{30FA}' {
        if vowel_of(c).is_some() && !SMALL_ATTACHING.contains(&c) && !matches!(c, 'ヮ' | 'ヵ' | 'ヶ') {
            out.push(c.to_string());
        }
    }
    out.push("ッ".to_string());
    out.push("ン".to_string());
    for &b in YOON_BASES {
        for s in ['ャ', 'ュ', 'ョ'] {
            let mut m = b.to_string();
            m.push(s);
            out.push(m);
        }
    }
    out.extend(EXTENDED.iter().map(|s| s.to_string()));
    out
}

fn is_moraic_consonant(c: char) -> bool {
    matches!(c, 'ッ' | 'ン')
}

/// Splits katakana text into morae, binding accents and expanding `ー`.
pub fn tokenize_pa(text: &str) -> Result<Vec<MoraToken>, PaTokenError> {
    let mut out: Vec<MoraToken> = Vec::new();
    // whether the last token is a bare base kana that a small kana may join
    let mut can_attach = false;
    for (position, c) in text.chars().enumerate() {
        let err = |kind| PaTokenError { position, kind };
        if c == ACCENT {
            let last = out.last_mut().ok_or(err(PaErrorKind::LeadingAccent))?;
            if last.accented {
                return Err(err(PaErrorKind::RepeatedAccent));
            }
            last.accented = true;
            can_attach = false;
        } else if c == LONG_VOWEL {
            let last = out.last().ok_or(err(PaErrorKind::LeadingLongVowel))?;
            let tail = last.kana.chars().last().unwrap_or(c);
            let v = vowel_of(tail).ok_or(err(PaErrorKind::NoVowelToCopy(tail)))?;
            out.push(MoraToken::new(v.to_string(), false));
            can_attach = false;
        } else if SMALL_ATTACHING.contains(&c) {
            match out.last_mut() {
                Some(last) if can_attach => last.kana.push(c),
                _ => out.push(MoraToken::new(c.to_string(), false)),
            }
            can_attach = false;
        } else if is_moraic_consonant(c) {
            out.push(MoraToken::new(c.to_string(), false));
            can_attach = false;
        } else if vowel_of(c).is_some() {
            out.push(MoraToken::new(c.to_string(), false));
            can_attach = true;
        } else {
            return Err(err(PaErrorKind::NotKatakana(c)));
        }
    }
    Ok(out)
}

/// Concatenation of the rendered tokens.
pub fn render_pa(tokens: &[MoraToken]) -> String {
    let mut s = String::new();
    for t in tokens {
        s.push_str(&t.kana);
        if t.accented {
            s.push(ACCENT);
        }
    }
    s
}

/// NFKC-normalizes `text` and splits it into code points.
pub fn tokenize_tt(text: &str) -> Vec<String> {
    text.nfkc().map(|c| c.to_string()).collect()
}

/// Maps TT tokens to labels, using `<unk>` for unknown code points when the
/// table has it.
pub fn resolve_tt(tokens: &[String], table: &SymbolTable) -> Vec<Option<Label>> {
    tokens.iter().map(|t| table.get_or_unk(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn toks(s: &str) -> Vec<String> {
        tokenize_pa(s).unwrap().iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn long_vowel_examples() {
        assert_eq!(toks("キュー"), ["キュ", "ウ"]);
        assert_eq!(toks("キュ'ー"), ["キュ'", "ウ"]);
        assert_eq!(toks("ハシ'"), ["ハ", "シ'"]);
        assert_eq!(toks("カー"), ["カ", "ア"]);
        assert_eq!(toks("ファー"), ["ファ", "ア"]);
        assert_eq!(toks("ティーー"), ["ティ", "イ", "イ"]);
    }

    #[test]
    fn moraic_consonants_stand_alone() {
        assert_eq!(toks("ガッコー"), ["ガ", "ッ", "コ", "オ"]);
        assert_eq!(toks("シンブン"), ["シ", "ン", "ブ", "ン"]);
        assert_eq!(toks("キャ'ッチャー"), ["キャ'", "ッ", "チャ", "ア"]);
    }

    #[test]
    fn small_kana_after_accent_or_consonant_stands_alone() {
        assert_eq!(toks("キ'ャ"), ["キ'", "ャ"]);
        assert_eq!(toks("ンャ"), ["ン", "ャ"]);
        assert_eq!(toks("ァ"), ["ァ"]);
    }

    #[test]
    fn errors_carry_positions() {
        let e = tokenize_pa("カaキ").unwrap_err();
        assert_eq!(e, PaTokenError { position: 1, kind: PaErrorKind::NotKatakana('a') });
        assert_eq!(tokenize_pa("ーア").unwrap_err().kind, PaErrorKind::LeadingLongVowel);
        assert_eq!(tokenize_pa("'ア").unwrap_err().kind, PaErrorKind::LeadingAccent);
        assert_eq!(tokenize_pa("ア''").unwrap_err().kind, PaErrorKind::RepeatedAccent);
        assert_eq!(tokenize_pa("ンー").unwrap_err().kind, PaErrorKind::NoVowelToCopy('ン'));
        assert_eq!(tokenize_pa("ッー").unwrap_err().position, 1);
        assert_eq!(tokenize_pa("かな").unwrap_err().kind, PaErrorKind::NotKatakana('か'));
    }

    #[test]
    fn inventory_morae_are_single_tokens() {
        let inv = standard_morae();
        assert!(inv.len() > 100);
        for m in &inv {
            assert_eq!(toks(m), [m.as_str()], "{m}");
        }
    }

    #[test]
    fn render_examples() {
        let t = vec![MoraToken::new("キュ", true), MoraToken::new("ウ", false)];
        assert_eq!(render_pa(&t), "キュ'ウ");
        assert_eq!(render_pa(&[]), "");
    }

    #[test]
    fn parse_single_token() {
        assert_eq!(MoraToken::parse("キュ'").unwrap(), MoraToken::new("キュ", true));
        assert!(MoraToken::parse("キュウ").is_err());
        assert!(MoraToken::parse("アー").is_err());
    }

    #[test]
    fn tt_is_nfkc_code_points() {
        assert_eq!(tokenize_tt("Ａ"), ["A"]);
        assert_eq!(tokenize_tt("端だ"), ["端", "だ"]);
        // half-width katakana and full-width digits fold onto one form
        assert_eq!(tokenize_tt("ｶ１"), tokenize_tt("カ1"));
        assert_eq!(tokenize_tt(""), Vec::<String>::new());
    }

    #[test]
    fn tt_resolution_uses_unk() {
        let mut t = SymbolTable::new();
        let a = t.intern("A");
        assert_eq!(resolve_tt(&tokenize_tt("ＡB"), &t), [Some(a), None]);
        let unk = t.intern(crate::symbols::UNK_SYMBOL);
        assert_eq!(resolve_tt(&tokenize_tt("ＡB"), &t), [Some(a), Some(unk)]);
    }
}

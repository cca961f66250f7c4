//! IPA utterance tokenizer.
//!
//! Input is NFC-normalized once on entry, and all character positions
//! (spans, error positions) count Unicode scalars of the normalized string.
//! Composed letters that no table symbol uses are decomposed again so their
//! diacritics are seen.
//!
//! Supported marks:
//! - `ː` (U+02D0) marks the preceding phoneme long.
//! - `ˈ` / `ˌ` (U+02C8 / U+02CC) mark the following phoneme stressed.
//! - `͡` (U+0361) joins two base symbols into one phoneme (affricates).
//!
//! Within a word, two identical adjacent base symbols become one long
//! phoneme (geminate), and two different adjacent vowels become one
//! diphthong, scanning greedily from the left.

use std::fmt;
use std::ops::Range;

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};
use crate::schema::FeatureTable;

pub const LENGTH_MARK: char = '\u{02D0}';
pub const PRIMARY_STRESS: char = '\u{02C8}';
pub const SECONDARY_STRESS: char = '\u{02CC}';
pub const TIE_BAR: char = '\u{0361}';

/// Lookalikes and ligatures rewritten before scanning.
const ALIASES: &[(char, &str)] = &[
    ('g', "ɡ"),
    ('\u{035C}', "\u{0361}"), // tie bar below
    ('\u{2040}', "\u{0361}"), // character tie
    ('\u{A789}', "\u{02D0}"), // modifier letter colon
    ('\u{02A6}', "t\u{0361}s"),
    ('\u{02A3}', "d\u{0361}z"),
    ('\u{02A7}', "t\u{0361}ʃ"),
    ('\u{02A4}', "d\u{0361}ʒ"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

impl std::str::FromStr for ParseMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(ParseMode::Strict),
            "lenient" => Ok(ParseMode::Lenient),
            _ => Err(format!("unknown mode {s:?} (expected strict or lenient)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PunctuationClass {
    Comma,
    FullStop,
    Question,
    Exclamation,
}

impl PunctuationClass {
    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            ',' | ';' | '|' | '\u{3001}' => PunctuationClass::Comma,
            '.' | '\u{2016}' | '\u{3002}' => PunctuationClass::FullStop,
            '?' | '\u{FF1F}' => PunctuationClass::Question,
            '!' | '\u{FF01}' => PunctuationClass::Exclamation,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            PunctuationClass::Comma => ',',
            PunctuationClass::FullStop => '.',
            PunctuationClass::Question => '?',
            PunctuationClass::Exclamation => '!',
        }
    }
}

/// A phoneme split into its two semi-phonemes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Phone {
    pub first: String,
    pub second: String,
    pub long: bool,
    pub stressed: bool,
    /// The halves are written with a tie bar. Only meaningful when
    /// `first != second`; vowel pairs (diphthongs) are written without one.
    pub tied: bool,
}

impl Phone {
    pub fn simple(symbol: impl Into<String>) -> Self {
        let s = symbol.into();
        Phone {
            first: s.clone(),
            second: s,
            long: false,
            stressed: false,
            tied: false,
        }
    }

    pub fn is_compound(&self) -> bool {
        self.first != self.second
    }

    /// Canonical IPA rendering, excluding stress. This is the key used for
    /// inventory membership.
    pub fn canonical(&self) -> String {
        let mut s = self.first.clone();
        if self.is_compound() {
            if self.tied {
                s.push(TIE_BAR);
            }
            s.push_str(&self.second);
        }
        if self.long {
            s.push(LENGTH_MARK);
        }
        s
    }
}

impl fmt::Display for Phone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.stressed {
            write!(f, "{PRIMARY_STRESS}")?;
        }
        f.write_str(&self.canonical())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Phoneme(Phone),
    WordBoundary,
    Punctuation(PunctuationClass),
    Padding,
    EndOfSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhonemeToken {
    pub kind: TokenKind,
    pub span: Range<usize>,
}

impl PhonemeToken {
    pub fn new(kind: TokenKind, span: Range<usize>) -> Self {
        PhonemeToken { kind, span }
    }

    pub fn padding() -> Self {
        PhonemeToken::new(TokenKind::Padding, 0..0)
    }

    pub fn phone(&self) -> Option<&Phone> {
        match &self.kind {
            TokenKind::Phoneme(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_phoneme(&self) -> bool {
        matches!(self.kind, TokenKind::Phoneme(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tokenized {
    pub tokens: Vec<PhonemeToken>,
    /// Diacritics and marks dropped in lenient mode.
    pub warnings: Vec<Warning>,
}

impl Tokenized {
    pub fn phones(&self) -> impl Iterator<Item = &Phone> {
        self.tokens.iter().filter_map(PhonemeToken::phone)
    }
}

/// Tokenizes one utterance against `table`.
pub fn tokenize(input: &str, mode: ParseMode, table: &FeatureTable) -> Result<Tokenized> {
    Scanner::new(input, mode, table).run()
}

/// Renders tokens back to IPA. Stress is always written as primary; padding
/// has no written form and is skipped.
pub fn render(tokens: &[PhonemeToken]) -> String {
    let mut out = String::new();
    for t in tokens {
        match &t.kind {
            TokenKind::Phoneme(p) => out.push_str(&p.to_string()),
            TokenKind::WordBoundary => out.push(' '),
            TokenKind::Punctuation(c) => out.push(c.as_char()),
            TokenKind::Padding | TokenKind::EndOfSequence => {}
        }
    }
    out
}

/// Parses a string expected to hold exactly one phoneme and returns it
/// with stress cleared.
pub fn parse_phoneme(text: &str, table: &FeatureTable) -> Result<Phone> {
    let parsed = tokenize(text, ParseMode::Strict, table)?;
    let mut phones = parsed
        .tokens
        .into_iter()
        .filter(|t| !matches!(t.kind, TokenKind::EndOfSequence));
    match (phones.next(), phones.next()) {
        (
            Some(PhonemeToken {
                kind: TokenKind::Phoneme(mut p),
                ..
            }),
            None,
        ) => {
            p.stressed = false;
            Ok(p)
        }
        _ => Err(Error::Syntax {
            message: format!("{text:?} is not a single phoneme"),
            position: 0,
        }),
    }
}

#[derive(Debug)]
struct Segment {
    first: String,
    second: Option<String>,
    long: bool,
    stressed: bool,
    span: Range<usize>,
}

struct Scanner<'a> {
    chars: Vec<char>,
    /// Position in the normalized input of each entry of `chars`.
    origin: Vec<usize>,
    input_len: usize,
    mode: ParseMode,
    table: &'a FeatureTable,
    tokens: Vec<PhonemeToken>,
    warnings: Vec<Warning>,
    word: Vec<Segment>,
    pending_stress: Option<usize>,
    pending_boundary: Option<usize>,
}

fn is_modifier_letter(c: char) -> bool {
    matches!(c, '\u{02B0}'..='\u{02FF}' | '\u{1D2C}'..='\u{1DBF}' | '\u{2071}' | '\u{207F}')
}

impl<'a> Scanner<'a> {
    fn new(input: &str, mode: ParseMode, table: &'a FeatureTable) -> Self {
        let normalized: Vec<char> = input.nfc().collect();
        let mut chars = Vec::with_capacity(normalized.len());
        let mut origin = Vec::with_capacity(normalized.len());
        for (i, &c) in normalized.iter().enumerate() {
            match ALIASES.iter().find(|(from, _)| *from == c) {
                Some((_, to)) => {
                    for t in to.chars() {
                        chars.push(t);
                        origin.push(i);
                    }
                }
                // Precomposed letters the table does not use (e.g. ḁ) are
                // split back into base + diacritic.
                None if !table.uses_char(c) && c.nfd().nth(1).is_some() => {
                    for d in c.nfd() {
                        chars.push(d);
                        origin.push(i);
                    }
                }
                None => {
                    chars.push(c);
                    origin.push(i);
                }
            }
        }
        Scanner {
            chars,
            origin,
            input_len: normalized.len(),
            mode,
            table,
            tokens: Vec::new(),
            warnings: Vec::new(),
            word: Vec::new(),
            pending_stress: None,
            pending_boundary: None,
        }
    }

    fn pos(&self, i: usize) -> usize {
        self.origin.get(i).copied().unwrap_or(self.input_len)
    }

    /// Strict mode fails; lenient mode records a warning and continues.
    fn tolerate(&mut self, err: Error, position: usize) -> Result<()> {
        match self.mode {
            ParseMode::Strict => Err(err),
            ParseMode::Lenient => {
                self.warnings.push(Warning {
                    position,
                    message: err.to_string(),
                });
                Ok(())
            }
        }
    }

    /// Longest table symbol starting at `i`, in chars.
    fn match_symbol(&self, i: usize) -> Option<usize> {
        let max = self.table.max_symbol_chars().min(self.chars.len() - i);
        let mut buf = String::new();
        let mut best = None;
        for n in 1..=max {
            buf.push(self.chars[i + n - 1]);
            if self.table.contains(&buf) {
                best = Some(n);
            }
        }
        best
    }

    fn run(mut self) -> Result<Tokenized> {
        let mut i = 0;
        let mut expect_tie_partner: Option<usize> = None;
        while i < self.chars.len() {
            let c = self.chars[i];
            let p = self.pos(i);

            if let Some(tie_pos) = expect_tie_partner {
                if self.match_symbol(i).is_none() {
                    return Err(Error::Syntax {
                        message: "tie bar must be followed by a base symbol".into(),
                        position: tie_pos,
                    });
                }
            }

            if c.is_whitespace() {
                self.flush_word()?;
                if self.pending_boundary.is_none() {
                    self.pending_boundary = Some(p);
                }
                i += 1;
            } else if let Some(class) = PunctuationClass::from_char(c) {
                self.flush_word()?;
                self.pending_boundary = None;
                self.tokens
                    .push(PhonemeToken::new(TokenKind::Punctuation(class), p..p + 1));
                i += 1;
            } else if c == PRIMARY_STRESS || c == SECONDARY_STRESS {
                if self.pending_stress.is_some() {
                    self.tolerate(
                        Error::Syntax {
                            message: "repeated stress mark".into(),
                            position: p,
                        },
                        p,
                    )?;
                }
                self.pending_stress = Some(p);
                i += 1;
            } else if c == LENGTH_MARK {
                match self.word.last_mut() {
                    Some(seg) if self.pending_stress.is_none() => {
                        seg.long = true;
                        seg.span.end = p + 1;
                    }
                    _ => self.tolerate(
                        Error::Syntax {
                            message: "length mark without a preceding phoneme".into(),
                            position: p,
                        },
                        p,
                    )?,
                }
                i += 1;
            } else if c == TIE_BAR {
                match self.word.last() {
                    Some(seg)
                        if seg.second.is_none() && !seg.long && self.pending_stress.is_none() =>
                    {
                        expect_tie_partner = Some(p);
                    }
                    _ => {
                        return Err(Error::Syntax {
                            message: "tie bar must follow a single base symbol".into(),
                            position: p,
                        })
                    }
                }
                i += 1;
            } else if let Some(n) = self.match_symbol(i) {
                let symbol: String = self.chars[i..i + n].iter().collect();
                let end = self.pos(i + n - 1) + 1;
                if expect_tie_partner.take().is_some() {
                    let seg = self.word.last_mut().expect("tie follows a segment");
                    seg.second = Some(symbol);
                    seg.span.end = end;
                } else {
                    let stressed = self.pending_stress.take().is_some();
                    self.word.push(Segment {
                        first: symbol,
                        second: None,
                        long: false,
                        stressed,
                        span: p..end,
                    });
                }
                i += n;
            } else if is_combining_mark(c) || is_modifier_letter(c) {
                self.tolerate(
                    Error::UnsupportedDiacritic {
                        codepoint: c as u32,
                        position: p,
                    },
                    p,
                )?;
                i += 1;
            } else {
                return Err(Error::UnknownSymbol {
                    symbol: c.to_string(),
                    position: p,
                });
            }
        }
        if let Some(tie_pos) = expect_tie_partner {
            return Err(Error::Syntax {
                message: "tie bar must be followed by a base symbol".into(),
                position: tie_pos,
            });
        }
        self.flush_word()?;
        let end = self.input_len;
        self.tokens
            .push(PhonemeToken::new(TokenKind::EndOfSequence, end..end));
        Ok(Tokenized {
            tokens: self.tokens,
            warnings: self.warnings,
        })
    }

    fn is_vowel(&self, symbol: &str) -> bool {
        self.table.get(symbol).is_some_and(|e| e.is_vowel())
    }

    fn flush_word(&mut self) -> Result<()> {
        if let Some(p) = self.pending_stress.take() {
            self.tolerate(
                Error::Syntax {
                    message: "stress mark not followed by a phoneme".into(),
                    position: p,
                },
                p,
            )?;
        }
        if self.word.is_empty() {
            return Ok(());
        }
        if let Some(p) = self.pending_boundary.take() {
            if matches!(self.tokens.last(), Some(t) if t.is_phoneme()) {
                self.tokens
                    .push(PhonemeToken::new(TokenKind::WordBoundary, p..p + 1));
            }
        }

        let segments = std::mem::take(&mut self.word);
        let mut iter = segments.into_iter().peekable();
        while let Some(cur) = iter.next() {
            let mergeable = |next: &Segment| {
                cur.second.is_none() && !cur.long && next.second.is_none() && !next.stressed
            };
            let phone = match iter.peek() {
                Some(next) if mergeable(next) && next.first == cur.first => {
                    let next = iter.next().unwrap();
                    let span = cur.span.start..next.span.end;
                    (
                        Phone {
                            second: cur.first.clone(),
                            first: cur.first,
                            long: true,
                            stressed: cur.stressed,
                            tied: false,
                        },
                        span,
                    )
                }
                Some(next)
                    if mergeable(next)
                        && self.is_vowel(&cur.first)
                        && self.is_vowel(&next.first) =>
                {
                    let next = iter.next().unwrap();
                    (
                        Phone {
                            first: cur.first,
                            second: next.first,
                            long: next.long,
                            stressed: cur.stressed,
                            tied: false,
                        },
                        cur.span.start..next.span.end,
                    )
                }
                _ => {
                    let tied = match &cur.second {
                        Some(s) => {
                            !(self.is_vowel(&cur.first) && self.is_vowel(s)) && *s != cur.first
                        }
                        None => false,
                    };
                    (
                        Phone {
                            second: cur.second.unwrap_or_else(|| cur.first.clone()),
                            first: cur.first,
                            long: cur.long,
                            stressed: cur.stressed,
                            tied,
                        },
                        cur.span,
                    )
                }
            };
            self.tokens
                .push(PhonemeToken::new(TokenKind::Phoneme(phone.0), phone.1));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> &'static FeatureTable {
        FeatureTable::shipped()
    }

    fn kinds(input: &str) -> Vec<TokenKind> {
        tokenize(input, ParseMode::Strict, table())
            .unwrap()
            .tokens
            .into_iter()
            .map(|t| t.kind)
            .collect()
    }

    fn ph(first: &str, second: &str, long: bool, stressed: bool, tied: bool) -> TokenKind {
        TokenKind::Phoneme(Phone {
            first: first.into(),
            second: second.into(),
            long,
            stressed,
            tied,
        })
    }

    fn simple(s: &str) -> TokenKind {
        TokenKind::Phoneme(Phone::simple(s))
    }

    #[test]
    fn diphthong_in_word() {
        assert_eq!(
            kinds("taɪm"),
            vec![
                simple("t"),
                ph("a", "ɪ", false, false, false),
                simple("m"),
                TokenKind::EndOfSequence
            ]
        );
    }

    #[test]
    fn long_vowel() {
        assert_eq!(
            kinds("aː"),
            vec![ph("a", "a", true, false, false), TokenKind::EndOfSequence]
        );
    }

    #[test]
    fn affricate() {
        assert_eq!(
            kinds("t͡ʃ"),
            vec![ph("t", "ʃ", false, false, true), TokenKind::EndOfSequence]
        );
        // Ligature and tie-below lookalikes normalize to the same token.
        assert_eq!(kinds("ʧ"), kinds("t͡ʃ"));
        assert_eq!(kinds("t\u{035C}ʃ"), kinds("t͡ʃ"));
    }

    #[test]
    fn stress_attaches_forward() {
        assert_eq!(
            kinds("ˈka"),
            vec![
                ph("k", "k", false, true, false),
                simple("a"),
                TokenKind::EndOfSequence
            ]
        );
        assert_eq!(kinds("ˌka"), kinds("ˈka"));
    }

    #[test]
    fn geminate() {
        assert_eq!(
            kinds("atta"),
            vec![
                simple("a"),
                ph("t", "t", true, false, false),
                simple("a"),
                TokenKind::EndOfSequence
            ]
        );
        assert_eq!(kinds("tt"), kinds("tː"));
    }

    #[test]
    fn three_vowels_split_left() {
        assert_eq!(
            kinds("aɪə"),
            vec![
                ph("a", "ɪ", false, false, false),
                simple("ə"),
                TokenKind::EndOfSequence
            ]
        );
    }

    #[test]
    fn stress_breaks_vowel_cluster() {
        assert_eq!(
            kinds("aˈi"),
            vec![
                simple("a"),
                ph("i", "i", false, true, false),
                TokenKind::EndOfSequence
            ]
        );
    }

    #[test]
    fn word_boundaries_and_punctuation() {
        assert_eq!(
            kinds("a  b, d ."),
            vec![
                simple("a"),
                TokenKind::WordBoundary,
                simple("b"),
                TokenKind::Punctuation(PunctuationClass::Comma),
                simple("d"),
                TokenKind::Punctuation(PunctuationClass::FullStop),
                TokenKind::EndOfSequence
            ]
        );
        assert_eq!(kinds("  "), vec![TokenKind::EndOfSequence]);
        assert_eq!(kinds(""), vec![TokenKind::EndOfSequence]);
    }

    #[test]
    fn decomposed_input_is_composed() {
        // a + combining diaeresis composes to the table's "ä".
        assert_eq!(
            kinds("a\u{0308}"),
            vec![simple("\u{e4}"), TokenKind::EndOfSequence]
        );
        // multi-scalar table symbol
        assert_eq!(
            kinds("t̪a"),
            vec![simple("t̪"), simple("a"), TokenKind::EndOfSequence]
        );
    }

    #[test]
    fn strict_rejects_unsupported_diacritic() {
        let err = tokenize("pʰa", ParseMode::Strict, table()).unwrap_err();
        assert!(
            matches!(
                err,
                Error::UnsupportedDiacritic {
                    codepoint: 0x2B0,
                    position: 1
                }
            ),
            "{err:?}"
        );
        // NFC composes a + U+0325 into one scalar, so both report position 0
        let err = tokenize("a\u{0325}", ParseMode::Strict, table()).unwrap_err();
        assert!(
            matches!(
                err,
                Error::UnsupportedDiacritic {
                    codepoint: 0x325,
                    position: 0
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn lenient_strips_and_warns() {
        let out = tokenize("pʰa", ParseMode::Lenient, table()).unwrap();
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(out.warnings[0].position, 1);
        let k: Vec<_> = out.tokens.into_iter().map(|t| t.kind).collect();
        assert_eq!(k, kinds("pa"));
    }

    #[test]
    fn unknown_symbol_aborts_in_both_modes() {
        for mode in [ParseMode::Strict, ParseMode::Lenient] {
            match tokenize("ab7", mode, table()) {
                Err(Error::UnknownSymbol { symbol, position }) => {
                    assert_eq!(symbol, "7");
                    assert_eq!(position, 2);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn malformed_marks() {
        assert!(tokenize("ː", ParseMode::Strict, table()).is_err());
        assert!(tokenize("a ˈ", ParseMode::Strict, table()).is_err());
        assert!(tokenize("t͡", ParseMode::Strict, table()).is_err());
        assert!(tokenize("͡t", ParseMode::Strict, table()).is_err());
        assert!(tokenize("t͡ ʃ", ParseMode::Lenient, table()).is_err());
        let out = tokenize("a ˈ", ParseMode::Lenient, table()).unwrap();
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn spans_cover_source() {
        let out = tokenize("ˈtaːs", ParseMode::Strict, table()).unwrap();
        let spans: Vec<_> = out.tokens.iter().map(|t| t.span.clone()).collect();
        assert_eq!(spans, vec![1..2, 2..4, 4..5, 5..5]);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(parse_phoneme("t͡ʃ", table()).unwrap().canonical(), "t͡ʃ");
        assert_eq!(parse_phoneme("ˈaɪ", table()).unwrap().canonical(), "aɪ");
        assert_eq!(parse_phoneme("a͡ɪ", table()).unwrap().canonical(), "aɪ");
        assert_eq!(parse_phoneme("ss", table()).unwrap().canonical(), "sː");
        assert!(parse_phoneme("ta", table()).is_err());
    }

    #[test]
    fn render_round_trip() {
        for input in ["ˈtaɪm ɪz, ˌmʌni.", "atta aːɪ t͡ʃː", "aˈa ʃt͡ʃ ?!"] {
            let first = tokenize(input, ParseMode::Strict, table()).unwrap();
            let again = tokenize(&render(&first.tokens), ParseMode::Strict, table()).unwrap();
            let a: Vec<_> = first.tokens.iter().map(|t| &t.kind).collect();
            let b: Vec<_> = again.tokens.iter().map(|t| &t.kind).collect();
            assert_eq!(a, b, "{input}");
        }
    }
}

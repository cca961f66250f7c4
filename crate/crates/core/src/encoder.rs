//! Token and utterance encoding into 55-dim feature rows.

use crate::error::Result;
use crate::ipa_parser::{Phone, PhonemeToken, PunctuationClass, TokenKind};
use crate::schema::{
    FeatureTable, DURATION_INDEX, PHONEME_DIM, SEMI_DIM, STRESS_INDEX, STRUCTURAL_RANGE, TOKEN_DIM,
};

pub type SemiVector = [f64; SEMI_DIM];
pub type PhonemeVector = [f64; PHONEME_DIM];
pub type TokenVector = [f64; TOKEN_DIM];

/// Offset of a structural token's one-hot bit within the structural block.
pub fn structural_slot(kind: &TokenKind) -> Option<usize> {
    Some(match kind {
        TokenKind::Phoneme(_) => return None,
        TokenKind::WordBoundary => 0,
        TokenKind::Punctuation(PunctuationClass::Comma) => 1,
        TokenKind::Punctuation(PunctuationClass::FullStop) => 2,
        TokenKind::Punctuation(PunctuationClass::Question) => 3,
        TokenKind::Punctuation(PunctuationClass::Exclamation) => 4,
        TokenKind::Padding => 5,
        TokenKind::EndOfSequence => 6,
    })
}

pub fn encode_semi(symbol: &str, table: &FeatureTable) -> Result<SemiVector> {
    Ok(table.lookup(symbol)?.features())
}

/// The 46 phonological-feature dims of a phone: both semi-phonemes.
pub fn encode_phone(phone: &Phone, table: &FeatureTable) -> Result<PhonemeVector> {
    let mut v = [0.0; PHONEME_DIM];
    v[..SEMI_DIM].copy_from_slice(&encode_semi(&phone.first, table)?);
    v[SEMI_DIM..].copy_from_slice(&encode_semi(&phone.second, table)?);
    Ok(v)
}

pub fn encode_token(token: &PhonemeToken, table: &FeatureTable) -> Result<TokenVector> {
    let mut v = [0.0; TOKEN_DIM];
    match &token.kind {
        TokenKind::Phoneme(phone) => {
            v[..PHONEME_DIM].copy_from_slice(&encode_phone(phone, table)?);
            v[DURATION_INDEX] = if phone.long { 1.0 } else { 0.0 };
            v[STRESS_INDEX] = if phone.stressed { 1.0 } else { 0.0 };
        }
        kind => {
            let slot = structural_slot(kind).expect("structural token");
            v[STRUCTURAL_RANGE.start + slot] = 1.0;
        }
    }
    Ok(v)
}

/// Feature matrix of one utterance, one row per token.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedUtterance {
    pub rows: Vec<TokenVector>,
    pub tokens: Vec<PhonemeToken>,
    pub language: Option<String>,
}

impl EncodedUtterance {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Row-major values rounded to 32-bit.
    pub fn to_f32(&self) -> Vec<f32> {
        self.rows.iter().flatten().map(|&x| x as f32).collect()
    }
}

/// Encodes `tokens` in order. An end-of-sequence row is appended if the
/// list does not already end with one.
pub fn encode_utterance(
    tokens: &[PhonemeToken],
    table: &FeatureTable,
    language: Option<&str>,
) -> Result<EncodedUtterance> {
    let mut tokens = tokens.to_vec();
    if !matches!(tokens.last(), Some(t) if t.kind == TokenKind::EndOfSequence) {
        let end = tokens.last().map_or(0, |t| t.span.end);
        tokens.push(PhonemeToken::new(TokenKind::EndOfSequence, end..end));
    }
    let rows = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| encode_token(t, table).map_err(|e| e.at_token(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EncodedUtterance {
        rows,
        tokens,
        language: language.map(str::to_string),
    })
}

/// Checks the row-level invariants of an encoded matrix; returns a
/// description of the first violation.
pub fn check_rows(encoded: &EncodedUtterance) -> Result<(), String> {
    use crate::schema::{MANNER_RANGE, PLACE_RANGE};

    if encoded.rows.len() != encoded.tokens.len() {
        return Err("row count differs from token count".into());
    }
    for (i, (row, token)) in encoded.rows.iter().zip(&encoded.tokens).enumerate() {
        if let Some(x) = row.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(format!("row {i}: value {x} outside [0, 1]"));
        }
        let structural: f64 = row[STRUCTURAL_RANGE].iter().sum();
        if token.is_phoneme() {
            if structural != 0.0 {
                return Err(format!("row {i}: phoneme row has structural bits"));
            }
            for half in 0..2 {
                let base = half * SEMI_DIM;
                let place: f64 = row[base + PLACE_RANGE.start..base + PLACE_RANGE.end]
                    .iter()
                    .sum();
                let manner: f64 = row[base + MANNER_RANGE.start..base + MANNER_RANGE.end]
                    .iter()
                    .sum();
                if !(place == manner && (place == 0.0 || place == 1.0)) {
                    return Err(format!(
                        "row {i}: invalid place/manner one-hot in half {half}"
                    ));
                }
            }
        } else if row[..STRUCTURAL_RANGE.start].iter().any(|&x| x != 0.0)
            || structural != 1.0
            || row[STRUCTURAL_RANGE].iter().filter(|&&x| x == 1.0).count() != 1
        {
            return Err(format!("row {i}: structural row is not a clean one-hot"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::ipa_parser::{tokenize, ParseMode};
    use crate::schema::{
        FRONTNESS_INDEX, MANNER_RANGE, OPENNESS_INDEX, PLACE_RANGE, ROUNDED_INDEX, VOICED_INDEX,
    };

    fn table() -> &'static FeatureTable {
        FeatureTable::shipped()
    }

    fn toks(s: &str) -> Vec<PhonemeToken> {
        tokenize(s, ParseMode::Strict, table()).unwrap().tokens
    }

    #[test]
    fn semi_vowel_a() {
        let v = encode_semi("a", table()).unwrap();
        assert!(v[PLACE_RANGE]
            .iter()
            .chain(&v[MANNER_RANGE])
            .all(|&x| x == 0.0));
        assert_eq!(v[VOICED_INDEX], 1.0);
        assert_eq!(v[OPENNESS_INDEX], 1.0);
        assert_eq!(v[FRONTNESS_INDEX], 0.0);
        assert_eq!(v[ROUNDED_INDEX], 0.0);
    }

    #[test]
    fn semi_consonants() {
        let t = encode_semi("t", table()).unwrap();
        let mut expected = [0.0; SEMI_DIM];
        expected[3] = 1.0; // alveolar
        expected[11] = 1.0; // plosive
        assert_eq!(t, expected);

        let m = encode_semi("m", table()).unwrap();
        let mut expected = [0.0; SEMI_DIM];
        expected[0] = 1.0; // bilabial
        expected[12] = 1.0; // nasal
        expected[VOICED_INDEX] = 1.0;
        assert_eq!(m, expected);

        assert!(matches!(
            encode_semi("7", table()),
            Err(Error::NotInTable { .. })
        ));
    }

    #[test]
    fn monophthong_halves_identical() {
        let v = encode_token(&toks("a")[0], table()).unwrap();
        assert_eq!(v[..SEMI_DIM], v[SEMI_DIM..PHONEME_DIM]);
        assert_eq!(v[DURATION_INDEX], 0.0);
    }

    #[test]
    fn padding_row() {
        let v = encode_token(&PhonemeToken::padding(), table()).unwrap();
        for (i, x) in v.iter().enumerate() {
            assert_eq!(*x, if i == 53 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn affricate_halves() {
        let v = encode_token(&toks("t͡ʃ")[0], table()).unwrap();
        assert_eq!(v[..SEMI_DIM], encode_semi("t", table()).unwrap());
        assert_eq!(v[SEMI_DIM..PHONEME_DIM], encode_semi("ʃ", table()).unwrap());
    }

    #[test]
    fn empty_utterance_is_eos() {
        let e = encode_utterance(&[], table(), None).unwrap();
        assert_eq!(e.n_rows(), 1);
        assert_eq!(e.rows[0][54], 1.0);
        check_rows(&e).unwrap();
    }

    #[test]
    fn long_vowel_rows() {
        let e = encode_utterance(&toks("aː"), table(), Some("de")).unwrap();
        assert_eq!(e.n_rows(), 2);
        assert_eq!(e.rows[0][DURATION_INDEX], 1.0);
        assert_eq!(e.language.as_deref(), Some("de"));
        check_rows(&e).unwrap();
    }

    #[test]
    fn geminate_encodes_like_long() {
        let a = encode_token(&toks("tt")[0], table()).unwrap();
        let b = encode_token(&toks("tː")[0], table()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[DURATION_INDEX], 1.0);
    }

    #[test]
    fn stress_and_structural() {
        let e = encode_utterance(&toks("ˈa b?"), table(), None).unwrap();
        assert_eq!(e.rows[0][STRESS_INDEX], 1.0);
        assert_eq!(e.rows[1][48], 1.0);
        assert_eq!(e.rows[3][51], 1.0);
        assert_eq!(e.rows[4][54], 1.0);
        check_rows(&e).unwrap();
    }

    #[test]
    fn unknown_symbol_reports_token_index() {
        let mut tokens = toks("ab");
        tokens[1] = PhonemeToken::new(TokenKind::Phoneme(Phone::simple("Q")), 1..2);
        match encode_utterance(&tokens, table(), None) {
            Err(Error::AtToken { index: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}

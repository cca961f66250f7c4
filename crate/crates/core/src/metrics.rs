//! Unseen phoneme rate and word error rate.

use std::sync::OnceLock;

use regex::Regex;

use crate::error::{Error, Result};
use crate::inventory::PhonemeSet;
use crate::ipa_parser::PhonemeToken;

/// Unseen and total phoneme counts of one utterance. Structural tokens are
/// not counted.
pub fn upr_counts(tokens: &[PhonemeToken], train_set: &PhonemeSet) -> Result<(usize, usize)> {
    let (mut unseen, mut total) = (0, 0);
    for phone in tokens.iter().filter_map(PhonemeToken::phone) {
        total += 1;
        if !train_set.contains(&phone.canonical()) {
            unseen += 1;
        }
    }
    if total == 0 {
        return Err(Error::UndefinedUpr);
    }
    Ok((unseen, total))
}

/// Fraction of the utterance's phonemes that are absent from `train_set`.
pub fn upr_utterance(tokens: &[PhonemeToken], train_set: &PhonemeSet) -> Result<f64> {
    let (unseen, total) = upr_counts(tokens, train_set)?;
    Ok(unseen as f64 / total as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UprReport {
    pub per_utterance: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single utterance.
    pub std: f64,
}

impl UprReport {
    pub fn from_values(per_utterance: Vec<f64>) -> Result<Self> {
        if per_utterance.is_empty() {
            return Err(Error::Empty("corpus"));
        }
        let (mean, std) = mean_and_sample_std(&per_utterance);
        Ok(UprReport {
            per_utterance,
            mean,
            std,
        })
    }

    /// `mean ± std` in percent, two decimals.
    pub fn display_percent(&self) -> String {
        format!("{:.2} ± {:.2}", self.mean * 100.0, self.std * 100.0)
    }
}

/// Sums in input order so the result does not depend on scheduling.
pub fn mean_and_sample_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

pub fn upr_corpus<U>(utterances: &[U], train_set: &PhonemeSet) -> Result<UprReport>
where
    U: AsRef<[PhonemeToken]>,
{
    if utterances.is_empty() {
        return Err(Error::Empty("corpus"));
    }
    let values = utterances
        .iter()
        .enumerate()
        .map(|(i, u)| upr_utterance(u.as_ref(), train_set).map_err(|e| e.at_line(i + 1)))
        .collect::<Result<Vec<_>>>()?;
    UprReport::from_values(values)
}

fn punctuation() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\p{P}").expect("valid regex"))
}

/// Strips Unicode punctuation, lowercases and splits on whitespace.
pub fn normalize_words(text: &str) -> Vec<String> {
    punctuation()
        .replace_all(text, "")
        .to_lowercase()
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

/// Minimum number of word substitutions, deletions and insertions turning
/// `reference` into `hypothesis`.
pub fn word_edit_distance<T: PartialEq>(reference: &[T], hypothesis: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=hypothesis.len()).collect();
    let mut cur = vec![0; hypothesis.len() + 1];
    for (i, r) in reference.iter().enumerate() {
        cur[0] = i + 1;
        for (j, h) in hypothesis.iter().enumerate() {
            let sub = prev[j] + usize::from(r != h);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[hypothesis.len()]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WerCounts {
    pub edits: usize,
    pub reference_words: usize,
}

impl WerCounts {
    pub fn rate(&self) -> f64 {
        self.edits as f64 / self.reference_words as f64
    }
}

pub fn wer_counts(reference: &str, hypothesis: &str) -> Result<WerCounts> {
    let r = normalize_words(reference);
    if r.is_empty() {
        return Err(Error::EmptyReference);
    }
    let h = normalize_words(hypothesis);
    Ok(WerCounts {
        edits: word_edit_distance(&r, &h),
        reference_words: r.len(),
    })
}

pub fn wer(reference: &str, hypothesis: &str) -> Result<f64> {
    wer_counts(reference, hypothesis).map(|c| c.rate())
}

//! Sentence ordering by phonetic coverage.
//!
//! Selection is a multi-round greedy fold. Within a round, the next sentence
//! is the one contributing the most units not yet covered in that round,
//! ties going to the sentence with fewer phonemes and then to the lower
//! input index. When no remaining sentence adds anything, coverage is
//! cleared and a new round starts, so the tail of the order stays ranked.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ipa_parser::{PhonemeToken, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoverageUnit {
    #[default]
    Phoneme,
    /// Ordered pair of adjacent phonemes within a word.
    Diphone,
}

impl FromStr for CoverageUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "phoneme" => Ok(CoverageUnit::Phoneme),
            "diphone" => Ok(CoverageUnit::Diphone),
            _ => Err(format!("unknown unit {s:?} (expected phoneme or diphone)")),
        }
    }
}

impl fmt::Display for CoverageUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverageUnit::Phoneme => "phoneme",
            CoverageUnit::Diphone => "diphone",
        })
    }
}

pub type UnitSet = BTreeSet<String>;

/// Distinct coverage units of one sentence. Stress and length are ignored.
pub fn sentence_units(tokens: &[PhonemeToken], unit: CoverageUnit) -> UnitSet {
    let key = |t: &PhonemeToken| {
        t.phone().map(|p| {
            let mut p = p.clone();
            p.long = false;
            p.canonical()
        })
    };
    match unit {
        CoverageUnit::Phoneme => tokens.iter().filter_map(key).collect(),
        CoverageUnit::Diphone => {
            let mut units = UnitSet::new();
            let mut prev: Option<String> = None;
            for t in tokens {
                match (&t.kind, key(t)) {
                    (TokenKind::Phoneme(_), Some(k)) => {
                        if let Some(p) = prev {
                            units.insert(format!("{p} {k}"));
                        }
                        prev = Some(k);
                    }
                    _ => prev = None,
                }
            }
            units
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    /// Input indices in selection order.
    pub order: Vec<usize>,
    /// Newly covered units at each selection.
    pub gains: Vec<usize>,
    /// 1-based round of each selection.
    pub rounds: Vec<usize>,
    pub unit: CoverageUnit,
}

impl CoverageReport {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// One `rank<TAB>index<TAB>gain<TAB>round` line per selection; rank is
    /// 1-based and index is the 0-based input position.
    pub fn write_tsv(&self, mut out: impl Write) -> std::io::Result<()> {
        for (rank, ((index, gain), round)) in self
            .order
            .iter()
            .zip(&self.gains)
            .zip(&self.rounds)
            .enumerate()
        {
            writeln!(out, "{}\t{index}\t{gain}\t{round}", rank + 1)?;
        }
        Ok(())
    }
}

pub fn coverage_sort<U>(sentences: &[U], unit: CoverageUnit) -> Result<CoverageReport>
where
    U: AsRef<[PhonemeToken]>,
{
    if sentences.is_empty() {
        return Err(Error::Empty("sentence list"));
    }
    let mut units = Vec::with_capacity(sentences.len());
    let mut sizes = Vec::with_capacity(sentences.len());
    for (i, s) in sentences.iter().enumerate() {
        let n = s.as_ref().iter().filter(|t| t.is_phoneme()).count();
        if n == 0 {
            return Err(Error::Empty("sentence (no phonemes)").at_line(i + 1));
        }
        units.push(sentence_units(s.as_ref(), unit));
        sizes.push(n);
    }
    Ok(greedy_order(&units, &sizes, unit))
}

/// Greedy selection over precomputed unit sets. `sizes` holds the phoneme
/// count of each sentence, used for tie-breaking.
pub fn greedy_order(units: &[UnitSet], sizes: &[usize], unit: CoverageUnit) -> CoverageReport {
    assert_eq!(units.len(), sizes.len());
    let n = units.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut covered = UnitSet::new();
    let mut round = 1;
    let mut report = CoverageReport {
        order: Vec::with_capacity(n),
        gains: Vec::with_capacity(n),
        rounds: Vec::with_capacity(n),
        unit,
    };

    let pick = |remaining: &[usize], covered: &UnitSet| -> (usize, usize) {
        remaining
            .iter()
            .enumerate()
            .map(|(slot, &i)| (slot, units[i].difference(covered).count()))
            .min_by_key(|&(slot, gain)| {
                let i = remaining[slot];
                (std::cmp::Reverse(gain), sizes[i], i)
            })
            .expect("remaining is non-empty")
    };

    while !remaining.is_empty() {
        let (mut slot, mut gain) = pick(&remaining, &covered);
        if gain == 0 && !covered.is_empty() {
            covered.clear();
            round += 1;
            (slot, gain) = pick(&remaining, &covered);
        }
        let i = remaining.remove(slot);
        covered.extend(units[i].iter().cloned());
        report.order.push(i);
        report.gains.push(gain);
        report.rounds.push(round);
    }
    report
}

pub fn select_top_k(report: &CoverageReport, k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > report.len() {
        return Err(Error::KOutOfRange { k, n: report.len() });
    }
    Ok(report.order[..k].to_vec())
}

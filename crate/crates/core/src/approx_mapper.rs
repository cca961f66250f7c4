//! Nearest in-inventory phoneme for unseen phonemes.
//!
//! Distance is (optionally weighted) Euclidean over the 46 phonological
//! feature dims of the two semi-phonemes; duration, stress and structural
//! dims are ignored. This is a diagnostic reconstruction of how a model fed
//! with phonological features tends to approximate unseen sounds, not a
//! claim about what any trained model does internally.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;

use crate::encoder::{encode_phone, PhonemeVector};
use crate::error::{Error, Result};
use crate::inventory::PhonemeSet;
use crate::ipa_parser::{parse_phoneme, Phone, PhonemeToken, TokenKind};
use crate::schema::{
    FeatureTable, FRONTNESS_INDEX, MANNER_RANGE, OPENNESS_INDEX, PHONEME_DIM, PLACE_RANGE,
    ROUNDED_INDEX, SEMI_DIM, VOICED_INDEX,
};

/// Number of runners-up kept in each result.
pub const RUNNERS_UP: usize = 3;

/// Per-group weights applied to squared differences, identical in both halves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureWeights {
    pub place: f64,
    pub manner: f64,
    pub voiced: f64,
    pub vowel_position: f64,
    pub rounded: f64,
}

impl Default for FeatureWeights {
    fn default() -> Self {
        FeatureWeights {
            place: 1.0,
            manner: 1.0,
            voiced: 1.0,
            vowel_position: 1.0,
            rounded: 1.0,
        }
    }
}

impl FeatureWeights {
    fn per_dim(&self) -> [f64; PHONEME_DIM] {
        let mut w = [0.0; PHONEME_DIM];
        for half in [0, SEMI_DIM] {
            for d in PLACE_RANGE {
                w[half + d] = self.place;
            }
            for d in MANNER_RANGE {
                w[half + d] = self.manner;
            }
            w[half + VOICED_INDEX] = self.voiced;
            w[half + OPENNESS_INDEX] = self.vowel_position;
            w[half + FRONTNESS_INDEX] = self.vowel_position;
            w[half + ROUNDED_INDEX] = self.rounded;
        }
        w
    }
}

pub fn weighted_distance(
    a: &PhonemeVector,
    b: &PhonemeVector,
    weights: &[f64; PHONEME_DIM],
) -> f64 {
    a.iter()
        .zip(b)
        .zip(weights)
        .map(|((x, y), w)| w * (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn distance(a: &PhonemeVector, b: &PhonemeVector) -> f64 {
    weighted_distance(a, b, &FeatureWeights::default().per_dim())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationResult {
    pub source: String,
    pub target: String,
    pub distance: f64,
    /// Next-closest candidates, by non-decreasing distance.
    pub runners_up: Vec<(String, f64)>,
}

impl ApproximationResult {
    /// Distance gap between the target and the closest runner-up. A small
    /// margin flags a near-tie where the approximation may collapse onto
    /// an inappropriate phoneme.
    pub fn margin(&self) -> Option<f64> {
        self.runners_up.first().map(|(_, d)| d - self.distance)
    }
}

impl fmt::Display for ApproximationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{:.6}", self.source, self.target, self.distance)
    }
}

/// Writes one `source<TAB>target<TAB>distance` line per result.
pub fn write_log(results: &[ApproximationResult], mut out: impl Write) -> std::io::Result<()> {
    for r in results {
        writeln!(out, "{r}")?;
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Candidate {
    canonical: String,
    phone: Phone,
    vector: PhonemeVector,
}

/// Encoded inventory ready for nearest-neighbour queries.
#[derive(Debug, Clone)]
pub struct PhonemeSpace<'t> {
    table: &'t FeatureTable,
    candidates: Vec<Candidate>,
    weights: [f64; PHONEME_DIM],
}

impl<'t> PhonemeSpace<'t> {
    /// Builds the search space from canonical (or parseable) phoneme strings.
    /// Order of `inventory` does not affect results.
    pub fn new<I, S>(inventory: I, table: &'t FeatureTable) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut candidates = inventory
            .into_iter()
            .map(|s| {
                let phone = parse_phoneme(s.as_ref(), table)?;
                let vector = encode_phone(&phone, table)?;
                Ok(Candidate {
                    canonical: phone.canonical(),
                    phone,
                    vector,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if candidates.is_empty() {
            return Err(Error::Empty("inventory"));
        }
        candidates.sort_by(|a, b| a.canonical.cmp(&b.canonical));
        candidates.dedup_by(|a, b| a.canonical == b.canonical);
        Ok(PhonemeSpace {
            table,
            candidates,
            weights: FeatureWeights::default().per_dim(),
        })
    }

    pub fn with_weights(mut self, weights: FeatureWeights) -> Self {
        self.weights = weights.per_dim();
        self
    }

    pub fn contains(&self, phone: &Phone) -> bool {
        let key = phone.canonical();
        self.candidates
            .binary_search_by(|c| c.canonical.as_str().cmp(&key))
            .is_ok()
    }

    /// Closest candidate to `source`. A source already in the inventory maps
    /// to itself. Ties go to the lower codepoint sequence.
    pub fn nearest(&self, source: &Phone) -> Result<ApproximationResult> {
        let key = source.canonical();
        let vector = encode_phone(source, self.table)?;
        let mut ranked: Vec<(&str, f64)> = self
            .candidates
            .iter()
            .map(|c| {
                (
                    c.canonical.as_str(),
                    weighted_distance(&vector, &c.vector, &self.weights),
                )
            })
            .collect();
        ranked.sort_by(|a, b| {
            a.1.partial_cmp(&b.1)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.0.cmp(b.0))
        });
        if let Some(pos) = ranked.iter().position(|(c, _)| *c == key) {
            let own = ranked.remove(pos);
            ranked.insert(0, (own.0, 0.0));
        }
        let (target, distance) = ranked[0];
        Ok(ApproximationResult {
            source: key,
            target: target.to_string(),
            distance,
            runners_up: ranked[1..]
                .iter()
                .take(RUNNERS_UP)
                .map(|(c, d)| (c.to_string(), *d))
                .collect(),
        })
    }

    fn phone_of(&self, canonical: &str) -> &Phone {
        let i = self
            .candidates
            .binary_search_by(|c| c.canonical.as_str().cmp(canonical))
            .expect("target is a candidate");
        &self.candidates[i].phone
    }

    /// Replaces every out-of-inventory phoneme with its nearest candidate.
    /// The replacement takes the candidate's halves and duration and keeps
    /// the source's stress and span. Returns the substitution log in token
    /// order.
    pub fn map_utterance(
        &self,
        tokens: &[PhonemeToken],
    ) -> Result<(Vec<PhonemeToken>, Vec<ApproximationResult>)> {
        let mut out = Vec::with_capacity(tokens.len());
        let mut log = Vec::new();
        for (i, token) in tokens.iter().enumerate() {
            match &token.kind {
                TokenKind::Phoneme(phone) if !self.contains(phone) => {
                    let result = self.nearest(phone).map_err(|e| e.at_token(i))?;
                    let mut replacement = self.phone_of(&result.target).clone();
                    replacement.stressed = phone.stressed;
                    out.push(PhonemeToken::new(
                        TokenKind::Phoneme(replacement),
                        token.span.clone(),
                    ));
                    log.push(result);
                }
                _ => out.push(token.clone()),
            }
        }
        Ok((out, log))
    }
}

pub fn nearest_phoneme(
    source: &Phone,
    inventory: &PhonemeSet,
    table: &FeatureTable,
) -> Result<ApproximationResult> {
    PhonemeSpace::new(inventory, table)?.nearest(source)
}

pub fn map_utterance(
    tokens: &[PhonemeToken],
    inventory: &PhonemeSet,
    table: &FeatureTable,
) -> Result<(Vec<PhonemeToken>, Vec<ApproximationResult>)> {
    PhonemeSpace::new(inventory, table)?.map_utterance(tokens)
}

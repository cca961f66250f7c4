//! Feature-vector layout and the articulatory feature table.
//!
//! A semi-phoneme is described by 23 dimensions:
//!
//! | index  | group     | kind       |
//! |--------|-----------|------------|
//! | 0..11  | place     | one-hot    |
//! | 11..19 | manner    | one-hot    |
//! | 19     | voiced    | binary     |
//! | 20..22 | openness, frontness | continuous |
//! | 22     | rounded   | binary     |
//!
//! The itemization is a reconstruction from the standard IPA chart axes: the
//! published description only fixes the total (23) and says that all features
//! are one-hot except vowel openness and frontness.
//!
//! A phoneme is two semi-phonemes (46 dims), followed by a duration flag, a
//! stress flag and a 7-way one-hot block for structural tokens, 55 in total.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Range;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

pub const SEMI_DIM: usize = 23;
pub const PHONEME_DIM: usize = 2 * SEMI_DIM;
pub const STRUCTURAL_DIM: usize = 7;
pub const TOKEN_DIM: usize = PHONEME_DIM + 1 + 1 + STRUCTURAL_DIM;

pub const PLACE_RANGE: Range<usize> = 0..11;
pub const MANNER_RANGE: Range<usize> = 11..19;
pub const VOICED_INDEX: usize = 19;
pub const OPENNESS_INDEX: usize = 20;
pub const FRONTNESS_INDEX: usize = 21;
pub const ROUNDED_INDEX: usize = 22;

pub const DURATION_INDEX: usize = PHONEME_DIM;
pub const STRESS_INDEX: usize = PHONEME_DIM + 1;
pub const STRUCTURAL_RANGE: Range<usize> = STRESS_INDEX + 1..TOKEN_DIM;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    OneHot,
    Binary,
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureGroup {
    pub name: String,
    pub range: Range<usize>,
    pub kind: GroupKind,
}

/// Layout of the token vector space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSchema {
    pub semi_dim: usize,
    pub phoneme_dim: usize,
    pub token_dim: usize,
    /// Groups in index order, tiling `0..token_dim`.
    pub groups: Vec<FeatureGroup>,
}

impl FeatureSchema {
    pub fn group(&self, name: &str) -> Option<&FeatureGroup> {
        self.groups.iter().find(|g| g.name == name)
    }
}

fn semi_groups(prefix: &str, offset: usize) -> Vec<FeatureGroup> {
    let g = |name: &str, range: Range<usize>, kind| FeatureGroup {
        name: format!("{prefix}.{name}"),
        range: range.start + offset..range.end + offset,
        kind,
    };
    vec![
        g("place", PLACE_RANGE, GroupKind::OneHot),
        g("manner", MANNER_RANGE, GroupKind::OneHot),
        g("voiced", VOICED_INDEX..VOICED_INDEX + 1, GroupKind::Binary),
        g(
            "vowel_position",
            OPENNESS_INDEX..FRONTNESS_INDEX + 1,
            GroupKind::Continuous,
        ),
        g(
            "rounded",
            ROUNDED_INDEX..ROUNDED_INDEX + 1,
            GroupKind::Binary,
        ),
    ]
}

/// Returns the process-wide schema.
pub fn layout() -> &'static FeatureSchema {
    static SCHEMA: OnceLock<FeatureSchema> = OnceLock::new();
    SCHEMA.get_or_init(|| {
        let mut groups = semi_groups("first", 0);
        groups.extend(semi_groups("second", SEMI_DIM));
        groups.push(FeatureGroup {
            name: "duration".into(),
            range: DURATION_INDEX..DURATION_INDEX + 1,
            kind: GroupKind::Binary,
        });
        groups.push(FeatureGroup {
            name: "stress".into(),
            range: STRESS_INDEX..STRESS_INDEX + 1,
            kind: GroupKind::Binary,
        });
        groups.push(FeatureGroup {
            name: "structural".into(),
            range: STRUCTURAL_RANGE,
            kind: GroupKind::OneHot,
        });
        FeatureSchema {
            semi_dim: SEMI_DIM,
            phoneme_dim: PHONEME_DIM,
            token_dim: TOKEN_DIM,
            groups,
        }
    })
}

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident, $category:literal { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];
            pub const CATEGORY: &'static str = $category;

            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }

            pub fn index(self) -> usize {
                self as usize
            }
        }

        impl FromStr for $name {
            type Err = ();

            fn from_str(s: &str) -> Result<Self, ()> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(()),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

named_enum!(
    /// Consonant place of articulation, in one-hot order.
    Place, "place" {
        Bilabial => "bilabial",
        Labiodental => "labiodental",
        Dental => "dental",
        Alveolar => "alveolar",
        Postalveolar => "postalveolar",
        Retroflex => "retroflex",
        Palatal => "palatal",
        Velar => "velar",
        Uvular => "uvular",
        Pharyngeal => "pharyngeal",
        Glottal => "glottal",
    }
);

named_enum!(
    /// Consonant manner of articulation, in one-hot order.
    Manner, "manner" {
        Plosive => "plosive",
        Nasal => "nasal",
        Trill => "trill",
        Tap => "tap",
        Fricative => "fricative",
        LateralFricative => "lateral-fricative",
        Approximant => "approximant",
        LateralApproximant => "lateral-approximant",
    }
);

named_enum!(
    /// Vowel height, from close (0) to open (1) in steps of 1/6.
    Openness, "openness" {
        Close => "close",
        NearClose => "near-close",
        CloseMid => "close-mid",
        Mid => "mid",
        OpenMid => "open-mid",
        NearOpen => "near-open",
        Open => "open",
    }
);

named_enum!(
    /// Vowel backness, from front (0) to back (1) in steps of 1/4.
    Frontness, "frontness" {
        Front => "front",
        NearFront => "near-front",
        Central => "central",
        NearBack => "near-back",
        Back => "back",
    }
);

impl Openness {
    pub fn value(self) -> f64 {
        self.index() as f64 / 6.0
    }
}

impl Frontness {
    pub fn value(self) -> f64 {
        self.index() as f64 / 4.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoundClass {
    Vowel,
    Consonant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Articulation {
    Consonant {
        place: Place,
        manner: Manner,
    },
    Vowel {
        openness: Openness,
        frontness: Frontness,
        rounded: bool,
    },
}

/// One row of the feature table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArticulatoryEntry {
    pub symbol: String,
    pub voiced: bool,
    pub articulation: Articulation,
}

impl ArticulatoryEntry {
    pub fn class(&self) -> SoundClass {
        match self.articulation {
            Articulation::Consonant { .. } => SoundClass::Consonant,
            Articulation::Vowel { .. } => SoundClass::Vowel,
        }
    }

    pub fn is_vowel(&self) -> bool {
        self.class() == SoundClass::Vowel
    }

    /// The 23-dim semi-phoneme vector for this entry.
    pub fn features(&self) -> [f64; SEMI_DIM] {
        let mut v = [0.0; SEMI_DIM];
        match self.articulation {
            Articulation::Consonant { place, manner } => {
                v[PLACE_RANGE.start + place.index()] = 1.0;
                v[MANNER_RANGE.start + manner.index()] = 1.0;
            }
            Articulation::Vowel {
                openness,
                frontness,
                rounded,
            } => {
                v[OPENNESS_INDEX] = openness.value();
                v[FRONTNESS_INDEX] = frontness.value();
                v[ROUNDED_INDEX] = if rounded { 1.0 } else { 0.0 };
            }
        }
        if self.voiced {
            v[VOICED_INDEX] = 1.0;
        }
        v
    }
}

const SHIPPED_TABLE: &str = include_str!("../data/feature_table.tsv");

/// Symbol-keyed collection of [`ArticulatoryEntry`] rows. Keys are NFC.
#[derive(Debug, Clone, Default)]
pub struct FeatureTable {
    entries: Vec<ArticulatoryEntry>,
    index: HashMap<String, usize>,
    symbol_chars: HashSet<char>,
    max_symbol_chars: usize,
}

impl FeatureTable {
    /// The table bundled with the crate.
    pub fn shipped() -> &'static FeatureTable {
        static TABLE: OnceLock<FeatureTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            FeatureTable::parse(SHIPPED_TABLE).expect("shipped feature table is valid")
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Parses the 8-column TSV format. Line and column numbers in errors
    /// are 1-based.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = FeatureTable::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.starts_with('#') || raw.trim().is_empty() {
                continue;
            }
            let entry = parse_row(raw, line)?;
            table.insert(entry, line)?;
        }
        Ok(table)
    }

    fn insert(&mut self, entry: ArticulatoryEntry, line: usize) -> Result<()> {
        if self.index.contains_key(&entry.symbol) {
            return Err(Error::DuplicateSymbol {
                symbol: entry.symbol,
                line,
            });
        }
        self.max_symbol_chars = self.max_symbol_chars.max(entry.symbol.chars().count());
        self.symbol_chars.extend(entry.symbol.chars());
        self.index.insert(entry.symbol.clone(), self.entries.len());
        self.entries.push(entry);
        Ok(())
    }

    pub fn get(&self, symbol: &str) -> Option<&ArticulatoryEntry> {
        self.index.get(symbol).map(|&i| &self.entries[i])
    }

    pub fn lookup(&self, symbol: &str) -> Result<&ArticulatoryEntry> {
        self.get(symbol).ok_or_else(|| Error::NotInTable {
            symbol: symbol.to_string(),
        })
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.index.contains_key(symbol)
    }

    pub fn entries(&self) -> &[ArticulatoryEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether `c` occurs in any symbol.
    pub fn uses_char(&self, c: char) -> bool {
        self.symbol_chars.contains(&c)
    }

    /// Length in chars of the longest symbol, for longest-match scanning.
    pub fn max_symbol_chars(&self) -> usize {
        self.max_symbol_chars
    }
}

fn parse_row(raw: &str, line: usize) -> Result<ArticulatoryEntry> {
    let cols: Vec<&str> = raw.split('\t').collect();
    if cols.len() != 8 {
        return Err(Error::MalformedRow {
            line,
            column: cols.len().min(8) + 1,
            message: format!("expected 8 tab-separated columns, found {}", cols.len()),
        });
    }
    let malformed = |column: usize, message: String| Error::MalformedRow {
        line,
        column,
        message,
    };

    let symbol: String = cols[0].trim().nfc().collect();
    if symbol.is_empty() {
        return Err(malformed(1, "empty symbol".into()));
    }

    let flag = |column: usize, name: &str| -> Result<bool> {
        match cols[column - 1].trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(malformed(
                column,
                format!("{name} must be 0 or 1, found {other:?}"),
            )),
        }
    };
    fn category<T: FromStr>(
        cols: &[&str],
        column: usize,
        line: usize,
        name: &'static str,
    ) -> Result<T> {
        let value = cols[column - 1].trim();
        value.parse().map_err(|_| Error::UnknownCategory {
            category: name,
            value: value.to_string(),
            line,
            column,
        })
    }
    let require_empty = |column: usize, name: &str, class: &str| -> Result<()> {
        if cols[column - 1].trim().is_empty() {
            Ok(())
        } else {
            Err(malformed(
                column,
                format!("{name} does not apply to a {class}"),
            ))
        }
    };

    let voiced = flag(5, "voiced")?;
    let articulation = match cols[1].trim() {
        "consonant" => {
            require_empty(6, "openness", "consonant")?;
            require_empty(7, "frontness", "consonant")?;
            require_empty(8, "rounded", "consonant")?;
            Articulation::Consonant {
                place: category(&cols, 3, line, Place::CATEGORY)?,
                manner: category(&cols, 4, line, Manner::CATEGORY)?,
            }
        }
        "vowel" => {
            require_empty(3, "place", "vowel")?;
            require_empty(4, "manner", "vowel")?;
            if !voiced {
                return Err(malformed(5, "vowels must be voiced".into()));
            }
            Articulation::Vowel {
                openness: category(&cols, 6, line, Openness::CATEGORY)?,
                frontness: category(&cols, 7, line, Frontness::CATEGORY)?,
                rounded: flag(8, "rounded")?,
            }
        }
        other => {
            return Err(Error::UnknownCategory {
                category: "class",
                value: other.to_string(),
                line,
                column: 2,
            })
        }
    };
    Ok(ArticulatoryEntry {
        symbol,
        voiced,
        articulation,
    })
}

//! Per-language phoneme inventories.
//!
//! Inventory files are TOML:
//!
//! ```toml
//! code = "es"
//! name = "Spanish"
//! reference_count = 33   # optional, informational
//! phonemes = ["p", "b", "t͡ʃ", "a"]
//! ```
//!
//! Every phoneme is stored in canonical form (see [`Phone::canonical`]), so
//! `"tt"` and `"tː"` name the same member.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ipa_parser::{parse_phoneme, Phone};
use crate::schema::FeatureTable;

/// Canonical phoneme strings.
pub type PhonemeSet = BTreeSet<String>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InventoryFile {
    code: String,
    name: String,
    #[serde(default)]
    reference_count: Option<u32>,
    phonemes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageInventory {
    pub code: String,
    pub display_name: String,
    pub phonemes: PhonemeSet,
    /// Phoneme count of the original training data for this language, if
    /// known. Not expected to match `phonemes.len()`.
    pub reference_count: Option<u32>,
}

impl LanguageInventory {
    pub fn contains(&self, phone: &Phone) -> bool {
        self.phonemes.contains(&phone.canonical())
    }

    pub fn len(&self) -> usize {
        self.phonemes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phonemes.is_empty()
    }

    pub fn parse(text: &str, origin: &str, table: &FeatureTable) -> Result<Self> {
        let err = |message: String| Error::Inventory {
            path: origin.to_string(),
            message,
        };
        let file: InventoryFile = toml::from_str(text).map_err(|e| err(e.to_string()))?;
        if file.phonemes.is_empty() {
            return Err(err("phoneme list is empty".into()));
        }
        let mut phonemes = PhonemeSet::new();
        for raw in &file.phonemes {
            let phone =
                parse_phoneme(raw, table).map_err(|e| err(format!("phoneme {raw:?}: {e}")))?;
            let canonical = phone.canonical();
            if !phonemes.insert(canonical.clone()) {
                return Err(err(format!("duplicate phoneme {canonical:?}")));
            }
        }
        Ok(LanguageInventory {
            code: file.code,
            display_name: file.name,
            phonemes,
            reference_count: file.reference_count,
        })
    }
}

pub fn load_inventory(path: impl AsRef<Path>, table: &FeatureTable) -> Result<LanguageInventory> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    LanguageInventory::parse(&text, &path.display().to_string(), table)
}

/// Union of the phoneme sets of `inventories`.
pub fn union<'a, I>(inventories: I) -> Result<PhonemeSet>
where
    I: IntoIterator<Item = &'a LanguageInventory>,
{
    let mut iter = inventories.into_iter().peekable();
    if iter.peek().is_none() {
        return Err(Error::Empty("inventory list"));
    }
    Ok(iter.flat_map(|inv| inv.phonemes.iter().cloned()).collect())
}

const SHIPPED: &[(&str, &str)] = &[
    ("de.toml", include_str!("../data/inventories/de.toml")),
    ("en.toml", include_str!("../data/inventories/en.toml")),
    ("es.toml", include_str!("../data/inventories/es.toml")),
    ("fr.toml", include_str!("../data/inventories/fr.toml")),
    ("gr.toml", include_str!("../data/inventories/gr.toml")),
    ("it.toml", include_str!("../data/inventories/it.toml")),
    ("ko.toml", include_str!("../data/inventories/ko.toml")),
];

/// The six training languages of the reference setup.
pub const TRAINING_LANGUAGES: &[&str] = &["en", "de", "fr", "es", "it", "ko"];

/// Inventories keyed by language code.
#[derive(Debug, Clone, Default)]
pub struct Inventories {
    by_code: BTreeMap<String, LanguageInventory>,
}

impl Inventories {
    /// Inventories bundled with the crate, parsed against `table`.
    pub fn shipped(table: &FeatureTable) -> Result<Self> {
        let mut out = Inventories::default();
        for (name, text) in SHIPPED {
            out.insert(LanguageInventory::parse(text, name, table)?)?;
        }
        Ok(out)
    }

    /// Loads every `*.toml` file in `dir`.
    pub fn load_dir(dir: impl AsRef<Path>, table: &FeatureTable) -> Result<Self> {
        let dir = dir.as_ref();
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| Error::io(dir, e))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "toml"))
            .collect();
        paths.sort();
        let mut out = Inventories::default();
        for path in paths {
            out.insert(load_inventory(&path, table)?)?;
        }
        Ok(out)
    }

    pub fn insert(&mut self, inventory: LanguageInventory) -> Result<()> {
        if self.by_code.contains_key(&inventory.code) {
            return Err(Error::Inventory {
                path: inventory.code.clone(),
                message: "language code defined twice".into(),
            });
        }
        self.by_code.insert(inventory.code.clone(), inventory);
        Ok(())
    }

    pub fn get(&self, code: &str) -> Result<&LanguageInventory> {
        self.by_code
            .get(code)
            .ok_or_else(|| Error::UnknownLanguage {
                code: code.to_string(),
                available: self.codes().map(str::to_string).collect(),
            })
    }

    pub fn codes(&self) -> impl Iterator<Item = &str> {
        self.by_code.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LanguageInventory> {
        self.by_code.values()
    }

    pub fn len(&self) -> usize {
        self.by_code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_code.is_empty()
    }

    /// Union of the inventories named by `codes`.
    pub fn union_of<S: AsRef<str>>(&self, codes: &[S]) -> Result<PhonemeSet> {
        let invs = codes
            .iter()
            .map(|c| self.get(c.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        union(invs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::encode_phone;
    use crate::ipa_parser::{tokenize, ParseMode};

    fn table() -> &'static FeatureTable {
        FeatureTable::shipped()
    }

    fn inv(code: &str, phonemes: &[&str]) -> LanguageInventory {
        LanguageInventory {
            code: code.into(),
            display_name: code.into(),
            phonemes: phonemes.iter().map(|s| s.to_string()).collect(),
            reference_count: None,
        }
    }

    #[test]
    fn shipped_inventories_are_encodable() {
        let all = Inventories::shipped(table()).unwrap();
        assert_eq!(all.len(), 7);
        let es = all.get("es").unwrap();
        assert_eq!(es.code, "es");
        assert_eq!(es.reference_count, Some(33));
        for inv in all.iter() {
            for p in &inv.phonemes {
                let phone = parse_phoneme(p, table()).unwrap();
                assert_eq!(&phone.canonical(), p);
                encode_phone(&phone, table()).unwrap();
            }
        }
    }

    #[test]
    fn membership_matches_tokenizer_canonical_form() {
        let all = Inventories::shipped(table()).unwrap();
        let it = all.get("it").unwrap();
        let toks = tokenize("atta", ParseMode::Strict, table()).unwrap();
        let gem = toks.tokens[1].phone().unwrap();
        assert!(it.contains(gem));
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        let dup = "code = \"xx\"\nname = \"X\"\nphonemes = [\"a\", \"b\", \"a\"]\n";
        let err = LanguageInventory::parse(dup, "dup.toml", table()).unwrap_err();
        assert!(err.to_string().contains("duplicate phoneme \"a\""), "{err}");

        // Canonical duplicates: geminate spelling and length mark.
        let dup = "code = \"xx\"\nname = \"X\"\nphonemes = [\"tt\", \"tː\"]\n";
        assert!(LanguageInventory::parse(dup, "dup.toml", table()).is_err());

        let empty = "code = \"xx\"\nname = \"X\"\nphonemes = []\n";
        let err = LanguageInventory::parse(empty, "empty.toml", table()).unwrap_err();
        assert!(err.to_string().contains("empty"), "{err}");
    }

    #[test]
    fn rejects_unknown_and_multi_phoneme_entries() {
        let text = "code = \"xx\"\nname = \"X\"\nphonemes = [\"a\", \"7\"]\n";
        assert!(LanguageInventory::parse(text, "x.toml", table()).is_err());
        let text = "code = \"xx\"\nname = \"X\"\nphonemes = [\"ta\"]\n";
        assert!(LanguageInventory::parse(text, "x.toml", table()).is_err());
    }

    #[test]
    fn union_basics() {
        let a = inv("a", &["a", "b"]);
        let b = inv("b", &["b", "c"]);
        let u = union([&a, &b]).unwrap();
        assert_eq!(u, ["a", "b", "c"].iter().map(|s| s.to_string()).collect());
        assert_eq!(union([&a]).unwrap(), a.phonemes);
        assert!(matches!(
            union(std::iter::empty::<&LanguageInventory>()),
            Err(Error::Empty(_))
        ));
    }

    #[test]
    fn union_of_training_languages_is_superset() {
        let all = Inventories::shipped(table()).unwrap();
        let u = all.union_of(TRAINING_LANGUAGES).unwrap();
        for code in TRAINING_LANGUAGES {
            assert!(all.get(code).unwrap().phonemes.is_subset(&u));
        }
    }

    #[test]
    fn unknown_code_lists_available() {
        let all = Inventories::shipped(table()).unwrap();
        let err = all.get("xx").unwrap_err().to_string();
        assert!(err.contains("en") && err.contains("ko"), "{err}");
    }
}

//! Phonological feature compiler for IPA phoneme sequences.
//!
//! Tokenize IPA utterances, encode them into fixed-width feature matrices,
//! and measure or prepare corpora against per-language phoneme inventories.
//!
//! ```
//! use phonfeat::{encoder, ipa_parser, schema::FeatureTable};
//!
//! let table = FeatureTable::shipped();
//! let parsed = ipa_parser::tokenize("ˈtaɪm", ipa_parser::ParseMode::Strict, table).unwrap();
//! let matrix = encoder::encode_utterance(&parsed.tokens, table, Some("en")).unwrap();
//! assert_eq!(matrix.n_rows(), 4);
//! assert_eq!(matrix.rows[0].len(), 55);
//! ```

pub mod approx_mapper;
pub mod cli;
pub mod corpus_select;
pub mod encoder;
pub mod error;
pub mod export;
pub mod inventory;
pub mod ipa_parser;
pub mod metrics;
pub mod schema;

pub use error::{Error, Result};

//! Splits IPA transcriptions into phoneme, boundary and punctuation tokens.
//!
//! cargo run --example tokenize_ipa -- "ˈhaʊs, ˈmaʊs." "pʰa"

use phonfeat::ipa_parser::{render, tokenize, ParseMode, TokenKind};
use phonfeat::schema::FeatureTable;

fn main() {
    let table = FeatureTable::shipped();
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = ["ˈt͡ʃaʊ", "ˈitːa, ˌkasa.", "pʰa"].map(String::from).to_vec();
    }

    for input in &inputs {
        println!("{input}");
        for mode in [ParseMode::Strict, ParseMode::Lenient] {
            match tokenize(input, mode, table) {
                Ok(t) => {
                    let shown: Vec<String> = t
                        .tokens
                        .iter()
                        .map(|tok| match &tok.kind {
                            TokenKind::Phoneme(p) => format!("{p}"),
                            TokenKind::WordBoundary => "_".into(),
                            TokenKind::Punctuation(c) => c.as_char().to_string(),
                            TokenKind::Padding => "<pad>".into(),
                            TokenKind::EndOfSequence => "</s>".into(),
                        })
                        .collect();
                    println!("  {mode:?}: {}", shown.join(" "));
                    for w in &t.warnings {
                        println!("    warning at char {}: {}", w.position, w.message);
                    }
                    println!("    rendered: {}", render(&t.tokens));
                }
                Err(e) => println!("  {mode:?}: error: {e}"),
            }
        }
    }
}

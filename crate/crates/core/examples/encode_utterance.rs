//! Encodes one utterance into 55-dim token rows and prints the active
//! feature groups of each row.

use phonfeat::encoder::{check_rows, encode_utterance};
use phonfeat::ipa_parser::{tokenize, ParseMode};
use phonfeat::schema::{layout, FeatureTable};

fn main() -> phonfeat::Result<()> {
    let table = FeatureTable::shipped();
    let input = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "ˈaɪ t͡ʃeɪs ˈkɔːl?".into());

    let tokens = tokenize(&input, ParseMode::Strict, table)?.tokens;
    let encoded = encode_utterance(&tokens, table, Some("en"))?;
    check_rows(&encoded).expect("row invariants");

    let schema = layout();
    println!(
        "{input}: {} rows x {} dims",
        encoded.n_rows(),
        schema.token_dim
    );
    for (token, row) in encoded.tokens.iter().zip(&encoded.rows) {
        let active: Vec<String> = schema
            .groups
            .iter()
            .filter_map(|g| {
                let vals = &row[g.range.clone()];
                let hot = vals.iter().position(|&v| v != 0.0)?;
                Some(if vals.len() == 1 {
                    format!("{}={}", g.name, vals[0])
                } else {
                    format!("{}[{hot}]", g.name)
                })
            })
            .collect();
        let label = match token.phone() {
            Some(p) => p.to_string(),
            None => format!("{:?}", token.kind),
        };
        println!("{label:>14}  {}", active.join(" "));
    }
    Ok(())
}

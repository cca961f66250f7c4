//! Replaces phonemes missing from a target inventory with their nearest
//! neighbour in feature space and prints the approximation log.

use phonfeat::approx_mapper::{write_log, PhonemeSpace};
use phonfeat::inventory::Inventories;
use phonfeat::ipa_parser::{render, tokenize, ParseMode};
use phonfeat::metrics::upr_utterance;
use phonfeat::schema::FeatureTable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = FeatureTable::shipped();
    let invs = Inventories::shipped(table)?;
    let target = invs.get("es")?;
    let space = PhonemeSpace::new(&target.phonemes, table)?;

    let input = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "ˈʃøːnə ˈɡrʏsə, ˈθɛŋk jʊ.".into());
    let tokens = tokenize(&input, ParseMode::Strict, table)?.tokens;
    let (mapped, log) = space.map_utterance(&tokens)?;

    println!(
        "source: {input}  (unseen {:.1}%)",
        100.0 * upr_utterance(&tokens, &target.phonemes)?
    );
    println!(
        "mapped: {}  (unseen {:.1}%)",
        render(&mapped),
        100.0 * upr_utterance(&mapped, &target.phonemes)?
    );
    println!("\nsource\ttarget\tdistance");
    write_log(&log, std::io::stdout())?;
    for r in &log {
        let alts: Vec<String> = r
            .runners_up
            .iter()
            .map(|(c, d)| format!("{c} {d:.3}"))
            .collect();
        println!("  {} runners-up: {}", r.source, alts.join(", "));
    }
    Ok(())
}

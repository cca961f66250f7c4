//! Orders a corpus so that each prefix covers as many phonemes (or
//! diphones) as possible, then keeps the first k sentences.

use phonfeat::corpus_select::{coverage_sort, select_top_k, CoverageUnit};
use phonfeat::ipa_parser::{tokenize, ParseMode};
use phonfeat::schema::FeatureTable;

const CORPUS: &[&str] = &[
    "ˈkalo ˈpeði",
    "ˈθalasa",
    "ˈxronos ˈpernai",
    "ˈɣata",
    "ˈzoi ˈomorfi",
    "ˈðromos ˈmakris",
    "ˈliɣo ˈnero",
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = FeatureTable::shipped();
    let k: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let sentences = CORPUS
        .iter()
        .map(|s| tokenize(s, ParseMode::Strict, table).map(|t| t.tokens))
        .collect::<phonfeat::Result<Vec<_>>>()?;

    for unit in [CoverageUnit::Phoneme, CoverageUnit::Diphone] {
        let report = coverage_sort(&sentences, unit)?;
        println!("{unit} coverage:");
        report.write_tsv(std::io::stdout())?;
        let picked: Vec<&str> = select_top_k(&report, k)?
            .into_iter()
            .map(|i| CORPUS[i])
            .collect();
        println!("top {k}: {}\n", picked.join(" | "));
    }
    Ok(())
}

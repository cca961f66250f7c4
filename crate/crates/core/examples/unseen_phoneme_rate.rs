//! Unseen phoneme rate of a Greek test set against growing sets of
//! training languages.

use phonfeat::inventory::Inventories;
use phonfeat::ipa_parser::{tokenize, ParseMode};
use phonfeat::metrics::upr_corpus;
use phonfeat::schema::FeatureTable;

const TEST: &[&str] = &[
    "kaliˈmera ˈsas",
    "ˈpos ˈise?",
    "efxariˈsto ˈpoli.",
    "ˈθelo ˈena ˈnero",
    "ˈðen kseˈro",
];

fn main() -> phonfeat::Result<()> {
    let table = FeatureTable::shipped();
    let invs = Inventories::shipped(table)?;
    let test = TEST
        .iter()
        .map(|s| tokenize(s, ParseMode::Strict, table).map(|t| t.tokens))
        .collect::<phonfeat::Result<Vec<_>>>()?;

    for train in [
        &["en"][..],
        &["ko"],
        &["en", "ko"],
        &["en", "de", "fr", "es", "it", "ko"],
    ] {
        let set = invs.union_of(train)?;
        let report = upr_corpus(&test, &set)?;
        println!("{:<20} {}", train.join(","), report.display_percent());
    }
    Ok(())
}

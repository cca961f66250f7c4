//! Lists the shipped phoneme inventories and their pairwise overlap.

use phonfeat::inventory::{Inventories, TRAINING_LANGUAGES};
use phonfeat::schema::FeatureTable;

fn main() -> phonfeat::Result<()> {
    let invs = Inventories::shipped(FeatureTable::shipped())?;

    for inv in invs.iter() {
        let reference = inv
            .reference_count
            .map_or("-".to_string(), |n| n.to_string());
        println!(
            "{:<3} {:<10} {:>3} phonemes (reference {reference})",
            inv.code,
            inv.display_name,
            inv.len()
        );
    }

    let codes: Vec<&str> = invs.codes().collect();
    print!("\n    ");
    for c in &codes {
        print!("{c:>4}");
    }
    println!();
    for a in &codes {
        print!("{a:>4}");
        let pa = &invs.get(a)?.phonemes;
        for b in &codes {
            print!("{:>4}", pa.intersection(&invs.get(b)?.phonemes).count());
        }
        println!();
    }

    let union = invs.union_of(TRAINING_LANGUAGES)?;
    println!(
        "\nunion of {}: {} phonemes",
        TRAINING_LANGUAGES.join("+"),
        union.len()
    );
    Ok(())
}

//! Encodes a small corpus, writes the binary and CSV matrices plus the row
//! index to a temp directory, and reads them back.

use std::fs::File;
use std::io::BufReader;

use phonfeat::encoder::encode_utterance;
use phonfeat::export::{
    index_records, read_bin, read_csv, write_bin, write_csv, write_index, Matrix,
};
use phonfeat::ipa_parser::{tokenize, ParseMode};
use phonfeat::schema::FeatureTable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = FeatureTable::shipped();
    let corpus = ["ˈhɛloʊ ˈwɜːld.", "ɡʊd ˈmɔːnɪŋ", "ˈθæŋks!"];

    let encoded = corpus
        .iter()
        .map(|line| {
            encode_utterance(
                &tokenize(line, ParseMode::Strict, table)?.tokens,
                table,
                Some("en"),
            )
        })
        .collect::<phonfeat::Result<Vec<_>>>()?;
    let matrix = Matrix::from_utterances(&encoded);
    let index = index_records(encoded.iter().map(|e| e.n_rows()));

    let dir = tempfile::tempdir()?;
    let bin = dir.path().join("corpus.bin");
    let csv = dir.path().join("corpus.csv");
    write_bin(&matrix, File::create(&bin)?)?;
    write_csv(&matrix, File::create(&csv)?)?;
    write_index(&index, File::create(dir.path().join("corpus.bin.idx"))?)?;

    for r in &index {
        println!(
            "utterance {} -> rows {}..{}",
            r.utterance,
            r.start_row,
            r.start_row + r.n_rows
        );
    }
    let from_bin = read_bin(File::open(&bin)?)?;
    let from_csv = read_csv(BufReader::new(File::open(&csv)?))?;
    println!(
        "{} rows; {} bytes binary, {} bytes csv; identical: {}",
        matrix.n_rows(),
        std::fs::metadata(&bin)?.len(),
        std::fs::metadata(&csv)?.len(),
        from_bin.bits() == matrix.bits() && from_csv.bits() == matrix.bits()
    );
    Ok(())
}

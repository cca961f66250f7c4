//! Word error rate between reference and hypothesis transcripts.

use phonfeat::metrics::{normalize_words, wer_counts};

const PAIRS: &[(&str, &str)] = &[
    ("The cat sat on the mat.", "the cat sat on mat"),
    ("Hello, world!", "hello world"),
    ("it is raining today", "it was raining to day"),
];

fn main() -> phonfeat::Result<()> {
    let (mut edits, mut words) = (0, 0);
    for (reference, hypothesis) in PAIRS {
        let c = wer_counts(reference, hypothesis)?;
        println!("{:?}", normalize_words(reference));
        println!("{:?}", normalize_words(hypothesis));
        println!(
            "  {} edits / {} words = {:.2}%\n",
            c.edits,
            c.reference_words,
            100.0 * c.rate()
        );
        edits += c.edits;
        words += c.reference_words;
    }
    println!("corpus WER {:.2}%", 100.0 * edits as f64 / words as f64);
    Ok(())
}

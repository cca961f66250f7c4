#![allow(dead_code)]

use phonfeat::schema::FeatureTable;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

/// Canonical phoneme strings drawn from the table: every symbol, its long
/// form, and a handful of affricates and diphthongs.
pub fn phoneme_pool(table: &FeatureTable) -> Vec<String> {
    let mut pool: Vec<String> = Vec::new();
    for e in table.entries() {
        pool.push(e.symbol.clone());
        pool.push(format!("{}ː", e.symbol));
    }
    for extra in [
        "t͡s", "t͡ʃ", "d͡ʒ", "p͡f", "d͡z", "aɪ", "aʊ", "ɔɪ", "eɪ", "oʊ", "ɔʏ",
    ] {
        pool.push(extra.to_string());
    }
    pool
}

/// An utterance whose tokenization yields exactly the returned phonemes, in
/// order: each phoneme is preceded by a space, comma or stress mark, none of
/// which allow merging with the previous phoneme.
pub fn separated_utterance(rng: &mut StdRng, pool: &[String], n: usize) -> (String, Vec<String>) {
    let mut text = String::new();
    let mut phonemes = Vec::with_capacity(n);
    for i in 0..n {
        let p = pool.choose(rng).unwrap().clone();
        if i > 0 {
            text.push_str([" ", "ˈ", ", ", " ˌ"].choose(rng).unwrap());
        }
        text.push_str(&p);
        phonemes.push(p);
    }
    (text, phonemes)
}

/// Natural-looking sentence: `words` words of 2 to 6 phonemes, phonemes
/// written adjacently so diphthongs and geminates may form.
pub fn sentence(rng: &mut StdRng, inventory: &[String], words: usize) -> String {
    let mut s = String::new();
    for w in 0..words {
        if w > 0 {
            s.push(' ');
        }
        if rng.gen_bool(0.3) {
            s.push('ˈ');
        }
        for _ in 0..rng.gen_range(2..=6) {
            s.push_str(inventory.choose(rng).unwrap());
        }
    }
    if rng.gen_bool(0.5) {
        s.push_str([".", "?", "!"].choose(rng).unwrap());
    }
    s
}

/// Random subset of `pool`.
pub fn random_subset(rng: &mut StdRng, pool: &[String], p: f64) -> Vec<String> {
    pool.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

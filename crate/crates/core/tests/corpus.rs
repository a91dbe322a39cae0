mod common;

use common::*;

const CORPUS_SEED: u64 = 20_240_501;
const CORPUS_SIZE: usize = 240;

/// Regenerates `fixtures/corpus_small.json`. Run with `--ignored`.
#[test]
#[ignore]
fn regenerate_corpus() {
    let corpus = random_corpus(CORPUS_SEED, CORPUS_SIZE, 8, 14);
    let mut text = String::from("[\n");
    for (i, g) in corpus.iter().enumerate() {
        text.push_str("  ");
        text.push_str(&serde_json::to_string(g).unwrap());
        text.push_str(if i + 1 < corpus.len() { ",\n" } else { "\n" });
    }
    text.push_str("]\n");
    std::fs::write(fixture("corpus_small.json"), text).unwrap();
}

#[test]
fn committed_corpus_matches_seed() {
    assert_eq!(
        committed_corpus(),
        random_corpus(CORPUS_SEED, CORPUS_SIZE, 8, 14)
    );
}

#[test]
fn committed_corpus_shape() {
    let corpus = committed_corpus();
    assert!(corpus.len() >= 200);
    for g in &corpus {
        assert!(g.vertex_count() <= 8 && g.edge_count() <= 14);
        assert!(g.is_connected());
    }
}

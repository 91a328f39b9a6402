// Exhaustive checks over a small bounded corpus.

use pitwo::harness::{enumerate_terms, verify, CorpusSpec, Lemma};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CorpusSpec::small();
    println!("corpus of {} terms", enumerate_terms(&spec).len());
    for lemma in [Lemma::Reduction, Lemma::Observation, Lemma::Gating, Lemma::FullAbstraction] {
        let report = verify(lemma, &spec);
        println!("{report}");
        assert!(report.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("verify example");
}

//! Bounded corpora and the exhaustive checks relating the two semantics.

mod enumerate;
mod verify;

pub use enumerate::{alphabet, enumerate_by_size, enumerate_contexts, enumerate_terms, CorpusSpec};
pub use verify::{
    diagram_lts, semantic_barbs, substitute_by_renaming, trim, verify, verify_contextual_congruence,
    verify_contextual_congruence_with, verify_full_abstraction, verify_gating, verify_observation_lemma,
    verify_reduction_lemma, verify_structural_congruence, verify_substitution, Counterexample, HarnessError, Lemma,
    VerificationReport,
};

//! A workbench for the replication-free polyadic π-calculus with two
//! semantics: the usual reduction semantics and a string-diagram semantics
//! in a free symmetric monoidal closed 2-category, plus exhaustive checkers
//! relating them on bounded corpora.

pub mod syntax;
pub mod congruence;
pub mod opsem;
pub mod bisim;
pub mod diagram;
pub mod translate;
pub mod rewrite;
pub mod harness;

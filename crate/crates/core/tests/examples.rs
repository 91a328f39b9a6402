macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(terms, "terms.rs");
example!(congruence, "congruence.rs");
example!(reduction, "reduction.rs");
example!(bisimulation, "bisimulation.rs");
example!(diagrams, "diagrams.rs");
example!(translation, "translation.rs");
example!(comm_rewrite, "comm_rewrite.rs");
example!(concurrency, "concurrency.rs");
example!(verify, "verify.rs");

#[test]
fn examples_run() {
    terms::run().expect("terms");
    congruence::run().expect("congruence");
    reduction::run().expect("reduction");
    bisimulation::run().expect("bisimulation");
    diagrams::run().expect("diagrams");
    translation::run().expect("translation");
    comm_rewrite::run().expect("comm_rewrite");
    concurrency::run().expect("concurrency");
    verify::run().expect("verify");
}

// One-step reduction, races and the reachable state space.

use pitwo::opsem::{find_redexes, reachable, reduce_step, successors};
use pitwo::syntax::parse;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let race = parse("x?(y) => y!() | x!(u) | x?(v) => v!()")?;
    println!("{race}");
    for r in find_redexes(&race) {
        println!("  redex on {} (arity {})", r.subject, r.arity);
    }
    // One successor per redex; the losing input stays guarded in each.
    let next = successors(&race);
    for q in &next {
        println!("  -> {q}");
    }
    assert_eq!(next.len(), 2);
    // Both winners leave alpha-equivalent residues, so up to congruence
    // there is a single outcome.
    println!("  distinct up to congruence: {}", reduce_step(&race).len());

    let mismatch = parse("x?(y, z) => 0 | x!(u)")?;
    assert!(reduce_step(&mismatch).is_empty());
    println!("{mismatch} is stuck");

    let chain = parse("a!(b) | a?(x) => x!(c) | b?(y) => y!()")?;
    let g = reachable(&chain, 100)?;
    println!("{chain}: {} states, {} edges", g.states.len(), g.edges.len());
    for t in g.terminal_states() {
        println!("  terminal: {t}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("reduction example");
}

// Several COMM tokens let disjoint redexes fire in one step.

use pitwo::rewrite::{apply_concurrent, comm_step, concurrent_step};
use pitwo::syntax::parse;
use pitwo::translate::translate_top;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let soup = parse("(a?() => 0 | a!()) | (b?() => 0 | b!())")?;

    let two = translate_top(&soup, 2, true);
    let steps = concurrent_step(&two, 2);
    println!("k=2: {} parallel step(s) of sizes {:?}", steps.len(), steps.iter().map(Vec::len).collect::<Vec<_>>());
    let done_parallel = apply_concurrent(&two, &steps[0])?;

    let one = translate_top(&soup, 1, true);
    let mut frontier = vec![one];
    let mut rounds = 0;
    while !frontier.is_empty() && frontier.iter().any(|d| !comm_step(d).is_empty()) {
        frontier = frontier.iter().flat_map(comm_step).collect();
        rounds += 1;
    }
    println!("k=1: {rounds} sequential steps");

    let done_serial = &frontier[0];
    println!(
        "final states agree once tokens are discounted: {}",
        done_parallel.without_catalysts().equal(&done_serial.without_catalysts())
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("concurrency example");
}

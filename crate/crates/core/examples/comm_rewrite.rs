// Firing comm redexes on diagrams and matching them with reductions.

use pitwo::opsem::reduce_step;
use pitwo::rewrite::{apply_comm, find_diagram_redexes};
use pitwo::syntax::parse;
use pitwo::translate::translate_top;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse("x?(y) => y!() | x!(u) | x?(v) => v!(v)")?;
    let top = translate_top(&p, 1, true);
    let redexes = find_diagram_redexes(&top);
    println!("{p}: {} diagram redexes", redexes.len());

    let expected: Vec<_> = reduce_step(&p).iter().map(|q| translate_top(q.process(), 1, true)).collect();
    for r in &redexes {
        let next = apply_comm(&top, r)?;
        let hit = expected.iter().position(|e| e.equal(&next)).expect("matches a reduction");
        println!("  {} -> {} matches successor {hit}", r.output_node, r.input_node);
        assert_eq!(next.catalysts, 1);
    }

    // Without the catalyst nothing can fire.
    let inert = top.without_catalysts();
    println!("without COMM: {} redexes", find_diagram_redexes(&inert).len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("comm rewrite example");
}

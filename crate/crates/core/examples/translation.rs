// Translating terms to diagrams, contexts to diagram contexts, and
// exporting DOT with stable node ids.

use pitwo::syntax::{name, parse, Process};
use pitwo::translate::{translate, translate_context, translate_top, Context};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse("x?(y) => y!() | x!(u)")?;
    let d = translate(&p);
    println!("⟦{p}⟧ : {} -> {}", d.domain_object(), d.codomain_object());
    println!("{} nodes, key {:016x}", d.deep_node_count(), d.canonical_key().fingerprint());

    let q = parse("x!(u) | x?(w) => w!()")?;
    assert!(translate(&q).equal(&d));
    println!("⟦{q}⟧ is the same diagram");

    let top = translate_top(&p, 1, true);
    println!("top level: {} catalyst(s), domain {}", top.catalysts, top.diagram.domain_object());

    // ⟦C⟧(⟦R⟧) = ⟦C[R]⟧
    let c = Context::ParLeft(Box::new(Context::Hole), parse("a!()")?);
    let r = parse("a?() => b!()")?;
    let names = [name("a"), name("b")];
    let plugged = translate_context(&c, &names).plug(&pitwo::translate::translate_over(&r, &names))?;
    let direct: Process = c.plug(&r);
    assert!(plugged.equal(&pitwo::translate::translate_over(&direct, &names)));
    println!("context {c} commutes with translation");

    let dot = translate(&parse("a!(b)")?).canonical_layout().to_dot();
    println!("{dot}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("translation example");
}

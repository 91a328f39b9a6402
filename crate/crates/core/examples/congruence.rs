// Structural congruence through canonical forms, checked against the
// axiom-closure search.

use pitwo::congruence::{canonical_form, congruent, oracle_congruent};
use pitwo::syntax::parse;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = [
        ("a!() | (b!() | 0)", "(b!() | a!())"),
        ("(new x) x!() | a!()", "(new x) (x!() | a!())"),
        ("(new x) (new y) x!(y)", "(new y) (new x) x!(y)"),
        ("(new x) a!(x)", "a!(x)"),
        ("a?(x) => (b!() | c!())", "a?(x) => (c!() | b!())"),
    ];
    for (l, r) in pairs {
        let (p, q) = (parse(l)?, parse(r)?);
        let fast = congruent(&p, &q);
        let slow = oracle_congruent(&p, &q, 8);
        println!("{l:28} ≡ {r:28} {fast}");
        assert_eq!(fast, slow);
    }
    let c = canonical_form(&parse("b!() | (new z) (z!() | a!())")?);
    println!("canonical form: {c}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("congruence example");
}

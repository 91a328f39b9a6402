// Barbs and barbed bisimilarity with distinguishing certificates.

use pitwo::bisim::{barbs, bisim_verdict, BisimOptions};
use pitwo::syntax::parse;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse("(new x) (x!() | a!())")?;
    let b: Vec<String> = barbs(&p).iter().map(|n| n.to_string()).collect();
    println!("barbs of {p}: {}", b.join(" "));

    let pairs = [
        ("0", "x?(y) => 0"),
        ("(new c) (c!() | c?() => a!())", "(new c) c!() | a!()"),
        ("(new c) (c!() | c?() => a!())", "a!()"),
        ("a!() | b?() => 0", "b?() => 0"),
    ];
    for (l, r) in pairs {
        let v = bisim_verdict(&parse(l)?, &parse(r)?, BisimOptions::default())?;
        print!("{l:32} ~ {r:24} {}", v.bisimilar);
        if let Some(d) = &v.distinction {
            print!("  because {}", serde_json::to_string(d)?);
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("bisimulation example");
}

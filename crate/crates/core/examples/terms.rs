// Parsing, printing, free names and capture-avoiding substitution.

use pitwo::syntax::{alpha_eq, name, parse, substitute, Substitution};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse("(new z) x?(y) => y!(z) | x!(u)")?;
    println!("term:       {p}");
    println!("size:       {}", p.size());
    let free: Vec<String> = p.free_names().iter().map(|n| n.to_string()).collect();
    println!("free names: {}", free.join(" "));

    // Replacing u by z must rename the restricted z out of the way.
    let s = Substitution::from([(name("u"), name("z"))]);
    let q = substitute(&p, &s);
    println!("p{{z/u}}:     {q}");
    assert!(q.free_names().contains(&name("z")));

    let r = parse("(new w) x?(v) => v!(w) | x!(u)")?;
    assert!(alpha_eq(&p, &r));
    println!("alpha-equivalent to {r}");

    println!("json:       {}", serde_json::to_string(&parse("x!(a, b)")?)?);
    match parse("x?(y, y) => 0") {
        Err(e) => println!("rejected:   {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("terms example");
}

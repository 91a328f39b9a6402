// Building string diagrams from generators and comparing them up to the
// monoid, comonoid and symmetry equations.

use pitwo::diagram::{Diagram, PortType};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let (n, p) = (PortType::Name, PortType::Proc);

    // | is a commutative monoid with unit 0.
    let left = Diagram::par().tensor(&Diagram::identity(&[p])).compose(&Diagram::par())?;
    let right = Diagram::identity(&[p]).tensor(&Diagram::par()).compose(&Diagram::par())?;
    println!("(a|b)|c = a|(b|c): {}", left.equal(&right));
    let swapped = Diagram::swap(p, p).compose(&Diagram::par())?;
    println!("b|a = a|b:         {}", swapped.equal(&Diagram::par()));
    let unit = Diagram::zero().tensor(&Diagram::identity(&[p])).compose(&Diagram::par())?;
    println!("0|a = a:           {}", unit.equal(&Diagram::identity(&[p])));

    // Δ then δ on one branch is the identity wire.
    let counit = Diagram::dup().compose(&Diagram::identity(&[n]).tensor(&Diagram::drop_name()))?;
    println!("counit:            {}", counit.equal(&Diagram::identity(&[n])));

    let zz = Diagram::zero().tensor(&Diagram::zero()).compose(&Diagram::par())?;
    println!("0|0 : {} -> {}", zz.domain_object(), zz.codomain_object());
    println!("key:  {:016x}", zz.canonical_key().fingerprint());

    match Diagram::zero().compose(&Diagram::drop_name()) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("diagrams example");
}

use super::*;
use crate::syntax::name;

const N: PortType = PortType::Name;
const P: PortType = PortType::Proc;

fn id(t: &[PortType]) -> Diagram {
    Diagram::identity(t)
}

fn seq(a: &Diagram, b: &Diagram) -> Diagram {
    a.compose(b).unwrap()
}

#[test]
fn object_tensor_flattens() {
    let o = ObjectExpr::tensor([
        ObjectExpr::Unit,
        ObjectExpr::Name,
        ObjectExpr::tensor([ObjectExpr::Name, ObjectExpr::Proc]),
    ]);
    assert_eq!(o.ports(), vec![N, N, P]);
    assert_eq!(ObjectExpr::tensor([]), ObjectExpr::Unit);
    assert_eq!(ObjectExpr::tensor([ObjectExpr::Proc]), ObjectExpr::Proc);
}

#[test]
fn compose_checks_interfaces() {
    assert!(matches!(
        Diagram::zero().compose(&Diagram::drop_name()),
        Err(DiagramError::InterfaceMismatch { .. })
    ));
    let scalar = seq(&Diagram::name_const(name("x")), &Diagram::drop_name());
    assert!(scalar.domain.is_empty() && scalar.codomain.is_empty());
    scalar.check().unwrap();
}

#[test]
fn identity_is_a_unit() {
    let f = seq(&Diagram::output(1), &id(&[P]));
    assert!(f.equal(&Diagram::output(1)));
    let g = seq(&id(&[N, N]), &Diagram::output(1));
    assert!(g.equal(&Diagram::output(1)));
}

#[test]
fn tensor_concatenates() {
    let e = Diagram::empty().tensor(&Diagram::empty());
    assert_eq!(e, Diagram::empty());
    let t = Diagram::drop_name().tensor(&Diagram::zero());
    assert_eq!(t.domain_types(), vec![N]);
    assert_eq!(t.codomain_types(), vec![P]);
    t.check().unwrap();
}

#[test]
fn symmetry_is_natural() {
    let f = Diagram::drop_name().tensor(&Diagram::output(0));
    let g = Diagram::output(0).tensor(&Diagram::drop_name());
    let lhs = seq(&f, &id(&[P]));
    let rhs = seq(&Diagram::swap(N, N), &g);
    assert!(lhs.equal(&rhs));
    let two = Diagram::output(0).tensor(&Diagram::comm());
    let swapped = seq(&two, &Diagram::swap(P, P));
    let direct = Diagram::comm().tensor(&Diagram::output(0));
    assert!(seq(&swapped, &Diagram::par()).equal(&seq(&direct, &Diagram::par())));
    assert!(!swapped.equal(&two));
}

#[test]
fn par_monoid_laws() {
    let par = Diagram::par();
    let left = seq(&par.tensor(&id(&[P])), &par);
    let right = seq(&id(&[P]).tensor(&par), &par);
    assert!(left.equal(&right));
    let comm = seq(&Diagram::swap(P, P), &par);
    assert!(comm.equal(&par));
    let unit = seq(&Diagram::zero().tensor(&id(&[P])), &par);
    assert!(unit.equal(&id(&[P])));
    let norm = left.normalize();
    assert_eq!(norm.count_top(|k| matches!(k, GeneratorKind::Par { arity: 3 })), 1);
}

#[test]
fn dup_comonoid_laws() {
    let dup = Diagram::dup();
    let left = seq(&dup, &dup.tensor(&id(&[N])));
    let right = seq(&dup, &id(&[N]).tensor(&dup));
    assert!(left.equal(&right));
    assert!(seq(&dup, &Diagram::swap(N, N)).equal(&dup));
    let counit = seq(&dup, &Diagram::drop_name().tensor(&id(&[N])));
    assert!(counit.equal(&id(&[N])));
    assert_eq!(counit.normalize().nodes.len(), 0);
}

#[test]
fn zero_zero_par() {
    let d = seq(&Diagram::zero().tensor(&Diagram::zero()), &Diagram::par());
    assert!(d.equal(&Diagram::zero()));
}

#[test]
fn curry_and_beta() {
    let body = Diagram::output(0).with_domain_labels(&[Some(name("y"))]);
    let thunk = Diagram::curry(1, body.clone()).unwrap();
    assert_eq!(thunk.domain_types(), vec![]);
    assert_eq!(thunk.codomain_types(), vec![PortType::Hom(1)]);
    let applied = Diagram::apply(&thunk, &Diagram::name_const(name("u"))).unwrap();
    let direct = seq(&Diagram::name_const(name("u")), &Diagram::output(0));
    assert!(applied.equal(&direct));

    let stop = Diagram::curry(0, Diagram::zero()).unwrap();
    let applied = Diagram::apply(&stop, &Diagram::empty()).unwrap();
    assert!(applied.equal(&Diagram::zero()));

    assert!(matches!(
        Diagram::apply(&thunk, &Diagram::empty()),
        Err(DiagramError::ArityMismatch { expected: 1, found: 0 })
    ));
    assert!(matches!(
        Diagram::curry(1, Diagram::zero()),
        Err(DiagramError::Curry(_))
    ));
}

#[test]
fn ev_on_open_hom_is_stuck() {
    let ev = Diagram::ev(0);
    let n = ev.normalize();
    assert_eq!(n.count_top(|k| matches!(k, GeneratorKind::Ev { .. })), 1);
}

#[test]
fn scalar_gc() {
    let scalar = seq(&Diagram::name_const(name("x")), &Diagram::drop_name());
    let d = Diagram::output(0);
    let with = scalar.tensor(&d);
    assert!(with.equal(&d));
    let kept = with.normalize_with(NormalizeOptions { scalar_gc: false });
    assert_eq!(kept.nodes.len(), 3);
    let fresh = seq(&Diagram::fresh(), &Diagram::drop_name()).tensor(&d);
    assert!(fresh.equal(&d));
}

#[test]
fn captured_names_contract() {
    // a box capturing the same wire twice equals one capturing it once
    let two = Diagram::output(1)
        .with_domain_labels(&[None, None]);
    let twice = Diagram::curry(0, two).unwrap();
    let shared = seq(&Diagram::dup(), &twice);
    let once_body = seq(&Diagram::dup(), &Diagram::output(1));
    let once = Diagram::curry(0, once_body).unwrap();
    assert!(shared.equal(&once));
    assert_eq!(shared.normalize().nodes.len(), 1);
}

#[test]
fn distinct_labels_are_distinct() {
    let x = Diagram::output(0).with_domain_labels(&[Some(name("x"))]);
    let y = Diagram::output(0).with_domain_labels(&[Some(name("y"))]);
    assert!(!x.equal(&y));
    assert!(x.equal(&x.clone()));
}

#[test]
fn check_catches_errors() {
    let mut d = Diagram::output(0);
    d.wires.pop();
    assert!(d.check().is_err());
    let mut d = Diagram::output(0);
    d.wires[0].ty = P;
    assert!(d.check().is_err());
    Diagram::par().check().unwrap();
}

#[test]
fn canonical_key_agrees_with_exhaustive_iso() {
    let samples = vec![
        Diagram::par(),
        seq(&Diagram::swap(P, P), &Diagram::par()),
        seq(&Diagram::dup(), &Diagram::output(1)),
        seq(&Diagram::dup(), &Diagram::swap(N, N)).tensor(&Diagram::zero()),
        Diagram::output(1),
        seq(&Diagram::swap(N, N), &Diagram::output(1)),
        Diagram::comm().tensor(&Diagram::comm()),
    ];
    for a in &samples {
        for b in &samples {
            assert_eq!(a.equal(b), isomorphic_exhaustive(a, b), "{a:?}\n{b:?}");
        }
    }
}

#[test]
fn json_and_dot() {
    let d = Diagram::curry(0, Diagram::zero()).unwrap();
    let v = d.to_json();
    assert_eq!(v["nodes"][0]["kind"], "curry");
    let back: Diagram = serde_json::from_value(v).unwrap();
    assert_eq!(back, d);
    let dot = d.to_dot();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("curry0"));
}

#[test]
fn canonical_layout_is_stable() {
    let a = seq(&Diagram::swap(P, P), &Diagram::par());
    assert_eq!(a.canonical_layout(), Diagram::par().canonical_layout());
    let x = Diagram::output(0).tensor(&Diagram::comm());
    let y = seq(&Diagram::comm().tensor(&Diagram::output(0)), &Diagram::swap(P, P));
    let (lx, ly) = (
        seq(&x, &Diagram::par()).canonical_layout(),
        seq(&y, &Diagram::par()).canonical_layout(),
    );
    assert_eq!(lx, ly);
    assert!(lx.equal(&seq(&x, &Diagram::par())));
}

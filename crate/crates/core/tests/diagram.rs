mod common;

use common::{dup_tree, par_tree, Tree};
use pitwo::diagram::{isomorphic_exhaustive, Diagram, PortType};
use proptest::prelude::*;

const N: PortType = PortType::Name;
const P: PortType = PortType::Proc;

fn tree() -> impl Strategy<Value = Tree> {
    prop::sample::select(common::all_trees())
}

fn id(t: PortType) -> Diagram {
    Diagram::identity(&[t])
}

proptest! {
    #[test]
    fn par_trees_agree(a in tree(), b in tree()) {
        let (x, y) = (par_tree(&a), par_tree(&b));
        prop_assert!(x.equal(&y));
        prop_assert_eq!(x.canonical_key(), y.canonical_key());
        prop_assert_eq!(x.canonical_layout(), y.canonical_layout());
    }

    #[test]
    fn dup_trees_agree(a in tree(), b in tree()) {
        let (x, y) = (dup_tree(&a), dup_tree(&b));
        prop_assert!(x.equal(&y));
        prop_assert!(isomorphic_exhaustive(&x.normalize(), &y.normalize()));
    }

    #[test]
    fn counit_prunes(k in 0..3usize, s in tree()) {
        let mut parts = [id(N), id(N), id(N)];
        parts[k] = Diagram::drop_name();
        let pruner = parts.iter().skip(1).fold(parts[0].clone(), |a, b| a.tensor(b));
        let d = dup_tree(&s).compose(&pruner).unwrap();
        prop_assert!(d.equal(&Diagram::dup()));
    }
}

#[test]
fn composition_is_associative_and_unital() {
    let f = Diagram::output(1);
    let g = Diagram::zero().tensor(&id(P)).compose(&Diagram::par()).unwrap();
    let h = id(P);
    let l = f.compose(&g).unwrap().compose(&h).unwrap();
    let r = f.compose(&g.compose(&h).unwrap()).unwrap();
    assert!(l.equal(&r));
    assert!(l.equal(&f));
    assert!(Diagram::identity(&[N, N]).compose(&f).unwrap().equal(&f));
}

#[test]
fn tensor_is_natural_in_swaps() {
    let f = Diagram::output(0);
    let g = Diagram::drop_name();
    let lhs = Diagram::swap(N, N).compose(&g.tensor(&f)).unwrap();
    let rhs = f.tensor(&g).compose(&Diagram::identity(&[P])).unwrap();
    assert!(lhs.equal(&rhs));
}

#[test]
fn wrong_interfaces_are_rejected() {
    assert!(Diagram::zero().compose(&Diagram::drop_name()).is_err());
    assert!(Diagram::name_const(pitwo::syntax::name("x")).compose(&Diagram::drop_name()).is_ok());
    assert!(Diagram::curry(1, Diagram::zero()).is_err());
}

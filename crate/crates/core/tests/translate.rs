mod common;

use pitwo::congruence::{axiom_steps, canonical_form};
use pitwo::diagram::GeneratorKind;
use pitwo::opsem::reduce_step;
use pitwo::rewrite::{apply_comm, comm_step_keyed, find_diagram_redexes};
use pitwo::syntax::{name, parse, Process};
use pitwo::translate::{translate, translate_context, translate_over, translate_top, translate_top_over, Context};
use proptest::prelude::*;

#[test]
fn interface_lists_free_names() {
    let d = translate(&parse("x?(y) => y!(z)").unwrap());
    let labels: Vec<_> = d.domain.iter().map(|b| b.label.clone().unwrap().to_string()).collect();
    assert_eq!(labels, ["x", "z"]);
    assert_eq!(d.codomain_types(), vec![pitwo::diagram::PortType::Proc]);
}

#[test]
fn restriction_becomes_fresh() {
    let d = translate(&parse("(new x) x!()").unwrap());
    assert_eq!(d.deep_count(&|k| matches!(k, GeneratorKind::Fresh)), 1);
    assert!(d.domain.is_empty());
}

#[test]
fn contexts_plug_under_binders() {
    let c = Context::Input {
        subject: name("a"),
        params: vec![name("x")],
        body: Box::new(Context::ParRight(parse("x!()").unwrap(), Box::new(Context::Hole))),
    };
    let names = [name("a"), name("b"), name("x")];
    let r = parse("x!(b)").unwrap();
    let dc = translate_context(&c, &names);
    let plugged = dc.plug(&translate_over(&r, &names)).unwrap();
    assert!(plugged.equal(&translate_over(&c.plug(&r), &names[..2])));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn congruent_terms_translate_equally(t in common::process(3), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let mut cur = t.clone();
        for i in picks {
            let next = axiom_steps(&cur);
            if next.is_empty() {
                break;
            }
            cur = next[i.index(next.len())].clone();
        }
        prop_assert!(translate(&t).equal(&translate(&cur)));
        prop_assert!(translate(&t).equal(&translate(canonical_form(&t).process())));
    }

    #[test]
    fn rewriting_tracks_reduction(t in common::process(4)) {
        let names: Vec<_> = t.free_names().into_iter().collect();
        let top = translate_top(&t, 1, false);
        let semantic = comm_step_keyed(&top);
        let syntactic: std::collections::BTreeSet<_> =
            reduce_step(&t).iter().map(|q| translate_top_over(q.process(), &names, 1, false).key()).collect();
        prop_assert_eq!(semantic.keys().cloned().collect::<std::collections::BTreeSet<_>>(), syntactic);
    }

    #[test]
    fn catalysts_are_conserved(t in common::process(4), k in 1..3usize) {
        let top = translate_top(&t, k, true);
        prop_assert_eq!(top.catalysts, k);
        for r in find_diagram_redexes(&top) {
            prop_assert_eq!(apply_comm(&top, &r).unwrap().catalysts, k);
        }
        prop_assert!(find_diagram_redexes(&top.without_catalysts()).is_empty());
    }

    #[test]
    fn plugging_commutes(t in common::process(3), wrap in 0..3usize) {
        let other = parse("a!(b)").unwrap();
        let c = match wrap {
            0 => Context::Hole,
            1 => Context::ParLeft(Box::new(Context::Hole), other),
            _ => Context::New { binder: name("a"), body: Box::new(Context::ParRight(other, Box::new(Context::Hole))) },
        };
        let mut names: Vec<_> = t.free_names().into_iter().collect();
        names.extend(["a", "b"].map(name));
        names.sort();
        names.dedup();
        let plugged: Process = c.plug(&t);
        let via = translate_context(&c, &names).plug(&translate_over(&t, &names)).unwrap();
        // Hole names the context does not bind stay on the interface.
        let outer: Vec<_> = via.domain.iter().filter_map(|b| b.label.clone()).collect();
        prop_assert!(plugged.free_names().iter().all(|n| outer.contains(n)));
        prop_assert!(via.equal(&translate_over(&plugged, &outer)));
    }
}

mod common;

use pitwo::congruence::{axiom_steps, canonical_form, congruent, congruent_with, oracle_congruent, CanonOptions};
use pitwo::syntax::{parse, Process};
use proptest::prelude::*;

fn p(t: &str) -> Process {
    parse(t).unwrap()
}

#[test]
fn axioms_hold() {
    let cases = [
        ("a!() | 0", "a!()", true),
        ("a!() | b!()", "b!() | a!()", true),
        ("(a!() | b!()) | c!()", "a!() | (b!() | c!())", true),
        ("(new x) (new y) x!(y)", "(new y) (new x) x!(y)", true),
        ("(new x) 0", "0", false),
        ("(new x) x!() | a!()", "(new x) (x!() | a!())", true),
        ("(new x) x!() | x!()", "(new x) (x!() | x!())", false),
        ("a!(b)", "a!(c)", false),
        ("(new x) a!(x)", "a!(x)", false),
    ];
    for (l, r, want) in cases {
        assert_eq!(congruent(&p(l), &p(r)), want, "{l} vs {r}");
        assert_eq!(oracle_congruent(&p(l), &p(r), 8), want, "oracle {l} vs {r}");
    }
}

#[test]
fn vacuous_restrictions_collect_on_request() {
    let gc = CanonOptions { gc_vacuous: true };
    assert!(congruent_with(&p("(new x) 0"), &p("0"), gc));
    assert!(congruent_with(&p("(new x) a!() | b!()"), &p("b!() | a!()"), gc));
    assert!(!congruent_with(&p("(new x) x!()"), &p("0"), gc));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_idempotent(t in common::process(4)) {
        let c = canonical_form(&t);
        prop_assert_eq!(canonical_form(c.process()), c);
    }

    #[test]
    fn axiom_steps_preserve_the_class(t in common::process(3), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let mut cur = t.clone();
        for i in picks {
            let next = axiom_steps(&cur);
            if next.is_empty() {
                break;
            }
            cur = next[i.index(next.len())].clone();
        }
        prop_assert!(congruent(&t, &cur));
        prop_assert_eq!(t.free_names(), cur.free_names());
    }

    #[test]
    fn congruence_is_an_equivalence(a in common::process(3), b in common::process(3)) {
        prop_assert_eq!(congruent(&a, &b), congruent(&b, &a));
        prop_assert!(congruent(&a, &a));
        let ab = Process::par(a.clone(), b.clone());
        let ba = Process::par(b, a);
        prop_assert!(congruent(&ab, &ba));
    }
}

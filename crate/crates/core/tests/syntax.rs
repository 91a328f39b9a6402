mod common;

use pitwo::harness::substitute_by_renaming;
use pitwo::syntax::{alpha_eq, name, parse, substitute, Process, Substitution};
use proptest::prelude::*;

#[test]
fn round_trips_through_text_and_json() {
    for t in ["0", "x!()", "x?(y, z) => y!(z)", "(new x) (x!() | a?() => 0)", "a!() | b!() | c!()"] {
        let p = parse(t).unwrap();
        assert_eq!(parse(&p.to_string()).unwrap(), p, "{t}");
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Process>(&j).unwrap(), p);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse("x?(y) =>").unwrap_err().to_string();
    assert!(e.starts_with("1:"), "{e}");
    assert!(parse("x?(y, y) => 0").is_err());
    assert!(parse("x!(").is_err());
}

#[test]
fn substitution_avoids_capture() {
    let p = parse("(new y) x!(y) | y!()").unwrap();
    let q = substitute(&p, &Substitution::from([(name("x"), name("y"))]));
    assert!(alpha_eq(&q, &parse("(new w) y!(w) | y!()").unwrap()), "{q}");
    let r = parse("x?(y) => y!(z)").unwrap();
    let s = substitute(&r, &Substitution::from([(name("z"), name("y"))]));
    assert!(alpha_eq(&s, &parse("x?(w) => w!(y)").unwrap()), "{s}");
}

proptest! {
    #[test]
    fn printing_is_parseable(p in common::process(4)) {
        prop_assert_eq!(parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn substitution_matches_rename_apart(p in common::process(4), from in 0..3usize, to in 0..5usize) {
        let all = ["a", "b", "c", "x", "y"];
        let s = Substitution::from([(name(all[from]), name(all[to]))]);
        let fast = substitute(&p, &s);
        prop_assert!(alpha_eq(&fast, &substitute_by_renaming(&p, &s)));
        let fv = p.free_names();
        let expected: std::collections::BTreeSet<_> = fv.iter().map(|n| s.get(n).unwrap_or(n).clone()).collect();
        prop_assert_eq!(fast.free_names(), expected);
    }

    #[test]
    fn alpha_equivalence_is_invariant_under_identity_substitution(p in common::process(4)) {
        prop_assert!(alpha_eq(&p, &substitute(&p, &Substitution::new())));
    }
}

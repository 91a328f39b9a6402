mod common;

use std::collections::BTreeSet;

use pitwo::bisim::{barbs, bisim_verdict, bisimilar, BisimOptions, Distinction};
use pitwo::harness::{enumerate_terms, CorpusSpec};
use pitwo::opsem::reachable;
use pitwo::syntax::{parse, Process};
use proptest::prelude::*;

/// Greatest fixed point by deleting pairs from the full relation.
fn naive_bisimilar(p: &Process, q: &Process) -> bool {
    let (gp, gq) = (reachable(p, 500).unwrap(), reachable(q, 500).unwrap());
    let (sp, sq) = (gp.successors(), gq.successors());
    let bp: Vec<_> = gp.states.iter().map(|s| barbs(s.process())).collect();
    let bq: Vec<_> = gq.states.iter().map(|s| barbs(s.process())).collect();
    let mut rel: BTreeSet<(usize, usize)> =
        (0..sp.len()).flat_map(|i| (0..sq.len()).map(move |j| (i, j))).filter(|&(i, j)| bp[i] == bq[j]).collect();
    loop {
        let keep: BTreeSet<(usize, usize)> = rel
            .iter()
            .copied()
            .filter(|&(i, j)| {
                sp[i].iter().all(|&i2| sq[j].iter().any(|&j2| rel.contains(&(i2, j2))))
                    && sq[j].iter().all(|&j2| sp[i].iter().any(|&i2| rel.contains(&(i2, j2))))
            })
            .collect();
        if keep.len() == rel.len() {
            return rel.contains(&(gp.root, gq.root));
        }
        rel = keep;
    }
}

fn p(t: &str) -> Process {
    parse(t).unwrap()
}

#[test]
fn barbs_respect_restriction() {
    let b = barbs(&p("(new x) (x!() | a!(x)) | c?() => d!()"));
    assert_eq!(b.into_iter().map(|n| n.to_string()).collect::<Vec<_>>(), ["a"]);
}

#[test]
fn verdicts_carry_certificates() {
    let v = bisim_verdict(&p("a!()"), &p("b!()"), BisimOptions::default()).unwrap();
    assert!(!v.bisimilar);
    assert!(matches!(v.distinction, Some(Distinction::Barb { .. })));
    let v = bisim_verdict(&p("(new c) (c!() | c?() => 0)"), &p("0"), BisimOptions::default()).unwrap();
    assert!(!v.bisimilar);
    assert!(matches!(v.distinction, Some(Distinction::UnmatchedMove { .. })));
    let w = bisim_verdict(&p("(new c) (c!() | c?() => 0)"), &p("0"), BisimOptions { weak: true, ..Default::default() }).unwrap();
    assert!(w.bisimilar);
}

#[test]
fn partition_refinement_matches_gfp_on_corpus() {
    let terms = enumerate_terms(&CorpusSpec::small());
    let sample: Vec<_> = terms.iter().step_by(5).collect();
    for a in &sample {
        for b in &sample {
            assert_eq!(bisimilar(a, b, 500).unwrap(), naive_bisimilar(a, b), "{a} vs {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matches_gfp(a in common::process(3), b in common::process(3)) {
        prop_assert_eq!(bisimilar(&a, &b, 500).unwrap(), naive_bisimilar(&a, &b));
    }

    #[test]
    fn congruent_terms_are_bisimilar(a in common::process(3), b in common::process(3)) {
        let ab = Process::par(a.clone(), b.clone());
        let ba = Process::par(b, a);
        prop_assert!(bisimilar(&ab, &ba, 500).unwrap());
    }
}

//! The `comm_n` 2-morphism and the step relation ⇒^comm on top diagrams.
//!
//! A redex is an output node and an input node of equal arity whose subject
//! wires reach one name source through `Δ` fans, both feeding the top-level
//! `|` spine together with a `COMM` token. Firing replaces the pair by `ev`
//! applied to the input's curry box and the message names; the token stays.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::diagram::ir::{Atom, Ir, Out, Src};
use crate::diagram::{DiagramKey, NormalizeOptions};
use crate::translate::TopDiagram;

/// The name source both subject wires trace back to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "at", rename_all = "lowercase")]
pub enum SubjectRoot {
    Domain { index: usize },
    Node { node: usize },
}

impl From<Src> for SubjectRoot {
    fn from(s: Src) -> Self {
        match s {
            Src::Dom(index) => SubjectRoot::Domain { index },
            Src::Atom(node) => SubjectRoot::Node { node },
        }
    }
}

/// One occurrence of `comm_n`. Node ids index the top diagram's nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiagramRedex {
    pub output_node: usize,
    pub input_node: usize,
    pub subject: SubjectRoot,
    pub catalyst: usize,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("redex {0:?} does not occur in the diagram")]
    StaleRedex(DiagramRedex),
    #[error("redexes {0:?} and {1:?} overlap")]
    Overlap(DiagramRedex, DiagramRedex),
}

fn top_sum(ir: &Ir) -> &[Src] {
    match ir.outputs.first() {
        Some(Out::Proc(v)) => v,
        _ => &[],
    }
}

fn redexes_in(ir: &Ir) -> Vec<DiagramRedex> {
    let sum = top_sum(ir);
    let atoms: Vec<usize> = sum
        .iter()
        .filter_map(|s| match s {
            Src::Atom(a) => Some(*a),
            Src::Dom(_) => None,
        })
        .collect();
    let catalysts: Vec<usize> = atoms
        .iter()
        .copied()
        .filter(|&a| matches!(ir.atom(a), Some(Atom::Comm)))
        .collect();
    let mut out = Vec::new();
    for &o in &atoms {
        let Some(Atom::Output { subject, args }) = ir.atom(o) else {
            continue;
        };
        for &i in &atoms {
            let Some(Atom::Input { arity, subject: s2, .. }) = ir.atom(i) else {
                continue;
            };
            if s2 != subject || *arity != args.len() {
                continue;
            }
            for &c in &catalysts {
                out.push(DiagramRedex {
                    output_node: o,
                    input_node: i,
                    subject: (*subject).into(),
                    catalyst: c,
                    arity: *arity,
                });
            }
        }
    }
    out
}

/// Every `comm_n` occurrence on the top spine. Empty when the diagram has
/// no `COMM` token.
pub fn find_diagram_redexes(d: &TopDiagram) -> Vec<DiagramRedex> {
    redexes_in(&Ir::from_diagram(&d.diagram))
}

fn fire_all(d: &TopDiagram, rs: &[DiagramRedex]) -> Result<TopDiagram, RewriteError> {
    let mut ir = Ir::from_diagram(&d.diagram);
    let present: BTreeSet<DiagramRedex> = redexes_in(&ir).into_iter().collect();
    for (j, r) in rs.iter().enumerate() {
        if !present.contains(r) {
            return Err(RewriteError::StaleRedex(*r));
        }
        for q in &rs[..j] {
            let nodes = [q.output_node, q.input_node];
            if nodes.contains(&r.output_node) || nodes.contains(&r.input_node) || q.catalyst == r.catalyst {
                return Err(RewriteError::Overlap(*q, *r));
            }
        }
    }
    for r in rs {
        let Some(Atom::Output { args, .. }) = ir.atoms[r.output_node].take() else {
            unreachable!()
        };
        let Some(Atom::Input { arity, hom, .. }) = ir.atoms[r.input_node].take() else {
            unreachable!()
        };
        ir.atoms.push(Some(Atom::Ev { arity, hom, args }));
        let ev = Src::Atom(ir.atoms.len() - 1);
        ir.splice_sum(Src::Atom(r.output_node), vec![]);
        ir.splice_sum(Src::Atom(r.input_node), vec![ev]);
    }
    ir.normalize(NormalizeOptions::default());
    Ok(TopDiagram::from_normalized(ir.to_diagram(), d.instantiated))
}

/// Fires one redex. The result is normalised, so the `ev` meets the curry
/// box and the continuation is released onto the spine.
pub fn apply_comm(d: &TopDiagram, r: &DiagramRedex) -> Result<TopDiagram, RewriteError> {
    fire_all(d, std::slice::from_ref(r))
}

/// Fires pairwise disjoint redexes, each with its own token, in one step.
pub fn apply_concurrent(d: &TopDiagram, rs: &[DiagramRedex]) -> Result<TopDiagram, RewriteError> {
    fire_all(d, rs)
}

/// One ⇒^comm step: the results of every redex, one per equality class,
/// ordered by canonical key.
pub fn comm_step(d: &TopDiagram) -> Vec<TopDiagram> {
    comm_step_keyed(d).into_values().collect()
}

/// [`comm_step`] with each result's canonical key.
pub fn comm_step_keyed(d: &TopDiagram) -> BTreeMap<DiagramKey, TopDiagram> {
    let mut classes: BTreeMap<DiagramKey, TopDiagram> = BTreeMap::new();
    for r in find_diagram_redexes(d) {
        let next = apply_comm(d, &r).expect("redex was just found");
        classes.entry(next.key()).or_insert(next);
    }
    classes
}

/// Maximal sets of pairwise node-disjoint redexes with at most `k` members
/// (and at most one per token). Token assignment is canonical: the i-th
/// chosen pair gets the i-th token, so sets differing only in which tokens
/// they use are reported once.
pub fn concurrent_step(d: &TopDiagram, k: usize) -> Vec<Vec<DiagramRedex>> {
    let all = find_diagram_redexes(d);
    let mut tokens: Vec<usize> = all.iter().map(|r| r.catalyst).collect();
    tokens.sort_unstable();
    tokens.dedup();
    let limit = k.min(tokens.len());
    let pairs: Vec<DiagramRedex> = {
        let mut seen = BTreeSet::new();
        all.into_iter()
            .filter(|r| seen.insert((r.output_node, r.input_node)))
            .collect()
    };
    let disjoint = |a: &DiagramRedex, b: &DiagramRedex| {
        a.output_node != b.output_node && a.input_node != b.input_node
    };
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn grow(
        pairs: &[DiagramRedex],
        disjoint: &dyn Fn(&DiagramRedex, &DiagramRedex) -> bool,
        limit: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let fits = |j: usize, chosen: &[usize]| chosen.iter().all(|&c| disjoint(&pairs[c], &pairs[j]));
        if chosen.len() == limit || (0..pairs.len()).all(|j| chosen.contains(&j) || !fits(j, chosen)) {
            if !chosen.is_empty() {
                out.push(chosen.clone());
            }
            return;
        }
        for j in from..pairs.len() {
            if fits(j, chosen) {
                chosen.push(j);
                grow(pairs, disjoint, limit, j + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut sets = Vec::new();
    if limit > 0 {
        grow(&pairs, &disjoint, limit, 0, &mut chosen, &mut sets);
    }
    for set in sets {
        out.push(
            set.iter()
                .zip(&tokens)
                .map(|(&j, &c)| DiagramRedex {
                    catalyst: c,
                    ..pairs[j]
                })
                .collect(),
        );
    }
    out
}

/// The diagrams reached by one concurrent step, one per equality class.
pub fn concurrent_successors(d: &TopDiagram, k: usize) -> Vec<TopDiagram> {
    let mut classes: BTreeMap<DiagramKey, TopDiagram> = BTreeMap::new();
    for set in concurrent_step(d, k) {
        let next = apply_concurrent(d, &set).expect("disjoint redexes");
        classes.entry(next.key()).or_insert(next);
    }
    classes.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::GeneratorKind;
    use crate::syntax::parse;
    use crate::translate::{translate_top, translate_top_over};

    fn top(s: &str, k: usize) -> TopDiagram {
        translate_top(&parse(s).unwrap(), k, true)
    }

    #[test]
    fn open_interface_is_kept() {
        let p = parse("x?(y) => y!() | x!(u)").unwrap();
        let d = translate_top(&p, 1, false);
        let next = comm_step(&d);
        let names: Vec<_> = p.free_names().into_iter().collect();
        let expected = translate_top_over(&parse("u!()").unwrap(), &names, 1, false);
        assert_eq!(next.len(), 1);
        assert!(next[0].equal(&expected));
        assert!(!next[0].equal(&translate_top(&parse("u!()").unwrap(), 1, false)));
    }

    #[test]
    fn racing_has_two_redexes() {
        let d = top("x?(y) => y!() | x!(u) | x?(v) => v!(v)", 1);
        assert_eq!(find_diagram_redexes(&d).len(), 2);
        assert_eq!(comm_step(&d).len(), 2);
        let d = top("x?(y) => y!() | x!(u) | x?(v) => v!()", 1);
        assert_eq!(comm_step(&d).len(), 1);
        assert!(find_diagram_redexes(&top("0", 1)).is_empty());
    }

    #[test]
    fn gating() {
        let d = top("x?(y) => y!() | x!(u)", 1);
        assert_eq!(find_diagram_redexes(&d).len(), 1);
        assert!(find_diagram_redexes(&d.without_catalysts()).is_empty());
        assert!(find_diagram_redexes(&top("x?(y) => y!() | x!(u)", 0)).is_empty());
    }

    #[test]
    fn comm_instances() {
        let d = top("x?(y) => y!() | x!(u)", 1);
        let r = find_diagram_redexes(&d)[0];
        let next = apply_comm(&d, &r).unwrap();
        assert!(next.equal(&top("u!()", 1)));
        assert_eq!(next.catalysts, 1);
        assert_eq!(next.diagram.count_top(|k| matches!(k, GeneratorKind::Comm)), 1);

        let d = top("x?() => 0 | x!()", 1);
        let r = find_diagram_redexes(&d)[0];
        assert!(apply_comm(&d, &r).unwrap().equal(&top("0", 1)));
        assert!(matches!(
            apply_comm(&top("0", 1), &r),
            Err(RewriteError::StaleRedex(_))
        ));
        assert!(find_diagram_redexes(&top("x?(y, z) => 0 | x!(u)", 1)).is_empty());
    }

    #[test]
    fn restricted_channel() {
        let d = top("(new x)(x?(y) => y!() | x!(u))", 1);
        let next = comm_step(&d);
        assert_eq!(next.len(), 1);
        assert!(next[0].equal(&top("u!()", 1)));
    }

    #[test]
    fn concurrency() {
        let soup = "(a?() => 0 | a!()) | (b?() => 0 | b!())";
        let two = top(soup, 2);
        let sets = concurrent_step(&two, 2);
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].len(), 2);
        let fin = concurrent_successors(&two, 2);
        assert_eq!(fin.len(), 1);
        assert!(fin[0].equal(&top("0", 2)));

        let one = top(soup, 1);
        let sets = concurrent_step(&one, 1);
        assert_eq!(sets.len(), 2);
        assert!(sets.iter().all(|s| s.len() == 1));
        let mid = comm_step(&one);
        assert_eq!(mid.len(), 2);
        for m in &mid {
            let last = comm_step(m);
            assert_eq!(last.len(), 1);
            assert!(last[0].without_catalysts().equal(&fin[0].without_catalysts()));
        }
        assert!(concurrent_step(&top("0", 2), 2).is_empty());
    }
}

//! Brute-force congruence: closure of a term under single applications of
//! the axioms at any position.
//!
//! Terms are kept locally nameless, so alpha-equivalence is equality. Only
//! size-preserving or size-reducing directions are generated (unit
//! introduction and restriction duplication are omitted), which keeps every
//! closure finite. Two terms are judged congruent when their closures meet.

use std::collections::{HashSet, VecDeque};

use crate::syntax::{Nameless, NamelessName, Process};

/// All terms reachable from `p` by one axiom application.
pub fn axiom_steps(p: &Process) -> Vec<Process> {
    steps(&Nameless::from_process(p))
        .into_iter()
        .map(|t| t.to_process())
        .collect()
}

/// The terms reachable from `p` within `depth` axiom applications (all of
/// them when `depth` is `None`), each listed once up to alpha-equivalence.
pub fn axiom_closure(p: &Process, depth: Option<usize>) -> Vec<Process> {
    closure(Nameless::from_process(p), depth)
        .into_iter()
        .map(|t| t.to_process())
        .collect()
}

/// True if `p` and `q` rewrite to a common term, each within `depth` steps.
pub fn oracle_congruent(p: &Process, q: &Process, depth: usize) -> bool {
    let a = closure(Nameless::from_process(p), Some(depth));
    let b = closure(Nameless::from_process(q), Some(depth));
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let large: HashSet<Nameless> = large.into_iter().collect();
    small.iter().any(|t| large.contains(t))
}

pub(crate) fn closure(start: Nameless, depth: Option<usize>) -> Vec<Nameless> {
    let mut seen: HashSet<Nameless> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    order.push(start.clone());
    queue.push_back((start, 0usize));
    while let Some((t, d)) = queue.pop_front() {
        if depth.is_some_and(|max| d >= max) {
            continue;
        }
        for s in steps(&t) {
            if seen.insert(s.clone()) {
                order.push(s.clone());
                queue.push_back((s, d + 1));
            }
        }
    }
    order
}

pub(crate) fn steps(t: &Nameless) -> Vec<Nameless> {
    let mut out = root_steps(t);
    match t {
        Nameless::Stop | Nameless::Out(..) => {}
        Nameless::In(s, n, body) => {
            for b in steps(body) {
                out.push(Nameless::In(s.clone(), *n, Box::new(b)));
            }
        }
        Nameless::New(body) => {
            for b in steps(body) {
                out.push(Nameless::New(Box::new(b)));
            }
        }
        Nameless::Par(l, r) => {
            for x in steps(l) {
                out.push(par(x, (**r).clone()));
            }
            for x in steps(r) {
                out.push(par((**l).clone(), x));
            }
        }
    }
    out
}

fn par(l: Nameless, r: Nameless) -> Nameless {
    Nameless::Par(Box::new(l), Box::new(r))
}

fn new(b: Nameless) -> Nameless {
    Nameless::New(Box::new(b))
}

fn root_steps(t: &Nameless) -> Vec<Nameless> {
    let mut out = Vec::new();
    match t {
        Nameless::Par(l, r) => {
            out.push(par((**r).clone(), (**l).clone()));
            if let Nameless::Par(a, b) = &**l {
                out.push(par((**a).clone(), par((**b).clone(), (**r).clone())));
            }
            if let Nameless::Par(b, c) = &**r {
                out.push(par(par((**l).clone(), (**b).clone()), (**c).clone()));
            }
            if **r == Nameless::Stop {
                out.push((**l).clone());
            }
            if **l == Nameless::Stop {
                out.push((**r).clone());
            }
            if let Nameless::New(p) = &**l {
                out.push(new(par((**p).clone(), reindex(r, 0, &|i| i + 1))));
            }
        }
        Nameless::New(body) => match &**body {
            Nameless::New(p) => {
                out.push(new(new(reindex(p, 0, &|i| match i {
                    0 => 1,
                    1 => 0,
                    i => i,
                }))));
                if !occurs(p, 1, 0) {
                    out.push(new(reindex(p, 0, &|i| if i > 1 { i - 1 } else { i })));
                }
            }
            Nameless::Par(p, q) if !occurs(q, 0, 0) => {
                out.push(par(new((**p).clone()), reindex(q, 0, &|i| i - 1)));
            }
            _ => {}
        },
        _ => {}
    }
    out
}

/// Applies `f` to every index that escapes `cutoff` binders, relative to
/// the cutoff.
fn reindex(t: &Nameless, cutoff: u32, f: &dyn Fn(u32) -> u32) -> Nameless {
    let name = |n: &NamelessName| match n {
        NamelessName::Bound(i) if *i >= cutoff => NamelessName::Bound(f(*i - cutoff) + cutoff),
        other => other.clone(),
    };
    match t {
        Nameless::Stop => Nameless::Stop,
        Nameless::Out(s, args) => Nameless::Out(name(s), args.iter().map(name).collect()),
        Nameless::In(s, n, b) => Nameless::In(name(s), *n, Box::new(reindex(b, cutoff + n, f))),
        Nameless::New(b) => new(reindex(b, cutoff + 1, f)),
        Nameless::Par(l, r) => par(reindex(l, cutoff, f), reindex(r, cutoff, f)),
    }
}

fn occurs(t: &Nameless, idx: u32, cutoff: u32) -> bool {
    let hit = |n: &NamelessName| *n == NamelessName::Bound(idx + cutoff);
    match t {
        Nameless::Stop => false,
        Nameless::Out(s, args) => hit(s) || args.iter().any(hit),
        Nameless::In(s, n, b) => hit(s) || occurs(b, idx, cutoff + n),
        Nameless::New(b) => occurs(b, idx, cutoff + 1),
        Nameless::Par(l, r) => occurs(l, idx, cutoff) || occurs(r, idx, cutoff),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq, parse};

    fn p(s: &str) -> Process {
        parse(s).unwrap()
    }

    #[test]
    fn unit_in_one_step() {
        assert!(oracle_congruent(&p("0 | x!()"), &p("x!()"), 1));
    }

    #[test]
    fn distinct_outputs_never_meet() {
        assert!(!oracle_congruent(&p("x!()"), &p("y!()"), 10));
    }

    #[test]
    fn extrusion_within_two() {
        assert!(oracle_congruent(
            &p("(new x) x!() | z!()"),
            &p("(new n0)(n0!() | z!())"),
            2
        ));
    }

    #[test]
    fn shadowing_collapses() {
        let steps = axiom_steps(&p("(new x)(new x) x!()"));
        assert!(steps.iter().any(|s| alpha_eq(s, &p("(new x) x!()"))));
    }

    #[test]
    fn extrusion_respects_scope() {
        let c = axiom_closure(&p("(new x)(x!() | a!())"), None);
        assert!(c.iter().any(|s| alpha_eq(s, &p("(new x) x!() | a!()"))));
        let c = axiom_closure(&p("(new x)(x!() | x?() => 0)"), None);
        assert!(c.iter().all(|s| matches!(s, Process::New { .. })));
    }

    #[test]
    fn closure_is_finite_and_starts_with_input() {
        let start = p("(a!() | b!()) | (new x)(x!() | 0)");
        let c = axiom_closure(&start, None);
        assert!(alpha_eq(&c[0], &start));
        assert!(c.len() > 10);
    }
}

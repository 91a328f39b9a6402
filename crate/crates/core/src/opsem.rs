//! Reduction semantics.
//!
//! Every function first brings its argument into canonical form. The
//! canonical shape (hoisted restrictions over a flat multiset of prefixed
//! components) realises the `Par`, `New` and `Equiv` context rules, so only
//! the `Comm` axiom needs an implementation: an output and an input on the
//! same channel with the same arity, anywhere in the top-level multiset.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::congruence::{canonical_form, CanonicalProcess};
use crate::syntax::{substitute, Name, Process, Substitution};

/// A matched output/input pair, indexing the components of the canonical
/// form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Redex {
    pub subject: Name,
    pub sender: usize,
    pub receiver: usize,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpsemError {
    #[error("redex {0:?} does not occur in the term")]
    StaleRedex(Redex),
    #[error("state budget of {limit} exceeded")]
    BudgetExceeded { limit: usize },
}

pub fn find_redexes(p: &Process) -> Vec<Redex> {
    redexes_of(&canonical_form(p))
}

pub(crate) fn redexes_of(c: &CanonicalProcess) -> Vec<Redex> {
    let comps = c.components();
    let mut out = Vec::new();
    for (i, s) in comps.iter().enumerate() {
        let Process::Output { subject, args } = s else {
            continue;
        };
        for (j, r) in comps.iter().enumerate() {
            if let Process::Input {
                subject: rs,
                params,
                ..
            } = r
            {
                if rs == subject && params.len() == args.len() {
                    out.push(Redex {
                        subject: subject.clone(),
                        sender: i,
                        receiver: j,
                        arity: args.len(),
                    });
                }
            }
        }
    }
    out
}

pub fn fire(p: &Process, r: &Redex) -> Result<CanonicalProcess, OpsemError> {
    fire_canonical(&canonical_form(p), r)
}

pub(crate) fn fire_canonical(c: &CanonicalProcess, r: &Redex) -> Result<CanonicalProcess, OpsemError> {
    let comps = c.components();
    let stale = || OpsemError::StaleRedex(r.clone());
    let (Some(Process::Output { subject, args }), Some(Process::Input { subject: rs, params, body })) =
        (comps.get(r.sender), comps.get(r.receiver))
    else {
        return Err(stale());
    };
    if subject != &r.subject || rs != subject || args.len() != r.arity || params.len() != r.arity {
        return Err(stale());
    }
    let subst: Substitution = params.iter().cloned().zip(args.iter().cloned()).collect();
    let continuation = substitute(body, &subst);
    let rest = comps
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != r.sender && *k != r.receiver)
        .map(|(_, q)| (*q).clone());
    let next = Process::par_all(rest.chain(std::iter::once(continuation)));
    Ok(canonical_form(&Process::restrict_all(&c.binders(), next)))
}

/// One successor per redex, in redex order, not deduplicated.
pub fn successors(p: &Process) -> Vec<CanonicalProcess> {
    successors_of(&canonical_form(p))
}

pub(crate) fn successors_of(c: &CanonicalProcess) -> Vec<CanonicalProcess> {
    redexes_of(c)
        .iter()
        .map(|r| fire_canonical(c, r).expect("redex taken from the same term"))
        .collect()
}

/// The one-step successors of `p` up to congruence.
pub fn reduce_step(p: &Process) -> BTreeSet<CanonicalProcess> {
    successors(p).into_iter().collect()
}

/// A finite reduction graph; `states[root]` is the start state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionGraph {
    pub states: Vec<CanonicalProcess>,
    pub edges: Vec<(usize, usize)>,
    pub root: usize,
}

impl ReductionGraph {
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for &(s, t) in &self.edges {
            out[s].push(t);
        }
        out
    }

    /// States without outgoing edges.
    pub fn terminal_states(&self) -> Vec<&CanonicalProcess> {
        let succ = self.successors();
        self.states
            .iter()
            .zip(&succ)
            .filter(|(_, s)| s.is_empty())
            .map(|(st, _)| st)
            .collect()
    }
}

/// Breadth-first closure of [`reduce_step`] from `p`.
pub fn reachable(p: &Process, max_states: usize) -> Result<ReductionGraph, OpsemError> {
    let root = canonical_form(p);
    let mut index: BTreeMap<CanonicalProcess, usize> = BTreeMap::new();
    let mut states = vec![root.clone()];
    index.insert(root, 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    if max_states == 0 {
        return Err(OpsemError::BudgetExceeded { limit: max_states });
    }
    while let Some(s) = queue.pop_front() {
        let next: BTreeSet<CanonicalProcess> = successors_of(&states[s]).into_iter().collect();
        for t in next {
            let id = match index.get(&t) {
                Some(&id) => id,
                None => {
                    if states.len() >= max_states {
                        return Err(OpsemError::BudgetExceeded { limit: max_states });
                    }
                    let id = states.len();
                    index.insert(t.clone(), id);
                    states.push(t);
                    queue.push_back(id);
                    id
                }
            };
            edges.push((s, id));
        }
    }
    Ok(ReductionGraph {
        states,
        edges,
        root: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(s: &str) -> Process {
        parse(s).unwrap()
    }

    fn strs(set: &BTreeSet<CanonicalProcess>) -> Vec<String> {
        set.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn racing_inputs() {
        let race = p("x?(y) => y!() | x!(u) | x?(v) => v!()");
        assert_eq!(find_redexes(&race).len(), 2);
        let next = successors(&race);
        assert_eq!(next.len(), 2);
        for q in &next {
            assert_eq!(q.components().len(), 2);
            assert!(q
                .components()
                .iter()
                .any(|c| matches!(c, Process::Input { .. })));
        }
        // the two outcomes coincide up to alpha here
        assert_eq!(reduce_step(&race).len(), 1);
        let race = p("x?(y) => y!() | x!(u) | x?(v) => v!(v)");
        assert_eq!(reduce_step(&race).len(), 2);
    }

    #[test]
    fn comm_instance() {
        let next = reduce_step(&p("x?(y) => y!() | x!(u)"));
        assert_eq!(strs(&next), vec!["u!()"]);
        assert!(reduce_step(&p("x?(y, z) => 0 | x!(u)")).is_empty());
        assert!(find_redexes(&p("x?(y, z) => 0 | x!(u)")).is_empty());
        assert!(find_redexes(&Process::Stop).is_empty());
    }

    #[test]
    fn fire_under_restriction() {
        let t = p("(new x)(x?(v) => 0 | x!(a))");
        let r = find_redexes(&t);
        assert_eq!(r.len(), 1);
        assert_eq!(fire(&t, &r[0]).unwrap().to_string(), "(new n0)0");
        let z = p("x?() => 0 | x!()");
        assert_eq!(fire(&z, &find_redexes(&z)[0]).unwrap().to_string(), "0");
    }

    #[test]
    fn stale_redex_rejected() {
        let t = p("x?(y) => y!() | x!(u)");
        let mut r = find_redexes(&t)[0].clone();
        r.arity = 2;
        assert!(matches!(fire(&t, &r), Err(OpsemError::StaleRedex(_))));
        assert!(fire(&Process::Stop, &find_redexes(&t)[0]).is_err());
    }

    #[test]
    fn cross_pairings_deduplicate() {
        let t = p("(x?(y) => 0 | x!(a)) | (x?(y) => 0 | x!(a))");
        assert_eq!(successors(&t).len(), 4);
        assert_eq!(strs(&reduce_step(&t)), vec!["x!(a) | x?(n0) => 0"]);
    }

    #[test]
    fn reachable_graphs() {
        let g = reachable(&Process::Stop, 10).unwrap();
        assert_eq!((g.states.len(), g.edges.len()), (1, 0));
        let g = reachable(&p("x?(y) => 0 | x!(u)"), 10).unwrap();
        assert_eq!((g.states.len(), g.edges.len()), (2, 1));
        let g = reachable(&p("x?(y) => y!() | x!(u) | x?(v) => v!(v)"), 10).unwrap();
        assert_eq!((g.states.len(), g.edges.len()), (3, 2));
        assert!(matches!(
            reachable(&p("x?(y) => 0 | x!(u)"), 1),
            Err(OpsemError::BudgetExceeded { limit: 1 })
        ));
    }

    #[test]
    fn graph_json_shape() {
        let g = reachable(&p("x?(y) => 0 | x!(u)"), 10).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["states"][1], "0");
        assert_eq!(v["edges"][0], serde_json::json!([0, 1]));
    }
}

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::congruence::canonical_form;
use crate::syntax::{name, Name, Nameless, Process};
use crate::translate::Context;

/// Bounds for [`enumerate_terms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    /// Free names are the first this-many of `a, b, c, …`.
    pub name_alphabet_size: usize,
    /// Input plus output prefixes in the whole term.
    pub max_prefixes: usize,
    pub max_arity: usize,
    /// Parallel components per level (top level or an input body).
    pub max_parallel_width: usize,
    pub allow_new: bool,
    /// Restrictions per level when `allow_new` is set.
    pub max_new_per_level: usize,
    /// Terms with a restriction have at most this many prefixes.
    pub max_prefixes_with_new: Option<usize>,
    /// Optional bound on [`Process::size`] of the canonical representative.
    pub max_size: Option<usize>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            name_alphabet_size: 2,
            max_prefixes: 4,
            max_arity: 1,
            max_parallel_width: 4,
            allow_new: true,
            max_new_per_level: 1,
            max_prefixes_with_new: None,
            max_size: None,
        }
    }
}

impl CorpusSpec {
    /// The corpus used for context checks: two prefixes, width two.
    pub fn small() -> Self {
        CorpusSpec {
            max_prefixes: 2,
            max_parallel_width: 2,
            ..CorpusSpec::default()
        }
    }

    pub fn alphabet(&self) -> Vec<Name> {
        alphabet(self.name_alphabet_size)
    }
}

/// `a, b, c, …, z, a1, b1, …`
pub fn alphabet(n: usize) -> Vec<Name> {
    (0..n)
        .map(|i| {
            let letter = (b'a' + (i % 26) as u8) as char;
            match i / 26 {
                0 => name(&letter.to_string()),
                k => name(&format!("{letter}{k}")),
            }
        })
        .collect()
}

struct TermGen<'a> {
    spec: &'a CorpusSpec,
}

impl TermGen<'_> {
    /// Terms of one level with at most `budget` prefixes, as (term, prefixes).
    fn level(&self, budget: usize, scope: &[Name], depth: usize) -> Vec<(Process, usize)> {
        let max_new = if self.spec.allow_new {
            self.spec.max_new_per_level
        } else {
            0
        };
        let mut out = Vec::new();
        for r in 0..=max_new {
            if r > 0 && budget == 0 {
                break;
            }
            let binders: Vec<Name> = (0..r).map(|j| name(&format!("r{depth}_{j}"))).collect();
            let mut inner = scope.to_vec();
            inner.extend(binders.iter().cloned());
            let mut comps = self.components(budget, &inner, depth);
            comps.sort_by_key(|c| c.1);
            let mut chosen = Vec::new();
            self.multisets(&comps, 0, budget, &mut chosen, &mut |parts: &[&(Process, usize)]| {
                let k: usize = parts.iter().map(|p| p.1).sum();
                let body = Process::par_all(parts.iter().map(|p| p.0.clone()));
                let fv = body.free_names();
                if binders.iter().all(|b| fv.contains(b)) {
                    out.push((Process::restrict_all(&binders, body), k));
                }
            });
        }
        if depth > 0 {
            let mut seen = BTreeSet::new();
            out.retain(|(p, _)| seen.insert(canonical_form(p)));
        }
        out
    }

    fn multisets<'c>(
        &self,
        comps: &'c [(Process, usize)],
        from: usize,
        budget: usize,
        chosen: &mut Vec<&'c (Process, usize)>,
        emit: &mut dyn FnMut(&[&'c (Process, usize)]),
    ) {
        emit(chosen);
        if chosen.len() == self.spec.max_parallel_width {
            return;
        }
        for i in from..comps.len() {
            if comps[i].1 > budget {
                break;
            }
            chosen.push(&comps[i]);
            self.multisets(comps, i, budget - comps[i].1, chosen, emit);
            chosen.pop();
        }
    }

    fn components(&self, budget: usize, scope: &[Name], depth: usize) -> Vec<(Process, usize)> {
        let mut out = Vec::new();
        if budget == 0 {
            return out;
        }
        for subject in scope {
            for arity in 0..=self.spec.max_arity {
                for args in tuples(scope, arity) {
                    out.push((Process::output(subject.clone(), args), 1));
                }
            }
        }
        for subject in scope {
            for arity in 0..=self.spec.max_arity {
                let params: Vec<Name> = (0..arity).map(|j| name(&format!("y{depth}_{j}"))).collect();
                let mut inner = scope.to_vec();
                inner.extend(params.iter().cloned());
                for (body, k) in self.level(budget - 1, &inner, depth + 1) {
                    out.push((Process::input(subject.clone(), params.clone(), body), k + 1));
                }
            }
        }
        out
    }
}

fn tuples(names: &[Name], len: usize) -> Vec<Vec<Name>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                names.iter().map(move |n| {
                    let mut t = t.clone();
                    t.push(n.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Every term within the bounds, one per congruence class, as canonical
/// representatives in their canonical order. With `PITWO_SEED` set the
/// order is a seeded shuffle of that.
pub fn enumerate_terms(spec: &CorpusSpec) -> Vec<Process> {
    let mut passes = vec![*spec];
    if let (true, Some(k)) = (spec.allow_new, spec.max_prefixes_with_new) {
        if k < spec.max_prefixes {
            passes = vec![
                CorpusSpec {
                    allow_new: false,
                    ..*spec
                },
                CorpusSpec {
                    max_prefixes: k,
                    ..*spec
                },
            ];
        }
    }
    let mut classes = BTreeSet::new();
    for pass in &passes {
        let gen = TermGen { spec: pass };
        for (p, _) in gen.level(pass.max_prefixes, &spec.alphabet(), 0) {
            let c = canonical_form(&p);
            if spec.max_size.is_none_or(|s| c.process().size() <= s) {
                classes.insert(c);
            }
        }
    }
    let mut out: Vec<Process> = classes.into_iter().map(Process::from).collect();
    if let Some(seed) = std::env::var("PITWO_SEED").ok().and_then(|s| s.parse::<u64>().ok()) {
        out.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    out
}

/// Every raw term of [`Process::size`] at most `max_size` whose names,
/// free and bound, come from `names`, one per alpha-equivalence class.
/// Unlike [`enumerate_terms`] this keeps congruent variants apart.
pub fn enumerate_by_size(names: &[Name], max_arity: usize, max_size: usize) -> Vec<Process> {
    let mut by_size: Vec<Vec<Process>> = vec![Vec::new()];
    for s in 1..=max_size {
        let mut here = Vec::new();
        if s == 1 {
            here.push(Process::Stop);
            for x in names {
                for a in 0..=max_arity {
                    for args in tuples(names, a) {
                        here.push(Process::output(x.clone(), args));
                    }
                }
            }
        } else {
            for body in &by_size[s - 1] {
                for x in names {
                    here.push(Process::new_scope(x.clone(), body.clone()));
                    for a in 0..=max_arity {
                        for params in distinct_tuples(names, a) {
                            here.push(Process::input(x.clone(), params, body.clone()));
                        }
                    }
                }
            }
            for i in 1..s - 1 {
                for l in &by_size[i] {
                    for r in &by_size[s - 1 - i] {
                        here.push(Process::par(l.clone(), r.clone()));
                    }
                }
            }
        }
        by_size.push(here);
    }
    let mut seen = HashSet::new();
    by_size
        .into_iter()
        .flatten()
        .filter(|p| seen.insert(Nameless::from_process(p)))
        .collect()
}

fn distinct_tuples(names: &[Name], len: usize) -> Vec<Vec<Name>> {
    tuples(names, len)
        .into_iter()
        .filter(|t| t.iter().collect::<BTreeSet<_>>().len() == t.len())
        .collect()
}

/// Contexts of [`Context::size`] at most `max_size`. Binders are drawn from
/// `names`, so they capture free names of a filler; parallel siblings come
/// from [`enumerate_by_size`] over the names in scope.
pub fn enumerate_contexts(names: &[Name], max_arity: usize, max_size: usize) -> Vec<Context> {
    let mut siblings: BTreeMap<usize, Vec<Process>> = BTreeMap::new();
    let max_sibling = max_size.saturating_sub(2);
    let all = enumerate_by_size(names, max_arity, max_sibling);
    for p in all {
        siblings.entry(p.size()).or_default().push(p);
    }
    let mut by_size: Vec<Vec<Context>> = vec![Vec::new(), vec![Context::Hole]];
    for s in 2..=max_size {
        let mut here = Vec::new();
        for body in &by_size[s - 1] {
            for x in names {
                here.push(Context::New {
                    binder: x.clone(),
                    body: Box::new(body.clone()),
                });
                for a in 0..=max_arity {
                    for params in distinct_tuples(names, a) {
                        here.push(Context::Input {
                            subject: x.clone(),
                            params,
                            body: Box::new(body.clone()),
                        });
                    }
                }
            }
        }
        for c_size in 1..s - 1 {
            let Some(ps) = siblings.get(&(s - 1 - c_size)) else {
                continue;
            };
            for c in &by_size[c_size] {
                for p in ps {
                    here.push(Context::ParLeft(Box::new(c.clone()), p.clone()));
                    here.push(Context::ParRight(p.clone(), Box::new(c.clone())));
                }
            }
        }
        by_size.push(here);
    }
    by_size.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn trivial_specs() {
        let spec = CorpusSpec {
            max_prefixes: 0,
            max_parallel_width: 1,
            ..CorpusSpec::default()
        };
        assert_eq!(enumerate_terms(&spec), vec![Process::Stop]);
        let spec = CorpusSpec {
            name_alphabet_size: 1,
            max_prefixes: 1,
            max_prefixes_with_new: None,
            max_arity: 0,
            allow_new: false,
            ..CorpusSpec::default()
        };
        let terms = enumerate_terms(&spec);
        let expected: BTreeSet<_> = ["0", "a?() => 0", "a!()"]
            .iter()
            .map(|s| canonical_form(&parse(s).unwrap()))
            .collect();
        let got: BTreeSet<_> = terms.iter().map(canonical_form).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn monotone_in_bounds() {
        let base = CorpusSpec {
            max_prefixes: 2,
            max_parallel_width: 1,
            max_prefixes_with_new: None,
            ..CorpusSpec::default()
        };
        let n = enumerate_terms(&base).len();
        for bigger in [
            CorpusSpec { max_prefixes: 3, ..base },
            CorpusSpec { max_parallel_width: 2, ..base },
            CorpusSpec { name_alphabet_size: 3, ..base },
            CorpusSpec { max_new_per_level: 2, ..base },
        ] {
            assert!(enumerate_terms(&bigger).len() > n);
        }
        let no_new = CorpusSpec { allow_new: false, ..base };
        assert!(enumerate_terms(&no_new).len() < n);
    }

    #[test]
    fn by_size_counts() {
        let names = alphabet(1);
        let terms = enumerate_by_size(&names, 0, 2);
        // size 1: 0, a!(); size 2: (new a)0, (new a)a!(), a?()=>0, a?()=>a!()
        assert_eq!(terms.len(), 6);
    }

    #[test]
    fn contexts_capture() {
        let names = alphabet(1);
        let cs = enumerate_contexts(&names, 1, 2);
        assert!(cs.contains(&Context::Hole));
        assert!(cs.iter().any(|c| matches!(c, Context::Input { params, .. } if params.len() == 1)));
        assert!(cs.iter().all(|c| c.size() <= 2));
    }
}


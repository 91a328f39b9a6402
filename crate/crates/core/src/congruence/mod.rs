//! Structural congruence.
//!
//! Congruence is alpha-equivalence together with the commutative-monoid laws
//! for `|` and `0` and the restriction axioms
//!
//! ```text
//! (new x)(new x)P ≡ (new x)P
//! (new x)(new y)P ≡ (new y)(new x)P
//! ((new x)P) | Q  ≡ (new x)(P | Q)      x ∉ fn(Q)
//! ```
//!
//! [`canonical_form`] decides it: every term is flattened into levels (the
//! top level and one per input body), each holding a set of restrictions and
//! a multiset of prefixed components. Restrictions are hoisted to the
//! outermost position of their level but never across an input prefix.
//! A restriction whose binder is unused disappears as soon as the level has
//! another restriction to absorb it; a level whose restrictions are all
//! unused keeps exactly one. Binder order and component order are then
//! fixed by minimising a structural key.

pub(crate) mod oracle;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::syntax::{fresh_name_by, Name, NameSet, Process};

pub use oracle::{axiom_closure, axiom_steps, oracle_congruent};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CanonOptions {
    /// Also delete every restriction whose binder does not occur in its
    /// scope, i.e. adopt `(new x)P ≡ P` for `x ∉ fn(P)`.
    pub gc_vacuous: bool,
}

/// A process in canonical form. Two processes are congruent iff their
/// canonical forms are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalProcess {
    process: Process,
}

impl CanonicalProcess {
    pub fn process(&self) -> &Process {
        &self.process
    }

    pub fn into_process(self) -> Process {
        self.process
    }

    /// The hoisted top-level restrictions, outermost first.
    pub fn binders(&self) -> Vec<Name> {
        let mut out = Vec::new();
        let mut p = &self.process;
        while let Process::New { binder, body } = p {
            out.push(binder.clone());
            p = body;
        }
        out
    }

    /// The top-level parallel components, in canonical order. Each is an
    /// input or an output; `0` has no components.
    pub fn components(&self) -> Vec<&Process> {
        let mut p = &self.process;
        while let Process::New { body, .. } = p {
            p = body;
        }
        let mut out = Vec::new();
        collect_par(p, &mut out);
        out
    }
}

fn collect_par<'a>(p: &'a Process, out: &mut Vec<&'a Process>) {
    match p {
        Process::Stop => {}
        Process::Par { left, right } => {
            collect_par(left, out);
            collect_par(right, out);
        }
        other => out.push(other),
    }
}

impl fmt::Display for CanonicalProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.process.fmt(f)
    }
}

impl Serialize for CanonicalProcess {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.process)
    }
}

impl From<CanonicalProcess> for Process {
    fn from(c: CanonicalProcess) -> Self {
        c.process
    }
}

pub fn canonical_form(p: &Process) -> CanonicalProcess {
    canonical_form_with(p, CanonOptions::default())
}

pub fn canonical_form_with(p: &Process, opts: CanonOptions) -> CanonicalProcess {
    let level = canonical_level(p, opts);
    CanonicalProcess {
        process: rebuild(&level, &p.free_names()),
    }
}

pub fn congruent(p: &Process, q: &Process) -> bool {
    congruent_with(p, q, CanonOptions::default())
}

pub fn congruent_with(p: &Process, q: &Process, opts: CanonOptions) -> bool {
    canonical_level(p, opts) == canonical_level(q, opts)
}

type Id = u32;

#[derive(Debug)]
enum RawRef {
    Free(Name),
    Id(Id),
}

#[derive(Debug)]
enum RawPrime {
    Out(RawRef, Vec<RawRef>),
    In(RawRef, RawLevel),
}

#[derive(Debug, Default)]
struct RawLevel {
    params: Vec<Id>,
    news: Vec<Id>,
    comps: Vec<RawPrime>,
}

struct Flattener<'a> {
    next: Id,
    scope: Vec<(&'a Name, Id)>,
    used: HashSet<Id>,
}

impl<'a> Flattener<'a> {
    fn resolve(&mut self, n: &'a Name) -> RawRef {
        match self.scope.iter().rev().find(|(b, _)| *b == n) {
            Some(&(_, id)) => {
                self.used.insert(id);
                RawRef::Id(id)
            }
            None => RawRef::Free(n.clone()),
        }
    }

    fn fresh(&mut self) -> Id {
        self.next += 1;
        self.next - 1
    }

    fn walk(&mut self, p: &'a Process, level: &mut RawLevel) {
        match p {
            Process::Stop => {}
            Process::Par { left, right } => {
                self.walk(left, level);
                self.walk(right, level);
            }
            Process::New { binder, body } => {
                let id = self.fresh();
                level.news.push(id);
                self.scope.push((binder, id));
                self.walk(body, level);
                self.scope.pop();
            }
            Process::Output { subject, args } => {
                let s = self.resolve(subject);
                let a = args.iter().map(|a| self.resolve(a)).collect();
                level.comps.push(RawPrime::Out(s, a));
            }
            Process::Input {
                subject,
                params,
                body,
            } => {
                let s = self.resolve(subject);
                let mark = self.scope.len();
                let mut inner = RawLevel::default();
                for p in params {
                    let id = self.fresh();
                    inner.params.push(id);
                    self.scope.push((p, id));
                }
                self.walk(body, &mut inner);
                self.scope.truncate(mark);
                level.comps.push(RawPrime::In(s, inner));
            }
        }
    }
}

/// Reference to a name inside a canonical level: free, or bound `up` levels
/// out at position `idx` (parameters first, then restrictions). `Masked`
/// stands for a restriction of a level whose binder order is still open.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum CRef {
    Bound { up: u32, idx: u32 },
    Masked { up: u32, marked: bool },
    Free(Name),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum CPrime {
    Out(CRef, Vec<CRef>),
    In(CRef, u32, CLevel),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct CLevel {
    news: u32,
    comps: Vec<CPrime>,
}

#[derive(Clone, Copy)]
enum Slot {
    Idx(u32),
    Masked(bool),
}

struct Canon<'a> {
    env: HashMap<Id, (u32, Slot)>,
    used: &'a HashSet<Id>,
    opts: CanonOptions,
}

impl Canon<'_> {
    fn cref(&self, r: &RawRef, depth: u32) -> CRef {
        match r {
            RawRef::Free(n) => CRef::Free(n.clone()),
            RawRef::Id(id) => {
                let (d, slot) = self.env[id];
                let up = depth - d;
                match slot {
                    Slot::Idx(idx) => CRef::Bound { up, idx },
                    Slot::Masked(marked) => CRef::Masked { up, marked },
                }
            }
        }
    }

    fn prime(&mut self, p: &RawPrime, depth: u32) -> CPrime {
        match p {
            RawPrime::Out(s, args) => CPrime::Out(
                self.cref(s, depth),
                args.iter().map(|a| self.cref(a, depth)).collect(),
            ),
            RawPrime::In(s, body) => CPrime::In(
                self.cref(s, depth),
                body.params.len() as u32,
                self.level(body, depth + 1),
            ),
        }
    }

    fn comps(&mut self, level: &RawLevel, depth: u32) -> Vec<CPrime> {
        let mut out: Vec<CPrime> = level.comps.iter().map(|c| self.prime(c, depth)).collect();
        out.sort();
        out
    }

    fn kept_news(&self, level: &RawLevel) -> Vec<Id> {
        let live: Vec<Id> = level
            .news
            .iter()
            .copied()
            .filter(|id| self.used.contains(id))
            .collect();
        if live.is_empty() && !level.news.is_empty() && !self.opts.gc_vacuous {
            vec![level.news[0]]
        } else {
            live
        }
    }

    fn level(&mut self, level: &RawLevel, depth: u32) -> CLevel {
        for (i, &p) in level.params.iter().enumerate() {
            self.env.insert(p, (depth, Slot::Idx(i as u32)));
        }
        let base = level.params.len() as u32;
        let news = self.kept_news(level);
        let assign = |env: &mut HashMap<Id, (u32, Slot)>, order: &[Id]| {
            for (i, &b) in order.iter().enumerate() {
                env.insert(b, (depth, Slot::Idx(base + i as u32)));
            }
        };
        if news.len() <= 1 {
            assign(&mut self.env, &news);
            return CLevel {
                news: news.len() as u32,
                comps: self.comps(level, depth),
            };
        }

        let mut signed: Vec<(Vec<CPrime>, Id)> = Vec::with_capacity(news.len());
        for &b in &news {
            for &o in &news {
                self.env.insert(o, (depth, Slot::Masked(o == b)));
            }
            signed.push((self.comps(level, depth), b));
        }
        signed.sort_by(|a, b| a.0.cmp(&b.0));
        let groups: Vec<Vec<Id>> = signed
            .into_iter()
            .chunk_by(|(sig, _)| sig.clone())
            .into_iter()
            .map(|(_, g)| g.map(|(_, id)| id).collect())
            .collect();

        let mut best: Option<Vec<CPrime>> = None;
        for choice in groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>())
            .multi_cartesian_product()
        {
            let order: Vec<Id> = choice.into_iter().flatten().collect();
            assign(&mut self.env, &order);
            let comps = self.comps(level, depth);
            if best.as_ref().is_none_or(|b| comps < *b) {
                best = Some(comps);
            }
        }
        CLevel {
            news: news.len() as u32,
            comps: best.expect("at least one ordering"),
        }
    }
}

fn canonical_level(p: &Process, opts: CanonOptions) -> CLevel {
    let mut fl = Flattener {
        next: 0,
        scope: Vec::new(),
        used: HashSet::new(),
    };
    let mut top = RawLevel::default();
    fl.walk(p, &mut top);
    let mut canon = Canon {
        env: HashMap::new(),
        used: &fl.used,
        opts,
    };
    canon.level(&top, 0)
}

struct Rebuilder<'a> {
    free: &'a NameSet,
    taken: BTreeSet<Name>,
    scopes: Vec<Vec<Name>>,
}

impl Rebuilder<'_> {
    fn fresh(&mut self) -> Name {
        let n = fresh_name_by(|c| self.free.contains(c) || self.taken.contains(c));
        self.taken.insert(n.clone());
        n
    }

    fn name(&self, r: &CRef) -> Name {
        match r {
            CRef::Free(n) => n.clone(),
            CRef::Bound { up, idx } => {
                self.scopes[self.scopes.len() - 1 - *up as usize][*idx as usize].clone()
            }
            CRef::Masked { .. } => unreachable!("masks are resolved before rebuilding"),
        }
    }

    fn level(&mut self, level: &CLevel, params: Vec<Name>) -> Process {
        let mut binders = params;
        let first_new = binders.len();
        for _ in 0..level.news {
            let n = self.fresh();
            binders.push(n);
        }
        let news = binders[first_new..].to_vec();
        self.scopes.push(binders);
        let comps: Vec<Process> = level.comps.iter().map(|c| self.prime(c)).collect();
        self.scopes.pop();
        Process::restrict_all(&news, Process::par_all(comps))
    }

    fn prime(&mut self, p: &CPrime) -> Process {
        match p {
            CPrime::Out(s, args) => {
                Process::output(self.name(s), args.iter().map(|a| self.name(a)).collect())
            }
            CPrime::In(s, arity, body) => {
                let subject = self.name(s);
                let params: Vec<Name> = (0..*arity).map(|_| self.fresh()).collect();
                let body = self.level(body, params.clone());
                Process::input(subject, params, body)
            }
        }
    }
}

fn rebuild(level: &CLevel, free: &NameSet) -> Process {
    let mut r = Rebuilder {
        free,
        taken: BTreeSet::new(),
        scopes: Vec::new(),
    };
    r.level(level, Vec::new())
}

//! Locally nameless terms: bound names are de Bruijn indices, free names stay
//! symbolic. Alpha-equivalent processes have equal nameless forms.

use super::{fresh_name_by, Name, NameSet, Process};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) enum NamelessName {
    Bound(u32),
    Free(Name),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) enum Nameless {
    Stop,
    Out(NamelessName, Vec<NamelessName>),
    /// Binds `arity` indices; the last parameter is index 0.
    In(NamelessName, u32, Box<Nameless>),
    New(Box<Nameless>),
    Par(Box<Nameless>, Box<Nameless>),
}

impl Nameless {
    pub(crate) fn from_process(p: &Process) -> Self {
        fn resolve(n: &Name, scope: &[&Name]) -> NamelessName {
            match scope.iter().rev().position(|b| *b == n) {
                Some(i) => NamelessName::Bound(i as u32),
                None => NamelessName::Free(n.clone()),
            }
        }
        fn go<'a>(p: &'a Process, scope: &mut Vec<&'a Name>) -> Nameless {
            match p {
                Process::Stop => Nameless::Stop,
                Process::Output { subject, args } => Nameless::Out(
                    resolve(subject, scope),
                    args.iter().map(|a| resolve(a, scope)).collect(),
                ),
                Process::Input {
                    subject,
                    params,
                    body,
                } => {
                    let s = resolve(subject, scope);
                    let mark = scope.len();
                    scope.extend(params.iter());
                    let b = go(body, scope);
                    scope.truncate(mark);
                    Nameless::In(s, params.len() as u32, Box::new(b))
                }
                Process::New { binder, body } => {
                    scope.push(binder);
                    let b = go(body, scope);
                    scope.pop();
                    Nameless::New(Box::new(b))
                }
                Process::Par { left, right } => {
                    Nameless::Par(Box::new(go(left, scope)), Box::new(go(right, scope)))
                }
            }
        }
        go(p, &mut Vec::new())
    }

    /// Rebuilds a named process, choosing binder names `n0, n1, …` that avoid
    /// every free name.
    pub(crate) fn to_process(&self) -> Process {
        let mut free = NameSet::new();
        self.collect_free(&mut free);
        let mut used = free;
        let mut scope: Vec<Name> = Vec::new();
        self.build(&mut scope, &mut used)
    }

    fn collect_free(&self, out: &mut NameSet) {
        let mut note = |n: &NamelessName| {
            if let NamelessName::Free(x) = n {
                out.insert(x.clone());
            }
        };
        match self {
            Nameless::Stop => {}
            Nameless::Out(s, args) => {
                note(s);
                args.iter().for_each(note);
            }
            Nameless::In(s, _, b) => {
                note(s);
                b.collect_free(out);
            }
            Nameless::New(b) => b.collect_free(out),
            Nameless::Par(l, r) => {
                l.collect_free(out);
                r.collect_free(out);
            }
        }
    }

    fn build(&self, scope: &mut Vec<Name>, used: &mut NameSet) -> Process {
        fn name_of(n: &NamelessName, scope: &[Name]) -> Name {
            match n {
                NamelessName::Free(x) => x.clone(),
                NamelessName::Bound(i) => scope[scope.len() - 1 - *i as usize].clone(),
            }
        }
        let fresh = |used: &mut NameSet| {
            let n = fresh_name_by(|c| used.contains(c));
            used.insert(n.clone());
            n
        };
        match self {
            Nameless::Stop => Process::Stop,
            Nameless::Out(s, args) => Process::output(
                name_of(s, scope),
                args.iter().map(|a| name_of(a, scope)).collect(),
            ),
            Nameless::In(s, arity, b) => {
                let subject = name_of(s, scope);
                let params: Vec<Name> = (0..*arity).map(|_| fresh(used)).collect();
                let mark = scope.len();
                scope.extend(params.iter().cloned());
                let body = b.build(scope, used);
                scope.truncate(mark);
                Process::input(subject, params, body)
            }
            Nameless::New(b) => {
                let binder = fresh(used);
                scope.push(binder.clone());
                let body = b.build(scope, used);
                scope.pop();
                Process::new_scope(binder, body)
            }
            Nameless::Par(l, r) => Process::par(l.build(scope, used), r.build(scope, used)),
        }
    }
}

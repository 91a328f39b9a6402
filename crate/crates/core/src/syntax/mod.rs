//! Abstract syntax of the replication-free polyadic π-calculus.
//!
//! ```text
//! P ::= 0 | x?(y1, …, yn) => P | x!(y1, …, yn) | (new x) P | P | P
//! ```
//!
//! Processes are immutable trees. Names are cheap to clone (shared string
//! storage) and compare by identifier.

mod nameless;
mod parse;
mod print;
mod subst;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub(crate) use nameless::{Nameless, NamelessName};
pub use parse::{parse, ParseError};
pub use subst::{alpha_eq, substitute, Substitution};

/// A channel name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

/// Rejected identifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid name `{0}`: names match [a-zA-Z][a-zA-Z0-9_]*")]
pub struct InvalidName(pub String);

impl Name {
    pub fn new(id: &str) -> Result<Self, InvalidName> {
        if is_identifier(id) {
            Ok(Name(Arc::from(id)))
        } else {
            Err(InvalidName(id.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// A name outside the identifier syntax, so it can never clash with a
    /// parsed one.
    pub(crate) fn reserved(id: &str) -> Self {
        Name(Arc::from(id))
    }
}

pub(crate) fn is_identifier(id: &str) -> bool {
    let mut chars = id.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Name {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Name {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Name::new(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used pervasively in tests and examples. Panics on a malformed
/// identifier.
pub fn name(id: &str) -> Name {
    Name::new(id).unwrap_or_else(|e| panic!("{e}"))
}

pub type NameSet = BTreeSet<Name>;

/// A process term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum Process {
    Stop,
    Input {
        subject: Name,
        params: Vec<Name>,
        body: Box<Process>,
    },
    Output {
        subject: Name,
        args: Vec<Name>,
    },
    New {
        binder: Name,
        body: Box<Process>,
    },
    Par {
        left: Box<Process>,
        right: Box<Process>,
    },
}

/// Structural problems a term can have even though it type-checks in Rust.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllFormed {
    #[error("input on `{subject}` binds `{param}` more than once")]
    DuplicateParameter { subject: Name, param: Name },
}

impl Process {
    pub fn input(subject: Name, params: Vec<Name>, body: Process) -> Self {
        Process::Input {
            subject,
            params,
            body: Box::new(body),
        }
    }

    pub fn output(subject: Name, args: Vec<Name>) -> Self {
        Process::Output { subject, args }
    }

    pub fn new_scope(binder: Name, body: Process) -> Self {
        Process::New {
            binder,
            body: Box::new(body),
        }
    }

    pub fn par(left: Process, right: Process) -> Self {
        Process::Par {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Left-nested parallel composition of `parts`; `0` when empty.
    pub fn par_all<I: IntoIterator<Item = Process>>(parts: I) -> Self {
        let mut iter = parts.into_iter();
        match iter.next() {
            None => Process::Stop,
            Some(first) => iter.fold(first, Process::par),
        }
    }

    /// Wraps `body` in restrictions, the first binder outermost.
    pub fn restrict_all(binders: &[Name], body: Process) -> Self {
        binders
            .iter()
            .rev()
            .fold(body, |acc, b| Process::new_scope(b.clone(), acc))
    }

    /// Checks the invariants the parser enforces.
    pub fn well_formed(&self) -> Result<(), IllFormed> {
        match self {
            Process::Stop | Process::Output { .. } => Ok(()),
            Process::Input {
                subject,
                params,
                body,
            } => {
                let mut seen = NameSet::new();
                for p in params {
                    if !seen.insert(p.clone()) {
                        return Err(IllFormed::DuplicateParameter {
                            subject: subject.clone(),
                            param: p.clone(),
                        });
                    }
                }
                body.well_formed()
            }
            Process::New { body, .. } => body.well_formed(),
            Process::Par { left, right } => {
                left.well_formed()?;
                right.well_formed()
            }
        }
    }

    /// Number of constructors in the tree.
    pub fn size(&self) -> usize {
        match self {
            Process::Stop | Process::Output { .. } => 1,
            Process::Input { body, .. } | Process::New { body, .. } => 1 + body.size(),
            Process::Par { left, right } => 1 + left.size() + right.size(),
        }
    }

    /// Number of input and output prefixes.
    pub fn prefix_count(&self) -> usize {
        match self {
            Process::Stop => 0,
            Process::Output { .. } => 1,
            Process::Input { body, .. } => 1 + body.prefix_count(),
            Process::New { body, .. } => body.prefix_count(),
            Process::Par { left, right } => left.prefix_count() + right.prefix_count(),
        }
    }

    pub fn free_names(&self) -> NameSet {
        let mut out = NameSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a Name>, out: &mut NameSet) {
        let mut note = |n: &Name, bound: &Vec<&Name>| {
            if !bound.contains(&n) {
                out.insert(n.clone());
            }
        };
        match self {
            Process::Stop => {}
            Process::Output { subject, args } => {
                note(subject, bound);
                for a in args {
                    note(a, bound);
                }
            }
            Process::Input {
                subject,
                params,
                body,
            } => {
                note(subject, bound);
                let mark = bound.len();
                bound.extend(params.iter());
                body.collect_free(bound, out);
                bound.truncate(mark);
            }
            Process::New { binder, body } => {
                bound.push(binder);
                body.collect_free(bound, out);
                bound.pop();
            }
            Process::Par { left, right } => {
                left.collect_free(bound, out);
                right.collect_free(bound, out);
            }
        }
    }

    /// Every name occurring in the term, free or bound (binders included).
    pub fn all_names(&self) -> NameSet {
        let mut out = NameSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut NameSet) {
        match self {
            Process::Stop => {}
            Process::Output { subject, args } => {
                out.insert(subject.clone());
                out.extend(args.iter().cloned());
            }
            Process::Input {
                subject,
                params,
                body,
            } => {
                out.insert(subject.clone());
                out.extend(params.iter().cloned());
                body.collect_all(out);
            }
            Process::New { binder, body } => {
                out.insert(binder.clone());
                body.collect_all(out);
            }
            Process::Par { left, right } => {
                left.collect_all(out);
                right.collect_all(out);
            }
        }
    }
}

/// Free names of `p`.
pub fn free_names(p: &Process) -> NameSet {
    p.free_names()
}

/// All names of `p`, free or bound.
pub fn all_names(p: &Process) -> NameSet {
    p.all_names()
}

/// The first of `n0, n1, n2, …` not in `avoid`.
pub fn fresh_name(avoid: &NameSet) -> Name {
    fresh_name_by(|n| avoid.contains(n))
}

pub(crate) fn fresh_name_by(taken: impl Fn(&Name) -> bool) -> Name {
    (0usize..)
        .map(|i| Name(Arc::from(format!("n{i}"))))
        .find(|n| !taken(n))
        .expect("name enumeration is unbounded")
}

//! Normalisation form of a diagram.
//!
//! Structural generators disappear: a name wire is recorded by its root
//! source (so `Δ` trees and `δ` are implicit in the number of references),
//! and each `𝒫` output port holds the multiset of producers feeding it
//! (so `|` trees and `0` are implicit). The remaining generators are atoms,
//! indexed by their node position in the diagram they were read from.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Boundary, Diagram, GeneratorKind, NormalizeOptions, PortType, Source, Target, Wire};
use crate::syntax::Name;

/// Where a wire originates: a domain port or the (single) output of an atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Src {
    Dom(usize),
    Atom(usize),
}

#[derive(Clone, Debug)]
pub(crate) enum Atom {
    Output {
        subject: Src,
        args: Vec<Src>,
    },
    Input {
        arity: usize,
        subject: Src,
        hom: Src,
    },
    Fresh,
    NameConst(Name),
    Comm,
    Curry {
        arity: usize,
        captures: Vec<Src>,
        body: Box<Ir>,
    },
    Ev {
        arity: usize,
        hom: Src,
        args: Vec<Src>,
    },
    Hole {
        names: Vec<Name>,
        args: Vec<Src>,
    },
}

impl Atom {
    /// The same-level sources this atom reads, in port order.
    pub(crate) fn reads(&self) -> Vec<Src> {
        match self {
            Atom::Output { subject, args } => std::iter::once(*subject).chain(args.iter().copied()).collect(),
            Atom::Input { subject, hom, .. } => vec![*subject, *hom],
            Atom::Fresh | Atom::NameConst(_) | Atom::Comm => vec![],
            Atom::Curry { captures, .. } => captures.clone(),
            Atom::Ev { hom, args, .. } => std::iter::once(*hom).chain(args.iter().copied()).collect(),
            Atom::Hole { args, .. } => args.clone(),
        }
    }

    fn reads_mut(&mut self) -> Vec<&mut Src> {
        match self {
            Atom::Output { subject, args } => std::iter::once(subject).chain(args.iter_mut()).collect(),
            Atom::Input { subject, hom, .. } => vec![subject, hom],
            Atom::Fresh | Atom::NameConst(_) | Atom::Comm => vec![],
            Atom::Curry { captures, .. } => captures.iter_mut().collect(),
            Atom::Ev { hom, args, .. } => std::iter::once(hom).chain(args.iter_mut()).collect(),
            Atom::Hole { args, .. } => args.iter_mut().collect(),
        }
    }

    pub(crate) fn produces_name(&self) -> bool {
        matches!(self, Atom::Fresh | Atom::NameConst(_))
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Out {
    Name(Src),
    Proc(Vec<Src>),
    Hom(Src),
}

#[derive(Clone, Debug)]
pub(crate) struct Ir {
    pub(crate) domain: Vec<Boundary>,
    pub(crate) codomain: Vec<Boundary>,
    pub(crate) atoms: Vec<Option<Atom>>,
    pub(crate) outputs: Vec<Out>,
}

impl Ir {
    pub(crate) fn from_diagram(d: &Diagram) -> Ir {
        let driver: HashMap<Target, Source> = d.wires.iter().map(|w| (w.target, w.source)).collect();
        let feed = |node: usize, port: usize| -> Source {
            *driver
                .get(&Target::Node { node, port })
                .unwrap_or_else(|| panic!("input {port} of node {node} is not connected"))
        };
        let name_src = |mut s: Source| -> Src {
            loop {
                match s {
                    Source::Domain { index } => return Src::Dom(index),
                    Source::Node { node, .. } => match &d.nodes[node] {
                        GeneratorKind::Dup { .. } => s = feed(node, 0),
                        _ => return Src::Atom(node),
                    },
                }
            }
        };
        let other_src = |s: Source| -> Src {
            match s {
                Source::Domain { index } => Src::Dom(index),
                Source::Node { node, .. } => Src::Atom(node),
            }
        };
        fn proc_srcs(d: &Diagram, s: Source, feed: &dyn Fn(usize, usize) -> Source, out: &mut Vec<Src>) {
            match s {
                Source::Domain { index } => out.push(Src::Dom(index)),
                Source::Node { node, .. } => match &d.nodes[node] {
                    GeneratorKind::Par { arity } => {
                        for p in 0..*arity {
                            proc_srcs(d, feed(node, p), feed, out);
                        }
                    }
                    GeneratorKind::Zero => {}
                    _ => out.push(Src::Atom(node)),
                },
            }
        }
        let names = |node: usize, from: usize, n: usize| -> Vec<Src> {
            (from..from + n).map(|p| name_src(feed(node, p))).collect()
        };
        let atoms = d
            .nodes
            .iter()
            .enumerate()
            .map(|(i, k)| match k {
                GeneratorKind::Dup { .. }
                | GeneratorKind::Drop
                | GeneratorKind::Par { .. }
                | GeneratorKind::Zero => None,
                GeneratorKind::Output { arity } => Some(Atom::Output {
                    subject: name_src(feed(i, 0)),
                    args: names(i, 1, *arity),
                }),
                GeneratorKind::Input { arity } => Some(Atom::Input {
                    arity: *arity,
                    subject: name_src(feed(i, 0)),
                    hom: other_src(feed(i, 1)),
                }),
                GeneratorKind::Fresh => Some(Atom::Fresh),
                GeneratorKind::Comm => Some(Atom::Comm),
                GeneratorKind::NameConst { name } => Some(Atom::NameConst(name.clone())),
                GeneratorKind::Curry { arity, body } => Some(Atom::Curry {
                    arity: *arity,
                    captures: names(i, 0, body.domain.len() - arity),
                    body: Box::new(Ir::from_diagram(body)),
                }),
                GeneratorKind::Ev { arity } => Some(Atom::Ev {
                    arity: *arity,
                    hom: other_src(feed(i, 0)),
                    args: names(i, 1, *arity),
                }),
                GeneratorKind::Hole { names: ns } => Some(Atom::Hole {
                    names: ns.clone(),
                    args: names(i, 0, ns.len()),
                }),
            })
            .collect();
        let outputs = d
            .codomain
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let s = *driver
                    .get(&Target::Codomain { index: i })
                    .unwrap_or_else(|| panic!("codomain port {i} is not driven"));
                match b.ty {
                    PortType::Name => Out::Name(name_src(s)),
                    PortType::Hom(_) => Out::Hom(other_src(s)),
                    PortType::Proc => {
                        let mut v = Vec::new();
                        proc_srcs(d, s, &feed, &mut v);
                        Out::Proc(v)
                    }
                }
            })
            .collect();
        Ir {
            domain: d.domain.clone(),
            codomain: d.codomain.clone(),
            atoms,
            outputs,
        }
    }

    pub(crate) fn atom(&self, i: usize) -> Option<&Atom> {
        self.atoms.get(i).and_then(|a| a.as_ref())
    }

    pub(crate) fn live_atoms(&self) -> impl Iterator<Item = (usize, &Atom)> {
        self.atoms.iter().enumerate().filter_map(|(i, a)| a.as_ref().map(|a| (i, a)))
    }

    /// Every same-level read, with repetitions.
    pub(crate) fn all_reads(&self) -> Vec<Src> {
        let mut out: Vec<Src> = self.live_atoms().flat_map(|(_, a)| a.reads()).collect();
        for o in &self.outputs {
            match o {
                Out::Name(s) | Out::Hom(s) => out.push(*s),
                Out::Proc(v) => out.extend(v.iter().copied()),
            }
        }
        out
    }

    pub(super) fn rewrite_srcs(&mut self, f: &dyn Fn(Src) -> Src) {
        for a in self.atoms.iter_mut().flatten() {
            for s in a.reads_mut() {
                *s = f(*s);
            }
        }
        for o in &mut self.outputs {
            match o {
                Out::Name(s) | Out::Hom(s) => *s = f(*s),
                Out::Proc(v) => v.iter_mut().for_each(|s| *s = f(*s)),
            }
        }
    }

    /// Replaces the producer `target` in whichever process sum holds it by
    /// the producers `with`.
    pub(crate) fn splice_sum(&mut self, target: Src, with: Vec<Src>) {
        for o in &mut self.outputs {
            if let Out::Proc(v) = o {
                if let Some(pos) = v.iter().position(|s| *s == target) {
                    v.remove(pos);
                    v.extend(with);
                    return;
                }
            }
        }
        panic!("producer {target:?} feeds no process output");
    }

    pub(crate) fn normalize(&mut self, opts: NormalizeOptions) {
        for a in self.atoms.iter_mut().flatten() {
            if let Atom::Curry { body, .. } = a {
                body.normalize(opts);
            }
        }
        while self.beta_once() {}
        self.tidy_curries();
        if opts.scalar_gc {
            self.collect_scalars();
        }
    }

    /// Replaces one `ev` fed directly by a curry box with the box's body.
    fn beta_once(&mut self) -> bool {
        let found = self.live_atoms().find_map(|(e, a)| match a {
            Atom::Ev { hom: Src::Atom(c), .. } if matches!(self.atom(*c), Some(Atom::Curry { .. })) => {
                Some((e, *c))
            }
            _ => None,
        });
        let Some((e, c)) = found else {
            return false;
        };
        let Some(Atom::Ev { args, .. }) = self.atoms[e].take() else {
            unreachable!()
        };
        let Some(Atom::Curry {
            arity,
            captures,
            body,
        }) = self.atoms[c].take()
        else {
            unreachable!()
        };
        let body = *body;
        let offset = self.atoms.len();
        let map = |s: Src| match s {
            Src::Dom(j) if j < arity => args[j],
            Src::Dom(j) => captures[j - arity],
            Src::Atom(a) => Src::Atom(a + offset),
        };
        for mut a in body.atoms.into_iter() {
            if let Some(a) = a.as_mut() {
                for s in a.reads_mut() {
                    *s = map(*s);
                }
            }
            self.atoms.push(a);
        }
        let Some(Out::Proc(sum)) = body.outputs.into_iter().next() else {
            unreachable!("curry bodies have a single process output")
        };
        self.splice_sum(Src::Atom(e), sum.into_iter().map(map).collect());
        true
    }

    /// Merges captured inputs that read the same source and drops captured
    /// inputs the body never reads.
    fn tidy_curries(&mut self) {
        for a in self.atoms.iter_mut().flatten() {
            let Atom::Curry {
                arity,
                captures,
                body,
            } = a
            else {
                continue;
            };
            let arity = *arity;
            let rep: Vec<usize> = (0..captures.len())
                .map(|j| captures.iter().position(|c| *c == captures[j]).unwrap())
                .collect();
            body.rewrite_srcs(&|s| match s {
                Src::Dom(d) if d >= arity => Src::Dom(arity + rep[d - arity]),
                s => s,
            });
            let used: BTreeSet<Src> = body.all_reads().into_iter().collect();
            let keep: Vec<usize> = (0..captures.len())
                .filter(|&j| rep[j] == j && used.contains(&Src::Dom(arity + j)))
                .collect();
            if keep.len() == captures.len() {
                continue;
            }
            let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &j)| (j, i)).collect();
            body.rewrite_srcs(&|s| match s {
                Src::Dom(d) if d >= arity => Src::Dom(arity + pos[&(d - arity)]),
                s => s,
            });
            let mut domain: Vec<Boundary> = body.domain[..arity].to_vec();
            domain.extend(keep.iter().map(|&j| body.domain[arity + j].clone()));
            body.domain = domain;
            *captures = keep.iter().map(|&j| captures[j]).collect();
        }
    }

    /// Deletes `fresh` and constants whose name is discarded.
    fn collect_scalars(&mut self) {
        let read: BTreeSet<Src> = self.all_reads().into_iter().collect();
        for (i, a) in self.atoms.iter_mut().enumerate() {
            if a.as_ref().is_some_and(|a| a.produces_name()) && !read.contains(&Src::Atom(i)) {
                *a = None;
            }
        }
    }

    pub(crate) fn to_diagram(&self) -> Diagram {
        let mut nodes = Vec::new();
        let mut node_of = vec![usize::MAX; self.atoms.len()];
        for (i, a) in self.live_atoms() {
            node_of[i] = nodes.len();
            nodes.push(match a {
                Atom::Output { args, .. } => GeneratorKind::Output { arity: args.len() },
                Atom::Input { arity, .. } => GeneratorKind::Input { arity: *arity },
                Atom::Fresh => GeneratorKind::Fresh,
                Atom::NameConst(n) => GeneratorKind::NameConst { name: n.clone() },
                Atom::Comm => GeneratorKind::Comm,
                Atom::Curry { arity, body, .. } => GeneratorKind::Curry {
                    arity: *arity,
                    body: Box::new(body.to_diagram()),
                },
                Atom::Ev { arity, .. } => GeneratorKind::Ev { arity: *arity },
                Atom::Hole { names, .. } => GeneratorKind::Hole { names: names.clone() },
            });
        }
        let source = |s: Src| match s {
            Src::Dom(index) => Source::Domain { index },
            Src::Atom(a) => Source::Node {
                node: node_of[a],
                port: 0,
            },
        };
        let hom_ty = |s: Src| match s {
            Src::Dom(i) => self.domain[i].ty,
            Src::Atom(a) => match self.atom(a) {
                Some(Atom::Curry { arity, .. }) => PortType::Hom(*arity),
                other => panic!("hom wire from {other:?}"),
            },
        };

        let mut wires = Vec::new();
        let mut name_uses: BTreeMap<Src, Vec<Target>> = BTreeMap::new();
        for (i, b) in self.domain.iter().enumerate() {
            if b.ty == PortType::Name {
                name_uses.insert(Src::Dom(i), Vec::new());
            }
        }
        for (i, a) in self.live_atoms() {
            if a.produces_name() {
                name_uses.insert(Src::Atom(i), Vec::new());
            }
        }
        for (i, a) in self.live_atoms() {
            let node = node_of[i];
            let reads = a.reads();
            for (port, s) in reads.into_iter().enumerate() {
                let is_hom = matches!((a, port), (Atom::Input { .. }, 1) | (Atom::Ev { .. }, 0));
                let target = Target::Node { node, port };
                if is_hom {
                    wires.push(Wire {
                        source: source(s),
                        target,
                        ty: hom_ty(s),
                    });
                } else {
                    name_uses.entry(s).or_default().push(target);
                }
            }
        }
        let mut proc_sums = Vec::new();
        for (index, o) in self.outputs.iter().enumerate() {
            let target = Target::Codomain { index };
            match o {
                Out::Name(s) => name_uses.entry(*s).or_default().push(target),
                Out::Hom(s) => wires.push(Wire {
                    source: source(*s),
                    target,
                    ty: hom_ty(*s),
                }),
                Out::Proc(v) => proc_sums.push((target, v)),
            }
        }
        for (s, uses) in name_uses {
            match uses.len() {
                0 => {
                    nodes.push(GeneratorKind::Drop);
                    wires.push(Wire {
                        source: source(s),
                        target: Target::Node {
                            node: nodes.len() - 1,
                            port: 0,
                        },
                        ty: PortType::Name,
                    });
                }
                1 => wires.push(Wire {
                    source: source(s),
                    target: uses[0],
                    ty: PortType::Name,
                }),
                k => {
                    let dup = nodes.len();
                    nodes.push(GeneratorKind::Dup { fanout: k });
                    wires.push(Wire {
                        source: source(s),
                        target: Target::Node { node: dup, port: 0 },
                        ty: PortType::Name,
                    });
                    for (port, t) in uses.into_iter().enumerate() {
                        wires.push(Wire {
                            source: Source::Node { node: dup, port },
                            target: t,
                            ty: PortType::Name,
                        });
                    }
                }
            }
        }
        for (target, sum) in proc_sums {
            let from = match sum.len() {
                0 => {
                    nodes.push(GeneratorKind::Zero);
                    Source::Node {
                        node: nodes.len() - 1,
                        port: 0,
                    }
                }
                1 => source(sum[0]),
                k => {
                    let par = nodes.len();
                    nodes.push(GeneratorKind::Par { arity: k });
                    for (port, s) in sum.iter().enumerate() {
                        wires.push(Wire {
                            source: source(*s),
                            target: Target::Node { node: par, port },
                            ty: PortType::Proc,
                        });
                    }
                    Source::Node { node: par, port: 0 }
                }
            };
            wires.push(Wire {
                source: from,
                target,
                ty: PortType::Proc,
            });
        }
        Diagram {
            nodes,
            wires,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
    }
}

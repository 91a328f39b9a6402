//! The interpretation ⟦·⟧ of processes as diagrams.
//!
//! ```text
//! ⟦0⟧            = 0
//! ⟦x!(y⃗)⟧        = !ₙ fed by the wires of x, y⃗
//! ⟦x?(y⃗) => Q⟧   = ?ₙ fed by x and curryₙ(⟦Q⟧)
//! ⟦(new x)Q⟧     = ⟦Q⟧ with x fed by fresh
//! ⟦Q | R⟧        = | applied to ⟦Q⟧ ⊗ ⟦R⟧
//! ⟦Q⟧_top        = | applied to ⟦Q⟧ ⊗ COMM
//! ```
//!
//! A translated diagram has one domain wire per free name (sorted, labelled
//! with the name) and codomain 𝒫. A name used several times is copied with
//! `Δ`; an unused one is discarded with `δ`. An input's continuation becomes
//! a curry box whose captured inputs are the continuation's other free names.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::diagram::{Boundary, Diagram, DiagramError, DiagramKey, GeneratorKind, PortType, Source, Target, Wire};
use crate::syntax::{Name, NameSet, Process};

fn hole_marker() -> Name {
    Name::reserved("[]")
}

struct Builder {
    d: Diagram,
    nets: Vec<(Source, Vec<Target>)>,
    hole: Option<Vec<Name>>,
}

impl Builder {
    fn node(&mut self, kind: GeneratorKind) -> usize {
        self.d.nodes.push(kind);
        self.d.nodes.len() - 1
    }

    fn wire(&mut self, source: Source, target: Target, ty: PortType) {
        self.d.wires.push(Wire { source, target, ty });
    }

    fn net(&mut self, source: Source) -> usize {
        self.nets.push((source, Vec::new()));
        self.nets.len() - 1
    }

    fn read(&mut self, env: &[(Name, usize)], n: &Name, node: usize, port: usize) {
        let net = env
            .iter()
            .rev()
            .find(|(m, _)| m == n)
            .unwrap_or_else(|| panic!("name `{n}` is not in scope"))
            .1;
        self.nets[net].1.push(Target::Node { node, port });
    }

    fn build(&mut self, p: &Process, env: &mut Vec<(Name, usize)>) -> Source {
        match p {
            Process::Stop => Source::Node {
                node: self.node(GeneratorKind::Zero),
                port: 0,
            },
            Process::Output { subject, args } if *subject == hole_marker() => {
                let names = self.hole.clone().expect("hole marker outside a context");
                let h = self.node(GeneratorKind::Hole { names });
                for (port, a) in args.iter().enumerate() {
                    self.read(env, a, h, port);
                }
                Source::Node { node: h, port: 0 }
            }
            Process::Output { subject, args } => {
                let o = self.node(GeneratorKind::Output { arity: args.len() });
                self.read(env, subject, o, 0);
                for (i, a) in args.iter().enumerate() {
                    self.read(env, a, o, i + 1);
                }
                Source::Node { node: o, port: 0 }
            }
            Process::Input {
                subject,
                params,
                body,
            } => {
                let captured = captured_names(body, params);
                let mut inner_names = params.clone();
                inner_names.extend(captured.iter().cloned());
                let inner = open(body, &inner_names, self.hole.clone());
                let arity = params.len();
                let c = self.node(GeneratorKind::Curry {
                    arity,
                    body: Box::new(inner),
                });
                for (port, n) in captured.iter().enumerate() {
                    self.read(env, n, c, port);
                }
                let i = self.node(GeneratorKind::Input { arity });
                self.read(env, subject, i, 0);
                self.wire(
                    Source::Node { node: c, port: 0 },
                    Target::Node { node: i, port: 1 },
                    PortType::Hom(arity),
                );
                Source::Node { node: i, port: 0 }
            }
            Process::New { binder, body } => {
                let f = self.node(GeneratorKind::Fresh);
                let net = self.net(Source::Node { node: f, port: 0 });
                env.push((binder.clone(), net));
                let out = self.build(body, env);
                env.pop();
                out
            }
            Process::Par { left, right } => {
                let l = self.build(left, env);
                let r = self.build(right, env);
                let par = self.node(GeneratorKind::Par { arity: 2 });
                self.wire(l, Target::Node { node: par, port: 0 }, PortType::Proc);
                self.wire(r, Target::Node { node: par, port: 1 }, PortType::Proc);
                Source::Node { node: par, port: 0 }
            }
        }
    }

    fn finish(mut self, out: Source) -> Diagram {
        self.wire(out, Target::Codomain { index: 0 }, PortType::Proc);
        for (src, uses) in std::mem::take(&mut self.nets) {
            match uses.len() {
                0 => {
                    let drop = self.node(GeneratorKind::Drop);
                    self.wire(src, Target::Node { node: drop, port: 0 }, PortType::Name);
                }
                1 => self.wire(src, uses[0], PortType::Name),
                k => {
                    let mut from = src;
                    for (i, u) in uses.into_iter().enumerate() {
                        if i + 1 == k {
                            self.wire(from, u, PortType::Name);
                            break;
                        }
                        let dup = self.node(GeneratorKind::Dup { fanout: 2 });
                        self.wire(from, Target::Node { node: dup, port: 0 }, PortType::Name);
                        self.wire(Source::Node { node: dup, port: 0 }, u, PortType::Name);
                        from = Source::Node { node: dup, port: 1 };
                    }
                }
            }
        }
        self.d
    }
}

fn captured_names(body: &Process, params: &[Name]) -> Vec<Name> {
    let mut fv = body.free_names();
    fv.remove(&hole_marker());
    fv.into_iter().filter(|n| !params.contains(n)).collect()
}

fn open(p: &Process, domain: &[Name], hole: Option<Vec<Name>>) -> Diagram {
    let mut b = Builder {
        d: Diagram {
            domain: domain.iter().cloned().map(Boundary::named).collect(),
            codomain: vec![Boundary::new(PortType::Proc)],
            ..Diagram::default()
        },
        nets: Vec::new(),
        hole,
    };
    let mut env: Vec<(Name, usize)> = domain
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), b.net(Source::Domain { index: i })))
        .collect();
    let out = b.build(p, &mut env);
    b.finish(out)
}

/// ⟦p⟧ as built by the clauses, before normalisation. The domain lists the
/// free names of `p` in sorted order.
pub fn translate(p: &Process) -> Diagram {
    let names: Vec<Name> = p.free_names().into_iter().collect();
    open(p, &names, None)
}

/// ⟦p⟧ over an explicit list of domain names, which must include every free
/// name of `p`; extra names are discarded.
pub fn translate_over(p: &Process, names: &[Name]) -> Diagram {
    open(p, names, None)
}

/// How a free name of a top-level diagram is represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum NamePort {
    Domain(usize),
    Constant,
}

/// ⟦p⟧_top: the normalised translation in parallel with the COMM catalysts.
#[derive(Clone, Debug, Serialize)]
pub struct TopDiagram {
    pub diagram: Diagram,
    pub name_ports: BTreeMap<Name, NamePort>,
    pub catalysts: usize,
    pub instantiated: bool,
}

impl TopDiagram {
    /// Wraps an already normalised top-level diagram.
    pub fn from_normalized(diagram: Diagram, instantiated: bool) -> Self {
        let mut name_ports = BTreeMap::new();
        for (i, b) in diagram.domain.iter().enumerate() {
            if let Some(n) = &b.label {
                name_ports.insert(n.clone(), NamePort::Domain(i));
            }
        }
        for k in &diagram.nodes {
            if let GeneratorKind::NameConst { name } = k {
                name_ports.insert(name.clone(), NamePort::Constant);
            }
        }
        let catalysts = diagram.count_top(|k| matches!(k, GeneratorKind::Comm));
        TopDiagram {
            diagram,
            name_ports,
            catalysts,
            instantiated,
        }
    }

    pub fn key(&self) -> DiagramKey {
        self.diagram.canonical_key()
    }

    pub fn equal(&self, other: &TopDiagram) -> bool {
        self.diagram.equal(&other.diagram)
    }

    /// The same diagram with every COMM token removed.
    pub fn without_catalysts(&self) -> TopDiagram {
        let mut d = self.diagram.clone();
        let comms: Vec<usize> = (0..d.nodes.len())
            .filter(|&i| matches!(d.nodes[i], GeneratorKind::Comm))
            .collect();
        for &c in &comms {
            d.nodes[c] = GeneratorKind::Zero;
        }
        TopDiagram::from_normalized(d.normalize(), self.instantiated)
    }
}

/// ⟦p⟧_top with `catalysts` COMM tokens. With `instantiate`, each free name
/// is fed by a name constant and the domain is `I`.
pub fn translate_top(p: &Process, catalysts: usize, instantiate: bool) -> TopDiagram {
    let names: Vec<Name> = p.free_names().into_iter().collect();
    translate_top_over(p, &names, catalysts, instantiate)
}

/// [`translate_top`] over an explicit interface, which must include every
/// free name of `p`.
pub fn translate_top_over(p: &Process, names: &[Name], catalysts: usize, instantiate: bool) -> TopDiagram {
    close_top(&translate_over(p, names), catalysts, instantiate).expect("translations are name-labelled")
}

/// Puts a diagram `𝒩^⊗m → 𝒫` with labelled domain in parallel with
/// `catalysts` COMM tokens, optionally feeding each port its name constant.
pub fn close_top(d: &Diagram, catalysts: usize, instantiate: bool) -> Result<TopDiagram, DiagramError> {
    if d.codomain_types() != [PortType::Proc] {
        return Err(DiagramError::IllTyped(format!(
            "top diagrams have codomain P, found {}",
            d.codomain_object()
        )));
    }
    if let Some(b) = d.domain.iter().find(|b| b.ty != PortType::Name || b.label.is_none()) {
        return Err(DiagramError::IllTyped(format!("unlabelled or non-name domain port {b:?}")));
    }
    let mut spine = d.clone();
    for _ in 0..catalysts {
        spine = spine.tensor(&Diagram::comm());
    }
    let mut top = spine.compose(&Diagram::generator(GeneratorKind::Par {
        arity: 1 + catalysts,
    }))?;
    if instantiate {
        let mut consts = Diagram::empty();
        for b in &d.domain {
            consts = consts.tensor(&Diagram::name_const(b.label.clone().expect("checked above")));
        }
        top = consts.compose(&top)?;
    }
    Ok(TopDiagram::from_normalized(top.normalize(), instantiate))
}

/// A process with one hole.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Context {
    Hole,
    Input {
        subject: Name,
        params: Vec<Name>,
        body: Box<Context>,
    },
    New {
        binder: Name,
        body: Box<Context>,
    },
    /// `C | P`
    ParLeft(Box<Context>, Process),
    /// `P | C`
    ParRight(Process, Box<Context>),
}

impl Context {
    /// Fills the hole with `p`. Binders around the hole capture free names
    /// of `p`.
    pub fn plug(&self, p: &Process) -> Process {
        match self {
            Context::Hole => p.clone(),
            Context::Input {
                subject,
                params,
                body,
            } => Process::input(subject.clone(), params.clone(), body.plug(p)),
            Context::New { binder, body } => Process::new_scope(binder.clone(), body.plug(p)),
            Context::ParLeft(c, q) => Process::par(c.plug(p), q.clone()),
            Context::ParRight(q, c) => Process::par(q.clone(), c.plug(p)),
        }
    }

    /// Constructors, counting the hole.
    pub fn size(&self) -> usize {
        match self {
            Context::Hole => 1,
            Context::Input { body, .. } | Context::New { body, .. } => 1 + body.size(),
            Context::ParLeft(c, q) | Context::ParRight(q, c) => 1 + c.size() + q.size(),
        }
    }

    /// Names bound at the hole.
    pub fn bound_at_hole(&self) -> NameSet {
        match self {
            Context::Hole => NameSet::new(),
            Context::Input { params, body, .. } => {
                let mut s = body.bound_at_hole();
                s.extend(params.iter().cloned());
                s
            }
            Context::New { binder, body } => {
                let mut s = body.bound_at_hole();
                s.insert(binder.clone());
                s
            }
            Context::ParLeft(c, _) | Context::ParRight(_, c) => c.bound_at_hole(),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let marker = Process::output(hole_marker(), vec![]);
        let text = self.plug(&marker).to_string();
        f.write_str(&text.replace("[]!()", "[]"))
    }
}

/// A diagram with a single hole node, the image of a [`Context`].
#[derive(Clone, Debug)]
pub struct DiagramContext {
    pub diagram: Diagram,
    pub hole_names: Vec<Name>,
}

/// ⟦C⟧ for a hole that may use `hole_names`. The domain lists the free names
/// of `C` together with the hole names not bound by `C`.
pub fn translate_context(c: &Context, hole_names: &[Name]) -> DiagramContext {
    let marker = Process::output(hole_marker(), hole_names.to_vec());
    let term = c.plug(&marker);
    let mut fv = term.free_names();
    fv.remove(&hole_marker());
    let names: Vec<Name> = fv.into_iter().collect();
    DiagramContext {
        diagram: open(&term, &names, Some(hole_names.to_vec())),
        hole_names: hole_names.to_vec(),
    }
}

impl DiagramContext {
    /// ⟦C⟧(f): substitutes `f` for the hole. Each domain port of `f` must be
    /// labelled with one of the hole names; hole names `f` does not use are
    /// discarded. The result is normalised.
    pub fn plug(&self, f: &Diagram) -> Result<Diagram, DiagramError> {
        if f.codomain_types() != [PortType::Proc] {
            return Err(DiagramError::Plug(format!(
                "filler has codomain {}, expected P",
                f.codomain_object()
            )));
        }
        for b in &f.domain {
            match &b.label {
                Some(n) if b.ty == PortType::Name && self.hole_names.contains(n) => {}
                _ => {
                    return Err(DiagramError::Plug(format!(
                        "filler port {:?} is not one of the hole names",
                        b.label
                    )))
                }
            }
        }
        plug_into(&self.diagram, f)
            .map(|d| d.normalize())
            .ok_or_else(|| DiagramError::Plug("context has no hole".into()))
    }
}

fn plug_into(d: &Diagram, f: &Diagram) -> Option<Diagram> {
    let Some(h) = d
        .nodes
        .iter()
        .position(|k| matches!(k, GeneratorKind::Hole { .. }))
    else {
        let mut out = d.clone();
        for k in out.nodes.iter_mut() {
            if let GeneratorKind::Curry { body, .. } = k {
                if let Some(b) = plug_into(body, f) {
                    **body = b;
                    return Some(out);
                }
            }
        }
        return None;
    };
    let GeneratorKind::Hole { names } = &d.nodes[h] else {
        unreachable!()
    };
    let renum = |n: usize| if n > h { n - 1 } else { n };
    let mut nodes: Vec<GeneratorKind> = d
        .nodes
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != h)
        .map(|(_, k)| k.clone())
        .collect();
    let offset = nodes.len();
    nodes.extend(f.nodes.iter().cloned());
    let mut feeds: Vec<Option<Source>> = vec![None; names.len()];
    let mut result_target = None;
    let mut wires = Vec::new();
    for w in &d.wires {
        match (w.source, w.target) {
            (_, Target::Node { node, port }) if node == h => feeds[port] = Some(w.source),
            (Source::Node { node, .. }, t) if node == h => result_target = Some(t),
            (s, t) => wires.push(Wire {
                source: match s {
                    Source::Node { node, port } => Source::Node {
                        node: renum(node),
                        port,
                    },
                    s => s,
                },
                target: match t {
                    Target::Node { node, port } => Target::Node {
                        node: renum(node),
                        port,
                    },
                    t => t,
                },
                ty: w.ty,
            }),
        }
    }
    let result_target = result_target.map(|t| match t {
        Target::Node { node, port } => Target::Node {
            node: renum(node),
            port,
        },
        t => t,
    })?;
    let feeds: Vec<Source> = feeds
        .into_iter()
        .map(|s| match s? {
            Source::Node { node, port } => Some(Source::Node {
                node: renum(node),
                port,
            }),
            s => Some(s),
        })
        .collect::<Option<_>>()?;
    let mut used = vec![false; names.len()];
    for w in &f.wires {
        let source = match w.source {
            Source::Domain { index } => {
                let label = f.domain[index].label.as_ref()?;
                let j = names.iter().position(|n| n == label)?;
                used[j] = true;
                feeds[j]
            }
            Source::Node { node, port } => Source::Node {
                node: node + offset,
                port,
            },
        };
        let target = match w.target {
            Target::Codomain { .. } => result_target,
            Target::Node { node, port } => Target::Node {
                node: node + offset,
                port,
            },
        };
        wires.push(Wire {
            source,
            target,
            ty: w.ty,
        });
    }
    for (j, u) in used.iter().enumerate() {
        if !u {
            nodes.push(GeneratorKind::Drop);
            wires.push(Wire {
                source: feeds[j],
                target: Target::Node {
                    node: nodes.len() - 1,
                    port: 0,
                },
                ty: PortType::Name,
            });
        }
    }
    Some(Diagram {
        nodes,
        wires,
        domain: d.domain.clone(),
        codomain: d.codomain.clone(),
    })
}

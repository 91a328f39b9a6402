//! String diagrams over the generator signature
//!
//! ```text
//! Δ: 𝒩 → 𝒩⊗𝒩     δ: 𝒩 → I        |: 𝒫⊗𝒫 → 𝒫     0: I → 𝒫
//! ?ₙ: 𝒩⊗(𝒩^⊗n ⊸ 𝒫) → 𝒫           !ₙ: 𝒩⊗𝒩^⊗n → 𝒫
//! fresh: I → 𝒩    COMM: I → 𝒫     x: I → 𝒩 (name constants)
//! curryₙ(f): 𝒩^⊗k → (𝒩^⊗n ⊸ 𝒫)   evₙ: (𝒩^⊗n ⊸ 𝒫)⊗𝒩^⊗n → 𝒫
//! ```
//!
//! A [`Diagram`] is a port graph: nodes carry a [`GeneratorKind`], wires join
//! an output port to an input port, and the domain and codomain are ordered
//! lists of boundary ports. Wire crossings are not recorded, so diagrams
//! equal under the symmetric monoidal equations are the same graph.
//! [`Diagram::normalize`] quotients by the monoid and comonoid laws, the beta
//! rule for `ev` over `curry` and (optionally) scalar garbage, and
//! [`Diagram::equal`] compares normal forms up to graph isomorphism.
//!
//! `Dup` and `Par` are n-ary: `Dup { fanout: 2 }` is Δ, `Dup { fanout: 0 }`
//! behaves like δ, `Par { arity: 2 }` is `|` and `Par { arity: 0 }` like `0`.
//! A curry box with `k` captured name inputs has a body with domain
//! `𝒩^⊗(n + k)`: the `n` parameters first, then the captured names.

mod canon;
mod export;
pub(crate) mod ir;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::Name;

pub use canon::{isomorphic_exhaustive, DiagramKey};

/// The type of a single wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", content = "arity", rename_all = "lowercase")]
pub enum PortType {
    /// 𝒩
    Name,
    /// 𝒫
    Proc,
    /// 𝒩^⊗n ⊸ 𝒫
    Hom(usize),
}

impl fmt::Display for PortType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortType::Name => f.write_str("N"),
            PortType::Proc => f.write_str("P"),
            PortType::Hom(0) => f.write_str("I -o P"),
            PortType::Hom(n) => write!(f, "N^{n} -o P"),
        }
    }
}

/// Objects of the monoidal category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "obj", rename_all = "lowercase")]
pub enum ObjectExpr {
    Unit,
    Name,
    Proc,
    Tensor { factors: Vec<ObjectExpr> },
    Hom { arity: usize },
}

impl ObjectExpr {
    /// Tensor with nested tensors spliced in and units removed; a single
    /// factor stands for itself and no factors for `I`.
    pub fn tensor(factors: impl IntoIterator<Item = ObjectExpr>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                ObjectExpr::Unit => {}
                ObjectExpr::Tensor { factors } => flat.extend(factors),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => ObjectExpr::Unit,
            1 => flat.pop().unwrap(),
            _ => ObjectExpr::Tensor { factors: flat },
        }
    }

    pub fn from_ports(ports: &[PortType]) -> Self {
        ObjectExpr::tensor(ports.iter().map(|&p| ObjectExpr::from(p)))
    }

    pub fn ports(&self) -> Vec<PortType> {
        match self {
            ObjectExpr::Unit => vec![],
            ObjectExpr::Name => vec![PortType::Name],
            ObjectExpr::Proc => vec![PortType::Proc],
            ObjectExpr::Hom { arity } => vec![PortType::Hom(*arity)],
            ObjectExpr::Tensor { factors } => factors.iter().flat_map(|f| f.ports()).collect(),
        }
    }
}

impl From<PortType> for ObjectExpr {
    fn from(p: PortType) -> Self {
        match p {
            PortType::Name => ObjectExpr::Name,
            PortType::Proc => ObjectExpr::Proc,
            PortType::Hom(arity) => ObjectExpr::Hom { arity },
        }
    }
}

impl fmt::Display for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectExpr::Unit => f.write_str("I"),
            ObjectExpr::Name => f.write_str("N"),
            ObjectExpr::Proc => f.write_str("P"),
            ObjectExpr::Hom { arity } => write!(f, "({})", PortType::Hom(*arity)),
            ObjectExpr::Tensor { factors } => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" (x) ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    Dup { fanout: usize },
    Drop,
    Par { arity: usize },
    Zero,
    Input { arity: usize },
    Output { arity: usize },
    Fresh,
    Comm,
    NameConst { name: Name },
    Curry { arity: usize, body: Box<Diagram> },
    Ev { arity: usize },
    /// The slot of a diagram context: one name input per listed name.
    Hole { names: Vec<Name> },
}

impl GeneratorKind {
    pub fn inputs(&self) -> Vec<PortType> {
        use PortType::*;
        match self {
            GeneratorKind::Dup { .. } | GeneratorKind::Drop => vec![Name],
            GeneratorKind::Par { arity } => vec![Proc; *arity],
            GeneratorKind::Zero
            | GeneratorKind::Fresh
            | GeneratorKind::Comm
            | GeneratorKind::NameConst { .. } => vec![],
            GeneratorKind::Input { arity } => vec![Name, Hom(*arity)],
            GeneratorKind::Output { arity } => vec![Name; 1 + arity],
            GeneratorKind::Curry { arity, body } => vec![Name; body.domain.len() - arity],
            GeneratorKind::Ev { arity } => {
                let mut v = vec![Hom(*arity)];
                v.extend(std::iter::repeat_n(Name, *arity));
                v
            }
            GeneratorKind::Hole { names } => vec![Name; names.len()],
        }
    }

    pub fn outputs(&self) -> Vec<PortType> {
        use PortType::*;
        match self {
            GeneratorKind::Dup { fanout } => vec![Name; *fanout],
            GeneratorKind::Drop => vec![],
            GeneratorKind::Fresh | GeneratorKind::NameConst { .. } => vec![Name],
            GeneratorKind::Curry { arity, .. } => vec![Hom(*arity)],
            GeneratorKind::Par { .. }
            | GeneratorKind::Zero
            | GeneratorKind::Input { .. }
            | GeneratorKind::Output { .. }
            | GeneratorKind::Comm
            | GeneratorKind::Ev { .. }
            | GeneratorKind::Hole { .. } => vec![Proc],
        }
    }

    /// Short label used in DOT output.
    pub fn label(&self) -> String {
        match self {
            GeneratorKind::Dup { fanout } => format!("Δ{fanout}"),
            GeneratorKind::Drop => "δ".into(),
            GeneratorKind::Par { arity } => format!("|{arity}"),
            GeneratorKind::Zero => "0".into(),
            GeneratorKind::Input { arity } => format!("?{arity}"),
            GeneratorKind::Output { arity } => format!("!{arity}"),
            GeneratorKind::Fresh => "fresh".into(),
            GeneratorKind::Comm => "COMM".into(),
            GeneratorKind::NameConst { name } => name.to_string(),
            GeneratorKind::Curry { arity, .. } => format!("curry{arity}"),
            GeneratorKind::Ev { arity } => format!("ev{arity}"),
            GeneratorKind::Hole { names } => {
                let ns: Vec<&str> = names.iter().map(|n| n.as_str()).collect();
                format!("[{}]", ns.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "lowercase")]
pub enum Source {
    Domain { index: usize },
    Node { node: usize, port: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "lowercase")]
pub enum Target {
    Codomain { index: usize },
    Node { node: usize, port: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wire {
    pub source: Source,
    pub target: Target,
    pub ty: PortType,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Boundary {
    pub ty: PortType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Name>,
}

impl Boundary {
    pub fn new(ty: PortType) -> Self {
        Boundary { ty, label: None }
    }

    pub fn named(name: Name) -> Self {
        Boundary {
            ty: PortType::Name,
            label: Some(name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Diagram {
    pub nodes: Vec<GeneratorKind>,
    pub wires: Vec<Wire>,
    pub domain: Vec<Boundary>,
    pub codomain: Vec<Boundary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("interface mismatch: {left} does not match {right}")]
    InterfaceMismatch { left: ObjectExpr, right: ObjectExpr },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("curry: {0}")]
    Curry(String),
    #[error("ill-typed diagram: {0}")]
    IllTyped(String),
    #[error("plug: {0}")]
    Plug(String),
}

/// Options for [`Diagram::normalize_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Delete `fresh` and name constants whose wire is discarded.
    pub scalar_gc: bool,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions { scalar_gc: true }
    }
}

impl Diagram {
    /// The empty diagram `I → I`.
    pub fn empty() -> Self {
        Diagram::default()
    }

    pub fn domain_object(&self) -> ObjectExpr {
        ObjectExpr::from_ports(&self.domain_types())
    }

    pub fn codomain_object(&self) -> ObjectExpr {
        ObjectExpr::from_ports(&self.codomain_types())
    }

    pub fn domain_types(&self) -> Vec<PortType> {
        self.domain.iter().map(|b| b.ty).collect()
    }

    pub fn codomain_types(&self) -> Vec<PortType> {
        self.codomain.iter().map(|b| b.ty).collect()
    }

    /// Identity on a list of wire types.
    pub fn identity(types: &[PortType]) -> Self {
        Diagram {
            nodes: vec![],
            wires: types
                .iter()
                .enumerate()
                .map(|(i, &ty)| Wire {
                    source: Source::Domain { index: i },
                    target: Target::Codomain { index: i },
                    ty,
                })
                .collect(),
            domain: types.iter().map(|&t| Boundary::new(t)).collect(),
            codomain: types.iter().map(|&t| Boundary::new(t)).collect(),
        }
    }

    /// The symmetry `a ⊗ b → b ⊗ a` on single wires.
    pub fn swap(a: PortType, b: PortType) -> Self {
        Diagram {
            nodes: vec![],
            wires: vec![
                Wire {
                    source: Source::Domain { index: 0 },
                    target: Target::Codomain { index: 1 },
                    ty: a,
                },
                Wire {
                    source: Source::Domain { index: 1 },
                    target: Target::Codomain { index: 0 },
                    ty: b,
                },
            ],
            domain: vec![Boundary::new(a), Boundary::new(b)],
            codomain: vec![Boundary::new(b), Boundary::new(a)],
        }
    }

    /// A single generator with its ports exposed in order.
    pub fn generator(kind: GeneratorKind) -> Self {
        let ins = kind.inputs();
        let outs = kind.outputs();
        let wires = ins
            .iter()
            .enumerate()
            .map(|(i, &ty)| Wire {
                source: Source::Domain { index: i },
                target: Target::Node { node: 0, port: i },
                ty,
            })
            .chain(outs.iter().enumerate().map(|(i, &ty)| Wire {
                source: Source::Node { node: 0, port: i },
                target: Target::Codomain { index: i },
                ty,
            }))
            .collect();
        Diagram {
            nodes: vec![kind],
            wires,
            domain: ins.into_iter().map(Boundary::new).collect(),
            codomain: outs.into_iter().map(Boundary::new).collect(),
        }
    }

    pub fn dup() -> Self {
        Diagram::generator(GeneratorKind::Dup { fanout: 2 })
    }

    pub fn drop_name() -> Self {
        Diagram::generator(GeneratorKind::Drop)
    }

    pub fn par() -> Self {
        Diagram::generator(GeneratorKind::Par { arity: 2 })
    }

    pub fn zero() -> Self {
        Diagram::generator(GeneratorKind::Zero)
    }

    pub fn fresh() -> Self {
        Diagram::generator(GeneratorKind::Fresh)
    }

    pub fn comm() -> Self {
        Diagram::generator(GeneratorKind::Comm)
    }

    pub fn name_const(name: Name) -> Self {
        Diagram::generator(GeneratorKind::NameConst { name })
    }

    pub fn input(arity: usize) -> Self {
        Diagram::generator(GeneratorKind::Input { arity })
    }

    pub fn output(arity: usize) -> Self {
        Diagram::generator(GeneratorKind::Output { arity })
    }

    pub fn ev(arity: usize) -> Self {
        Diagram::generator(GeneratorKind::Ev { arity })
    }

    /// Sequential composition: `self` then `next`.
    pub fn compose(&self, next: &Diagram) -> Result<Diagram, DiagramError> {
        if self.codomain_types() != next.domain_types() {
            return Err(DiagramError::InterfaceMismatch {
                left: self.codomain_object(),
                right: next.domain_object(),
            });
        }
        let shift = self.nodes.len();
        let mut into_cod: Vec<Option<Source>> = vec![None; self.codomain.len()];
        let mut wires = Vec::new();
        for w in &self.wires {
            match w.target {
                Target::Codomain { index } => into_cod[index] = Some(w.source),
                _ => wires.push(w.clone()),
            }
        }
        for w in &next.wires {
            let target = match w.target {
                Target::Node { node, port } => Target::Node {
                    node: node + shift,
                    port,
                },
                t => t,
            };
            let source = match w.source {
                Source::Domain { index } => into_cod[index].ok_or_else(|| {
                    DiagramError::IllTyped(format!("codomain port {index} is not driven"))
                })?,
                Source::Node { node, port } => Source::Node {
                    node: node + shift,
                    port,
                },
            };
            wires.push(Wire {
                source,
                target,
                ty: w.ty,
            });
        }
        let mut nodes = self.nodes.clone();
        nodes.extend(next.nodes.iter().cloned());
        Ok(Diagram {
            nodes,
            wires,
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
        })
    }

    /// Parallel (monoidal) composition; interfaces concatenate.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let (n, d, c) = (self.nodes.len(), self.domain.len(), self.codomain.len());
        let mut wires = self.wires.clone();
        wires.extend(other.wires.iter().map(|w| Wire {
            source: match w.source {
                Source::Domain { index } => Source::Domain { index: index + d },
                Source::Node { node, port } => Source::Node { node: node + n, port },
            },
            target: match w.target {
                Target::Codomain { index } => Target::Codomain { index: index + c },
                Target::Node { node, port } => Target::Node { node: node + n, port },
            },
            ty: w.ty,
        }));
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes.iter().cloned());
        let mut domain = self.domain.clone();
        domain.extend(other.domain.iter().cloned());
        let mut codomain = self.codomain.clone();
        codomain.extend(other.codomain.iter().cloned());
        Diagram {
            nodes,
            wires,
            domain,
            codomain,
        }
    }

    /// Curries the first `arity` domain ports of `body`; any further domain
    /// ports become captured inputs of the box. The result has type
    /// `𝒩^⊗k → (𝒩^⊗arity ⊸ 𝒫)` for `k` captured names.
    pub fn curry(arity: usize, body: Diagram) -> Result<Diagram, DiagramError> {
        if body.domain.len() < arity {
            return Err(DiagramError::Curry(format!(
                "body has {} domain ports, {arity} designated",
                body.domain.len()
            )));
        }
        if let Some(b) = body.domain.iter().find(|b| b.ty != PortType::Name) {
            return Err(DiagramError::Curry(format!(
                "domain port of type {} cannot be a name",
                b.ty
            )));
        }
        if body.codomain_types() != [PortType::Proc] {
            return Err(DiagramError::Curry(format!(
                "body codomain is {}, not P",
                body.codomain_object()
            )));
        }
        let captured: Vec<Boundary> = body.domain[arity..].to_vec();
        let mut d = Diagram::generator(GeneratorKind::Curry {
            arity,
            body: Box::new(body),
        });
        d.domain = captured;
        Ok(d)
    }

    /// Applies a thunk `I → (𝒩^⊗n ⊸ 𝒫)` (or with captured inputs) to `args`
    /// (a diagram with `n` name outputs) through `ev`.
    pub fn apply(thunk: &Diagram, args: &Diagram) -> Result<Diagram, DiagramError> {
        let arity = match thunk.codomain_types().as_slice() {
            [PortType::Hom(n)] => *n,
            _ => {
                return Err(DiagramError::InterfaceMismatch {
                    left: thunk.codomain_object(),
                    right: ObjectExpr::Hom { arity: 0 },
                })
            }
        };
        let found = args.codomain.len();
        if found != arity || args.codomain.iter().any(|b| b.ty != PortType::Name) {
            return Err(DiagramError::ArityMismatch {
                expected: arity,
                found,
            });
        }
        thunk.tensor(args).compose(&Diagram::ev(arity))
    }

    /// Relabels the domain ports (e.g. to name the free names they carry).
    pub fn with_domain_labels(mut self, labels: &[Option<Name>]) -> Self {
        for (b, l) in self.domain.iter_mut().zip(labels) {
            b.label = l.clone();
        }
        self
    }

    pub fn normalize(&self) -> Diagram {
        self.normalize_with(NormalizeOptions::default())
    }

    pub fn normalize_with(&self, opts: NormalizeOptions) -> Diagram {
        let mut ir = ir::Ir::from_diagram(self);
        ir.normalize(opts);
        ir.to_diagram()
    }

    /// The normal form with nodes in canonical order and bound names
    /// erased: equal diagrams give the same node list up to the order of
    /// captured inputs.
    pub fn canonical_layout(&self) -> Diagram {
        fn erase_bound(d: &mut Diagram) {
            for k in d.nodes.iter_mut() {
                if let GeneratorKind::Curry { body, .. } = k {
                    for b in body.domain.iter_mut() {
                        b.label = None;
                    }
                    erase_bound(body);
                }
            }
        }
        let mut ir = ir::Ir::from_diagram(self);
        ir.normalize(NormalizeOptions::default());
        let mut d = ir.canonical_layout().to_diagram();
        erase_bound(&mut d);
        d
    }

    /// Equality modulo the diagram equations: normal forms (with scalar
    /// garbage collection) are isomorphic as interfaced port graphs.
    pub fn equal(&self, other: &Diagram) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// An isomorphism-invariant key of the normal form; equal keys iff
    /// [`Diagram::equal`].
    pub fn canonical_key(&self) -> DiagramKey {
        let mut ir = ir::Ir::from_diagram(self);
        ir.normalize(NormalizeOptions::default());
        ir.canonical_key()
    }

    /// Number of nodes, counting those inside curry boxes.
    pub fn deep_node_count(&self) -> usize {
        self.nodes
            .iter()
            .map(|k| match k {
                GeneratorKind::Curry { body, .. } => 1 + body.deep_node_count(),
                _ => 1,
            })
            .sum()
    }

    /// Counts nodes of a kind, including those inside curry boxes.
    pub fn deep_count(&self, pred: &dyn Fn(&GeneratorKind) -> bool) -> usize {
        self.nodes
            .iter()
            .map(|k| {
                let inner = match k {
                    GeneratorKind::Curry { body, .. } => body.deep_count(pred),
                    _ => 0,
                };
                inner + pred(k) as usize
            })
            .sum()
    }

    /// Counts nodes of a kind at the top level (outside curry boxes).
    pub fn count_top(&self, pred: impl Fn(&GeneratorKind) -> bool) -> usize {
        self.nodes.iter().filter(|k| pred(k)).count()
    }

    /// Checks port typing, single connection of every port and acyclicity,
    /// recursively inside curry boxes.
    pub fn check(&self) -> Result<(), DiagramError> {
        let bad = |m: String| Err(DiagramError::IllTyped(m));
        let mut in_seen: Vec<Vec<bool>> =
            self.nodes.iter().map(|k| vec![false; k.inputs().len()]).collect();
        let mut out_seen: Vec<Vec<bool>> =
            self.nodes.iter().map(|k| vec![false; k.outputs().len()]).collect();
        let mut dom_seen = vec![false; self.domain.len()];
        let mut cod_seen = vec![false; self.codomain.len()];
        for w in &self.wires {
            let src_ty = match w.source {
                Source::Domain { index } => {
                    let Some(b) = self.domain.get(index) else {
                        return bad(format!("no domain port {index}"));
                    };
                    if std::mem::replace(&mut dom_seen[index], true) {
                        return bad(format!("domain port {index} used twice"));
                    }
                    b.ty
                }
                Source::Node { node, port } => {
                    let Some(k) = self.nodes.get(node) else {
                        return bad(format!("no node {node}"));
                    };
                    let Some(&ty) = k.outputs().get(port) else {
                        return bad(format!("node {node} has no output {port}"));
                    };
                    if std::mem::replace(&mut out_seen[node][port], true) {
                        return bad(format!("output {port} of node {node} used twice"));
                    }
                    ty
                }
            };
            let tgt_ty = match w.target {
                Target::Codomain { index } => {
                    let Some(b) = self.codomain.get(index) else {
                        return bad(format!("no codomain port {index}"));
                    };
                    if std::mem::replace(&mut cod_seen[index], true) {
                        return bad(format!("codomain port {index} driven twice"));
                    }
                    b.ty
                }
                Target::Node { node, port } => {
                    let Some(k) = self.nodes.get(node) else {
                        return bad(format!("no node {node}"));
                    };
                    let Some(&ty) = k.inputs().get(port) else {
                        return bad(format!("node {node} has no input {port}"));
                    };
                    if std::mem::replace(&mut in_seen[node][port], true) {
                        return bad(format!("input {port} of node {node} driven twice"));
                    }
                    ty
                }
            };
            if src_ty != w.ty || tgt_ty != w.ty {
                return bad(format!(
                    "wire {:?} -> {:?} typed {} joins {src_ty} to {tgt_ty}",
                    w.source, w.target, w.ty
                ));
            }
        }
        if dom_seen.iter().chain(&cod_seen).any(|s| !s)
            || in_seen.iter().chain(&out_seen).flatten().any(|s| !s)
        {
            return bad("unconnected port".into());
        }
        if self.has_cycle() {
            return bad("cycle".into());
        }
        for k in &self.nodes {
            if let GeneratorKind::Curry { arity, body } = k {
                if body.domain.len() < *arity
                    || body.domain.iter().any(|b| b.ty != PortType::Name)
                    || body.codomain_types() != [PortType::Proc]
                {
                    return bad("curry body must have type N^k -> P".into());
                }
                body.check()?;
            }
        }
        Ok(())
    }

    fn has_cycle(&self) -> bool {
        let n = self.nodes.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for w in &self.wires {
            if let (Source::Node { node: a, .. }, Target::Node { node: b, .. }) = (w.source, w.target)
            {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &t in &succ[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen != n
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diagrams serialize")
    }

    pub fn to_dot(&self) -> String {
        export::to_dot(self)
    }
}

#[cfg(test)]
mod tests;

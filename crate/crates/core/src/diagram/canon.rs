//! Canonical labelling of normalised diagrams.
//!
//! A normal form is flattened into a vertex- and edge-coloured directed
//! graph. Colours are refined to a stable partition (1-dimensional
//! Weisfeiler-Leman); when cells remain, each vertex of the first
//! non-singleton cell is individualised in turn and the search recurses.
//! The certificate is the least relabelled graph over all leaves, so two
//! graphs are isomorphic iff their certificates are equal. Interchangeable
//! vertices (same colour, same neighbourhood) are branched on only once.

use std::collections::{BTreeMap, HashMap};

use super::ir::{Atom, Ir, Out, Src};
use super::{Diagram, NormalizeOptions, PortType};
use crate::syntax::Name;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum VKey {
    Dom {
        index: usize,
        ty: PortType,
        label: Option<Name>,
    },
    Cod {
        index: usize,
        ty: PortType,
    },
    Output(usize),
    Input(usize),
    Fresh,
    NameConst(Name),
    Comm,
    Curry(usize),
    Ev(usize),
    Hole(Vec<Name>),
    Param(usize),
    Capture,
    Result,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum ELabel {
    Read(usize),
    Sum,
    Contains,
    Param,
    Capture,
    CaptureFrom,
    Result,
}

#[derive(Default)]
struct Graph {
    keys: Vec<VKey>,
    edges: Vec<(usize, usize, ELabel)>,
    /// Vertex of each atom, keyed by the chain of enclosing curry atoms.
    atoms: HashMap<(Vec<usize>, usize), usize>,
    /// Vertices standing for the domain ports of each level.
    domains: HashMap<Vec<usize>, Vec<usize>>,
}

impl Graph {
    fn vertex(&mut self, k: VKey) -> usize {
        self.keys.push(k);
        self.keys.len() - 1
    }

    fn from_ir(ir: &Ir) -> Graph {
        let mut g = Graph::default();
        let dom: Vec<usize> = ir
            .domain
            .iter()
            .enumerate()
            .map(|(index, b)| {
                g.vertex(VKey::Dom {
                    index,
                    ty: b.ty,
                    label: b.label.clone(),
                })
            })
            .collect();
        let cod: Vec<usize> = ir
            .codomain
            .iter()
            .enumerate()
            .map(|(index, b)| g.vertex(VKey::Cod { index, ty: b.ty }))
            .collect();
        g.level(ir, &dom, &cod, None, &[]);
        g
    }

    fn level(&mut self, ir: &Ir, dom: &[usize], cod: &[usize], container: Option<usize>, path: &[usize]) {
        self.domains.insert(path.to_vec(), dom.to_vec());
        let mut vert: HashMap<usize, usize> = HashMap::new();
        let mut inner: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        for (i, a) in ir.live_atoms() {
            let key = match a {
                Atom::Output { args, .. } => VKey::Output(args.len()),
                Atom::Input { arity, .. } => VKey::Input(*arity),
                Atom::Fresh => VKey::Fresh,
                Atom::NameConst(n) => VKey::NameConst(n.clone()),
                Atom::Comm => VKey::Comm,
                Atom::Curry { arity, .. } => VKey::Curry(*arity),
                Atom::Ev { arity, .. } => VKey::Ev(*arity),
                Atom::Hole { names, .. } => VKey::Hole(names.clone()),
            };
            let v = self.vertex(key);
            vert.insert(i, v);
            self.atoms.insert((path.to_vec(), i), v);
            if let Some(c) = container {
                self.edges.push((c, v, ELabel::Contains));
            }
            if let Atom::Curry {
                arity,
                captures,
                ..
            } = a
            {
                let mut body_dom = Vec::new();
                for k in 0..*arity {
                    let p = self.vertex(VKey::Param(k));
                    self.edges.push((v, p, ELabel::Param));
                    body_dom.push(p);
                }
                for _ in captures {
                    let c = self.vertex(VKey::Capture);
                    self.edges.push((v, c, ELabel::Capture));
                    body_dom.push(c);
                }
                let r = self.vertex(VKey::Result);
                self.edges.push((v, r, ELabel::Result));
                inner.push((i, body_dom, r));
            }
        }
        let at = |s: Src| match s {
            Src::Dom(j) => dom[j],
            Src::Atom(a) => vert[&a],
        };
        for (i, a) in ir.live_atoms() {
            let v = vert[&i];
            match a {
                Atom::Curry { arity, captures, .. } => {
                    let body_dom = &inner.iter().find(|(c, ..)| *c == i).unwrap().1;
                    for (j, s) in captures.iter().enumerate() {
                        self.edges.push((at(*s), body_dom[arity + j], ELabel::CaptureFrom));
                    }
                }
                _ => {
                    for (port, s) in a.reads().into_iter().enumerate() {
                        self.edges.push((at(s), v, ELabel::Read(port)));
                    }
                }
            }
        }
        for (o, &c) in ir.outputs.iter().zip(cod) {
            match o {
                Out::Name(s) | Out::Hom(s) => self.edges.push((at(*s), c, ELabel::Read(0))),
                Out::Proc(v) => {
                    for s in v {
                        self.edges.push((at(*s), c, ELabel::Sum));
                    }
                }
            }
        }
        for (i, body_dom, r) in inner {
            let Some(Atom::Curry { body, .. }) = ir.atom(i) else {
                unreachable!()
            };
            let mut inner_path = path.to_vec();
            inner_path.push(i);
            self.level(body, &body_dom, &[r], Some(vert[&i]), &inner_path);
        }
    }
}

/// Canonical certificate of a normalised diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramKey {
    keys: Vec<VKey>,
    edges: Vec<(u32, u32, ELabel)>,
}

impl DiagramKey {
    pub fn vertex_count(&self) -> usize {
        self.keys.len()
    }

    /// A short stable digest, for display.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }
}

struct Search<'a> {
    g: &'a Graph,
    out: Vec<Vec<(ELabel, usize)>>,
    inc: Vec<Vec<(ELabel, usize)>>,
    twin: Vec<usize>,
    best: Option<(DiagramKey, Vec<u32>)>,
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.keys.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(s, t, l) in &g.edges {
            out[s].push((l, t));
            inc[t].push((l, s));
        }
        for v in out.iter_mut().chain(inc.iter_mut()) {
            v.sort();
        }
        let sig: Vec<(&VKey, &Vec<(ELabel, usize)>, &Vec<(ELabel, usize)>)> =
            (0..n).map(|v| (&g.keys[v], &out[v], &inc[v])).collect();
        let mut first: BTreeMap<&(&VKey, &Vec<(ELabel, usize)>, &Vec<(ELabel, usize)>), usize> =
            BTreeMap::new();
        let twin = (0..n).map(|v| *first.entry(&sig[v]).or_insert(v)).collect();
        Search {
            g,
            out,
            inc,
            twin,
            best: None,
        }
    }

    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let n = colors.len();
        let mut cells = count(&colors);
        loop {
            let sigs: Vec<(u32, Vec<(ELabel, u32)>, Vec<(ELabel, u32)>)> = (0..n)
                .map(|v| {
                    let mut o: Vec<(ELabel, u32)> =
                        self.out[v].iter().map(|&(l, t)| (l, colors[t])).collect();
                    let mut i: Vec<(ELabel, u32)> =
                        self.inc[v].iter().map(|&(l, s)| (l, colors[s])).collect();
                    o.sort();
                    i.sort();
                    (colors[v], o, i)
                })
                .collect();
            colors = rank(&sigs);
            let next = count(&colors);
            if next == cells {
                return colors;
            }
            cells = next;
        }
    }

    fn run(&mut self, colors: Vec<u32>) {
        let colors = self.refine(colors);
        let n = colors.len();
        if count(&colors) == n {
            let key = self.certificate(&colors);
            if self.best.as_ref().is_none_or(|b| key < b.0) {
                self.best = Some((key, colors));
            }
            return;
        }
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let cell = (0..n).find(|&c| sizes[c] > 1).unwrap() as u32;
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if colors[v] != cell || tried.contains(&self.twin[v]) {
                continue;
            }
            tried.push(self.twin[v]);
            let keyed: Vec<(u32, bool)> = (0..n).map(|u| (colors[u], u != v)).collect();
            self.run(rank(&keyed));
        }
    }

    fn certificate(&self, colors: &[u32]) -> DiagramKey {
        let mut keys = vec![VKey::Capture; colors.len()];
        for (v, &c) in colors.iter().enumerate() {
            keys[c as usize] = self.g.keys[v].clone();
        }
        let mut edges: Vec<(u32, u32, ELabel)> = self
            .g
            .edges
            .iter()
            .map(|&(s, t, l)| (colors[s], colors[t], l))
            .collect();
        edges.sort();
        DiagramKey { keys, edges }
    }
}

fn count(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |m| *m as usize + 1)
}

impl Ir {
    fn labelling(&self) -> (Graph, DiagramKey, Vec<u32>) {
        let g = Graph::from_ir(self);
        let mut s = Search::new(&g);
        s.run(rank(&g.keys));
        let (key, colors) = s.best.unwrap_or((
            DiagramKey {
                keys: vec![],
                edges: vec![],
            },
            vec![],
        ));
        (g, key, colors)
    }

    pub(crate) fn canonical_key(&self) -> DiagramKey {
        self.labelling().1
    }

    /// The same normal form with atoms, and the producers of each process
    /// sum, listed in canonical order at every level.
    pub(crate) fn canonical_layout(&self) -> Ir {
        let (g, _, colors) = self.labelling();
        let mut out = self.clone();
        relayout(&mut out, &g, &colors, &mut Vec::new());
        out
    }
}

fn relayout(ir: &mut Ir, g: &Graph, colors: &[u32], path: &mut Vec<usize>) {
    let color = |path: &Vec<usize>, s: Src| match s {
        Src::Dom(j) => colors[g.domains[path][j]],
        Src::Atom(a) => colors[g.atoms[&(path.clone(), a)]],
    };
    for (i, a) in ir.atoms.iter_mut().enumerate() {
        if let Some(Atom::Curry { body, .. }) = a {
            path.push(i);
            relayout(body, g, colors, path);
            path.pop();
        }
    }
    for o in &mut ir.outputs {
        if let Out::Proc(v) = o {
            v.sort_by_key(|s| color(path, *s));
        }
    }
    let mut live: Vec<usize> = ir.live_atoms().map(|(i, _)| i).collect();
    live.sort_by_key(|&i| color(path, Src::Atom(i)));
    let mut new_index = vec![usize::MAX; ir.atoms.len()];
    for (n, &i) in live.iter().enumerate() {
        new_index[i] = n;
    }
    let atoms: Vec<Option<Atom>> = live.iter().map(|&i| ir.atoms[i].take()).collect();
    ir.atoms = atoms;
    ir.rewrite_srcs(&|s| match s {
        Src::Atom(a) => Src::Atom(new_index[a]),
        s => s,
    });
}

/// Reference isomorphism test by plain backtracking over vertex
/// bijections of the normal forms. Exponential; meant for cross-checking
/// [`Diagram::equal`] on small diagrams.
pub fn isomorphic_exhaustive(a: &Diagram, b: &Diagram) -> bool {
    let graph = |d: &Diagram| {
        let mut ir = Ir::from_diagram(d);
        ir.normalize(NormalizeOptions::default());
        Graph::from_ir(&ir)
    };
    let (ga, gb) = (graph(a), graph(b));
    if ga.keys.len() != gb.keys.len() || ga.edges.len() != gb.edges.len() {
        return false;
    }
    let mut ea: Vec<(usize, usize, ELabel)> = ga.edges.clone();
    ea.sort();
    let mut eb_set: BTreeMap<(usize, usize, ELabel), usize> = BTreeMap::new();
    for &e in &gb.edges {
        *eb_set.entry(e).or_default() += 1;
    }
    let n = ga.keys.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        v: usize,
        ga: &Graph,
        gb: &Graph,
        ea: &[(usize, usize, ELabel)],
        eb: &BTreeMap<(usize, usize, ELabel), usize>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = ga.keys.len();
        if v == n {
            let mut mapped: BTreeMap<(usize, usize, ELabel), usize> = BTreeMap::new();
            for &(s, t, l) in ea {
                *mapped.entry((map[s], map[t], l)).or_default() += 1;
            }
            return mapped == *eb;
        }
        for w in 0..n {
            if used[w] || ga.keys[v] != gb.keys[w] {
                continue;
            }
            let consistent = ea.iter().all(|&(s, t, l)| {
                if s > v || t > v {
                    return true;
                }
                let (ms, mt) = (if s == v { w } else { map[s] }, if t == v { w } else { map[t] });
                eb.contains_key(&(ms, mt, l))
            });
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(v + 1, ga, gb, ea, eb, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
    go(0, &ga, &gb, &ea, &eb_set, &mut map, &mut used)
}

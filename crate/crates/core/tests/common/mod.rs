#![allow(dead_code)]

use pitwo::syntax::{name, Name, Process};
use proptest::prelude::*;

pub const NAMES: [&str; 3] = ["a", "b", "c"];

fn any_name() -> impl Strategy<Value = Name> {
    prop::sample::select(&["a", "b", "c", "x", "y"][..]).prop_map(name)
}

/// Random terms over a handful of names, nested up to `depth`.
pub fn process(depth: u32) -> BoxedStrategy<Process> {
    let leaf = prop_oneof![
        Just(Process::Stop),
        (any_name(), prop::collection::vec(any_name(), 0..=2)).prop_map(|(s, a)| Process::output(s, a)),
    ];
    leaf.prop_recursive(depth, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Process::par(l, r)),
            (any_name(), inner.clone()).prop_map(|(b, p)| Process::new_scope(b, p)),
            (any_name(), prop::sample::subsequence(&["x", "y"][..], 0..=2), inner)
                .prop_map(|(s, ps, body)| Process::input(s, ps.into_iter().map(name).collect(), body)),
        ]
    })
    .boxed()
}

use pitwo::diagram::{Diagram, PortType};

/// A three-leaf tree: nesting side, swaps at either node, and an optional
/// unit leaf inserted at a position.
#[derive(Clone, Copy, Debug)]
pub struct Tree {
    pub left_nested: bool,
    pub swap_outer: bool,
    pub swap_inner: bool,
    pub unit: Option<usize>,
}

pub fn all_trees() -> Vec<Tree> {
    let mut out = Vec::new();
    for bits in 0..8u8 {
        for unit in [None, Some(0), Some(1), Some(2)] {
            out.push(Tree {
                left_nested: bits & 1 != 0,
                swap_outer: bits & 2 != 0,
                swap_inner: bits & 4 != 0,
                unit,
            });
        }
    }
    out
}

fn id(t: PortType) -> Diagram {
    Diagram::identity(&[t])
}

/// Three processes merged by `|` in the shape of `s`.
pub fn par_tree(s: &Tree) -> Diagram {
    let p = PortType::Proc;
    let op = Diagram::par();
    let twist = |on: bool| if on { Diagram::swap(p, p).compose(&op).unwrap() } else { op.clone() };
    let (inner, outer) = (twist(s.swap_inner), twist(s.swap_outer));
    let mut d = if s.left_nested {
        inner.tensor(&id(p)).compose(&outer).unwrap()
    } else {
        id(p).tensor(&inner).compose(&outer).unwrap()
    };
    if let Some(pos) = s.unit {
        let mut parts = vec![id(p), id(p), id(p)];
        parts.insert(pos, Diagram::zero());
        let pre = parts.iter().skip(1).fold(parts[0].clone(), |a, b| a.tensor(b));
        let squash = match pos {
            0 | 1 => op.tensor(&id(p)).tensor(&id(p)),
            _ => id(p).tensor(&op).tensor(&id(p)),
        };
        d = pre.compose(&squash).unwrap().compose(&d).unwrap();
    }
    d
}

/// One name copied three times in the shape of `s`; a unit leaf becomes a
/// fourth copy that is discarded.
pub fn dup_tree(s: &Tree) -> Diagram {
    let n = PortType::Name;
    let op = Diagram::dup();
    let twist = |on: bool| if on { op.compose(&Diagram::swap(n, n)).unwrap() } else { op.clone() };
    let (inner, outer) = (twist(s.swap_inner), twist(s.swap_outer));
    let mut d = if s.left_nested {
        outer.compose(&inner.tensor(&id(n))).unwrap()
    } else {
        outer.compose(&id(n).tensor(&inner)).unwrap()
    };
    if let Some(pos) = s.unit {
        let mut parts = vec![id(n), id(n)];
        parts.insert(pos.min(2), op.clone());
        let grow = parts.iter().skip(1).fold(parts[0].clone(), |a, b| a.tensor(b));
        let mut drops = vec![id(n), id(n), id(n)];
        drops.insert(pos.min(2) + 1, Diagram::drop_name());
        let prune = drops.iter().skip(1).fold(drops[0].clone(), |a, b| a.tensor(b));
        d = d.compose(&grow).unwrap().compose(&prune).unwrap();
    }
    d
}

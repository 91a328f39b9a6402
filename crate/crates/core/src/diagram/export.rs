use std::fmt::Write;

use super::{Diagram, GeneratorKind, Source, Target};

/// Graphviz rendering: generator labels on nodes, object types on edges,
/// curry bodies as nested clusters.
pub(super) fn to_dot(d: &Diagram) -> String {
    let mut s = String::from("digraph diagram {\n  rankdir=TB;\n  node [fontname=\"monospace\"];\n");
    body(d, "", &mut s, 1);
    s.push_str("}\n");
    s
}

fn body(d: &Diagram, prefix: &str, s: &mut String, depth: usize) {
    let pad = "  ".repeat(depth);
    for (i, b) in d.domain.iter().enumerate() {
        let label = match &b.label {
            Some(n) => format!("{n}: {}", b.ty),
            None => b.ty.to_string(),
        };
        let _ = writeln!(s, "{pad}{prefix}d{i} [shape=plaintext, label=\"in{i} {label}\"];");
    }
    for (i, b) in d.codomain.iter().enumerate() {
        let _ = writeln!(s, "{pad}{prefix}c{i} [shape=plaintext, label=\"out{i} {}\"];", b.ty);
    }
    for (i, k) in d.nodes.iter().enumerate() {
        let shape = match k {
            GeneratorKind::Dup { .. } | GeneratorKind::Drop => "point",
            GeneratorKind::Comm => "doubleoctagon",
            GeneratorKind::Hole { .. } => "box3d",
            _ => "box",
        };
        if let GeneratorKind::Curry { body: inner, .. } = k {
            let _ = writeln!(s, "{pad}subgraph cluster_{prefix}n{i} {{");
            let _ = writeln!(s, "{pad}  label=\"{}\";", k.label());
            let _ = writeln!(s, "{pad}  {prefix}n{i} [shape=box, style=rounded, label=\"{}\"];", k.label());
            body(inner, &format!("{prefix}n{i}_"), s, depth + 1);
            let _ = writeln!(s, "{pad}}}");
        } else {
            let xlabel = if shape == "point" {
                format!(", xlabel=\"{}\"", k.label())
            } else {
                String::new()
            };
            let _ = writeln!(s, "{pad}{prefix}n{i} [shape={shape}, label=\"{}\"{xlabel}];", k.label());
        }
    }
    for w in &d.wires {
        let src = match w.source {
            Source::Domain { index } => format!("{prefix}d{index}"),
            Source::Node { node, .. } => format!("{prefix}n{node}"),
        };
        let tgt = match w.target {
            Target::Codomain { index } => format!("{prefix}c{index}"),
            Target::Node { node, .. } => format!("{prefix}n{node}"),
        };
        let _ = writeln!(s, "{pad}{src} -> {tgt} [label=\"{}\"];", w.ty);
    }
}

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pitwo::bisim::{barbs, bisim_verdict, BisimOptions};
use pitwo::congruence::{canonical_form_with, congruent_with, CanonOptions};
use pitwo::diagram::{Diagram, GeneratorKind};
use pitwo::harness::{verify, CorpusSpec, Lemma};
use pitwo::opsem::{find_redexes, reachable, reduce_step, successors};
use pitwo::rewrite::{apply_comm, apply_concurrent, concurrent_step, find_diagram_redexes};
use pitwo::syntax::{parse, Process};
use pitwo::translate::{translate, translate_top, TopDiagram};

#[derive(Parser)]
#[command(name = "pitwo", version, about = "π-calculus terms, their string diagrams, and checkers relating the two")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a term and print it back.
    Parse { term: String },
    /// Free names.
    Fn { term: String },
    /// Canonical form up to structural congruence.
    Canon {
        term: String,
        #[arg(long)]
        gc_vacuous: bool,
    },
    /// Structural congruence; exit 1 when not congruent.
    Equiv {
        left: String,
        right: String,
        #[arg(long)]
        gc_vacuous: bool,
    },
    /// One reduction step, one line per redex.
    Step { term: String },
    /// All reachable states.
    Run {
        term: String,
        #[arg(long, default_value_t = 10_000)]
        max_states: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Observable outputs.
    Barbs { term: String },
    /// Barbed bisimilarity; exit 1 when not bisimilar.
    Bisim {
        left: String,
        right: String,
        #[arg(long, default_value_t = 10_000)]
        max_states: usize,
        #[arg(long)]
        weak: bool,
    },
    /// The string diagram of a term.
    Translate {
        term: String,
        #[command(flatten)]
        top: TopArgs,
        /// Translate as a top-level term (in parallel with COMM tokens).
        #[arg(long)]
        top_level: bool,
        /// Show the diagram as built, before normalisation.
        #[arg(long, conflicts_with = "top_level")]
        raw: bool,
        #[arg(long)]
        dot: bool,
    },
    /// comm redexes of the top-level diagram.
    Redexes {
        term: String,
        #[command(flatten)]
        top: TopArgs,
    },
    /// Fire one comm redex of the top-level diagram.
    Crewrite {
        term: String,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[command(flatten)]
        top: TopArgs,
        #[arg(long)]
        dot: bool,
    },
    /// Maximal sets of disjoint redexes that fire together.
    Concurrent {
        term: String,
        #[command(flatten)]
        top: TopArgs,
    },
    /// Run an exhaustive check over a bounded corpus; exit 1 on a counterexample.
    Verify {
        #[arg(long, value_parser = parse_lemma)]
        lemma: Lemma,
        #[arg(long)]
        names: Option<usize>,
        /// Bound on term size.
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        max_prefixes: Option<usize>,
        #[arg(long)]
        max_arity: Option<usize>,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        no_new: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args, Clone, Copy)]
struct TopArgs {
    /// Number of COMM tokens.
    #[arg(long, default_value_t = 1)]
    comm_tokens: usize,
    /// Feed each free name from a name constant.
    #[arg(long)]
    instantiate: bool,
}

fn parse_lemma(s: &str) -> Result<Lemma, String> {
    s.parse::<Lemma>().map_err(|e| e.to_string())
}

enum Failure {
    Negative,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn term(arg: &str) -> Result<Process, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    parse(&text).map_err(|e| Failure::Usage(format!("parse error at {e}")))
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, value: Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("json values serialise"));
        } else {
            let t = text();
            if !t.is_empty() {
                println!("{t}");
            }
        }
    }
}

fn summary(d: &Diagram) -> String {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    fn walk(d: &Diagram, counts: &mut BTreeMap<String, usize>) {
        for k in &d.nodes {
            *counts.entry(k.label()).or_default() += 1;
            if let GeneratorKind::Curry { body, .. } = k {
                walk(body, counts);
            }
        }
    }
    walk(d, &mut counts);
    let dom: Vec<String> = d
        .domain
        .iter()
        .map(|b| match &b.label {
            Some(n) => format!("{n}:{}", b.ty),
            None => b.ty.to_string(),
        })
        .collect();
    let nodes: Vec<String> = counts.iter().map(|(k, n)| format!("{k}×{n}")).collect();
    format!(
        "{} → {}\nnodes: {}\nkey: {:016x}",
        if dom.is_empty() { "I".into() } else { dom.join(" ⊗ ") },
        d.codomain_object(),
        if nodes.is_empty() { "none".into() } else { nodes.join(" ") },
        d.canonical_key().fingerprint()
    )
}

fn show_diagram(out: &Out, d: &Diagram, dot: bool) {
    if dot && !out.json {
        print!("{}", d.to_dot());
    } else {
        out.emit(d.to_json(), || summary(d));
    }
}

fn top_of(p: &Process, t: TopArgs) -> TopDiagram {
    translate_top(p, t.comm_tokens, t.instantiate)
}

/// The operational successor whose translation equals `d`, if any.
fn matching_successor(p: &Process, d: &TopDiagram, t: TopArgs) -> Option<String> {
    let k = d.key();
    reduce_step(p)
        .into_iter()
        .find(|q| {
            let names: Vec<_> = p.free_names().into_iter().collect();
            pitwo::translate::translate_top_over(q.process(), &names, t.comm_tokens, t.instantiate).key() == k
        })
        .map(|q| q.to_string())
}

fn run(cli: Cli) -> Outcome {
    let out = Out { json: cli.json };
    match cli.cmd {
        Cmd::Parse { term: t } => {
            let p = term(&t)?;
            out.emit(serde_json::to_value(&p)?, || p.to_string());
        }
        Cmd::Fn { term: t } => {
            let p = term(&t)?;
            let names: Vec<String> = p.free_names().iter().map(|n| n.to_string()).collect();
            out.emit(json!(names), || names.join(" "));
        }
        Cmd::Canon { term: t, gc_vacuous } => {
            let c = canonical_form_with(&term(&t)?, CanonOptions { gc_vacuous });
            out.emit(json!(c.to_string()), || c.to_string());
        }
        Cmd::Equiv { left, right, gc_vacuous } => {
            let (p, q) = (term(&left)?, term(&right)?);
            let opts = CanonOptions { gc_vacuous };
            let same = congruent_with(&p, &q, opts);
            out.emit(
                json!({
                    "congruent": same,
                    "left": canonical_form_with(&p, opts).to_string(),
                    "right": canonical_form_with(&q, opts).to_string(),
                }),
                || same.to_string(),
            );
            if !same {
                return Err(Failure::Negative);
            }
        }
        Cmd::Step { term: t } => {
            let p = term(&t)?;
            let redexes = find_redexes(&p);
            let next = successors(&p);
            out.emit(
                json!(redexes
                    .iter()
                    .zip(&next)
                    .map(|(r, q)| json!({"redex": r, "successor": q.to_string()}))
                    .collect::<Vec<_>>()),
                || next.iter().map(|q| q.to_string()).collect::<Vec<_>>().join("\n"),
            );
        }
        Cmd::Run { term: t, max_states, dot } => {
            let g = reachable(&term(&t)?, max_states)?;
            if dot && !out.json {
                println!("digraph reductions {{");
                for (i, s) in g.states.iter().enumerate() {
                    println!("  s{i} [label={:?}];", s.to_string());
                }
                for (a, b) in &g.edges {
                    println!("  s{a} -> s{b};");
                }
                println!("}}");
            } else {
                out.emit(serde_json::to_value(&g)?, || {
                    let mut lines: Vec<String> =
                        g.states.iter().enumerate().map(|(i, s)| format!("{i}: {s}")).collect();
                    lines.extend(g.edges.iter().map(|(a, b)| format!("{a} -> {b}")));
                    lines.join("\n")
                });
            }
        }
        Cmd::Barbs { term: t } => {
            let b: Vec<String> = barbs(&term(&t)?).iter().map(|n| n.to_string()).collect();
            out.emit(json!(b), || b.join(" "));
        }
        Cmd::Bisim {
            left,
            right,
            max_states,
            weak,
        } => {
            let v = bisim_verdict(&term(&left)?, &term(&right)?, BisimOptions { max_states, weak })?;
            out.emit(serde_json::to_value(&v)?, || match &v.distinction {
                None => "true".into(),
                Some(d) => format!("false\n{}", serde_json::to_string(d).expect("serialisable")),
            });
            if !v.bisimilar {
                return Err(Failure::Negative);
            }
        }
        Cmd::Translate {
            term: t,
            top,
            top_level,
            raw,
            dot,
        } => {
            let p = term(&t)?;
            let d = if top_level {
                top_of(&p, top).diagram.canonical_layout()
            } else if raw {
                translate(&p)
            } else {
                translate(&p).canonical_layout()
            };
            show_diagram(&out, &d, dot);
        }
        Cmd::Redexes { term: t, top } => {
            let d = top_of(&term(&t)?, top);
            let rs = find_diagram_redexes(&d);
            out.emit(serde_json::to_value(&rs)?, || {
                rs.iter()
                    .enumerate()
                    .map(|(i, r)| {
                        format!(
                            "{i}: output n{} · input n{} · arity {} · COMM n{}",
                            r.output_node, r.input_node, r.arity, r.catalyst
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        Cmd::Crewrite {
            term: t,
            index,
            top,
            dot,
        } => {
            let p = term(&t)?;
            let d = top_of(&p, top);
            let rs = find_diagram_redexes(&d);
            let r = rs
                .get(index)
                .ok_or_else(|| Failure::Usage(format!("redex index {index} out of range ({} redexes)", rs.len())))?;
            let next = apply_comm(&d, r)?;
            let matched = matching_successor(&p, &next, top);
            if dot && !out.json {
                print!("{}", next.diagram.canonical_layout().to_dot());
            } else {
                out.emit(
                    json!({"redex": r, "diagram": next.diagram.canonical_layout().to_json(), "successor": matched}),
                    || {
                        format!(
                            "{}\nsuccessor: {}",
                            summary(&next.diagram),
                            matched.as_deref().unwrap_or("none")
                        )
                    },
                );
            }
        }
        Cmd::Concurrent { term: t, top } => {
            let p = term(&t)?;
            let d = top_of(&p, top);
            let sets = concurrent_step(&d, top.comm_tokens);
            let mut rows = Vec::new();
            for set in &sets {
                let next = apply_concurrent(&d, set)?;
                rows.push((set, next.key().fingerprint(), next.without_catalysts().key().fingerprint()));
            }
            out.emit(
                json!(rows
                    .iter()
                    .map(|(s, k, _)| json!({"redexes": s, "result_key": format!("{k:016x}")}))
                    .collect::<Vec<_>>()),
                || {
                    rows.iter()
                        .map(|(s, k, _)| {
                            let pairs: Vec<String> =
                                s.iter().map(|r| format!("(n{}, n{})", r.output_node, r.input_node)).collect();
                            format!("{{{}}} → {k:016x}", pairs.join(", "))
                        })
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
        }
        Cmd::Verify {
            lemma,
            names,
            max_size,
            max_prefixes,
            max_arity,
            width,
            no_new,
            jobs,
        } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
            }
            let mut spec = match lemma {
                Lemma::Congruence => CorpusSpec::small(),
                _ => CorpusSpec::default(),
            };
            if let Some(n) = names {
                spec.name_alphabet_size = n;
            }
            spec.max_size = max_size.or(spec.max_size);
            if let Some(k) = max_prefixes {
                spec.max_prefixes = k;
            }
            if let Some(a) = max_arity {
                spec.max_arity = a;
            }
            if let Some(w) = width {
                spec.max_parallel_width = w;
            }
            spec.allow_new &= !no_new;
            let r = verify(lemma, &spec);
            out.emit(serde_json::to_value(&r)?, || r.to_string());
            if !r.passed() {
                return Err(Failure::Negative);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::enumerate::{alphabet, enumerate_by_size, enumerate_contexts, enumerate_terms, CorpusSpec};
use crate::bisim::{barbs, union_lts, BarbSet, Lts};
use crate::congruence::{canonical_form, oracle};
use crate::diagram::ir::{Atom, Ir, Out, Src};
use crate::diagram::{DiagramKey, GeneratorKind};
use crate::opsem::{reachable, reduce_step};
use crate::rewrite::{apply_comm, comm_step_keyed, find_diagram_redexes};
use crate::syntax::{alpha_eq, substitute, Name, NameSet, Nameless, Process, Substitution};
use crate::translate::{close_top, translate, translate_context, translate_top, translate_top_over, TopDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("diagram is not in the image of the translation: {0}")]
    NotTranslationShaped(String),
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
}

/// The statements the harness can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma {
    Reduction,
    Observation,
    FullAbstraction,
    Congruence,
    Structural,
    Gating,
    Substitution,
}

impl Lemma {
    pub const ALL: [Lemma; 7] = [
        Lemma::Reduction,
        Lemma::Observation,
        Lemma::FullAbstraction,
        Lemma::Congruence,
        Lemma::Structural,
        Lemma::Gating,
        Lemma::Substitution,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Lemma::Reduction => "reduction",
            Lemma::Observation => "observation",
            Lemma::FullAbstraction => "fullabstraction",
            Lemma::Congruence => "congruence",
            Lemma::Structural => "structural",
            Lemma::Gating => "gating",
            Lemma::Substitution => "substitution",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Lemma {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| HarnessError::UnknownLemma(s.to_string()))
    }
}

/// A failed check, with enough printed state to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub terms: Vec<String>,
    pub expected: Vec<String>,
    pub observed: Vec<String>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub lemma: Lemma,
    pub corpus_size: usize,
    pub checks: usize,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<16} {:>8} {:>9} {:>8} {:>10}  result",
            "lemma", "corpus", "checks", "failures", "time"
        )?;
        writeln!(
            f,
            "{:<16} {:>8} {:>9} {:>8} {:>9.2}s  {}",
            self.lemma.as_str(),
            self.corpus_size,
            self.checks,
            self.counterexamples.len(),
            self.elapsed_ms as f64 / 1000.0,
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        for (i, c) in self.counterexamples.iter().take(20).enumerate() {
            writeln!(f, "  #{i}: {}", c.terms.join("  ,  "))?;
            writeln!(f, "      expected: {}", c.expected.join(" ; "))?;
            writeln!(f, "      observed: {}", c.observed.join(" ; "))?;
            if !c.note.is_empty() {
                writeln!(f, "      {}", c.note)?;
            }
        }
        if self.counterexamples.len() > 20 {
            writeln!(f, "  … {} more", self.counterexamples.len() - 20)?;
        }
        Ok(())
    }
}

fn report(lemma: Lemma, start: Instant, corpus_size: usize, results: Vec<(usize, Vec<Counterexample>)>) -> VerificationReport {
    let checks = results.iter().map(|r| r.0).sum();
    VerificationReport {
        lemma,
        corpus_size,
        checks,
        counterexamples: results.into_iter().flat_map(|r| r.1).collect(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn show(ns: &BarbSet) -> Vec<String> {
    ns.iter().map(|n| n.to_string()).collect()
}

fn fp(k: &DiagramKey) -> String {
    format!("#{:016x}", k.fingerprint())
}

/// The barbs of a top diagram: subjects of output nodes on the top spine
/// whose wire is rooted at an interface port or a name constant. Outputs on
/// restricted names (rooted at `fresh`) are not observable.
pub fn semantic_barbs(d: &TopDiagram) -> Result<BarbSet, HarnessError> {
    let ir = Ir::from_diagram(&d.diagram);
    let bad = |m: &str| Err(HarnessError::NotTranslationShaped(m.to_string()));
    let Some(Out::Proc(sum)) = ir.outputs.first() else {
        return bad("codomain is not P");
    };
    let mut out = BarbSet::new();
    for s in sum {
        let Src::Atom(a) = s else {
            return bad("a process input reaches the top spine");
        };
        match ir.atom(*a) {
            Some(Atom::Output { subject, .. }) => match subject {
                Src::Dom(i) => match &ir.domain[*i].label {
                    Some(n) => {
                        out.insert(n.clone());
                    }
                    None => return bad("unlabelled interface port"),
                },
                Src::Atom(b) => match ir.atom(*b) {
                    Some(Atom::NameConst(n)) => {
                        out.insert(n.clone());
                    }
                    Some(Atom::Fresh) => {}
                    _ => return bad("output subject is not a name source"),
                },
            },
            Some(Atom::Input { .. }) | Some(Atom::Comm) => {}
            _ => return bad("unexpected generator on the top spine"),
        }
    }
    Ok(out)
}

/// The top diagram of `p` in the given mode: over `names` (its interface)
/// or with every free name instantiated by a constant.
fn top(p: &Process, names: &[Name], instantiate: bool) -> TopDiagram {
    translate_top_over(p, names, 1, instantiate)
}

fn reduction_check(p: &Process) -> (usize, Vec<Counterexample>) {
    let names: Vec<Name> = p.free_names().into_iter().collect();
    let succ = reduce_step(p);
    let mut bad = Vec::new();
    for instantiate in [true, false] {
        let expected: BTreeMap<DiagramKey, String> = succ
            .iter()
            .map(|q| (top(q.process(), &names, instantiate).key(), q.to_string()))
            .collect();
        let observed = comm_step_keyed(&top(p, &names, instantiate));
        if !expected.keys().eq(observed.keys()) {
            bad.push(Counterexample {
                terms: vec![p.to_string()],
                expected: expected.iter().map(|(k, q)| format!("{q} {}", fp(k))).collect(),
                observed: observed.keys().map(fp).collect(),
                note: format!(
                    "{} diagrams; translated successors vs comm_step classes",
                    if instantiate { "instantiated" } else { "open" }
                ),
            });
        }
    }
    (2, bad)
}

/// Operational successors, translated, against one ⇒^comm step, for every
/// corpus term, in both the open and the instantiated reading.
pub fn verify_reduction_lemma(spec: &CorpusSpec) -> VerificationReport {
    let start = Instant::now();
    let terms = enumerate_terms(spec);
    let results = terms.par_iter().map(reduction_check).collect();
    report(Lemma::Reduction, start, terms.len(), results)
}

fn observation_check(p: &Process) -> (usize, Vec<Counterexample>) {
    let names: Vec<Name> = p.free_names().into_iter().collect();
    let expected = barbs(p);
    let mut bad = Vec::new();
    for instantiate in [true, false] {
        let observed = semantic_barbs(&top(p, &names, instantiate));
        if observed.as_ref() != Ok(&expected) {
            bad.push(Counterexample {
                terms: vec![p.to_string()],
                expected: show(&expected),
                observed: match observed {
                    Ok(s) => show(&s),
                    Err(e) => vec![e.to_string()],
                },
                note: if instantiate { "instantiated" } else { "open" }.into(),
            });
        }
    }
    (2, bad)
}

/// Syntactic barbs against diagram barbs for every corpus term.
pub fn verify_observation_lemma(spec: &CorpusSpec) -> VerificationReport {
    let start = Instant::now();
    let terms = enumerate_terms(spec);
    let results = terms.par_iter().map(observation_check).collect();
    report(Lemma::Observation, start, terms.len(), results)
}

/// At most `max` terms, evenly spread over `terms`.
pub fn trim<T: Clone>(terms: &[T], max: usize) -> Vec<T> {
    if terms.len() <= max {
        return terms.to_vec();
    }
    (0..max).map(|i| terms[i * terms.len() / max].clone()).collect()
}

/// The diagram-side transition system generated by ⇒^comm from `roots`:
/// states are equality classes, observations are semantic barbs. Returns
/// the state of each root.
pub fn diagram_lts(roots: &[TopDiagram], max_states: usize) -> Result<(Lts<BarbSet>, Vec<usize>), HarnessError> {
    let mut index: HashMap<DiagramKey, usize> = HashMap::new();
    let mut states: Vec<TopDiagram> = Vec::new();
    let mut queue = VecDeque::new();
    let mut root_ids = Vec::new();
    for r in roots {
        let k = r.key();
        let id = *index.entry(k).or_insert_with(|| {
            states.push(r.clone());
            queue.push_back(states.len() - 1);
            states.len() - 1
        });
        root_ids.push(id);
    }
    let mut succ: Vec<Vec<usize>> = Vec::new();
    while let Some(s) = queue.pop_front() {
        let next = comm_step_keyed(&states[s]);
        let mut out = Vec::new();
        for (k, d) in next {
            let id = match index.get(&k) {
                Some(&id) => id,
                None => {
                    if states.len() >= max_states {
                        return Err(HarnessError::NotTranslationShaped(format!(
                            "more than {max_states} diagram states"
                        )));
                    }
                    index.insert(k, states.len());
                    states.push(d);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                }
            };
            out.push(id);
        }
        if succ.len() <= s {
            succ.resize(s + 1, Vec::new());
        }
        succ[s] = out;
    }
    succ.resize(states.len(), Vec::new());
    let obs = states
        .par_iter()
        .map(semantic_barbs)
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Lts { succ, obs }, root_ids))
}

/// Block of each term under syntactic barbed bisimilarity, computed on the
/// union of their reduction graphs.
fn syntactic_blocks(terms: &[Process], max_states: usize) -> Vec<usize> {
    let graphs: Vec<_> = terms
        .par_iter()
        .map(|p| reachable(p, max_states).expect("corpus terms have small state spaces"))
        .collect();
    let refs: Vec<_> = graphs.iter().collect();
    let (states, lts) = union_lts(&refs);
    let blocks = lts.bisimulation_classes();
    let at: HashMap<_, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    graphs.iter().map(|g| blocks[at[&g.states[g.root]]]).collect()
}

fn semantic_blocks(tops: &[TopDiagram], max_states: usize) -> Result<Vec<usize>, HarnessError> {
    let (lts, roots) = diagram_lts(tops, max_states)?;
    let blocks = lts.bisimulation_classes();
    Ok(roots.into_iter().map(|r| blocks[r]).collect())
}

fn compare_blocks(terms: &[String], syn: &[usize], sem: &[usize], note: &str) -> (usize, Vec<Counterexample>) {
    let mut bad = Vec::new();
    let mut checks = 0;
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            checks += 1;
            let (a, b) = (syn[i] == syn[j], sem[i] == sem[j]);
            if a != b {
                bad.push(Counterexample {
                    terms: vec![terms[i].clone(), terms[j].clone()],
                    expected: vec![format!("bisimilar: {a}")],
                    observed: vec![format!("semantically bisimilar: {b}")],
                    note: note.to_string(),
                });
            }
        }
    }
    (checks, bad)
}

const STATE_BUDGET: usize = 1_000_000;

/// Syntactic against diagrammatic barbed bisimilarity on every pair of at
/// most `max_terms` corpus terms.
pub fn verify_full_abstraction(spec: &CorpusSpec, max_terms: usize) -> VerificationReport {
    let start = Instant::now();
    let terms = trim(&enumerate_terms(spec), max_terms);
    let syn = syntactic_blocks(&terms, STATE_BUDGET);
    let tops: Vec<TopDiagram> = terms.par_iter().map(|p| translate_top(p, 1, true)).collect();
    let shown: Vec<String> = terms.iter().map(|p| p.to_string()).collect();
    let result = match semantic_blocks(&tops, STATE_BUDGET) {
        Ok(sem) => compare_blocks(&shown, &syn, &sem, ""),
        Err(e) => (
            1,
            vec![Counterexample {
                terms: vec![],
                expected: vec![],
                observed: vec![e.to_string()],
                note: "diagram side failed".into(),
            }],
        ),
    };
    report(Lemma::FullAbstraction, start, terms.len(), vec![result])
}

/// Checks `⟦C⟧(⟦P⟧) = ⟦C[P]⟧` for every context of size at most
/// `context_bound` and every corpus term, then compares `C[P] ≈ C[Q]` with
/// `⟦C⟧(⟦P⟧) ≈ ⟦C⟧(⟦Q⟧)` for every context of size at most
/// `pair_context_bound` and every pair of at most `pair_terms` corpus terms.
pub fn verify_contextual_congruence_with(
    spec: &CorpusSpec,
    context_bound: usize,
    pair_context_bound: usize,
    pair_terms: usize,
) -> VerificationReport {
    let start = Instant::now();
    let names = spec.alphabet();
    let terms = enumerate_terms(spec);
    let contexts = enumerate_contexts(&names, spec.max_arity, context_bound);
    let plugs: Vec<(usize, Vec<Counterexample>)> = contexts
        .par_iter()
        .map(|c| {
            let mut by_hole: BTreeMap<Vec<Name>, _> = BTreeMap::new();
            let mut bad = Vec::new();
            for p in &terms {
                let hole: Vec<Name> = p.free_names().into_iter().collect();
                let dc = by_hole
                    .entry(hole.clone())
                    .or_insert_with(|| translate_context(c, &hole));
                let lhs = dc.plug(&translate(p));
                let direct = translate(&c.plug(p));
                match lhs {
                    Ok(l) if l.equal(&direct) => {}
                    other => bad.push(Counterexample {
                        terms: vec![c.to_string(), p.to_string()],
                        expected: vec![format!("{}", direct.canonical_key().fingerprint())],
                        observed: vec![match other {
                            Ok(l) => format!("{}", l.canonical_key().fingerprint()),
                            Err(e) => e.to_string(),
                        }],
                        note: "plugging the translation differs from translating the plugged term".into(),
                    }),
                }
            }
            (terms.len(), bad)
        })
        .collect();

    let pair_set = trim(&terms, pair_terms);
    let shown: Vec<String> = pair_set.iter().map(|p| p.to_string()).collect();
    let pair_contexts: Vec<_> = contexts.iter().filter(|c| c.size() <= pair_context_bound).collect();
    let pairs: Vec<(usize, Vec<Counterexample>)> = pair_contexts
        .par_iter()
        .map(|c| {
            let plugged: Vec<Process> = pair_set.iter().map(|p| c.plug(p)).collect();
            let syn = syntactic_blocks(&plugged, STATE_BUDGET);
            let dc = translate_context(c, &names);
            let tops: Vec<TopDiagram> = pair_set
                .iter()
                .map(|p| {
                    let filled = dc.plug(&translate(p)).expect("hole names cover the alphabet");
                    close_top(&filled, 1, true).expect("plugged context is name-labelled")
                })
                .collect();
            let note = format!("context {c}");
            match semantic_blocks(&tops, STATE_BUDGET) {
                Ok(sem) => compare_blocks(&shown, &syn, &sem, &note),
                Err(e) => (
                    1,
                    vec![Counterexample {
                        terms: vec![c.to_string()],
                        expected: vec![],
                        observed: vec![e.to_string()],
                        note,
                    }],
                ),
            }
        })
        .collect();
    let corpus = terms.len() + contexts.len();
    report(Lemma::Congruence, start, corpus, plugs.into_iter().chain(pairs).collect())
}

/// [`verify_contextual_congruence_with`] with verdict agreement checked on
/// contexts up to size 3 and 40 terms.
pub fn verify_contextual_congruence(spec: &CorpusSpec, context_bound: usize) -> VerificationReport {
    verify_contextual_congruence_with(spec, context_bound, context_bound.min(3), 40)
}

/// Canonical-form equality against the axiom-closure oracle on every pair
/// of terms of size at most `max_size` over `names`. The oracle partition
/// joins two terms whenever their closures share a term, so agreeing
/// partitions mean agreement on every pair.
pub fn verify_structural_congruence(names: &[Name], max_arity: usize, max_size: usize) -> VerificationReport {
    let start = Instant::now();
    let terms = enumerate_by_size(names, max_arity, max_size);
    let canon: Vec<_> = terms.par_iter().map(canonical_form).collect();
    let closures: Vec<Vec<Nameless>> = terms
        .par_iter()
        .map(|t| oracle::closure(Nameless::from_process(t), None))
        .collect();
    let mut parent: Vec<usize> = (0..terms.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut owner: HashMap<&Nameless, usize> = HashMap::new();
    for (i, cl) in closures.iter().enumerate() {
        for t in cl {
            match owner.get(t) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
                None => {
                    owner.insert(t, i);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..terms.len()).map(|i| find(&mut parent, i)).collect();
    let mut by_canon: HashMap<_, usize> = HashMap::new();
    let mut by_root: HashMap<usize, usize> = HashMap::new();
    let mut bad = Vec::new();
    for i in 0..terms.len() {
        let first_c = *by_canon.entry(&canon[i]).or_insert(i);
        let first_r = *by_root.entry(roots[i]).or_insert(i);
        if roots[first_c] != roots[i] {
            bad.push(Counterexample {
                terms: vec![terms[first_c].to_string(), terms[i].to_string()],
                expected: vec!["oracle: related".into()],
                observed: vec!["oracle: unrelated".into()],
                note: format!("same canonical form {}", canon[i]),
            });
        }
        if canon[first_r] != canon[i] {
            bad.push(Counterexample {
                terms: vec![terms[first_r].to_string(), terms[i].to_string()],
                expected: vec![canon[first_r].to_string()],
                observed: vec![canon[i].to_string()],
                note: "oracle relates them, canonical forms differ".into(),
            });
        }
    }
    let checks = terms.len() * (terms.len() - 1) / 2;
    report(Lemma::Structural, start, terms.len(), vec![(checks, bad)])
}

fn gating_check(p: &Process) -> (usize, Vec<Counterexample>) {
    let mut bad = Vec::new();
    let mut checks = 0;
    let mut fail = |what: &str, k: usize| {
        bad.push(Counterexample {
            terms: vec![p.to_string()],
            expected: vec![],
            observed: vec![what.to_string()],
            note: format!("{k} catalysts"),
        })
    };
    for k in [1, 2] {
        let d = translate_top(p, k, true);
        let redexes = find_diagram_redexes(&d);
        checks += 1;
        if !find_diagram_redexes(&d.without_catalysts()).is_empty() {
            fail("redexes without a COMM token", k);
        }
        if redexes.is_empty() != reduce_step(p).is_empty() {
            fail("redex existence differs from operational reducibility", k);
        }
        for r in &redexes {
            checks += 1;
            let next = apply_comm(&d, r).expect("fresh redex");
            if next.catalysts != k {
                fail(&format!("{} tokens after firing", next.catalysts), k);
            }
            let prefixes = |t: &TopDiagram| {
                t.diagram
                    .deep_count(&|g| matches!(g, GeneratorKind::Input { .. } | GeneratorKind::Output { .. }))
            };
            if prefixes(&next) + 2 != prefixes(&d) {
                fail("firing did not remove exactly one output and one input", k);
            }
        }
    }
    (checks, bad)
}

/// Catalyst gating and conservation on every corpus term.
pub fn verify_gating(spec: &CorpusSpec) -> VerificationReport {
    let start = Instant::now();
    let terms = enumerate_terms(spec);
    let results = terms.par_iter().map(gating_check).collect();
    report(Lemma::Gating, start, terms.len(), results)
}

/// Substitution by renaming every binder apart from all names in sight and
/// then replacing free occurrences in place.
pub fn substitute_by_renaming(p: &Process, s: &Substitution) -> Process {
    let mut avoid: NameSet = p.all_names();
    avoid.extend(s.keys().cloned());
    avoid.extend(s.values().cloned());
    let mut counter = 0usize;
    let apart = rename_apart(p, &BTreeMap::new(), &avoid, &mut counter);
    replace(&apart, s)
}

fn rename_apart(p: &Process, env: &BTreeMap<Name, Name>, avoid: &NameSet, counter: &mut usize) -> Process {
    let look = |n: &Name| env.get(n).cloned().unwrap_or_else(|| n.clone());
    let mut fresh = || loop {
        let n = crate::syntax::name(&format!("z{counter}"));
        *counter += 1;
        if !avoid.contains(&n) {
            return n;
        }
    };
    match p {
        Process::Stop => Process::Stop,
        Process::Output { subject, args } => Process::output(look(subject), args.iter().map(look).collect()),
        Process::Input { subject, params, body } => {
            let mut inner = env.clone();
            let fresh_params: Vec<Name> = params
                .iter()
                .map(|y| {
                    let z = fresh();
                    inner.insert(y.clone(), z.clone());
                    z
                })
                .collect();
            Process::input(look(subject), fresh_params, rename_apart(body, &inner, avoid, counter))
        }
        Process::New { binder, body } => {
            let z = fresh();
            let mut inner = env.clone();
            inner.insert(binder.clone(), z.clone());
            Process::new_scope(z, rename_apart(body, &inner, avoid, counter))
        }
        Process::Par { left, right } => {
            let l = rename_apart(left, env, avoid, counter);
            Process::par(l, rename_apart(right, env, avoid, counter))
        }
    }
}

fn replace(p: &Process, s: &Substitution) -> Process {
    let r = |n: &Name| s.get(n).cloned().unwrap_or_else(|| n.clone());
    match p {
        Process::Stop => Process::Stop,
        Process::Output { subject, args } => Process::output(r(subject), args.iter().map(r).collect()),
        Process::Input { subject, params, body } => Process::input(r(subject), params.clone(), replace(body, s)),
        Process::New { binder, body } => Process::new_scope(binder.clone(), replace(body, s)),
        Process::Par { left, right } => Process::par(replace(left, s), replace(right, s)),
    }
}

/// `substitute` against [`substitute_by_renaming`] on `samples` random
/// (term, substitution) pairs.
pub fn verify_substitution(samples: usize, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let names = alphabet(3);
    let mut targets = names.clone();
    targets.extend(alphabet(4).into_iter().skip(3));
    let pool = enumerate_by_size(&names, 2, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..samples {
        let p = pool.choose(&mut rng).expect("nonempty pool");
        let mut s = Substitution::new();
        for n in &names {
            if rng.gen_bool(0.6) {
                s.insert(n.clone(), targets.choose(&mut rng).expect("targets").clone());
            }
        }
        let got = substitute(p, &s);
        let want = substitute_by_renaming(p, &s);
        if !alpha_eq(&got, &want) {
            bad.push(Counterexample {
                terms: vec![p.to_string(), format!("{s:?}")],
                expected: vec![want.to_string()],
                observed: vec![got.to_string()],
                note: String::new(),
            });
        }
    }
    report(Lemma::Substitution, start, pool.len(), vec![(samples, bad)])
}

/// Checked statements that have a corpus, with the given bounds.
pub fn verify(lemma: Lemma, spec: &CorpusSpec) -> VerificationReport {
    match lemma {
        Lemma::Reduction => verify_reduction_lemma(spec),
        Lemma::Observation => verify_observation_lemma(spec),
        Lemma::FullAbstraction => verify_full_abstraction(spec, 200),
        Lemma::Congruence => verify_contextual_congruence(spec, 4),
        Lemma::Structural => verify_structural_congruence(
            &spec.alphabet(),
            spec.max_arity,
            spec.max_size.unwrap_or(6),
        ),
        Lemma::Gating => verify_gating(spec),
        Lemma::Substitution => verify_substitution(1000, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{name, parse};

    fn p(s: &str) -> Process {
        parse(s).unwrap()
    }

    fn sem(s: &str) -> BarbSet {
        semantic_barbs(&translate_top(&p(s), 1, false)).unwrap()
    }

    #[test]
    fn semantic_barb_examples() {
        assert_eq!(sem("x!(y)"), BarbSet::from([name("x")]));
        assert!(sem("x?(y) => y!()").is_empty());
        assert_eq!(sem("(new u)(u!(a) | z!(u))"), BarbSet::from([name("z")]));
    }

    #[test]
    fn small_lemmas() {
        let spec = CorpusSpec {
            max_prefixes: 2,
            max_parallel_width: 2,
            max_prefixes_with_new: None,
            ..CorpusSpec::default()
        };
        for r in [
            verify_reduction_lemma(&spec),
            verify_observation_lemma(&spec),
            verify_gating(&spec),
            verify_full_abstraction(&spec, 60),
            verify_substitution(200, 7),
        ] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn stop_only() {
        let spec = CorpusSpec {
            max_prefixes: 0,
            ..CorpusSpec::default()
        };
        let r = verify_reduction_lemma(&spec);
        assert!(r.passed());
        assert_eq!(r.corpus_size, 1);
    }

    #[test]
    fn renaming_oracle() {
        let s: Substitution = [(name("y"), name("x"))].into_iter().collect();
        let got = substitute_by_renaming(&p("x?(x) => y!(x)"), &s);
        assert!(alpha_eq(&got, &p("x?(w) => x!(w)")));
    }

    #[test]
    fn lemma_names_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.as_str().parse::<Lemma>().unwrap(), l);
        }
        assert!("nope".parse::<Lemma>().is_err());
    }

    #[test]
    fn trimming_is_even() {
        let v: Vec<usize> = (0..10).collect();
        assert_eq!(trim(&v, 5), vec![0, 2, 4, 6, 8]);
        assert_eq!(trim(&v, 20), v);
    }
}

//! Barbs and barbed bisimulation.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::congruence::CanonicalProcess;
use crate::opsem::{reachable, OpsemError, ReductionGraph};
use crate::syntax::{Name, Process};

pub type BarbSet = BTreeSet<Name>;

/// The channels on which `p` can immediately output.
pub fn barbs(p: &Process) -> BarbSet {
    match p {
        Process::Stop | Process::Input { .. } => BarbSet::new(),
        Process::Output { subject, .. } => BarbSet::from([subject.clone()]),
        Process::Par { left, right } => {
            let mut out = barbs(left);
            out.extend(barbs(right));
            out
        }
        Process::New { binder, body } => {
            let mut out = barbs(body);
            out.remove(binder);
            out
        }
    }
}

/// A finite transition system with one observation per state.
#[derive(Clone, Debug)]
pub struct Lts<O> {
    pub succ: Vec<Vec<usize>>,
    pub obs: Vec<O>,
}

impl<O: Ord + Clone> Lts<O> {
    pub fn len(&self) -> usize {
        self.obs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.obs.is_empty()
    }

    /// Coarsest partition that respects observations and is stable under
    /// the transition relation. Returns a block number per state; two
    /// states are bisimilar iff they share a block.
    pub fn bisimulation_classes(&self) -> Vec<usize> {
        let mut block = numbering(self.obs.iter().cloned());
        loop {
            let keys = (0..self.len()).map(|s| {
                let targets: BTreeSet<usize> = self.succ[s].iter().map(|&t| block[t]).collect();
                (block[s], targets)
            });
            let next = numbering(keys);
            let stable = next.iter().max() == block.iter().max();
            block = next;
            if stable {
                return block;
            }
        }
    }

    /// Transition relation replaced by its reflexive-transitive closure and
    /// observations by the union over reachable states.
    pub fn saturate(&self) -> Lts<BTreeSet<O>> {
        let n = self.len();
        let mut reach: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
        for s in 0..n {
            let mut seen = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.succ[u] {
                    if seen.insert(v) {
                        stack.push(v);
                    }
                }
            }
            reach.push(seen);
        }
        Lts {
            obs: reach
                .iter()
                .map(|r| r.iter().map(|&t| self.obs[t].clone()).collect())
                .collect(),
            succ: reach.into_iter().map(|r| r.into_iter().collect()).collect(),
        }
    }
}

impl<O: Ord + Clone> Lts<BTreeSet<O>> {
    /// Flattens set-of-sets observations produced by [`Lts::saturate`] on
    /// an LTS whose observations are themselves sets.
    pub fn union_obs<T: Ord + Clone>(self) -> Lts<BTreeSet<T>>
    where
        O: IntoIterator<Item = T>,
    {
        Lts {
            succ: self.succ,
            obs: self
                .obs
                .into_iter()
                .map(|s| s.into_iter().flatten().collect())
                .collect(),
        }
    }
}

fn numbering<K: Ord>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let keys: Vec<K> = keys.collect();
    let mut ids: BTreeMap<&K, usize> = BTreeMap::new();
    for k in &keys {
        let next = ids.len();
        ids.entry(k).or_insert(next);
    }
    keys.iter().map(|k| ids[k]).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Why two processes are not bisimilar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Distinction {
    /// One side has a barb on `name` and the other does not.
    Barb { name: Name, left_has: bool },
    /// A move of `side` that the other side cannot match.
    UnmatchedMove { side: Side, from: String, to: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub bisimilar: bool,
    pub distinction: Option<Distinction>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BisimOptions {
    pub max_states: usize,
    /// Match moves with any number of reductions and compare weak barbs.
    pub weak: bool,
}

impl Default for BisimOptions {
    fn default() -> Self {
        BisimOptions {
            max_states: 10_000,
            weak: false,
        }
    }
}

/// Strong barbed bisimilarity.
pub fn bisimilar(p: &Process, q: &Process, max_states: usize) -> Result<bool, OpsemError> {
    Ok(bisim_verdict(
        p,
        q,
        BisimOptions {
            max_states,
            weak: false,
        },
    )?
    .bisimilar)
}

pub fn bisim_verdict(p: &Process, q: &Process, opts: BisimOptions) -> Result<Verdict, OpsemError> {
    let gp = reachable(p, opts.max_states)?;
    let gq = reachable(q, opts.max_states)?;
    let (states, mut lts) = union_lts(&[&gp, &gq]);
    let (rp, rq) = (0, states.iter().position(|s| *s == gq.states[0]).expect("root"));
    if opts.weak {
        lts = lts.saturate().union_obs();
    }
    let blocks = lts.bisimulation_classes();
    if blocks[rp] == blocks[rq] {
        return Ok(Verdict {
            bisimilar: true,
            distinction: None,
        });
    }
    Ok(Verdict {
        bisimilar: false,
        distinction: Some(distinguish(&states, &lts, &blocks, rp, rq)),
    })
}

/// The union of several reduction graphs, states identified by canonical
/// form, observations given by barbs. States of the first graph come first.
pub fn union_lts(graphs: &[&ReductionGraph]) -> (Vec<CanonicalProcess>, Lts<BarbSet>) {
    let mut index: BTreeMap<&CanonicalProcess, usize> = BTreeMap::new();
    let mut states: Vec<CanonicalProcess> = Vec::new();
    for g in graphs {
        for s in &g.states {
            if !index.contains_key(s) {
                index.insert(s, states.len());
                states.push(s.clone());
            }
        }
    }
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); states.len()];
    for g in graphs {
        for &(s, t) in &g.edges {
            succ[index[&g.states[s]]].insert(index[&g.states[t]]);
        }
    }
    let obs = states.iter().map(|s| barbs(s.process())).collect();
    (
        states,
        Lts {
            succ: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
            obs,
        },
    )
}

fn distinguish(
    states: &[CanonicalProcess],
    lts: &Lts<BarbSet>,
    blocks: &[usize],
    p: usize,
    q: usize,
) -> Distinction {
    if lts.obs[p] != lts.obs[q] {
        let name = lts.obs[p]
            .symmetric_difference(&lts.obs[q])
            .next()
            .expect("observations differ")
            .clone();
        let left_has = lts.obs[p].contains(&name);
        return Distinction::Barb { name, left_has };
    }
    for (side, a, b) in [(Side::Left, p, q), (Side::Right, q, p)] {
        let answers: BTreeSet<usize> = lts.succ[b].iter().map(|&t| blocks[t]).collect();
        if let Some(&t) = lts.succ[a].iter().find(|&&t| !answers.contains(&blocks[t])) {
            return Distinction::UnmatchedMove {
                side,
                from: states[a].to_string(),
                to: states[t].to_string(),
            };
        }
    }
    unreachable!("states in distinct blocks with equal barbs differ on some move")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{name, parse};

    fn p(s: &str) -> Process {
        parse(s).unwrap()
    }

    fn bis(a: &str, b: &str) -> bool {
        bisimilar(&p(a), &p(b), 1000).unwrap()
    }

    #[test]
    fn barb_rules() {
        assert_eq!(barbs(&p("x!(y)")), BarbSet::from([name("x")]));
        assert!(barbs(&p("x?(y) => y!()")).is_empty());
        assert_eq!(barbs(&p("(new u)(u!(a) | z!(u))")), BarbSet::from([name("z")]));
        assert!(barbs(&Process::Stop).is_empty());
    }

    #[test]
    fn verdicts() {
        assert!(bis("x!(u) | a?() => 0", "x!(u) | a?() => 0"));
        assert!(!bis("x!(u)", "0"));
        assert!(bis("0", "x?(y) => 0"));
        assert!(bis("x?(y) => 0 | x!(u)", "x?(v) => 0 | x!(u)"));
        assert!(!bis("x?() => a!() | x!()", "x?() => b!() | x!()"));
    }

    #[test]
    fn certificates() {
        let v = bisim_verdict(&p("x!(u)"), &Process::Stop, BisimOptions::default()).unwrap();
        assert_eq!(
            v.distinction,
            Some(Distinction::Barb {
                name: name("x"),
                left_has: true
            })
        );
        let v = bisim_verdict(
            &p("(new x)(x?() => a!() | x!())"),
            &p("(new x)(x?() => 0 | x!())"),
            BisimOptions::default(),
        )
        .unwrap();
        assert!(matches!(
            v.distinction,
            Some(Distinction::UnmatchedMove { side: Side::Left, .. })
        ));
    }

    #[test]
    fn weak_mode_ignores_internal_steps() {
        let a = p("(new x)(x?() => b!() | x!())");
        let b = p("b!()");
        let strong = bisim_verdict(&a, &b, BisimOptions::default()).unwrap();
        assert!(!strong.bisimilar);
        let weak = bisim_verdict(
            &a,
            &b,
            BisimOptions {
                weak: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(weak.bisimilar);
    }

    #[test]
    fn refinement_splits_by_depth() {
        // a chain of three steps versus two, same barbs everywhere
        let lts = Lts {
            succ: vec![vec![1], vec![2], vec![3], vec![], vec![5], vec![6], vec![]],
            obs: vec![0; 7],
        };
        let b = lts.bisimulation_classes();
        assert_ne!(b[0], b[4]);
        assert_eq!(b[1], b[4]);
        assert_eq!(b[3], b[6]);
    }
}

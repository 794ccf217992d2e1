//! The Brink–Howlett automaton, its minimization into cone types, and the
//! three-way minimality verdict.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::{excluded_subgraph_witness, CoxeterSystem, ExclusionWitness, GenSet};
use crate::oracle::{Ball, OracleError};
use crate::roots::{elementary_roots, sph_supported, ElementarySet, Image, RootError};
use crate::scalar::Scalar;

/// Default bound on `|W_J|` in the witness search.
pub const DEFAULT_WITNESS_GUARD: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StateTag {
    /// Sorted ids of the elementary roots in `ℰ(w)`.
    Subset(Vec<usize>),
    /// A cone-type class after minimization.
    Class(usize),
}

/// A partial deterministic automaton in which every state accepts. State 0
/// is initial and states are numbered in breadth-first discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    letters: Vec<String>,
    tags: Vec<StateTag>,
    transitions: Vec<Vec<Option<usize>>>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.tags.len()
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn tag(&self, q: usize) -> &StateTag {
        &self.tags[q]
    }

    pub fn target(&self, q: usize, s: usize) -> Option<usize> {
        self.transitions[q][s]
    }

    /// State reached by a word, or `None` if the word is rejected.
    pub fn run(&self, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(self.initial(), |q, &s| self.transitions[q][s])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.run(word).is_some()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.iter().flatten().filter(|t| t.is_some()).count()
    }
}

/// Breadth-first construction from the empty inversion set. On letter `s` a
/// state `σ` with `α_s ∉ σ` moves to `{α_s} ∪ (s·σ ∩ ℰ)`.
pub fn build_bh(sys: &CoxeterSystem, set: &ElementarySet) -> Dfa {
    let n = sys.rank();
    let action = set.action_table(sys);
    let words = set.len().div_ceil(64);
    let mut bits: Vec<Vec<u64>> = vec![vec![0; words]];
    let mut index: HashMap<Vec<u64>, usize> = HashMap::from([(bits[0].clone(), 0)]);
    let mut transitions: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
    let mut queue = VecDeque::from([0usize]);
    let has = |b: &[u64], i: usize| b[i / 64] >> (i % 64) & 1 == 1;
    while let Some(q) = queue.pop_front() {
        for s in 0..n {
            let simple = set.simple(s);
            if has(&bits[q], simple) {
                continue;
            }
            let mut next = vec![0u64; words];
            next[simple / 64] |= 1 << (simple % 64);
            for (i, row) in action.iter().enumerate() {
                if has(&bits[q], i) {
                    if let Image::Elementary(j) = row[s] {
                        next[j / 64] |= 1 << (j % 64);
                    }
                }
            }
            let target = *index.entry(next.clone()).or_insert_with(|| {
                bits.push(next);
                transitions.push(vec![None; n]);
                queue.push_back(bits.len() - 1);
                bits.len() - 1
            });
            transitions[q][s] = Some(target);
        }
    }
    let tags = bits
        .iter()
        .map(|b| StateTag::Subset((0..set.len()).filter(|&i| has(b, i)).collect()))
        .collect();
    Dfa {
        letters: sys.graph().names().to_vec(),
        tags,
        transitions,
    }
}

/// Moore partition refinement on the automaton completed by a rejecting
/// sink. Returns the quotient, numbered in breadth-first order, and the map
/// from old states to classes.
pub fn minimize(dfa: &Dfa) -> (Dfa, Vec<usize>) {
    let n = dfa.num_states();
    let r = dfa.num_letters();
    let sink = n;
    let step = |q: usize, s: usize| {
        if q == sink {
            sink
        } else {
            dfa.transitions[q][s].unwrap_or(sink)
        }
    };
    let mut class: Vec<usize> = (0..=n).map(|q| usize::from(q == sink)).collect();
    let mut count = if n == 0 { 1 } else { 2 };
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let next: Vec<usize> = (0..=n)
            .map(|q| {
                let mut sig = Vec::with_capacity(r + 1);
                sig.push(class[q]);
                sig.extend((0..r).map(|s| class[step(q, s)]));
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let refined = ids.len();
        class = next;
        if refined == count {
            break;
        }
        count = refined;
    }

    // Renumber reachable classes in breadth-first order, dropping the sink.
    let mut order: HashMap<usize, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut queue = VecDeque::new();
    if n > 0 {
        order.insert(class[0], 0);
        reps.push(0);
        queue.push_back(0);
    }
    let mut transitions = Vec::new();
    while let Some(q) = queue.pop_front() {
        let mut row = vec![None; r];
        for (s, slot) in row.iter_mut().enumerate() {
            if let Some(t) = dfa.transitions[q][s] {
                let c = class[t];
                let id = *order.entry(c).or_insert_with(|| {
                    reps.push(t);
                    queue.push_back(t);
                    reps.len() - 1
                });
                *slot = Some(id);
            }
        }
        transitions.push(row);
    }
    let map = (0..n).map(|q| order[&class[q]]).collect();
    let quotient = Dfa {
        letters: dfa.letters.clone(),
        tags: (0..reps.len()).map(StateTag::Class).collect(),
        transitions,
    };
    (quotient, map)
}

/// States grouped by class; fibers of size at least 2 are superfluous.
pub fn theta_fibers(map: &[usize]) -> Vec<Vec<usize>> {
    let classes = map.iter().max().map_or(0, |m| m + 1);
    let mut fibers = vec![Vec::new(); classes];
    for (q, &c) in map.iter().enumerate() {
        fibers[c].push(q);
    }
    fibers
}

/// Number of accepted words of each length `0..=n`.
pub fn count_words(dfa: &Dfa, n: usize) -> Vec<u128> {
    let mut current = vec![0u128; dfa.num_states()];
    if dfa.num_states() == 0 {
        return vec![0; n + 1];
    }
    current[dfa.initial()] = 1;
    let mut out = Vec::with_capacity(n + 1);
    for len in 0..=n {
        out.push(current.iter().sum());
        if len == n {
            break;
        }
        let mut next = vec![0u128; dfa.num_states()];
        for (q, &c) in current.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for t in dfa.transitions[q].iter().flatten() {
                next[*t] += c;
            }
        }
        current = next;
    }
    out
}

/// Graphviz text. With `show_subsets`, state labels list their
/// elementary-root ids.
pub fn export_dot(dfa: &Dfa, show_subsets: bool) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  start [shape=point];\n  start -> q0;\n");
    for q in 0..dfa.num_states() {
        let label = match (&dfa.tags[q], show_subsets) {
            (StateTag::Subset(ids), true) => {
                let ids: Vec<String> = ids.iter().map(usize::to_string).collect();
                format!("q{q}\\n{{{}}}", ids.join(","))
            }
            _ => format!("q{q}"),
        };
        let _ = writeln!(out, "  q{q} [label=\"{label}\"];");
    }
    for q in 0..dfa.num_states() {
        for (s, t) in dfa.transitions[q].iter().enumerate() {
            if let Some(t) = t {
                let name = dfa.letters[s].replace('"', "\\\"");
                let _ = writeln!(out, "  q{q} -> q{t} [label=\"{name}\"];");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// The three verdicts of the minimality criterion on one system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub bh_states: usize,
    pub min_states: usize,
    pub superfluous: usize,
    /// The automaton is minimal.
    pub verdict_bh: bool,
    /// No excluded subgraph.
    pub verdict_graph: bool,
    /// Every elementary root has spherical support.
    pub verdict_roots: bool,
    pub consistent: bool,
    /// An excluded subgraph, when one exists.
    pub witness: Option<ExclusionWitness>,
}

impl MinimalityReport {
    pub fn from_automata(sys: &CoxeterSystem, set: &ElementarySet, bh: &Dfa, min: &Dfa) -> MinimalityReport {
        let witness = excluded_subgraph_witness(sys.graph());
        let verdict_bh = bh.num_states() == min.num_states();
        let verdict_graph = witness.is_none();
        let verdict_roots = sph_supported(sys, set);
        MinimalityReport {
            bh_states: bh.num_states(),
            min_states: min.num_states(),
            superfluous: bh.num_states() - min.num_states(),
            verdict_bh,
            verdict_graph,
            verdict_roots,
            consistent: verdict_bh == verdict_graph && verdict_graph == verdict_roots,
            witness,
        }
    }
}

pub fn minimality_report_with(sys: &CoxeterSystem, set: &ElementarySet) -> MinimalityReport {
    let bh = build_bh(sys, set);
    let (min, _) = minimize(&bh);
    MinimalityReport::from_automata(sys, set, &bh, &min)
}

pub fn minimality_report(sys: &CoxeterSystem, cap: usize) -> Result<MinimalityReport, RootError> {
    let set = elementary_roots(sys, cap)?;
    Ok(minimality_report_with(sys, &set))
}

/// A pair `(J, t)` with `J` spherical, `J ∪ {t}` not spherical and
/// `w_J(α_t)` elementary. Its existence forces a superfluous state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyLemmaWitness {
    pub subset: GenSet,
    pub generator: usize,
    /// `w_J(α_t)` in the simple-root basis.
    pub root: Vec<Scalar>,
    /// Id of the root in the elementary set.
    pub root_index: usize,
    /// `|W_J|`.
    pub order: usize,
}

/// Checks one pair `(J, t)`; `None` if any condition fails.
pub fn check_key_lemma(
    sys: &CoxeterSystem,
    set: &ElementarySet,
    j: GenSet,
    t: usize,
    guard: usize,
) -> Result<Option<KeyLemmaWitness>, OracleError> {
    if j.contains(t) || !sys.is_spherical(j) || sys.is_spherical(j.with(t)) {
        return Ok(None);
    }
    let parabolic = Ball::parabolic(sys, j, guard)?;
    Ok(witness_from(sys, set, &parabolic, j, t))
}

fn witness_from(
    sys: &CoxeterSystem,
    set: &ElementarySet,
    parabolic: &Ball,
    j: GenSet,
    t: usize,
) -> Option<KeyLemmaWitness> {
    let longest = parabolic.longest();
    let root: Vec<Scalar> = (0..sys.rank()).map(|i| longest.matrix().get(i, t).clone()).collect();
    set.index_of(&root).map(|root_index| KeyLemmaWitness {
        subset: j,
        generator: t,
        root,
        root_index,
        order: parabolic.len(),
    })
}

/// First witness with `J` by increasing size (then mask) and `t` by index.
/// Absence certifies nothing.
pub fn key_lemma_witness(
    sys: &CoxeterSystem,
    set: &ElementarySet,
    guard: usize,
) -> Result<Option<KeyLemmaWitness>, OracleError> {
    let n = sys.rank();
    for j in GenSet::all_by_size(n) {
        if j.len() == n || !sys.is_spherical(j) {
            continue;
        }
        let candidates: Vec<usize> = (0..n)
            .filter(|&t| !j.contains(t) && !sys.is_spherical(j.with(t)))
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let parabolic = Ball::parabolic(sys, j, guard)?;
        for t in candidates {
            if let Some(w) = witness_from(sys, set, &parabolic, j, t) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

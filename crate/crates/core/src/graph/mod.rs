//! Coxeter graphs, their bilinear form and the spherical-subset test.

mod catalog;
mod exclusion;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::label::Label;
use crate::scalar::{Field, Scalar, ScalarError};

pub use catalog::{named_graph, CATALOG_HELP};
pub use exclusion::{
    excluded_subgraph_witness, excluded_subgraph_witness_with, ExcludedFamily, ExclusionWitness, SubgraphMode,
    WitnessEdge,
};
pub use parse::parse_graph;

/// Generators are stored in a `u64` bit mask.
pub const MAX_RANK: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("rank must be between 1 and {MAX_RANK}, got {0}")]
    InvalidRank(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("label {label} between {i} and {j} is invalid")]
    InvalidLabel { i: usize, j: usize, label: Label },
    #[error("enumerating rank {0} would exceed the raw search limit")]
    EnumerationTooLarge(usize),
    #[error(transparent)]
    Field(#[from] ScalarError),
}

/// A subset `J ⊆ S`, as a bit mask over generator indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(pub u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn full(rank: usize) -> GenSet {
        if rank >= 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << rank) - 1)
        }
    }

    pub fn singleton(s: usize) -> GenSet {
        GenSet(1 << s)
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn with(self, s: usize) -> GenSet {
        GenSet(self.0 | 1 << s)
    }

    pub fn without(self, s: usize) -> GenSet {
        GenSet(self.0 & !(1 << s))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let s = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(s)
        })
    }

    /// All subsets of `{0, …, rank-1}` in order of increasing size, then
    /// increasing mask.
    pub fn all_by_size(rank: usize) -> Vec<GenSet> {
        assert!(rank < 32, "subset enumeration limited to rank < 32");
        let mut all: Vec<GenSet> = (0..1u64 << rank).map(GenSet).collect();
        all.sort_by_key(|j| (j.len(), j.0));
        all
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(GenSet::EMPTY, GenSet::with)
    }
}

impl Serialize for GenSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for GenSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = v.iter().find(|&&s| s >= MAX_RANK) {
            return Err(serde::de::Error::custom(format!("generator {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

/// Rank, generator names and the symmetric label matrix `m(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    names: Vec<String>,
    labels: Vec<Label>,
}

impl CoxeterGraph {
    /// `rank` pairwise commuting generators named `s1, …, sn`.
    pub fn new(rank: usize) -> Result<CoxeterGraph, GraphError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(GraphError::InvalidRank(rank));
        }
        let mut labels = vec![Label::COMMUTE; rank * rank];
        for i in 0..rank {
            labels[i * rank + i] = Label::Finite(1);
        }
        Ok(CoxeterGraph {
            names: (1..=rank).map(|i| format!("s{i}")).collect(),
            labels,
        })
    }

    /// Builds a graph from 0-based edges.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, Label)]) -> Result<CoxeterGraph, GraphError> {
        let mut g = CoxeterGraph::new(rank)?;
        for &(i, j, m) in edges {
            g.set_label(i, j, m)?;
        }
        Ok(g)
    }

    /// A path whose consecutive bonds carry the given finite labels.
    pub fn path(labels: &[u32]) -> CoxeterGraph {
        let edges: Vec<_> = labels
            .iter()
            .enumerate()
            .map(|(i, &m)| (i, i + 1, Label::Finite(m)))
            .collect();
        CoxeterGraph::from_edges(labels.len() + 1, &edges).expect("valid path labels")
    }

    pub fn set_label(&mut self, i: usize, j: usize, label: Label) -> Result<(), GraphError> {
        let n = self.rank();
        if i >= n {
            return Err(GraphError::VertexOutOfRange(i));
        }
        if j >= n {
            return Err(GraphError::VertexOutOfRange(j));
        }
        if i == j || matches!(label, Label::Finite(m) if m < 2) {
            return Err(GraphError::InvalidLabel { i, j, label });
        }
        self.labels[i * n + j] = label;
        self.labels[j * n + i] = label;
        Ok(())
    }

    pub fn with_names<I: IntoIterator<Item = String>>(mut self, names: I) -> CoxeterGraph {
        let names: Vec<String> = names.into_iter().collect();
        assert_eq!(names.len(), self.rank(), "one name per generator");
        self.names = names;
        self
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.rank() + j]
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.label(i, j).is_edge()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, Label)> + '_ {
        (0..self.rank())
            .filter(move |&j| self.is_edge(i, j))
            .map(move |j| (j, self.label(i, j)))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Edges `(i, j, m)` with `i < j` and `m ≥ 3`.
    pub fn edges(&self) -> Vec<(usize, usize, Label)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.is_edge(i, j) {
                    out.push((i, j, self.label(i, j)));
                }
            }
        }
        out
    }

    /// Finite labels `≥ 3` occurring on edges.
    pub fn finite_labels(&self) -> BTreeSet<u32> {
        self.edges().into_iter().filter_map(|(_, _, m)| m.finite()).collect()
    }

    pub fn all(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(self.all())
    }

    /// Whether the subgraph induced on `j` is connected. The empty set is
    /// not.
    pub fn is_connected_on(&self, j: GenSet) -> bool {
        let Some(start) = j.iter().next() else {
            return false;
        };
        let mut seen = GenSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (w, _) in self.neighbors(v) {
                if j.contains(w) && !seen.contains(w) {
                    seen = seen.with(w);
                    stack.push(w);
                }
            }
        }
        seen == j
    }

    /// Whether the subgraph induced on `j` has a cycle or an `∞` bond.
    pub fn has_circuit_or_infinite_bond(&self, j: GenSet) -> bool {
        let mut edges = 0;
        for a in j.iter() {
            for b in j.iter().filter(|&b| b > a) {
                if self.is_edge(a, b) {
                    if self.label(a, b).is_infinite() {
                        return true;
                    }
                    edges += 1;
                }
            }
        }
        edges + self.components_on(j) > j.len()
    }

    fn components_on(&self, j: GenSet) -> usize {
        let mut left = j;
        let mut count = 0;
        while let Some(start) = left.iter().next() {
            count += 1;
            let mut stack = vec![start];
            left = left.without(start);
            while let Some(v) = stack.pop() {
                for (w, _) in self.neighbors(v) {
                    if left.contains(w) {
                        left = left.without(w);
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// The subgraph induced on `j`, generators renumbered in increasing order.
    pub fn restrict(&self, j: GenSet) -> CoxeterGraph {
        let verts: Vec<usize> = j.iter().collect();
        let mut g = CoxeterGraph::new(verts.len()).expect("non-empty subset");
        for (a, &i) in verts.iter().enumerate() {
            for (b, &k) in verts.iter().enumerate().skip(a + 1) {
                let m = self.label(i, k);
                if m != Label::COMMUTE {
                    g.set_label(a, b, m).expect("labels copied from a valid graph");
                }
            }
        }
        g.with_names(verts.iter().map(|&i| self.names[i].clone()))
    }

    /// Renders the graph in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\n", self.rank());
        for (i, j, m) in self.edges() {
            out.push_str(&format!("edge {} {} {}\n", i + 1, j + 1, m));
        }
        out
    }

    pub fn format_set(&self, j: GenSet) -> String {
        let names: Vec<&str> = j.iter().map(|s| self.name(s)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}", self.rank())?;
        for (i, j, m) in self.edges() {
            write!(f, "; edge {} {} {}", i + 1, j + 1, m)?;
        }
        Ok(())
    }
}

/// `B[s][t] = -cos(π/m(s,t))`, with `1` on the diagonal.
pub fn gram_matrix(graph: &CoxeterGraph, field: &Field) -> Result<Vec<Vec<Scalar>>, GraphError> {
    let n = graph.rank();
    let mut rows = Vec::with_capacity(n);
    for s in 0..n {
        let mut row = Vec::with_capacity(n);
        for t in 0..n {
            row.push(if s == t {
                field.one()
            } else {
                field.cos_embed(graph.label(s, t))?
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

/// A Coxeter graph together with its field and Gram matrix; the context for
/// every root and group computation.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    graph: CoxeterGraph,
    field: Arc<Field>,
    gram: Vec<Vec<Scalar>>,
}

impl CoxeterSystem {
    pub fn new(graph: CoxeterGraph) -> Result<CoxeterSystem, GraphError> {
        let field = Arc::new(Field::for_labels(graph.finite_labels())?);
        CoxeterSystem::with_field(graph, field)
    }

    /// Uses a shared field, which must contain `cos(π/m)` for every label.
    pub fn with_field(graph: CoxeterGraph, field: Arc<Field>) -> Result<CoxeterSystem, GraphError> {
        let gram = gram_matrix(&graph, &field)?;
        Ok(CoxeterSystem { graph, field, gram })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shared_field(&self) -> Arc<Field> {
        Arc::clone(&self.field)
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn gram(&self, s: usize, t: usize) -> &Scalar {
        &self.gram[s][t]
    }

    pub fn gram_matrix(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    /// Whether `W_J` is finite: the Gram matrix restricted to `J` is positive
    /// definite. Decided by the signs of the leading principal minors, which
    /// are the pivots of fraction-free (Bareiss) elimination.
    pub fn is_spherical(&self, j: GenSet) -> bool {
        let verts: Vec<usize> = j.iter().collect();
        for (a, &s) in verts.iter().enumerate() {
            for &t in &verts[a + 1..] {
                if self.graph.label(s, t).is_infinite() {
                    return false;
                }
            }
        }
        let mut m: Vec<Vec<Scalar>> = verts
            .iter()
            .map(|&s| verts.iter().map(|&t| self.gram[s][t].clone()).collect())
            .collect();
        leading_minors_positive(&self.field, &mut m)
    }

    /// Sphericity of every subset, indexed by mask.
    pub fn spherical_table(&self) -> Vec<bool> {
        let n = self.rank();
        assert!(n < 32, "spherical table limited to rank < 32");
        let mut table = vec![false; 1 << n];
        for mask in 0..1u64 << n {
            let j = GenSet(mask);
            // monotone: a non-spherical subset makes every superset non-spherical
            let inherited = j.iter().any(|s| !table[j.without(s).0 as usize]);
            table[mask as usize] = !inherited && self.is_spherical(j);
        }
        table
    }
}

/// Sylvester's criterion with Bareiss elimination; `m` is overwritten.
fn leading_minors_positive(field: &Field, m: &mut [Vec<Scalar>]) -> bool {
    let n = m.len();
    let mut prev = field.one();
    for k in 0..n {
        // m[k][k] is now the leading principal minor of order k + 1.
        if field.sign(&m[k][k]) != std::cmp::Ordering::Greater {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &field.mul(&m[k][k], &m[i][j]) - &field.mul(&m[i][k], &m[k][j]);
                m[i][j] = field.div(&num, &prev).expect("previous pivot is positive");
            }
        }
        prev = m[k][k].clone();
    }
    true
}

//! Connected Coxeter graphs up to isomorphism, by brute-force canonical form.

use itertools::Itertools;

use crate::graph::{CoxeterGraph, GraphError};
use crate::label::Label;

/// Refuse enumerations with more raw label vectors than this.
pub const MAX_RAW_VECTORS: u64 = 20_000_000;

/// Labels on the pairs `(0,1), (0,2), …, (n-2,n-1)`.
fn pair_labels(g: &CoxeterGraph, perm: &[usize]) -> Vec<Label> {
    let n = g.rank();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(g.label(perm[i], perm[j]));
        }
    }
    out
}

/// Lexicographically least pair-label vector over all vertex orderings.
pub fn canonical_form(g: &CoxeterGraph) -> Vec<Label> {
    (0..g.rank())
        .permutations(g.rank())
        .map(|p| pair_labels(g, &p))
        .min()
        .unwrap_or_default()
}

/// The graph relabeled into canonical vertex order.
pub fn canonical_graph(g: &CoxeterGraph) -> CoxeterGraph {
    from_pair_labels(g.rank(), &canonical_form(g))
}

fn from_pair_labels(n: usize, labels: &[Label]) -> CoxeterGraph {
    let mut g = CoxeterGraph::new(n).expect("corpus ranks are small");
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            g.set_label(i, j, labels[k]).expect("valid label");
            k += 1;
        }
    }
    g
}

/// All connected graphs of rank `1..=max_rank` whose edge labels lie in
/// `labels`, one per isomorphism class, sorted by rank then canonical form.
pub fn enumerate_connected(max_rank: usize, labels: &[Label]) -> Result<Vec<CoxeterGraph>, GraphError> {
    let mut choices: Vec<Label> = labels.iter().copied().filter(|l| l.is_edge()).collect();
    choices.sort();
    choices.dedup();
    choices.insert(0, Label::COMMUTE);
    let mut out = Vec::new();
    for n in 1..=max_rank {
        if n == 1 {
            out.push(CoxeterGraph::new(1)?);
            continue;
        }
        let pairs = n * (n - 1) / 2;
        let raw = (choices.len() as u64).checked_pow(pairs as u32);
        if raw.is_none_or(|r| r > MAX_RAW_VECTORS) {
            return Err(GraphError::EnumerationTooLarge(n));
        }
        let mut found = Vec::new();
        for vector in (0..pairs).map(|_| choices.iter().copied()).multi_cartesian_product() {
            let g = from_pair_labels(n, &vector);
            if g.is_connected() && canonical_form(&g) == vector {
                found.push((vector, g));
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(found.into_iter().map(|(_, g)| g));
    }
    Ok(out)
}

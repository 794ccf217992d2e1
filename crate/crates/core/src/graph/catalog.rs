//! Standard diagrams in Bourbaki numbering. Finite types use generators
//! `s1..sn`; affine types put the extra node `s0` at index 0.

use super::{CoxeterGraph, GraphError};
use crate::label::Label;

pub const CATALOG_HELP: &str = "An, Bn, Cn, Dn, E6, E7, E8, F4, G2, H3, H4, I2(m), \
A~n, B~n, C~n, D~n, E~6, E~7, E~8, F~4, G~2";

const P: Label = Label::PLAIN;
const FOUR: Label = Label::Finite(4);

pub fn named_graph(name: &str) -> Result<CoxeterGraph, GraphError> {
    let unknown = || GraphError::UnknownName(name.to_string());
    let trimmed = name.trim();
    if let Some(inner) = trimmed.strip_prefix("I2(").and_then(|rest| rest.strip_suffix(')')) {
        let m: Label = inner.parse().map_err(|_| unknown())?;
        if matches!(m, Label::Finite(k) if k < 2) {
            return Err(unknown());
        }
        let mut g = CoxeterGraph::new(2)?;
        if m != Label::COMMUTE {
            g.set_label(0, 1, m)?;
        }
        return Ok(g);
    }
    let (family, affine, rank_str) = match trimmed.split_once('~') {
        Some((fam, r)) => (fam, true, r),
        None => {
            let split = trimmed.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
            (&trimmed[..split], false, &trimmed[split..])
        }
    };
    let n: usize = rank_str.parse().map_err(|_| unknown())?;
    let edges = if affine {
        affine_edges(family, n)
    } else {
        finite_edges(family, n)
    }
    .ok_or_else(unknown)?;
    let rank = if affine { n + 1 } else { n };
    let g = CoxeterGraph::from_edges(rank, &edges)?;
    let first = if affine { 0 } else { 1 };
    Ok(g.with_names((first..first + rank).map(|i| format!("s{i}"))))
}

fn path(first: usize, last: usize) -> Vec<(usize, usize, Label)> {
    (first..last).map(|i| (i, i + 1, P)).collect()
}

/// Edges of the finite diagram with Bourbaki node `k` at index `k - 1`.
fn finite_edges(family: &str, n: usize) -> Option<Vec<(usize, usize, Label)>> {
    let edges = match (family, n) {
        ("A", 1..) => path(0, n - 1),
        ("B" | "C", 2..) => {
            let mut e = path(0, n - 2);
            e.push((n - 2, n - 1, FOUR));
            e
        }
        ("D", 4..) => {
            let mut e = path(0, n - 2);
            e.push((n - 3, n - 1, P));
            e
        }
        ("E", 6..=8) => {
            let mut e = vec![(0, 2, P), (1, 3, P)];
            e.extend(path(2, n - 1));
            e
        }
        ("F", 4) => vec![(0, 1, P), (1, 2, FOUR), (2, 3, P)],
        ("G", 2) => vec![(0, 1, Label::Finite(6))],
        ("H", 3 | 4) => {
            let mut e = vec![(0, 1, Label::Finite(5))];
            e.extend(path(1, n - 1));
            e
        }
        _ => return None,
    };
    Some(edges)
}

/// Edges of the affine diagram: index 0 is `s0`, index `k` is Bourbaki node
/// `k` of the underlying finite type.
fn affine_edges(family: &str, n: usize) -> Option<Vec<(usize, usize, Label)>> {
    let shift = |e: Vec<(usize, usize, Label)>| -> Vec<(usize, usize, Label)> {
        e.into_iter().map(|(i, j, m)| (i + 1, j + 1, m)).collect()
    };
    let (finite, extra): (&str, Vec<(usize, usize, Label)>) = match (family, n) {
        ("A", 1) => return Some(vec![(0, 1, Label::Infinite)]),
        ("A", 2..) => {
            let mut e = shift(path(0, n - 1));
            e.push((0, 1, P));
            e.push((0, n, P));
            return Some(e);
        }
        ("B", 3..) => ("B", vec![(0, 2, P)]),
        ("C", 2..) => ("C", vec![(0, 1, FOUR)]),
        ("D", 4..) => ("D", vec![(0, 2, P)]),
        ("E", 6) => ("E", vec![(0, 2, P)]),
        ("E", 7) => ("E", vec![(0, 1, P)]),
        ("E", 8) => ("E", vec![(0, 8, P)]),
        ("F", 4) => ("F", vec![(0, 1, P)]),
        ("G", 2) => ("G", vec![(0, 2, P)]),
        _ => return None,
    };
    let mut e = shift(finite_edges(finite, n)?);
    e.extend(extra);
    Some(e)
}

//! Search for subgraphs from the excluded family: the affine diagrams other
//! than `Ã_n`, and the hyperbolic trees `X₃(a,b)`, `X₄(c)`, `X₅(d)`, `Y₄`,
//! `Z₄`, `Z₅`. Every member is a tree with finite labels, so the search is a
//! labeled tree embedding by backtracking.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{named_graph, CoxeterGraph};
use crate::label::Label;

/// How a pattern must sit inside the host graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgraphMode {
    /// Pattern vertices span exactly the pattern edges in the host: the
    /// standard parabolic subsystem on those vertices has the pattern as its
    /// Coxeter graph.
    #[default]
    Induced,
    /// Pattern edges must be present with equal labels; other host edges
    /// among the pattern vertices are ignored.
    EdgeSubset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExcludedFamily {
    AffineB(usize),
    AffineC(usize),
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    AffineF4,
    AffineG2,
    X3(u32, u32),
    X4(u32),
    X5(u32),
    Y4,
    Z4,
    Z5,
}

impl fmt::Display for ExcludedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ExcludedFamily::*;
        match self {
            AffineB(n) => write!(f, "B~{n}"),
            AffineC(n) => write!(f, "C~{n}"),
            AffineD(n) => write!(f, "D~{n}"),
            AffineE6 => f.write_str("E~6"),
            AffineE7 => f.write_str("E~7"),
            AffineE8 => f.write_str("E~8"),
            AffineF4 => f.write_str("F~4"),
            AffineG2 => f.write_str("G~2"),
            X3(a, b) => write!(f, "X3({a},{b})"),
            X4(c) => write!(f, "X4({c})"),
            X5(d) => write!(f, "X5({d})"),
            Y4 => f.write_str("Y4"),
            Z4 => f.write_str("Z4"),
            Z5 => f.write_str("Z5"),
        }
    }
}

impl FromStr for ExcludedFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use ExcludedFamily::*;
        let bad = || format!("unknown excluded family `{s}`");
        let args = |body: &str| -> Result<Vec<u32>, String> {
            body.strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(bad)?
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect()
        };
        Ok(match s {
            "E~6" => AffineE6,
            "E~7" => AffineE7,
            "E~8" => AffineE8,
            "F~4" => AffineF4,
            "G~2" => AffineG2,
            "Y4" => Y4,
            "Z4" => Z4,
            "Z5" => Z5,
            _ if s.starts_with("B~") => AffineB(s[2..].parse().map_err(|_| bad())?),
            _ if s.starts_with("C~") => AffineC(s[2..].parse().map_err(|_| bad())?),
            _ if s.starts_with("D~") => AffineD(s[2..].parse().map_err(|_| bad())?),
            _ if s.starts_with("X3") => match args(&s[2..])?.as_slice() {
                [a, b] => X3(*a, *b),
                _ => return Err(bad()),
            },
            _ if s.starts_with("X4") => match args(&s[2..])?.as_slice() {
                [c] => X4(*c),
                _ => return Err(bad()),
            },
            _ if s.starts_with("X5") => match args(&s[2..])?.as_slice() {
                [d] => X5(*d),
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        })
    }
}

impl Serialize for ExcludedFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExcludedFamily {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEdge {
    pub from: usize,
    pub to: usize,
    pub label: Label,
}

/// An embedded copy of an excluded pattern. `vertices[k]` is the host vertex
/// playing pattern vertex `k`; `edges` are host edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionWitness {
    pub family: ExcludedFamily,
    pub vertices: Vec<usize>,
    pub edges: Vec<WitnessEdge>,
}

impl ExclusionWitness {
    /// Re-checks the witness against a host graph edge by edge.
    pub fn is_valid_in(&self, host: &CoxeterGraph, mode: SubgraphMode) -> bool {
        let Some(pattern) = pattern_for(self.family) else {
            return false;
        };
        if pattern.size != self.vertices.len() || pattern.edges.len() != self.edges.len() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        if !self.vertices.iter().all(|&v| v < host.rank() && seen.insert(v)) {
            return false;
        }
        for (&(a, b, m), e) in pattern.edges.iter().zip(&self.edges) {
            let (u, v) = (self.vertices[a], self.vertices[b]);
            if (e.from, e.to, e.label) != (u, v, Label::Finite(m)) || host.label(u, v) != e.label {
                return false;
            }
        }
        if mode == SubgraphMode::Induced {
            for a in 0..pattern.size {
                for b in a + 1..pattern.size {
                    let in_pattern = pattern
                        .edges
                        .iter()
                        .any(|&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a));
                    if !in_pattern && host.is_edge(self.vertices[a], self.vertices[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A labeled tree on vertices `0..size`.
#[derive(Clone, Debug)]
struct Pattern {
    family: ExcludedFamily,
    size: usize,
    edges: Vec<(usize, usize, u32)>,
}

impl Pattern {
    fn from_graph(family: ExcludedFamily, g: &CoxeterGraph) -> Pattern {
        Pattern {
            family,
            size: g.rank(),
            edges: g
                .edges()
                .into_iter()
                .map(|(i, j, m)| (i, j, m.finite().expect("patterns have finite labels")))
                .collect(),
        }
    }

    fn path(family: ExcludedFamily, labels: &[u32]) -> Pattern {
        Pattern::from_graph(family, &CoxeterGraph::path(labels))
    }

    /// Vertices in an order where every vertex after the first has its tree
    /// parent earlier, with the label of the connecting edge.
    fn search_order(&self) -> Vec<(usize, Option<(usize, u32)>)> {
        let mut order = vec![(0, None)];
        let mut placed = vec![false; self.size];
        placed[0] = true;
        let mut k = 0;
        while k < order.len() {
            let v = order[k].0;
            for &(a, b, m) in &self.edges {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !placed[other] {
                    placed[other] = true;
                    order.push((other, Some((v, m))));
                }
            }
            k += 1;
        }
        debug_assert_eq!(order.len(), self.size, "patterns are connected");
        order
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    fn embed(&self, host: &CoxeterGraph, mode: SubgraphMode) -> Option<ExclusionWitness> {
        let order = self.search_order();
        let mut map = vec![usize::MAX; self.size];
        let mut used = vec![false; host.rank()];
        if !self.extend(host, mode, &order, 0, &mut map, &mut used) {
            return None;
        }
        Some(ExclusionWitness {
            family: self.family,
            vertices: map.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b, m)| WitnessEdge {
                    from: map[a],
                    to: map[b],
                    label: Label::Finite(m),
                })
                .collect(),
        })
    }

    fn extend(
        &self,
        host: &CoxeterGraph,
        mode: SubgraphMode,
        order: &[(usize, Option<(usize, u32)>)],
        k: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let (v, parent) = order[k];
        let candidates: Vec<usize> = match parent {
            None => (0..host.rank()).collect(),
            Some((p, m)) => host
                .neighbors(map[p])
                .filter(|&(_, l)| l == Label::Finite(m))
                .map(|(w, _)| w)
                .collect(),
        };
        for c in candidates {
            if used[c] {
                continue;
            }
            if mode == SubgraphMode::Induced {
                let clash = order[..k].iter().any(|&(u, _)| {
                    parent.map(|(p, _)| p) != Some(u) && !self.adjacent(u, v) && host.is_edge(map[u], c)
                });
                if clash {
                    continue;
                }
            }
            map[v] = c;
            used[c] = true;
            if self.extend(host, mode, order, k + 1, map, used) {
                return true;
            }
            used[c] = false;
            map[v] = usize::MAX;
        }
        false
    }
}

fn affine_pattern(family: ExcludedFamily, name: &str) -> Pattern {
    Pattern::from_graph(family, &named_graph(name).expect("catalogued affine type"))
}

/// `1/a + 1/b ≤ 1/2` classifies a two-edge path as an excluded member.
fn classify_two_path(a: u32, b: u32) -> Option<ExcludedFamily> {
    if 2 * (a + b) > a * b {
        return None;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    Some(match (lo, hi) {
        (4, 4) => ExcludedFamily::AffineC(2),
        (3, 6) => ExcludedFamily::AffineG2,
        _ => ExcludedFamily::X3(a, b),
    })
}

fn pattern_for(family: ExcludedFamily) -> Option<Pattern> {
    use ExcludedFamily::*;
    Some(match family {
        AffineB(n) if n >= 3 => affine_pattern(family, &format!("B~{n}")),
        AffineC(n) if n >= 2 => affine_pattern(family, &format!("C~{n}")),
        AffineD(n) if n >= 4 => affine_pattern(family, &format!("D~{n}")),
        AffineE6 => affine_pattern(family, "E~6"),
        AffineE7 => affine_pattern(family, "E~7"),
        AffineE8 => affine_pattern(family, "E~8"),
        AffineF4 => affine_pattern(family, "F~4"),
        AffineG2 => Pattern::path(family, &[3, 6]),
        X3(a, b) if a >= 3 && b >= 3 && classify_two_path(a, b) == Some(X3(a, b)) => Pattern::path(family, &[a, b]),
        X4(c) if c == 4 || c == 5 => Pattern::path(family, &[c, 3, 5]),
        X5(d) if (3..=5).contains(&d) => Pattern::path(family, &[d, 3, 3, 5]),
        Y4 => Pattern::path(family, &[3, 5, 3]),
        Z4 => Pattern {
            family,
            size: 4,
            edges: vec![(0, 1, 5), (1, 2, 3), (1, 3, 3)],
        },
        Z5 => Pattern {
            family,
            size: 5,
            edges: vec![(0, 1, 5), (1, 2, 3), (2, 3, 3), (2, 4, 3)],
        },
        _ => return None,
    })
}

/// Fixed-shape and parametric patterns with exactly `size` vertices, in
/// search order.
fn patterns_of_size(size: usize) -> Vec<Pattern> {
    use ExcludedFamily::*;
    let mut out = Vec::new();
    let n = size - 1;
    let mut push = |f: ExcludedFamily| {
        if let Some(p) = pattern_for(f) {
            if p.size == size {
                out.push(p);
            }
        }
    };
    match size {
        4 => [Y4, Z4, X4(4), X4(5)].into_iter().for_each(&mut push),
        5 => [Z5, X5(3), X5(4), X5(5), AffineF4].into_iter().for_each(&mut push),
        7 => push(AffineE6),
        8 => push(AffineE7),
        9 => push(AffineE8),
        _ => {}
    }
    if n >= 3 {
        push(AffineC(n));
        push(AffineB(n));
    }
    if n >= 4 {
        push(AffineD(n));
    }
    out
}

/// A member of the excluded family embedded in `host` as an induced
/// subgraph, if any.
pub fn excluded_subgraph_witness(host: &CoxeterGraph) -> Option<ExclusionWitness> {
    excluded_subgraph_witness_with(host, SubgraphMode::Induced)
}

pub fn excluded_subgraph_witness_with(host: &CoxeterGraph, mode: SubgraphMode) -> Option<ExclusionWitness> {
    // Two-edge paths cover X₃(a,b), C̃₂ and G̃₂ in one local scan.
    for center in 0..host.rank() {
        let nbrs: Vec<(usize, Label)> = host.neighbors(center).collect();
        for (x, &(u, lu)) in nbrs.iter().enumerate() {
            for &(v, lv) in &nbrs[x + 1..] {
                let (Some(a), Some(b)) = (lu.finite(), lv.finite()) else {
                    continue;
                };
                if mode == SubgraphMode::Induced && host.is_edge(u, v) {
                    continue;
                }
                if let Some(family) = classify_two_path(a, b) {
                    // G̃₂ is stored as the path 3–6, so orient it accordingly.
                    let (u, a, v, b) = if family == ExcludedFamily::AffineG2 && a == 6 {
                        (v, b, u, a)
                    } else {
                        (u, a, v, b)
                    };
                    return Some(ExclusionWitness {
                        family,
                        vertices: vec![u, center, v],
                        edges: vec![
                            WitnessEdge {
                                from: u,
                                to: center,
                                label: Label::Finite(a),
                            },
                            WitnessEdge {
                                from: center,
                                to: v,
                                label: Label::Finite(b),
                            },
                        ],
                    });
                }
            }
        }
    }
    for size in 4..=host.rank() {
        for pattern in patterns_of_size(size) {
            if let Some(w) = pattern.embed(host, mode) {
                return Some(w);
            }
        }
    }
    None
}

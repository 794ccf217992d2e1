//! The line-oriented graph format:
//!
//! ```text
//! # comments run to end of line
//! rank 3
//! edge 1 2 4
//! edge 2 3 inf
//! ```
//!
//! Statements may also be separated by `;`. Vertices are 1-based; pairs not
//! mentioned commute (`m = 2`).

use std::collections::HashSet;

use super::{CoxeterGraph, GraphError, MAX_RANK};
use crate::label::Label;

pub fn parse_graph(text: &str) -> Result<CoxeterGraph, GraphError> {
    let mut graph: Option<CoxeterGraph> = None;
    let mut declared = HashSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let err = |message: String| GraphError::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("");
        for stmt in content.split(';') {
            let tokens: Vec<&str> = stmt.split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                ["rank", n] => {
                    if graph.is_some() {
                        return Err(err("rank declared twice".into()));
                    }
                    let n: usize = n.parse().map_err(|_| err(format!("invalid rank `{n}`")))?;
                    if n == 0 || n > MAX_RANK {
                        return Err(err(format!("rank must be between 1 and {MAX_RANK}, got {n}")));
                    }
                    graph = Some(CoxeterGraph::new(n).expect("rank checked"));
                }
                ["edge", i, j, m] => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| err("edge before rank declaration".into()))?;
                    let vertex = |tok: &str| -> Result<usize, GraphError> {
                        let v: usize = tok.parse().map_err(|_| err(format!("invalid vertex `{tok}`")))?;
                        if v == 0 || v > g.rank() {
                            return Err(err(format!("vertex {v} out of range 1..={}", g.rank())));
                        }
                        Ok(v - 1)
                    };
                    let (a, b) = (vertex(i)?, vertex(j)?);
                    if a == b {
                        return Err(err(format!("self-loop on vertex {}", a + 1)));
                    }
                    let label: Label = m.parse().map_err(err)?;
                    if matches!(label, Label::Finite(k) if k < 2) {
                        return Err(err(format!("label {label} is below 2")));
                    }
                    if !declared.insert((a.min(b), a.max(b))) {
                        return Err(err(format!("duplicate edge {} {}", a + 1, b + 1)));
                    }
                    g.set_label(a, b, label).map_err(|e| err(e.to_string()))?;
                }
                [keyword, ..] if *keyword == "rank" || *keyword == "edge" => {
                    return Err(err(format!("malformed `{keyword}` statement: `{}`", stmt.trim())));
                }
                [other, ..] => return Err(err(format!("unknown token `{other}`"))),
            }
        }
    }
    graph.ok_or(GraphError::Parse {
        line: text.lines().count().max(1),
        message: "missing rank declaration".into(),
    })
}

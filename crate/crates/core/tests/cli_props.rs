mod common;

use std::process::Command;

use itertools::Itertools;

use coxmin::cli::{
    analyze_graph, cmd_automaton, cmd_corpus, parse_labels, AnalysisConfig, GraphInput, EXIT_DISAGREEMENT,
};
use coxmin::graph::CoxeterGraph;
use coxmin::label::Label;

use common::{corpus, corpus_labels};

fn coxmin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coxmin")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn quick_config() -> AnalysisConfig {
    AnalysisConfig {
        oracle_length: 4,
        ..AnalysisConfig::default()
    }
}

#[test]
fn binary_exit_codes() {
    let (code, out, _) = coxmin(&["analyze", "--name", "C~2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["superfluous"], 1);
    assert_eq!(v["verdict_bh"], false);

    let (code, out, _) = coxmin(&["analyze", "--name", "A3", "--text"]);
    assert_eq!(code, 0);
    assert!(!out.is_empty());

    let dir = std::env::temp_dir().join(format!("coxmin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("a1tilde.cox");
    std::fs::write(&file, "rank 2\nedge 1 2 inf\n").unwrap();
    let (code, out, _) = coxmin(&["analyze", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["elementary_roots"], 2);

    let bad = dir.join("bad.cox");
    std::fs::write(&bad, "rank 2\nedge 1 3 4\n").unwrap();
    for args in [
        vec!["analyze", bad.to_str().unwrap()],
        vec!["analyze", "--name", "Q7"],
        vec!["analyze", "--name", "A3", "--cap", "2"],
        vec!["corpus", "--max-rank", "2", "--labels", ""],
        vec!["corpus", "--max-rank", "2", "--labels", "2"],
        vec!["automaton", dir.join("missing.cox").to_str().unwrap()],
    ] {
        let (code, _, err) = coxmin(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(err.starts_with("error: "), "{args:?}: {err}");
    }

    let (code, out, _) = coxmin(&["corpus", "--max-rank", "3", "--jobs", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["disagreements"], 0);

    let dot = dir.join("c2.dot");
    let (code, _, _) = coxmin(&[
        "automaton",
        "--name",
        "C~2",
        "--minimized",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (_, stdout_dot, _) = coxmin(&["automaton", "--name", "C~2", "--minimized"]);
    assert_eq!(std::fs::read_to_string(&dot).unwrap(), stdout_dot);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_two_only_for_disagreement() {
    let g = coxmin::graph::named_graph("C~2").unwrap();
    let mut report = analyze_graph(g, &quick_config(), false).unwrap();
    assert_eq!(report.exit_code(), 0);
    report.minimality.verdict_graph = !report.minimality.verdict_graph;
    report.minimality.consistent = false;
    assert_eq!(report.exit_code(), EXIT_DISAGREEMENT);
}

#[test]
fn json_reports_round_trip() {
    let config = quick_config();
    for g in corpus(3).into_iter().step_by(7) {
        let report = analyze_graph(g, &config, true).unwrap();
        let json = report.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string_pretty(&value).unwrap(), json);
    }
}

#[test]
fn automaton_dot_is_stable_and_shrinks_for_c2_tilde() {
    let config = quick_config();
    let input = GraphInput::Name("C~2".into());
    let bh = cmd_automaton(&input, &config, false).unwrap();
    let min = cmd_automaton(&input, &config, true).unwrap();
    assert_eq!(bh, cmd_automaton(&input, &config, false).unwrap());
    let nodes = |d: &str| d.lines().filter(|l| l.contains(" [label=\"q")).count();
    assert_eq!(nodes(&bh), nodes(&min) + 1);
    let a1 = cmd_automaton(&GraphInput::Name("A1".into()), &config, false).unwrap();
    assert_eq!(nodes(&a1), 2);
}

/// Two graphs are isomorphic when some relabelling of the vertices carries
/// every edge label of one onto the other.
fn isomorphic(a: &CoxeterGraph, b: &CoxeterGraph) -> bool {
    let n = a.rank();
    n == b.rank()
        && (0..n)
            .permutations(n)
            .any(|p| (0..n).all(|i| (i + 1..n).all(|j| a.label(i, j) == b.label(p[i], p[j]))))
}

fn label_profile(g: &CoxeterGraph) -> Vec<String> {
    let n = g.rank();
    let mut profile: Vec<String> = (0..n)
        .map(|i| {
            let mut row: Vec<String> = (0..n).filter(|&j| j != i).map(|j| g.label(i, j).to_string()).collect();
            row.sort();
            row.join(",")
        })
        .collect();
    profile.sort();
    profile
}

#[test]
fn corpus_is_duplicate_free_and_complete() {
    let graphs = corpus(4);
    let groups = graphs.iter().into_group_map_by(|g| (g.rank(), label_profile(g)));
    for group in groups.values() {
        for (a, b) in group.iter().tuple_combinations() {
            assert!(!isomorphic(a, b), "{a} and {b}");
        }
    }
    for g in &graphs {
        assert!(g.is_connected());
        assert!((0..g.rank()).tuple_combinations().all(|(i, j)| {
            let l = g.label(i, j);
            l == Label::Finite(2) || corpus_labels().contains(&l)
        }));
    }

    // every connected labelling of rank <= 3 appears
    let mut choices = corpus_labels();
    choices.push(Label::Finite(2));
    for n in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        for labels in std::iter::repeat_n(choices.iter(), pairs.len()).multi_cartesian_product() {
            let mut g = CoxeterGraph::new(n).unwrap();
            for (&(i, j), &&l) in pairs.iter().zip(&labels) {
                g.set_label(i, j, l).unwrap();
            }
            if g.is_connected() {
                assert_eq!(graphs.iter().filter(|h| isomorphic(&g, h)).count(), 1, "{g}");
            }
        }
    }
}

#[test]
fn corpus_config_errors() {
    assert!(parse_labels("").is_err());
    assert!(parse_labels(" , ").is_err());
    assert!(parse_labels("3,x").is_err());
    let mut config = quick_config();
    config.corpus.labels = vec![];
    assert!(cmd_corpus(&config).is_err());
    config.corpus.labels = parse_labels("3,inf").unwrap();
    config.corpus.max_rank = 0;
    assert!(cmd_corpus(&config).is_err());
}

#[test]
fn rank_two_corpus_is_all_minimal() {
    let mut config = quick_config();
    config.corpus.max_rank = 2;
    config.corpus.labels = corpus_labels();
    let summary = cmd_corpus(&config).unwrap();
    assert_eq!(summary.graphs, 1 + corpus_labels().len());
    assert_eq!(summary.minimal, summary.graphs);
    assert_eq!(summary.exit_code(), 0);
}

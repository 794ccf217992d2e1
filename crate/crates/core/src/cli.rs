//! Orchestration behind the `coxmin` binary: single-graph analysis, the
//! corpus run, and automaton export.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::automata::{build_bh, export_dot, key_lemma_witness, minimize, KeyLemmaWitness, MinimalityReport};
use crate::corpus::{canonical_graph, enumerate_connected};
use crate::graph::{named_graph, parse_graph, CoxeterGraph, CoxeterSystem, GraphError};
use crate::label::Label;
use crate::oracle::{crosscheck_states, CrosscheckReport, OracleError, DEFAULT_BALL_GUARD};
use crate::roots::{elementary_roots, ElementarySet, RootError};

/// Exit status when the three verdicts disagree.
pub const EXIT_DISAGREEMENT: i32 = 2;
/// Exit status for input and resource errors.
pub const EXIT_ERROR: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    pub max_rank: usize,
    /// Edge labels, `∞` included when present.
    pub labels: Vec<Label>,
    pub jobs: Option<usize>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_rank: 3,
            labels: vec![
                Label::Finite(3),
                Label::Finite(4),
                Label::Finite(5),
                Label::Finite(6),
                Label::Infinite,
            ],
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisConfig {
    /// Cap on `|ℰ|`.
    pub cap: usize,
    /// Ball radius for the brute-force cross-check; 0 disables it.
    pub oracle_length: usize,
    /// Bound on `|W_J|` in the witness search.
    pub witness_guard: usize,
    /// Bound on the number of elements in the cross-check ball.
    pub ball_guard: usize,
    pub format: Format,
    pub emit_dot: bool,
    pub corpus: CorpusConfig,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            cap: 100_000,
            oracle_length: 8,
            witness_guard: 1_000_000,
            ball_guard: DEFAULT_BALL_GUARD,
            format: Format::Json,
            emit_dot: false,
            corpus: CorpusConfig::default(),
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.cap == 0 || self.witness_guard == 0 || self.ball_guard == 0 {
            return Err(CliError::Config("bounds must be positive".into()));
        }
        if self.corpus.max_rank == 0 {
            return Err(CliError::Config("maximum rank must be positive".into()));
        }
        if !self.corpus.labels.iter().any(|l| l.is_edge()) {
            return Err(CliError::Config("label set needs at least one label ≥ 3 or inf".into()));
        }
        if self.corpus.jobs == Some(0) {
            return Err(CliError::Config("jobs must be positive".into()));
        }
        Ok(())
    }
}

/// Parses a comma-separated label list such as `3,4,5,6,inf`.
pub fn parse_labels(text: &str) -> Result<Vec<Label>, CliError> {
    let labels = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let l: Label = t.parse().map_err(|e| CliError::Config(format!("label `{t}`: {e}")))?;
            if l.is_edge() {
                Ok(l)
            } else {
                Err(CliError::Config(format!("edge labels must be ≥ 3 or inf, got {l}")))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    if labels.is_empty() {
        return Err(CliError::Config("empty label set".into()));
    }
    Ok(labels)
}

#[derive(Clone, Debug)]
pub enum GraphInput {
    File(PathBuf),
    Name(String),
    Text(String),
}

pub fn load_graph(input: &GraphInput) -> Result<CoxeterGraph, CliError> {
    match input {
        GraphInput::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(parse_graph(&text)?)
        }
        GraphInput::Name(name) => Ok(named_graph(name)?),
        GraphInput::Text(text) => Ok(parse_graph(text)?),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportCount {
    pub support: Vec<String>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum KeyLemmaOutcome {
    Found(KeyLemmaWitness),
    /// No pair qualifies. This is not a proof of minimality.
    NoCertificate,
    Skipped {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum OracleOutcome {
    Checked(CrosscheckReport),
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub graph: String,
    pub rank: usize,
    pub generators: Vec<String>,
    pub field_conductor: u64,
    pub field_degree: usize,
    pub elementary_roots: usize,
    pub support_counts: Vec<SupportCount>,
    #[serde(flatten)]
    pub minimality: MinimalityReport,
    pub key_lemma: KeyLemmaOutcome,
    pub oracle: OracleOutcome,
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        if self.minimality.consistent {
            0
        } else {
            EXIT_DISAGREEMENT
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let m = &self.minimality;
        let mut out = String::new();
        let _ = writeln!(out, "graph: {}", self.graph);
        let _ = writeln!(
            out,
            "field: Q(2cos(pi/{})), degree {}",
            self.field_conductor, self.field_degree
        );
        let _ = writeln!(out, "elementary roots: {}", self.elementary_roots);
        for s in &self.support_counts {
            let _ = writeln!(out, "  support {{{}}}: {}", s.support.join(","), s.count);
        }
        let _ = writeln!(
            out,
            "automaton states: {} (minimal {}, superfluous {})",
            m.bh_states, m.min_states, m.superfluous
        );
        let _ = writeln!(out, "minimal automaton: {}", m.verdict_bh);
        let _ = writeln!(out, "no excluded subgraph: {}", m.verdict_graph);
        let _ = writeln!(out, "spherical supports: {}", m.verdict_roots);
        let _ = writeln!(out, "consistent: {}", m.consistent);
        if let Some(w) = &m.witness {
            let names: Vec<&str> = w.vertices.iter().map(|&v| self.generators[v].as_str()).collect();
            let _ = writeln!(out, "excluded subgraph: {} on {{{}}}", w.family, names.join(","));
        }
        match &self.key_lemma {
            KeyLemmaOutcome::Found(w) => {
                let j: Vec<&str> = w.subset.iter().map(|s| self.generators[s].as_str()).collect();
                let root: Vec<String> = w.root.iter().map(|c| format!("({c})")).collect();
                let _ = writeln!(
                    out,
                    "non-minimality certificate: J = {{{}}}, t = {}, |W_J| = {}, w_J(alpha_t) = [{}]",
                    j.join(","),
                    self.generators[w.generator],
                    w.order,
                    root.join(", ")
                );
            }
            KeyLemmaOutcome::NoCertificate => {
                let _ = writeln!(out, "non-minimality certificate: none");
            }
            KeyLemmaOutcome::Skipped { reason } => {
                let _ = writeln!(out, "non-minimality certificate: skipped ({reason})");
            }
        }
        match &self.oracle {
            OracleOutcome::Checked(r) => {
                let _ = writeln!(
                    out,
                    "oracle (length {}): {} elements, {} state mismatches, {} class mismatches, {} classes unseparated on the ball",
                    r.radius,
                    r.elements_checked,
                    r.state_mismatches.len(),
                    r.class_mismatches.len(),
                    r.unseparated_classes
                );
            }
            OracleOutcome::Skipped { reason } => {
                let _ = writeln!(out, "oracle: skipped ({reason})");
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json() + "\n",
            Format::Text => self.to_text(),
        }
    }
}

fn support_counts(graph: &CoxeterGraph, set: &ElementarySet) -> Vec<SupportCount> {
    set.support_counts()
        .into_iter()
        .map(|(j, count)| SupportCount {
            support: j.iter().map(|s| graph.name(s).to_string()).collect(),
            count,
        })
        .collect()
}

/// Full analysis of one graph. `with_oracle` runs the brute-force
/// cross-check at `config.oracle_length`.
pub fn analyze_graph(
    graph: CoxeterGraph,
    config: &AnalysisConfig,
    with_oracle: bool,
) -> Result<AnalysisReport, CliError> {
    let sys = CoxeterSystem::new(graph)?;
    let set = elementary_roots(&sys, config.cap)?;
    let bh = build_bh(&sys, &set);
    let (min, _) = minimize(&bh);
    let minimality = MinimalityReport::from_automata(&sys, &set, &bh, &min);
    let key_lemma = match key_lemma_witness(&sys, &set, config.witness_guard) {
        Ok(Some(w)) => KeyLemmaOutcome::Found(w),
        Ok(None) => KeyLemmaOutcome::NoCertificate,
        Err(e) => KeyLemmaOutcome::Skipped { reason: e.to_string() },
    };
    let oracle = if !with_oracle || config.oracle_length == 0 {
        OracleOutcome::Skipped {
            reason: "disabled".into(),
        }
    } else {
        match crosscheck_states(&sys, &bh, &set, config.oracle_length, config.ball_guard) {
            Ok(r) => OracleOutcome::Checked(r),
            Err(e) => OracleOutcome::Skipped { reason: e.to_string() },
        }
    };
    let graph = sys.graph();
    Ok(AnalysisReport {
        graph: graph.to_string(),
        rank: graph.rank(),
        generators: graph.names().to_vec(),
        field_conductor: sys.field().conductor(),
        field_degree: sys.field().degree(),
        elementary_roots: set.len(),
        support_counts: support_counts(graph, &set),
        minimality,
        key_lemma,
        oracle,
    })
}

/// Returns the rendered report and the exit status.
pub fn cmd_analyze(input: &GraphInput, config: &AnalysisConfig) -> Result<(String, i32), CliError> {
    config.validate()?;
    let report = analyze_graph(load_graph(input)?, config, true)?;
    Ok((report.render(config.format), report.exit_code()))
}

/// DOT text of the automaton, minimized on request.
pub fn cmd_automaton(input: &GraphInput, config: &AnalysisConfig, minimized: bool) -> Result<String, CliError> {
    config.validate()?;
    let sys = CoxeterSystem::new(load_graph(input)?)?;
    let set = elementary_roots(&sys, config.cap)?;
    let bh = build_bh(&sys, &set);
    Ok(if minimized {
        export_dot(&minimize(&bh).0, false)
    } else {
        export_dot(&bh, true)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusRow {
    pub graph: String,
    pub rank: usize,
    pub elementary_roots: usize,
    pub bh_states: usize,
    pub min_states: usize,
    pub superfluous: usize,
    pub verdict_bh: bool,
    pub verdict_graph: bool,
    pub verdict_roots: bool,
    pub consistent: bool,
    pub excluded_family: Option<String>,
    pub certificate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSkip {
    pub graph: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub max_rank: usize,
    pub labels: Vec<Label>,
    pub graphs: usize,
    pub analyzed: usize,
    pub minimal: usize,
    pub disagreements: usize,
    /// Graphs with a certificate of non-minimality whose automaton is minimal.
    pub certificate_violations: usize,
    pub superfluous_distribution: BTreeMap<usize, usize>,
    pub skipped: Vec<CorpusSkip>,
    pub table: Vec<CorpusRow>,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        if self.disagreements == 0 {
            0
        } else {
            EXIT_DISAGREEMENT
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let labels: Vec<String> = self.labels.iter().map(Label::to_string).collect();
        let _ = writeln!(
            out,
            "corpus: rank <= {}, labels {{{}}}",
            self.max_rank,
            labels.join(",")
        );
        let _ = writeln!(
            out,
            "graphs: {} ({} analyzed, {} skipped)",
            self.graphs,
            self.analyzed,
            self.skipped.len()
        );
        let _ = writeln!(out, "minimal: {}", self.minimal);
        let _ = writeln!(out, "disagreements: {}", self.disagreements);
        let _ = writeln!(out, "certificate violations: {}", self.certificate_violations);
        for (k, n) in &self.superfluous_distribution {
            let _ = writeln!(out, "  superfluous {k}: {n} graphs");
        }
        for s in &self.skipped {
            let _ = writeln!(out, "  skipped {}: {}", s.graph, s.reason);
        }
        for r in self.table.iter().filter(|r| !r.consistent) {
            let _ = writeln!(out, "  DISAGREEMENT {}", r.graph);
        }
        out
    }
}

fn corpus_row(graph: CoxeterGraph, config: &AnalysisConfig) -> Result<CorpusRow, CorpusSkip> {
    let text = graph.to_string();
    let skip = |e: CliError| CorpusSkip {
        graph: text.clone(),
        reason: e.to_string(),
    };
    let report = analyze_graph(graph, config, false).map_err(skip)?;
    let m = report.minimality;
    Ok(CorpusRow {
        graph: text.clone(),
        rank: report.rank,
        elementary_roots: report.elementary_roots,
        bh_states: m.bh_states,
        min_states: m.min_states,
        superfluous: m.superfluous,
        verdict_bh: m.verdict_bh,
        verdict_graph: m.verdict_graph,
        verdict_roots: m.verdict_roots,
        consistent: m.consistent,
        excluded_family: m.witness.map(|w| w.family.to_string()),
        certificate: matches!(report.key_lemma, KeyLemmaOutcome::Found(_)),
    })
}

/// Runs the analysis over every connected graph in the configured corpus.
pub fn cmd_corpus(config: &AnalysisConfig) -> Result<CorpusSummary, CliError> {
    config.validate()?;
    let graphs: Vec<CoxeterGraph> = enumerate_connected(config.corpus.max_rank, &config.corpus.labels)?
        .iter()
        .map(canonical_graph)
        .collect();
    let run =
        || -> Vec<Result<CorpusRow, CorpusSkip>> { graphs.par_iter().map(|g| corpus_row(g.clone(), config)).collect() };
    let results = match config.corpus.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut summary = CorpusSummary {
        max_rank: config.corpus.max_rank,
        labels: config.corpus.labels.clone(),
        graphs: graphs.len(),
        analyzed: 0,
        minimal: 0,
        disagreements: 0,
        certificate_violations: 0,
        superfluous_distribution: BTreeMap::new(),
        skipped: Vec::new(),
        table: Vec::new(),
    };
    for r in results {
        match r {
            Ok(row) => {
                summary.analyzed += 1;
                summary.minimal += usize::from(row.verdict_bh);
                summary.disagreements += usize::from(!row.consistent);
                summary.certificate_violations += usize::from(row.certificate && row.verdict_bh);
                *summary.superfluous_distribution.entry(row.superfluous).or_insert(0) += 1;
                summary.table.push(row);
            }
            Err(skip) => summary.skipped.push(skip),
        }
    }
    Ok(summary)
}

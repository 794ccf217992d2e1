//! Elementary roots, Brink–Howlett word acceptors and their minimality for
//! finitely generated Coxeter systems.
//!
//! Everything is computed in exact arithmetic over `Q(2cos(π/N))`, where `N`
//! is the least common multiple of the finite edge labels of the graph under
//! study. The crate provides:
//!
//! * [`scalar`]: the real cyclotomic field and exact sign determination;
//! * [`graph`]: Coxeter graphs, the text format, a catalog of standard
//!   diagrams, the spherical-subset test and the excluded-subgraph search;
//! * [`roots`]: the reflection representation and the elementary roots;
//! * [`automata`]: the Brink–Howlett automaton, its minimization and the
//!   three-way minimality report;
//! * [`oracle`]: brute-force group enumeration used to validate the above;
//! * [`cli`] and [`corpus`]: the analyses behind the `coxmin` binary.

pub mod automata;
pub mod cli;
pub mod corpus;
pub mod graph;
pub mod label;
pub mod oracle;
pub mod roots;
pub mod scalar;

pub use automata::{Dfa, KeyLemmaWitness, MinimalityReport};
pub use graph::{CoxeterGraph, CoxeterSystem, ExclusionWitness, GenSet};
pub use label::Label;
pub use roots::{ElementarySet, Root};
pub use scalar::{Field, Scalar};

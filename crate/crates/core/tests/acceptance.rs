//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use coxmin::automata::{build_bh, count_words, key_lemma_witness, minimize, MinimalityReport, DEFAULT_WITNESS_GUARD};
use coxmin::graph::{excluded_subgraph_witness_with, CoxeterGraph, CoxeterSystem, GenSet, SubgraphMode};
use coxmin::oracle::{
    affine_elementary_formula, affine_formula_supports, crosscheck_states_on, descent_set, descent_set_by_length,
    positive_roots, AffineRoot, AffineRootDatum, Ball, DEFAULT_BALL_GUARD,
};
use coxmin::roots::{elementary_roots, ElementarySet, DEFAULT_ELEMENTARY_CAP};
use coxmin::scalar::Field;

use common::{corpus, interval_sign, near_zero_scalar, random_scalar, system, two_cos_enclosure};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn analyzed(g: &CoxeterGraph) -> Result<(CoxeterSystem, ElementarySet), String> {
    let sys = CoxeterSystem::new(g.clone()).map_err(|e| e.to_string())?;
    let set = elementary_roots(&sys, DEFAULT_ELEMENTARY_CAP).map_err(|e| e.to_string())?;
    Ok((sys, set))
}

fn report(sys: &CoxeterSystem, set: &ElementarySet) -> MinimalityReport {
    let bh = build_bh(sys, set);
    let (min, _) = minimize(&bh);
    MinimalityReport::from_automata(sys, set, &bh, &min)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let graphs = corpus(4);
    let results: Vec<Result<MinimalityReport, String>> = graphs
        .par_iter()
        .map(|g| analyzed(g).map(|(sys, set)| report(&sys, &set)))
        .collect();
    let mut skipped = Vec::new();
    let mut disagreements = Vec::new();
    let mut minimal = 0;
    let mut edge_subset_disagreements = 0;
    for (g, r) in graphs.iter().zip(&results) {
        if let Ok(r) = r {
            let free = excluded_subgraph_witness_with(g, SubgraphMode::EdgeSubset).is_none();
            edge_subset_disagreements += usize::from(free != r.verdict_bh);
        }
        match r {
            Ok(r) if !r.consistent => disagreements.push(g.to_string()),
            Ok(r) => minimal += usize::from(r.verdict_bh),
            Err(e) => skipped.push(format!("{g}: {e}")),
        }
    }
    check(disagreements.is_empty(), || {
        format!("{} disagreements, first: {}", disagreements.len(), disagreements[0])
    })?;
    Ok(format!(
        "{} graphs, {} minimal, 0 disagreements (induced subgraphs; edge-subset reading: {}), {} skipped{} in {:.1?}",
        graphs.len(),
        minimal,
        edge_subset_disagreements,
        skipped.len(),
        if skipped.is_empty() {
            String::new()
        } else {
            format!(" ({})", skipped.join("; "))
        },
        start.elapsed()
    ))
}

fn formula_matches(set: &ElementarySet, datum: &str) -> Result<usize, String> {
    let datum = AffineRootDatum::new(datum).map_err(|e| e.to_string())?;
    let formula = affine_elementary_formula(&datum);
    check(formula.len() == 2 * datum.positive_roots().len(), || {
        "formula size".into()
    })?;
    check(set.len() == formula.len(), || {
        format!("|E| = {} but formula gives {}", set.len(), formula.len())
    })?;
    check(set.support_counts() == affine_formula_supports(&datum), || {
        format!(
            "support multisets differ: {:?} vs {:?}",
            set.support_counts(),
            affine_formula_supports(&datum)
        )
    })?;
    Ok(formula.len())
}

fn criterion_2() -> Outcome {
    let sys = system("C~2");
    let (_, set) = analyzed(sys.graph())?;
    let r = report(&sys, &set);
    check(r.bh_states - r.min_states == 1, || {
        format!("superfluous = {}", r.superfluous)
    })?;
    check(set.len() == 8, || format!("|E| = {}", set.len()))?;
    let n = formula_matches(&set, "C2")?;
    Ok(format!(
        "bh {} / min {}, |E| = 8 = formula {n}",
        r.bh_states, r.min_states
    ))
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for (name, datum, expected) in [("A~2", "A2", 6), ("A~3", "A3", 12)] {
        let sys = system(name);
        let (_, set) = analyzed(sys.graph())?;
        let r = report(&sys, &set);
        check(r.verdict_bh, || format!("{name}: {} superfluous states", r.superfluous))?;
        check(set.len() == expected, || format!("{name}: |E| = {}", set.len()))?;
        formula_matches(&set, datum)?;
        parts.push(format!("{name}: {} states, |E| = {}", r.bh_states, set.len()));
    }
    Ok(parts.join("; "))
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for (name, order) in [("A2", 6), ("A3", 24), ("B3", 48), ("H3", 120)] {
        let sys = system(name);
        let (_, set) = analyzed(sys.graph())?;
        let group = Ball::parabolic(&sys, sys.graph().all(), DEFAULT_BALL_GUARD).map_err(|e| e.to_string())?;
        check(group.is_saturated() && group.len() == order, || {
            format!("{name}: |W| = {}", group.len())
        })?;
        let r = report(&sys, &set);
        check(r.bh_states == order, || {
            format!("{name}: {} states, |W| = {order}", r.bh_states)
        })?;
        check(r.verdict_bh, || format!("{name}: not minimal"))?;
        let positive = positive_roots(&sys, 10_000).map_err(|e| e.to_string())?;
        check(positive.len() == set.len(), || {
            format!("{name}: |E| = {} vs |Φ+| = {}", set.len(), positive.len())
        })?;
        check(positive.iter().all(|p| set.contains(p.coeffs())), || {
            format!("{name}: root sets differ")
        })?;
        parts.push(format!("{name}: {order}"));
    }
    Ok(format!("bh = |W|, minimal, E = Φ+ ({})", parts.join(", ")))
}

fn criterion_5() -> Outcome {
    let graphs = corpus(3);
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let (sys, set) = match analyzed(g) {
                Ok(x) => x,
                Err(e) => return Some(format!("{g}: {e}")),
            };
            let dfa = build_bh(&sys, &set);
            let ball = match Ball::new(&sys, 8, DEFAULT_BALL_GUARD) {
                Ok(b) => b,
                Err(e) => return Some(format!("{g}: {e}")),
            };
            match crosscheck_states_on(&ball, &dfa, &set) {
                Ok(r) if r.is_clean() => None,
                Ok(r) => Some(format!(
                    "{g}: {} state / {} class mismatches",
                    r.state_mismatches.len(),
                    r.class_mismatches.len()
                )),
                Err(e) => Some(format!("{g}: {e}")),
            }
        })
        .collect();
    check(failures.is_empty(), || failures.join("; "))?;
    Ok(format!(
        "{} graphs, every element of length <= 8 reaches E(w)",
        graphs.len()
    ))
}

fn criterion_6() -> Outcome {
    let graphs = corpus(3);
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let (sys, set) = match analyzed(g) {
                Ok(x) => x,
                Err(e) => return Some(format!("{g}: {e}")),
            };
            let dfa = build_bh(&sys, &set);
            let ball = match Ball::new(&sys, 10, DEFAULT_BALL_GUARD) {
                Ok(b) => b,
                Err(e) => return Some(format!("{g}: {e}")),
            };
            let words = count_words(&dfa, 10);
            let expected = ball.reduced_word_counts();
            (words != expected).then(|| format!("{g}: {words:?} vs {expected:?}"))
        })
        .collect();
    check(failures.is_empty(), || failures.join("; "))?;
    Ok(format!(
        "{} graphs, reduced-word counts agree for lengths 0..=10",
        graphs.len()
    ))
}

fn criterion_7() -> Outcome {
    let graphs = corpus(4);
    let outcomes: Vec<Result<(bool, bool), String>> = graphs
        .par_iter()
        .map(|g| {
            let (sys, set) = analyzed(g)?;
            let w = key_lemma_witness(&sys, &set, DEFAULT_WITNESS_GUARD).map_err(|e| format!("{g}: {e}"))?;
            let r = report(&sys, &set);
            Ok((w.is_some(), r.verdict_bh))
        })
        .collect();
    let mut certified = 0;
    for (g, o) in graphs.iter().zip(&outcomes) {
        let (found, minimal) = o.clone()?;
        check(!(found && minimal), || {
            format!("{g}: certificate on a minimal automaton")
        })?;
        certified += usize::from(found);
    }

    let c2 = system("C~2");
    let (_, set) = analyzed(c2.graph())?;
    let w = key_lemma_witness(&c2, &set, DEFAULT_WITNESS_GUARD)
        .map_err(|e| e.to_string())?
        .ok_or("no witness on C~2")?;
    check(w.subset == GenSet(0b101) && w.generator == 1, || {
        format!("C~2 witness J = {:?}, t = {}", w.subset, w.generator)
    })?;
    let datum = AffineRootDatum::new("C2").map_err(|e| e.to_string())?;
    let expected = AffineRoot {
        finite: vec![-1, 0],
        delta: 1,
    };
    let coords = datum.simple_coordinates(&expected);
    check(datum.matches_geometric(c2.field(), &coords, &w.root), || {
        format!(
            "C~2: w_J(α_t) = {:?} is not a multiple of -α_1 + δ = {coords:?}",
            w.root
        )
    })?;

    let path = CoxeterSystem::new(CoxeterGraph::path(&[4, 5])).map_err(|e| e.to_string())?;
    let (_, set) = analyzed(path.graph())?;
    let w = key_lemma_witness(&path, &set, DEFAULT_WITNESS_GUARD)
        .map_err(|e| e.to_string())?
        .ok_or("no witness on path (4,5)")?;
    check(w.subset == GenSet(0b101) && w.generator == 1, || {
        format!("path witness J = {:?}, t = {}", w.subset, w.generator)
    })?;
    Ok(format!(
        "{certified} certificates on {} graphs, none on a minimal automaton; C~2 and path (4,5) witnesses as constructed",
        graphs.len()
    ))
}

fn criterion_8() -> Outcome {
    let samples = 10_000;
    let mut parts = Vec::new();
    for n in [4u64, 5, 12, 60] {
        let f = Field::new(n).map_err(|e| e.to_string())?;
        let (lo, hi) = two_cos_enclosure(n);
        let mut rng = ChaCha8Rng::seed_from_u64(n);
        let mut disagreements = 0;
        let mut undecided = 0;
        for i in 0..samples {
            let x = if i % 5 == 0 {
                near_zero_scalar(&mut rng, &f)
            } else {
                random_scalar(&mut rng, &f, 1000)
            };
            match interval_sign(&x.coefficients(), &lo, &hi) {
                Some(s) if s == f.sign(&x) => {}
                Some(_) => disagreements += 1,
                None => undecided += 1,
            }
        }
        check(disagreements == 0 && undecided == 0, || {
            format!("N = {n}: {disagreements} disagreements, {undecided} undecided by the oracle")
        })?;

        let mut violations = 0;
        for _ in 0..samples {
            let bound = rng.gen_range(1..50);
            let (a, b, c) = (
                random_scalar(&mut rng, &f, bound),
                random_scalar(&mut rng, &f, bound),
                random_scalar(&mut rng, &f, bound),
            );
            let assoc = f.mul(&f.mul(&a, &b), &c) == f.mul(&a, &f.mul(&b, &c));
            let dist = f.mul(&a, &(&b + &c)) == &f.mul(&a, &b) + &f.mul(&a, &c);
            let comm = f.mul(&a, &b) == f.mul(&b, &a);
            let inverse = a.is_zero() || f.mul(&a, &f.inv(&a).unwrap()) == f.one();
            let canonical = (a == b) == (f.sign(&(&a - &b)) == Ordering::Equal);
            violations += usize::from(!(assoc && dist && comm && inverse && canonical));
        }
        check(violations == 0, || {
            format!("N = {n}: {violations} ring-axiom violations")
        })?;
        parts.push(format!("N={n}"));
    }
    Ok(format!(
        "{samples} signs and {samples} identity triples per field ({}), 0 disagreements",
        parts.join(", ")
    ))
}

fn criterion_9() -> Outcome {
    let mut support_violations = Vec::new();
    let mut roots = 0;
    for g in corpus(4) {
        let (_, set) = analyzed(&g)?;
        for r in set.roots() {
            roots += 1;
            if g.has_circuit_or_infinite_bond(r.support()) {
                support_violations.push(format!("{g}: support {:?}", r.support()));
            }
        }
    }
    check(support_violations.is_empty(), || support_violations.join("; "))?;

    let graphs = corpus(3);
    let descent: Vec<Result<usize, String>> = graphs
        .par_iter()
        .map(|g| {
            let (sys, _) = analyzed(g)?;
            let ball = Ball::new(&sys, 8, DEFAULT_BALL_GUARD).map_err(|e| e.to_string())?;
            for (id, e) in ball.elements().iter().enumerate() {
                let d = descent_set(&sys, e);
                if !sys.is_spherical(d) {
                    return Err(format!("{g}: word {:?} has non-spherical descent set", e.word()));
                }
                if e.length() < ball.radius() && d != descent_set_by_length(&ball, id) {
                    return Err(format!("{g}: descent tests differ on {:?}", e.word()));
                }
            }
            Ok(ball.len())
        })
        .collect();
    let mut elements = 0;
    for d in descent {
        elements += d?;
    }
    Ok(format!(
        "no circuit or infinite-bond supports among {roots} elementary roots and descent sphericity on {elements} elements: 0 violations; property suites run as separate test targets"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 three-way verdict agreement, rank <= 4", criterion_1),
        ("2 C~2 has one superfluous state", criterion_2),
        ("3 A~2, A~3 minimal", criterion_3),
        ("4 finite systems", criterion_4),
        ("5 automaton states equal E(w)", criterion_5),
        ("6 language correctness", criterion_6),
        ("7 non-minimality certificates", criterion_7),
        ("8 exact arithmetic", criterion_8),
        ("9 invariant suites", criterion_9),
    ];
    let mut failed = BTreeMap::new();
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                println!("FAIL criterion {name}: {why} [{:.1?}]", start.elapsed());
                failed.insert(name, why);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("{} acceptance criteria failed", failed.len());
        std::process::exit(1);
    }
}

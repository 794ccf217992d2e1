//! Roots in the reflection representation and the elementary-root closure.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{CoxeterSystem, GenSet};
use crate::oracle::{Ball, OracleError};
use crate::scalar::Scalar;

/// Default safety cap on the number of elementary roots.
pub const DEFAULT_ELEMENTARY_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("vector {0} has coefficients of both signs")]
    MixedSign(String),
    #[error("more than {cap} elementary roots; raise the cap to continue")]
    CapExceeded { cap: usize },
    #[error("root is not negated by any element of length at most {bound}")]
    DepthBound { bound: usize },
    #[error("expected a positive root")]
    NotPositive,
}

/// A root written in the simple-root basis. Coefficients all `≥ 0` or all
/// `≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    coeffs: Vec<Scalar>,
    support: GenSet,
    positive: bool,
}

impl Root {
    pub fn simple(sys: &CoxeterSystem, s: usize) -> Root {
        let f = sys.field();
        let coeffs = (0..sys.rank())
            .map(|t| if t == s { f.one() } else { f.zero() })
            .collect();
        Root {
            coeffs,
            support: GenSet::singleton(s),
            positive: true,
        }
    }

    /// Validates the sign pattern of a coefficient vector.
    pub fn from_coeffs(sys: &CoxeterSystem, coeffs: Vec<Scalar>) -> Result<Root, RootError> {
        let f = sys.field();
        let mut support = GenSet::EMPTY;
        let mut sign = Ordering::Equal;
        for (s, c) in coeffs.iter().enumerate() {
            let sc = f.sign(c);
            if sc == Ordering::Equal {
                continue;
            }
            support = support.with(s);
            if sign == Ordering::Equal {
                sign = sc;
            } else if sign != sc {
                return Err(RootError::MixedSign(format_coeffs(&coeffs)));
            }
        }
        if sign == Ordering::Equal {
            return Err(RootError::MixedSign("zero vector".into()));
        }
        Ok(Root {
            coeffs,
            support,
            positive: sign == Ordering::Greater,
        })
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, s: usize) -> &Scalar {
        &self.coeffs[s]
    }

    pub fn support(&self) -> GenSet {
        self.support
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn negated(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            support: self.support,
            positive: !self.positive,
        }
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }
}

fn format_coeffs(coeffs: &[Scalar]) -> String {
    let parts: Vec<String> = coeffs.iter().map(|c| format!("({c})")).collect();
    format!("[{}]", parts.join(", "))
}

/// `⟨α_s, v⟩` for a coefficient vector `v`.
pub fn inner_simple(sys: &CoxeterSystem, s: usize, v: &[Scalar]) -> Scalar {
    let f = sys.field();
    let mut acc = f.zero();
    for (t, c) in v.iter().enumerate() {
        if c.is_zero() || sys.gram(s, t).is_zero() {
            continue;
        }
        acc = &acc + &f.mul(sys.gram(s, t), c);
    }
    acc
}

/// The bilinear form `⟨α, β⟩`.
pub fn inner(sys: &CoxeterSystem, alpha: &Root, beta: &Root) -> Scalar {
    inner_vectors(sys, alpha.coeffs(), beta.coeffs())
}

pub fn inner_vectors(sys: &CoxeterSystem, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let f = sys.field();
    let mut acc = f.zero();
    for (s, c) in a.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &f.mul(c, &inner_simple(sys, s, b));
        }
    }
    acc
}

/// `s(v) = v - 2⟨v, α_s⟩α_s` on a raw vector; only coordinate `s` changes.
pub fn reflect_vector(sys: &CoxeterSystem, s: usize, v: &[Scalar]) -> Vec<Scalar> {
    let c = inner_simple(sys, s, v).double();
    let mut out = v.to_vec();
    out[s] = &out[s] - &c;
    out
}

/// Reflection of a root; the sign class is recomputed and a mixed-sign image
/// is reported as an error.
pub fn reflect(sys: &CoxeterSystem, s: usize, alpha: &Root) -> Result<Root, RootError> {
    let coeffs = reflect_vector(sys, s, &alpha.coeffs);
    let others = alpha.support.without(s);
    let new_sign = sys.field().sign(&coeffs[s]);
    let (support, positive) = if others.is_empty() {
        match new_sign {
            Ordering::Equal => return Err(RootError::MixedSign(format_coeffs(&coeffs))),
            sc => (GenSet::singleton(s), sc == Ordering::Greater),
        }
    } else {
        let expected = if alpha.positive {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        match new_sign {
            Ordering::Equal => (others, alpha.positive),
            sc if sc == expected => (others.with(s), alpha.positive),
            _ => return Err(RootError::MixedSign(format_coeffs(&coeffs))),
        }
    };
    Ok(Root {
        coeffs,
        support,
        positive,
    })
}

/// Outcome of applying a generator to a member of the elementary set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Image {
    /// The image is the elementary root with this index.
    Elementary(usize),
    /// The image is negative (only for the simple root of the generator).
    Negative,
    /// The image is a positive root outside the set.
    Outside,
}

/// The finite set of elementary roots, indexed by insertion order. Simple
/// roots occupy indices `0..rank`.
#[derive(Clone, Debug)]
pub struct ElementarySet {
    roots: Vec<Root>,
    index: HashMap<Vec<Scalar>, usize>,
    rank: usize,
}

impl ElementarySet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn get(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Index of the simple root `α_s`.
    pub fn simple(&self, s: usize) -> usize {
        s
    }

    pub fn index_of(&self, coeffs: &[Scalar]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn contains(&self, coeffs: &[Scalar]) -> bool {
        self.index.contains_key(coeffs)
    }

    /// `images[i][s]` describes `s(root i)`.
    pub fn action_table(&self, sys: &CoxeterSystem) -> Vec<Vec<Image>> {
        self.roots
            .iter()
            .enumerate()
            .map(|(i, root)| {
                (0..self.rank)
                    .map(|s| {
                        if i == s {
                            return Image::Negative;
                        }
                        let img = reflect_vector(sys, s, root.coeffs());
                        match self.index_of(&img) {
                            Some(j) => Image::Elementary(j),
                            None => Image::Outside,
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Number of members per support, keyed by support mask.
    pub fn support_counts(&self) -> BTreeMap<GenSet, usize> {
        let mut out = BTreeMap::new();
        for r in &self.roots {
            *out.entry(r.support()).or_insert(0) += 1;
        }
        out
    }
}

/// Closure computation of the elementary roots.
///
/// Start from the simple roots and, processing members in FIFO order, add
/// `s(γ)` whenever `-1 < ⟨α_s, γ⟩ < 0`. When `⟨α_s, γ⟩ ≤ -1` the image
/// dominates `α_s` and is not elementary; when `⟨α_s, γ⟩ ≥ 0` the image is
/// `γ`, a root of smaller depth, or negative.
pub fn elementary_roots(sys: &CoxeterSystem, cap: usize) -> Result<ElementarySet, RootError> {
    let f = sys.field();
    let n = sys.rank();
    let minus_one = f.int(-1);
    let mut roots: Vec<Root> = (0..n).map(|s| Root::simple(sys, s)).collect();
    let mut index: HashMap<Vec<Scalar>, usize> = roots.iter().enumerate().map(|(i, r)| (r.coeffs.clone(), i)).collect();
    if roots.len() > cap {
        return Err(RootError::CapExceeded { cap });
    }
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(i) = queue.pop_front() {
        for s in 0..n {
            let c = inner_simple(sys, s, roots[i].coeffs());
            if f.sign(&c) != Ordering::Less || f.cmp(&c, &minus_one) != Ordering::Greater {
                continue;
            }
            let image = reflect(sys, s, &roots[i])?;
            if index.contains_key(image.coeffs()) {
                continue;
            }
            if roots.len() == cap {
                return Err(RootError::CapExceeded { cap });
            }
            index.insert(image.coeffs.clone(), roots.len());
            queue.push_back(roots.len());
            roots.push(image);
        }
    }
    Ok(ElementarySet { roots, index, rank: n })
}

/// Whether every elementary root has spherical support, i.e. whether the
/// elementary roots are exactly the roots with spherical support.
pub fn sph_supported(sys: &CoxeterSystem, set: &ElementarySet) -> bool {
    let supports: HashSet<GenSet> = set.roots().iter().map(Root::support).collect();
    supports.into_iter().all(|j| sys.is_spherical(j))
}

/// Least length of `w` with `w(α) < 0`, by breadth-first search over the
/// orbit of `α` under simple reflections.
pub fn depth(sys: &CoxeterSystem, alpha: &Root, bound: usize) -> Result<usize, RootError> {
    if !alpha.is_positive() {
        return Err(RootError::NotPositive);
    }
    let mut seen: HashSet<Vec<Scalar>> = HashSet::from([alpha.coeffs.clone()]);
    let mut layer = vec![alpha.clone()];
    for steps in 1..=bound {
        let mut next = Vec::new();
        for r in &layer {
            for s in 0..sys.rank() {
                let img = reflect(sys, s, r)?;
                if !img.is_positive() {
                    return Ok(steps);
                }
                if seen.insert(img.coeffs.clone()) {
                    next.push(img);
                }
            }
        }
        layer = next;
    }
    Err(RootError::DepthBound { bound })
}

/// Result of a bounded dominance check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dominance {
    /// A word `w` with `w(α) < 0` and `w(β) > 0`: dominance is refuted.
    Refuted { word: Vec<usize> },
    /// No refutation among elements of length at most `bound`; evidence only.
    NotRefutedUpTo { bound: usize },
}

impl Dominance {
    pub fn holds_so_far(&self) -> bool {
        matches!(self, Dominance::NotRefutedUpTo { .. })
    }
}

/// Checks whether `α` dominates `β` on every element of a ball.
pub fn dominates_within(ball: &Ball, alpha: &Root, beta: &Root) -> Dominance {
    let f = ball.system().field();
    for w in ball.elements() {
        let wa = w.apply(f, alpha.coeffs());
        if vector_sign(f, &wa) == Ordering::Less {
            let wb = w.apply(f, beta.coeffs());
            if vector_sign(f, &wb) == Ordering::Greater {
                return Dominance::Refuted {
                    word: w.word().to_vec(),
                };
            }
        }
    }
    Dominance::NotRefutedUpTo { bound: ball.radius() }
}

/// Bounded dominance check over all elements of length at most `bound`.
pub fn dominates_up_to(sys: &CoxeterSystem, alpha: &Root, beta: &Root, bound: usize) -> Result<Dominance, OracleError> {
    let ball = Ball::new(sys, bound, crate::oracle::DEFAULT_BALL_GUARD)?;
    Ok(dominates_within(&ball, alpha, beta))
}

/// Sign class of a root vector: `Greater` for positive, `Less` for negative,
/// `Equal` for zero or mixed.
pub(crate) fn vector_sign(f: &crate::scalar::Field, v: &[Scalar]) -> Ordering {
    let mut sign = Ordering::Equal;
    for c in v {
        match f.sign(c) {
            Ordering::Equal => {}
            sc if sign == Ordering::Equal => sign = sc,
            sc if sc != sign => return Ordering::Equal,
            _ => {}
        }
    }
    sign
}

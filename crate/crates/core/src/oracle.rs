//! Brute-force ground truth: group elements as exact matrices, balls in the
//! Cayley graph, inversion and descent sets, truncated cone types, and the
//! explicit elementary roots of crystallographic affine systems.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::automata::{minimize, Dfa, StateTag};
use crate::graph::{CoxeterSystem, GenSet};
use crate::roots::{vector_sign, ElementarySet, Root};
use crate::scalar::{Field, Scalar};

/// Default bound on the number of elements in a ball.
pub const DEFAULT_BALL_GUARD: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("ball exceeded {guard} elements while building length {reached}")]
    GuardExceeded { guard: usize, reached: usize },
    #[error(
        "cone type to depth {depth} of an element of length {length} needs a ball of radius {needed}, have {radius}"
    )]
    InsufficientDepth {
        depth: usize,
        length: usize,
        needed: usize,
        radius: usize,
    },
    #[error("image of an elementary root under {0:?} has mixed signs")]
    MixedSign(Vec<usize>),
    #[error("unknown crystallographic type `{0}`")]
    UnknownType(String),
    #[error("more than {0} positive roots")]
    RootCap(usize),
}

/// Square matrix over a field, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn identity(f: &Field, n: usize) -> Matrix {
        let mut data = vec![f.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = f.one();
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Matrix {
        let n = rows.len();
        Matrix {
            n,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = f.zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &f.mul(a, b);
                    }
                }
                data.push(acc);
            }
        }
        Matrix { n, data }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).clone());
            }
        }
        Matrix { n, data }
    }

    pub fn apply(&self, f: &Field, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n)
            .map(|i| {
                let mut acc = f.zero();
                for (j, c) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !c.is_zero() {
                        acc = &acc + &f.mul(a, c);
                    }
                }
                acc
            })
            .collect()
    }

    /// `self · S_s`, where `S_s` is the reflection in `α_s`.
    fn times_reflection(&self, f: &Field, two_gram: &[Vec<Scalar>], s: usize) -> Matrix {
        let n = self.n;
        let mut out = self.clone();
        for r in 0..n {
            let pivot = self.get(r, s);
            if pivot.is_zero() {
                continue;
            }
            for (t, b) in two_gram[s].iter().enumerate() {
                if !b.is_zero() {
                    out.data[r * n + t] = &out.data[r * n + t] - &f.mul(b, pivot);
                }
            }
        }
        out
    }

    /// `S_s · self`: only row `s` changes.
    fn reflection_times(&self, f: &Field, two_gram: &[Vec<Scalar>], s: usize) -> Matrix {
        let n = self.n;
        let mut out = self.clone();
        for c in 0..n {
            let mut acc = self.get(s, c).clone();
            for (t, b) in two_gram[s].iter().enumerate() {
                let m = self.get(t, c);
                if !b.is_zero() && !m.is_zero() {
                    acc = &acc - &f.mul(b, m);
                }
            }
            out.data[s * n + c] = acc;
        }
        out
    }
}

/// An element of `W` in the reflection representation.
#[derive(Clone, Debug)]
pub struct GroupElement {
    matrix: Matrix,
    inverse: Matrix,
    length: usize,
    word: Vec<usize>,
}

impl GroupElement {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    /// Word length, equal to the distance from the identity in the ball.
    pub fn length(&self) -> usize {
        self.length
    }

    /// A reduced word; the matrix is `S_{w₁} ⋯ S_{w_k}`.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn apply(&self, f: &Field, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(f, v)
    }
}

/// All elements of length at most `radius`, with right Cayley edges.
#[derive(Clone, Debug)]
pub struct Ball {
    sys: CoxeterSystem,
    generators: GenSet,
    radius: usize,
    elements: Vec<GroupElement>,
    index: HashMap<Matrix, usize>,
    /// `right[w][s]` is `ws` when it lies in the ball.
    right: Vec<Vec<Option<usize>>>,
    saturated: bool,
}

impl Ball {
    /// Breadth-first enumeration of the ball of the given radius.
    pub fn new(sys: &CoxeterSystem, radius: usize, guard: usize) -> Result<Ball, OracleError> {
        Ball::build(sys, sys.graph().all(), Some(radius), guard)
    }

    /// Enumerates the parabolic subgroup `W_J` completely; `J` must be
    /// spherical for this to terminate within the guard.
    pub fn parabolic(sys: &CoxeterSystem, j: GenSet, guard: usize) -> Result<Ball, OracleError> {
        Ball::build(sys, j, None, guard)
    }

    fn build(
        sys: &CoxeterSystem,
        generators: GenSet,
        radius: Option<usize>,
        guard: usize,
    ) -> Result<Ball, OracleError> {
        let f = sys.field();
        let n = sys.rank();
        let two_gram: Vec<Vec<Scalar>> = sys
            .gram_matrix()
            .iter()
            .map(|row| row.iter().map(Scalar::double).collect())
            .collect();
        let id = Matrix::identity(f, n);
        let mut elements = vec![GroupElement {
            matrix: id.clone(),
            inverse: id.clone(),
            length: 0,
            word: vec![],
        }];
        let mut index = HashMap::from([(id, 0)]);
        let mut right = vec![vec![None; n]];
        let mut layer = vec![0usize];
        let mut length = 0;
        let mut saturated = false;
        loop {
            if radius.is_some_and(|r| length >= r) {
                break;
            }
            let mut next = Vec::new();
            for &w in &layer {
                for s in generators.iter() {
                    let m = elements[w].matrix.times_reflection(f, &two_gram, s);
                    let target = match index.get(&m) {
                        Some(&id) => id,
                        None => {
                            if elements.len() >= guard {
                                return Err(OracleError::GuardExceeded {
                                    guard,
                                    reached: length + 1,
                                });
                            }
                            let inverse = elements[w].inverse.reflection_times(f, &two_gram, s);
                            let mut word = elements[w].word.clone();
                            word.push(s);
                            let id = elements.len();
                            elements.push(GroupElement {
                                matrix: m.clone(),
                                inverse,
                                length: length + 1,
                                word,
                            });
                            index.insert(m, id);
                            right.push(vec![None; n]);
                            next.push(id);
                            id
                        }
                    };
                    right[w][s] = Some(target);
                    right[target][s] = Some(w);
                }
            }
            if next.is_empty() {
                saturated = true;
                break;
            }
            layer = next;
            length += 1;
        }
        Ok(Ball {
            sys: sys.clone(),
            generators,
            radius: radius.unwrap_or(length),
            elements,
            index,
            right,
            saturated,
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn generators(&self) -> GenSet {
        self.generators
    }

    /// True when the whole group fit inside the ball.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &GroupElement {
        &self.elements[id]
    }

    pub fn find(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn right(&self, w: usize, s: usize) -> Option<usize> {
        self.right[w][s]
    }

    /// Number of elements of each length `0..=radius`.
    pub fn growth(&self) -> Vec<u128> {
        let mut counts = vec![0u128; self.radius + 1];
        for e in &self.elements {
            counts[e.length] += 1;
        }
        counts
    }

    /// Number of reduced words of each length `0..=radius`, counted on the
    /// Cayley graph: a reduced word for `w` ends in some `s` with
    /// `ℓ(ws) < ℓ(w)`.
    pub fn reduced_word_counts(&self) -> Vec<u128> {
        let mut words = vec![0u128; self.len()];
        words[0] = 1;
        let mut counts = vec![0u128; self.radius + 1];
        counts[0] = 1;
        // elements are stored in order of length
        for w in 1..self.len() {
            let length = self.elements[w].length;
            words[w] = self
                .generators
                .iter()
                .filter_map(|s| self.right[w][s])
                .filter(|&v| self.elements[v].length + 1 == length)
                .map(|v| words[v])
                .sum();
            counts[length] += words[w];
        }
        counts
    }

    /// Element of maximal length; for a saturated parabolic ball this is the
    /// longest element `w_J`.
    pub fn longest(&self) -> &GroupElement {
        self.elements
            .iter()
            .max_by_key(|e| e.length)
            .expect("ball contains the identity")
    }

    /// Length of `ws`, or `None` when it is not determined by the ball.
    pub fn length_of_product(&self, w: usize, v: usize) -> Option<usize> {
        let f = self.sys.field();
        let m = self.elements[w].matrix.mul(f, &self.elements[v].matrix);
        self.find(&m).map(|id| self.elements[id].length)
    }
}

/// `ℰ(w)`: indices of elementary roots sent negative by `w`.
pub fn elementary_inversion_set(
    sys: &CoxeterSystem,
    w: &GroupElement,
    set: &ElementarySet,
) -> Result<Vec<usize>, OracleError> {
    let f = sys.field();
    let mut out = Vec::new();
    for (i, root) in set.roots().iter().enumerate() {
        match vector_sign(f, &w.apply(f, root.coeffs())) {
            Ordering::Less => out.push(i),
            Ordering::Greater => {}
            Ordering::Equal => return Err(OracleError::MixedSign(w.word.clone())),
        }
    }
    Ok(out)
}

/// Left descent set: `s` with `w⁻¹(α_s) < 0`.
pub fn descent_set(sys: &CoxeterSystem, w: &GroupElement) -> GenSet {
    let f = sys.field();
    (0..sys.rank())
        .filter(|&s| {
            let col: Vec<Scalar> = (0..sys.rank()).map(|i| w.inverse.get(i, s).clone()).collect();
            vector_sign(f, &col) == Ordering::Less
        })
        .collect()
}

/// Left descent set from ball lengths: `s` with `ℓ(sw) < ℓ(w)`.
pub fn descent_set_by_length(ball: &Ball, w: usize) -> GenSet {
    let sys = ball.system();
    let f = sys.field();
    let e = ball.element(w);
    (0..sys.rank())
        .filter(|&s| {
            let prod = reflection_matrix(sys, s).mul(f, e.matrix());
            // outside the ball means length radius + 1
            ball.find(&prod).is_some_and(|id| ball.element(id).length < e.length)
        })
        .collect()
}

/// Matrix of the simple reflection `s`.
pub fn reflection_matrix(sys: &CoxeterSystem, s: usize) -> Matrix {
    let f = sys.field();
    let n = sys.rank();
    let two_gram: Vec<Vec<Scalar>> = sys
        .gram_matrix()
        .iter()
        .map(|row| row.iter().map(Scalar::double).collect())
        .collect();
    Matrix::identity(f, n).times_reflection(f, &two_gram, s)
}

/// `{v : ℓ(v) ≤ depth, ℓ(wv) = ℓ(w) + ℓ(v)}` as element ids of the ball.
pub fn truncated_cone_type(ball: &Ball, w: usize, depth: usize) -> Result<BTreeSet<usize>, OracleError> {
    let length = ball.element(w).length;
    if length + depth > ball.radius() {
        return Err(OracleError::InsufficientDepth {
            depth,
            length,
            needed: length + depth,
            radius: ball.radius(),
        });
    }
    let mut out = BTreeSet::new();
    for (v, e) in ball.elements().iter().enumerate() {
        if e.length > depth {
            continue;
        }
        let lv = ball
            .length_of_product(w, v)
            .expect("products of length at most the radius lie in the ball");
        if lv == length + e.length {
            out.insert(v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateMismatch {
    pub word: Vec<usize>,
    pub reached: Option<Vec<usize>>,
    pub expected: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub radius: usize,
    pub elements_checked: usize,
    /// Words whose automaton state differs from `ℰ(w)`.
    pub state_mismatches: Vec<StateMismatch>,
    pub cone_depth: usize,
    pub cone_elements: usize,
    /// Pairs in one minimized class whose truncated cone types differ.
    pub class_mismatches: Vec<(Vec<usize>, Vec<usize>)>,
    /// Classes that share a truncated cone type on the explored ball. Not an
    /// error: the ball may be too small to separate them.
    pub unseparated_classes: usize,
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.state_mismatches.is_empty() && self.class_mismatches.is_empty()
    }
}

/// Compares the Brink–Howlett automaton with brute force on the ball of
/// radius `radius`:
///
/// * the state reached by each element's reduced word must be `ℰ(w)`;
/// * for elements of length at most `radius / 2`, two elements in the same
///   minimized class must have equal cone types truncated to depth
///   `radius - radius / 2`.
pub fn crosscheck_states(
    sys: &CoxeterSystem,
    dfa: &Dfa,
    set: &ElementarySet,
    radius: usize,
    guard: usize,
) -> Result<CrosscheckReport, OracleError> {
    let ball = Ball::new(sys, radius, guard)?;
    crosscheck_states_on(&ball, dfa, set)
}

pub fn crosscheck_states_on(ball: &Ball, dfa: &Dfa, set: &ElementarySet) -> Result<CrosscheckReport, OracleError> {
    let sys = ball.system();
    let radius = ball.radius();
    let mut report = CrosscheckReport {
        radius,
        ..Default::default()
    };
    let mut reached_states = Vec::with_capacity(ball.len());
    for e in ball.elements() {
        let expected = elementary_inversion_set(sys, e, set)?;
        let state = dfa.run(e.word());
        let reached = state.and_then(|q| match dfa.tag(q) {
            StateTag::Subset(s) => Some(s.clone()),
            StateTag::Class(_) => None,
        });
        if reached.as_ref() != Some(&expected) {
            report.state_mismatches.push(StateMismatch {
                word: e.word().to_vec(),
                reached,
                expected,
            });
        }
        reached_states.push(state);
        report.elements_checked += 1;
    }

    let (_, class_of) = minimize(dfa);
    let half = radius / 2;
    report.cone_depth = radius - half;
    let mut by_class: HashMap<usize, (usize, BTreeSet<usize>)> = HashMap::new();
    let mut classes_by_cone: BTreeMap<BTreeSet<usize>, BTreeSet<usize>> = BTreeMap::new();
    for (id, e) in ball.elements().iter().enumerate() {
        if e.length() > half {
            continue;
        }
        let Some(q) = reached_states[id] else { continue };
        report.cone_elements += 1;
        let cone = truncated_cone_type(ball, id, report.cone_depth)?;
        let class = class_of[q];
        match by_class.get(&class) {
            Some((first, seen)) if *seen != cone => report
                .class_mismatches
                .push((ball.element(*first).word().to_vec(), e.word().to_vec())),
            Some(_) => {}
            None => {
                by_class.insert(class, (id, cone.clone()));
            }
        }
        classes_by_cone.entry(cone).or_default().insert(class);
    }
    report.unseparated_classes = classes_by_cone
        .values()
        .filter(|c| c.len() > 1)
        .map(|c| c.len() - 1)
        .sum();
    Ok(report)
}

/// Orbit enumeration of the positive roots, for finite systems. Fails when
/// more than `cap` roots are found.
pub fn positive_roots(sys: &CoxeterSystem, cap: usize) -> Result<Vec<Root>, OracleError> {
    let mut roots: Vec<Root> = (0..sys.rank()).map(|s| Root::simple(sys, s)).collect();
    let mut seen: std::collections::HashSet<Vec<Scalar>> = roots.iter().map(|r| r.coeffs().to_vec()).collect();
    let mut k = 0;
    while k < roots.len() {
        for s in 0..sys.rank() {
            let img = crate::roots::reflect(sys, s, &roots[k]).map_err(|_| OracleError::MixedSign(vec![s]))?;
            if img.is_positive() && seen.insert(img.coeffs().to_vec()) {
                if roots.len() >= cap {
                    return Err(OracleError::RootCap(cap));
                }
                roots.push(img);
            }
        }
        k += 1;
    }
    Ok(roots)
}

/// A reduced irreducible crystallographic root system of rank at most 3,
/// with simple roots numbered as in Bourbaki.
#[derive(Clone, Debug)]
pub struct AffineRootDatum {
    name: String,
    /// `⟨α_i, α_j⟩`, integral.
    form: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    highest: Vec<i64>,
}

/// `β + kδ` with `β` in the simple-root basis of the finite system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub finite: Vec<i64>,
    pub delta: i64,
}

impl AffineRootDatum {
    pub fn new(name: &str) -> Result<AffineRootDatum, OracleError> {
        let form: Vec<Vec<i64>> = match name {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            // α₁ long, α₂ short
            "B2" => vec![vec![2, -1], vec![-1, 1]],
            "B3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]],
            // α₁ short, α₂ long
            "C2" => vec![vec![2, -2], vec![-2, 4]],
            "C3" => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -2, 4]],
            "G2" => vec![vec![2, -3], vec![-3, 6]],
            _ => return Err(OracleError::UnknownType(name.to_string())),
        };
        let r = form.len();
        let pairing = |v: &[i64], i: usize| -> i64 {
            let num: i64 = (0..r).map(|j| v[j] * form[j][i]).sum();
            debug_assert_eq!((2 * num) % form[i][i], 0, "crystallographic");
            2 * num / form[i][i]
        };
        let mut positive: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let mut k = 0;
        while k < positive.len() {
            for i in 0..r {
                let mut img = positive[k].clone();
                img[i] -= pairing(&positive[k], i);
                if img.iter().all(|&c| c >= 0) && img.iter().any(|&c| c > 0) && !positive.contains(&img) {
                    positive.push(img);
                }
            }
            k += 1;
        }
        let highest = positive
            .iter()
            .max_by_key(|v| v.iter().sum::<i64>())
            .cloned()
            .expect("non-empty root system");
        Ok(AffineRootDatum {
            name: name.to_string(),
            form,
            positive,
            highest,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.rank();
        (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| a[i] * self.form[i][j] * b[j])
            .sum()
    }

    /// `⟨β, α^∨⟩ = 2⟨β, α⟩ / ⟨α, α⟩`, or `None` if not integral.
    pub fn coroot_pairing(&self, beta: &[i64], alpha: &[i64]) -> Option<i64> {
        let num = 2 * self.inner(beta, alpha);
        let den = self.inner(alpha, alpha);
        (num % den == 0).then(|| num / den)
    }

    /// `s_{α+lδ}(β + kδ) = s_α(β) + (k - l⟨β, α^∨⟩)δ`.
    pub fn reflect(&self, alpha: &AffineRoot, beta: &AffineRoot) -> AffineRoot {
        let p = self
            .coroot_pairing(&beta.finite, &alpha.finite)
            .expect("crystallographic pairing");
        AffineRoot {
            finite: beta.finite.iter().zip(&alpha.finite).map(|(b, a)| b - p * a).collect(),
            delta: beta.delta - p * alpha.delta,
        }
    }

    /// `α₀ = -φ + δ`.
    pub fn affine_simple_root(&self) -> AffineRoot {
        AffineRoot {
            finite: self.highest.iter().map(|c| -c).collect(),
            delta: 1,
        }
    }

    /// Coordinates of `β + kδ` in the affine simple roots `α₀, α₁, …, α_r`,
    /// using `δ = α₀ + φ`.
    pub fn simple_coordinates(&self, root: &AffineRoot) -> Vec<i64> {
        let mut out = vec![root.delta];
        out.extend(root.finite.iter().zip(&self.highest).map(|(b, h)| b + root.delta * h));
        out
    }

    /// `⟨α_i, α_i⟩` for the affine simple roots, `α₀` first.
    pub fn simple_lengths(&self) -> Vec<i64> {
        let mut out = vec![self.inner(&self.highest, &self.highest)];
        out.extend((0..self.rank()).map(|i| self.form[i][i]));
        out
    }

    /// Whether a vector in the reflection representation (unit-length simple
    /// roots) is a positive multiple of the crystallographic root with the
    /// given affine simple coordinates. The two representations differ by
    /// rescaling `α_i` by its length, so the test is
    /// `g_i² c_j² L_j = g_j² c_i² L_i` on a common support.
    pub fn matches_geometric(&self, f: &Field, coords: &[i64], geometric: &[Scalar]) -> bool {
        let lengths = self.simple_lengths();
        if coords.len() != geometric.len() {
            return false;
        }
        let support: Vec<usize> = (0..coords.len()).filter(|&i| coords[i] != 0).collect();
        for i in 0..coords.len() {
            if (coords[i] != 0) != !geometric[i].is_zero() {
                return false;
            }
            if coords[i] != 0 && (coords[i] > 0) != (f.sign(&geometric[i]) == Ordering::Greater) {
                return false;
            }
        }
        let Some(&i) = support.first() else { return false };
        let gi2 = f.mul(&geometric[i], &geometric[i]);
        support.iter().skip(1).all(|&j| {
            let gj2 = f.mul(&geometric[j], &geometric[j]);
            let lhs = f.mul(&gi2, &f.int(coords[j] * coords[j] * lengths[j]));
            let rhs = f.mul(&gj2, &f.int(coords[i] * coords[i] * lengths[i]));
            lhs == rhs
        })
    }
}

/// `ℰ = Φ₀⁺ ∪ (−Φ₀⁺ + δ)` for the affine extension of a crystallographic
/// system.
pub fn affine_elementary_formula(datum: &AffineRootDatum) -> Vec<AffineRoot> {
    let mut out: Vec<AffineRoot> = datum
        .positive_roots()
        .iter()
        .map(|b| AffineRoot {
            finite: b.clone(),
            delta: 0,
        })
        .collect();
    out.extend(datum.positive_roots().iter().map(|b| AffineRoot {
        finite: b.iter().map(|c| -c).collect(),
        delta: 1,
    }));
    out
}

/// Support multiset of the formula's roots, as affine node masks.
pub fn affine_formula_supports(datum: &AffineRootDatum) -> BTreeMap<GenSet, usize> {
    let mut out = BTreeMap::new();
    for root in affine_elementary_formula(datum) {
        let coords = datum.simple_coordinates(&root);
        let mask: GenSet = (0..coords.len()).filter(|&i| coords[i] != 0).collect();
        *out.entry(mask).or_insert(0) += 1;
    }
    out
}

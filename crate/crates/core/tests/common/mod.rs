//! Independent oracles shared by the integration tests. Nothing here calls the
//! sign or sphericity code under test.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use coxmin::graph::{named_graph, CoxeterGraph, CoxeterSystem};
use coxmin::label::Label;
use coxmin::oracle::{Ball, OracleError};
use coxmin::scalar::{Field, Scalar};

/// Fractional bits of the fixed-point oracle (about 120 decimal digits).
pub const FIXED_BITS: u32 = 400;
/// Slack, in units of the last place, added around every computed constant.
const SLACK_BITS: u32 = 24;

fn one_fixed() -> BigInt {
    BigInt::one() << FIXED_BITS
}

/// `atan(1/x)` in fixed point, truncated term by term.
fn atan_inv(x: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = one_fixed() / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// π by Machin's formula, `16 atan(1/5) − 4 atan(1/239)`.
pub fn pi_fixed() -> BigInt {
    atan_inv(5) * 16 - atan_inv(239) * 4
}

/// `cos θ` by its Taylor series, for `0 ≤ θ ≤ 1` in fixed point.
fn cos_fixed(theta: &BigInt) -> BigInt {
    let t2 = (theta * theta) >> FIXED_BITS;
    let mut term = one_fixed();
    let mut sum = term.clone();
    let mut k = 1u32;
    while !term.is_zero() {
        term = ((term * &t2) >> FIXED_BITS) / BigInt::from((2 * k - 1) * (2 * k));
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    sum
}

/// Fixed-point enclosure `[lo, hi]` of `2cos(π/n)` for `n ≥ 2`.
pub fn two_cos_enclosure(n: u64) -> (BigInt, BigInt) {
    let theta = pi_fixed() / BigInt::from(n);
    let z = cos_fixed(&theta) * 2;
    let slack = BigInt::one() << SLACK_BITS;
    (&z - &slack, &z + &slack)
}

/// Sign of `Σ c_i ζ^i` for a positive enclosure of ζ, or `None` when the
/// enclosure cannot decide it.
pub fn interval_sign(coeffs: &[BigRational], lo: &BigInt, hi: &BigInt) -> Option<Ordering> {
    assert!(lo.is_positive(), "oracle assumes ζ > 0");
    if coeffs.iter().all(Zero::is_zero) {
        return Some(Ordering::Equal);
    }
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let nums: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let round_up = (BigInt::one() << FIXED_BITS) - 1;
    let (mut plo, mut phi) = (one_fixed(), one_fixed());
    let (mut low, mut high) = (BigInt::zero(), BigInt::zero());
    for c in &nums {
        if c.is_positive() {
            low += c * &plo;
            high += c * &phi;
        } else {
            low += c * &phi;
            high += c * &plo;
        }
        plo = (&plo * lo) >> FIXED_BITS;
        phi = (&phi * hi + &round_up) >> FIXED_BITS;
    }
    if low.is_positive() {
        Some(Ordering::Greater)
    } else if high.is_negative() {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// A random element with small integer numerators over a random
/// denominator.
pub fn random_scalar<R: Rng>(rng: &mut R, f: &Field, bound: i64) -> Scalar {
    let den = BigInt::from(rng.gen_range(1..=bound.max(1)));
    let coeffs: Vec<BigRational> = (0..f.degree())
        .map(|_| {
            let keep = rng.gen_bool(0.7);
            let n = if keep { rng.gen_range(-bound..=bound) } else { 0 };
            BigRational::new(BigInt::from(n), den.clone())
        })
        .collect();
    f.from_coefficients(&coeffs)
}

/// A random element of tiny absolute value: `ζ^k − p/q` with `p/q` a close
/// rational approximation computed by the oracle.
pub fn near_zero_scalar<R: Rng>(rng: &mut R, f: &Field) -> Scalar {
    let (lo, _) = two_cos_enclosure(f.conductor());
    let k = rng.gen_range(1..f.degree().max(2)) as u32;
    let digits: u32 = rng.gen_range(3..30);
    let mut power = one_fixed();
    for _ in 0..k {
        power = (&power * &lo) >> FIXED_BITS;
    }
    let q = BigInt::from(10).pow(digits);
    let p = (&power * &q) >> FIXED_BITS;
    let mut zk = f.one();
    for _ in 0..k {
        zk = f.mul(&zk, &f.zeta());
    }
    &zk - &f.rational(&BigRational::new(p, q))
}

/// Finite-or-infinite by exhaustive enumeration: true when `W_J` has at most
/// `bound` elements.
pub fn finite_by_enumeration(sys: &CoxeterSystem, j: coxmin::GenSet, bound: usize) -> bool {
    match Ball::parabolic(sys, j, bound) {
        Ok(ball) => ball.is_saturated(),
        Err(OracleError::GuardExceeded { .. }) => false,
        Err(e) => panic!("unexpected oracle error {e}"),
    }
}

pub fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(named_graph(name).unwrap()).unwrap()
}

pub fn corpus_labels() -> Vec<Label> {
    vec![
        Label::Finite(3),
        Label::Finite(4),
        Label::Finite(5),
        Label::Finite(6),
        Label::Infinite,
    ]
}

pub fn corpus(max_rank: usize) -> Vec<CoxeterGraph> {
    coxmin::corpus::enumerate_connected(max_rank, &corpus_labels()).unwrap()
}

/// Random graphs of rank `1..=max_rank`, labels drawn from
/// `{2, 3, 4, 5, 6, ∞}` with commuting pairs most likely.
pub fn graph_strategy(max_rank: usize) -> impl proptest::strategy::Strategy<Value = CoxeterGraph> {
    use proptest::prelude::*;
    let label = prop_oneof![
        4 => Just(Label::Finite(2)),
        3 => Just(Label::Finite(3)),
        1 => Just(Label::Finite(4)),
        1 => Just(Label::Finite(5)),
        1 => Just(Label::Finite(6)),
        1 => Just(Label::Infinite),
    ];
    (1..=max_rank).prop_flat_map(move |n| {
        proptest::collection::vec(label.clone(), n * (n - 1) / 2).prop_map(move |labels| {
            let mut g = CoxeterGraph::new(n).unwrap();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    g.set_label(i, j, labels[k]).unwrap();
                    k += 1;
                }
            }
            g
        })
    })
}

/// Spherical iff the root orbit of the restricted system is finite; a finite
/// group of rank at most 4 has at most 60 positive roots.
pub fn spherical_by_roots(g: &CoxeterGraph, j: coxmin::GenSet) -> bool {
    assert!(j.len() <= 4, "root bound only covers rank <= 4");
    if j.is_empty() {
        return true;
    }
    let sub = CoxeterSystem::new(g.restrict(j)).unwrap();
    coxmin::oracle::positive_roots(&sub, 60).is_ok()
}
